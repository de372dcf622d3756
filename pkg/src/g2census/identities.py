"""Seeded property suite for the G2 exterior-algebra kernel.

Every check is an exact equality (or exact inequality) over rationals; a
trial either holds or it does not.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from . import g2
from .g2 import G0, KForm

DEFAULT_TRIALS = 1000


def _rng(seed: int, name: str) -> random.Random:
    return random.Random(f"{seed}:{name}")


def _dot(u, v):
    return G0.inner(u, v)


def check_cross_product(rng, phi):
    u, v = g2.random_vector(rng), g2.random_vector(rng)
    w = g2.cross(u, v, phi)
    return (_dot(w, u) == 0 and _dot(w, v) == 0
            and _dot(w, w) == _dot(u, u) * _dot(v, v) - _dot(u, v) ** 2)


def check_three_form_metric(rng, phi):
    u, v = g2.random_vector(rng), g2.random_vector(rng)
    top = g2.wedge(g2.wedge(g2.interior(u, phi), g2.interior(v, phi)), phi)
    return top == g2.volume_form() * (6 * _dot(u, v))


def check_type_decomposition(rng, phi):
    omega = g2.random_form(rng, 2)
    t = g2.phi_operator(omega, phi)
    if g2.phi_operator(t, phi) != omega * 2 + t:
        return False
    p7, p14 = g2.project_7(omega, phi), g2.project_14(omega, phi)
    return (p7 + p14 == omega
            and g2.project_7(p7, phi) == p7
            and g2.phi_operator(p7, phi) == p7 * 2
            and g2.phi_operator(p14, phi) == p14 * -1
            and g2.inner_product(p7, p14) == 0)


def check_energy_identity(rng, phi):
    lhs, rhs = g2.energy_identity_check(g2.random_form(rng, 2), phi)
    return lhs == rhs


def check_instanton_operator(rng, phi):
    return g2.instanton_operator_identity(g2.random_form(rng, 2), phi)


def check_radial_and_dd(rng, phi):
    if g2.exterior_derivative(g2.interior_field(g2.radial_field(), phi)) != phi:
        return False
    degree = rng.randint(0, 5)
    a = g2.random_form(rng, degree, poly_degree=2, density=0.3)
    return not g2.exterior_derivative(g2.exterior_derivative(a))


def check_sphere_inequality(rng, phi):
    alpha = g2.random_form(rng, 2)
    r = Fraction(rng.randint(1, 80), 8)
    return g2.sphere_inequality_sample(alpha, r)


def check_star_isometry(rng, phi):
    degree = rng.randint(0, 7)
    a = g2.random_form(rng, degree, density=0.5)
    s = g2.hodge_star(a)
    return g2.hodge_star(s) == a and g2.norm_sq(s) == g2.norm_sq(a)


CHECKS: Dict[str, Callable] = {
    "cross_product_axioms": check_cross_product,
    "three_form_metric": check_three_form_metric,
    "type_decomposition": check_type_decomposition,
    "energy_identity": check_energy_identity,
    "instanton_operator": check_instanton_operator,
    "radial_primitive": check_radial_and_dd,
    "sphere_inequality": check_sphere_inequality,
    "star_isometry": check_star_isometry,
}


def run_suite(seed: int = 0, trials: int = DEFAULT_TRIALS, phi: Optional[KForm] = None,
              checks: Optional[List[str]] = None) -> dict:
    """Run every check ``trials`` times; returns a JSON-ready report."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    phi = g2.standard_phi0() if phi is None else phi
    results = {}
    for name in checks or list(CHECKS):
        rng = _rng(seed, name)
        failures = 0
        first = None
        for t in range(trials):
            try:
                ok = CHECKS[name](rng, phi)
            except (ValueError, ZeroDivisionError) as exc:
                ok = False
                first = first if first is not None else f"trial {t}: {exc}"
            if not ok:
                failures += 1
                if first is None:
                    first = f"trial {t}"
        results[name] = {"trials": trials, "failures": failures, "first_failure": first}
    # single exact computation, independent of sampling
    dims = g2.eigenspace_dimensions(phi)
    results["eigenspace_dimensions"] = {"trials": 1, "failures": int(tuple(dims) != (7, 14)),
                                        "first_failure": None if tuple(dims) == (7, 14) else f"got {dims}"}
    passed = all(r["failures"] == 0 for r in results.values())
    return {"seed": seed, "trials": trials, "checks": results, "passed": passed}
