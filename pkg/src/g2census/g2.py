"""Exact exterior algebra on R^7 and the linear algebra of G2-structures.

Forms have coefficients that are polynomials in the coordinates x1..x7 over
the rationals.  Index tuples are stored 0-based and strictly increasing; the
user-facing helpers :func:`dx` and :meth:`KForm.coefficient` take the 1-based
indices of the usual ``dx_{ijk}`` notation.

The orientation is fixed once: ``vol0 = dx1 ^ ... ^ dx7``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from . import _exact

DIM = 7
MAX_POLY_DEGREE = 4

Monomial = Tuple[int, ...]
Poly = Dict[Monomial, Fraction]

_ZERO_MONO: Monomial = (0,) * DIM


class NotPositive(ValueError):
    """The 3-form is not in the GL+-orbit of the standard one."""


# ---------------------------------------------------------------------------
# polynomial coefficients


def _poly_const(c) -> Poly:
    c = _exact.frac(c) if not isinstance(c, float) else c
    return {_ZERO_MONO: c} if c != 0 else {}


def _poly_add(p: Poly, q: Poly, scale=1) -> Poly:
    out = dict(p)
    for m, c in q.items():
        v = out.get(m, 0) + scale * c
        if v == 0:
            out.pop(m, None)
        else:
            out[m] = v
    return out


def _poly_scale(p: Poly, s) -> Poly:
    if s == 0:
        return {}
    return {m: c * s for m, c in p.items()}


def _poly_mul(p: Poly, q: Poly) -> Poly:
    if len(p) == 1 and _ZERO_MONO in p:
        return _poly_scale(q, p[_ZERO_MONO])
    if len(q) == 1 and _ZERO_MONO in q:
        return _poly_scale(p, q[_ZERO_MONO])
    out: Poly = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            if sum(m) > MAX_POLY_DEGREE:
                raise ValueError(f"polynomial coefficient exceeds degree {MAX_POLY_DEGREE}")
            v = out.get(m, 0) + c1 * c2
            if v == 0:
                out.pop(m, None)
            else:
                out[m] = v
    return out


def _poly_diff(p: Poly, i: int) -> Poly:
    out: Poly = {}
    for m, c in p.items():
        if m[i]:
            mm = list(m)
            mm[i] -= 1
            out[tuple(mm)] = c * m[i]
    return out


def _poly_eval(p: Poly, point: Sequence) -> Fraction:
    total = Fraction(0)
    for m, c in p.items():
        term = c
        for x, e in zip(point, m):
            if e:
                term *= x ** e
        total += term
    return total


def _is_constant(p: Poly) -> bool:
    return all(m == _ZERO_MONO for m in p)


def coordinate(i: int) -> Poly:
    """The coordinate function x_i (1-based) as a polynomial coefficient."""
    m = [0] * DIM
    m[i - 1] = 1
    return {tuple(m): Fraction(1)}


# ---------------------------------------------------------------------------
# forms


def _merge_sign(a: Tuple[int, ...], b: Tuple[int, ...]) -> int:
    """Sign of the shuffle sorting a + b, or 0 if they share an index."""
    inversions = 0
    for i in a:
        for j in b:
            if i == j:
                return 0
            if i > j:
                inversions += 1
    return -1 if inversions % 2 else 1


class KForm:
    """An exterior k-form on R^7 with polynomial coefficients.

    Immutable by convention; all operations return new forms.
    """

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: Optional[Mapping[Tuple[int, ...], Poly]] = None):
        if not 0 <= degree <= DIM:
            raise ValueError(f"degree must be in 0..{DIM}, got {degree}")
        self.degree = degree
        clean = {}
        for idx, p in (terms or {}).items():
            idx = tuple(idx)
            if len(idx) != degree or any(a >= b for a, b in zip(idx, idx[1:])):
                raise ValueError(f"index tuple {idx} is not strictly increasing of length {degree}")
            if p:
                clean[idx] = dict(p)
        self.terms: Dict[Tuple[int, ...], Poly] = clean

    # construction -----------------------------------------------------------
    @classmethod
    def zero(cls, degree: int) -> "KForm":
        return cls(degree, {})

    @classmethod
    def constant(cls, degree: int, coeffs: Mapping[Tuple[int, ...], object]) -> "KForm":
        """Constant-coefficient form from 0-based index tuples."""
        return cls(degree, {idx: _poly_const(c) for idx, c in coeffs.items() if c != 0})

    @classmethod
    def scalar(cls, c) -> "KForm":
        return cls(0, {(): _poly_const(c)})

    # arithmetic -------------------------------------------------------------
    def __add__(self, other: "KForm") -> "KForm":
        if not isinstance(other, KForm):
            return NotImplemented
        if other.degree != self.degree:
            raise ValueError("cannot add forms of different degree")
        terms = dict(self.terms)
        for idx, p in other.terms.items():
            terms[idx] = _poly_add(terms.get(idx, {}), p)
        return KForm(self.degree, terms)

    def __neg__(self) -> "KForm":
        return KForm(self.degree, {idx: _poly_scale(p, -1) for idx, p in self.terms.items()})

    def __sub__(self, other: "KForm") -> "KForm":
        return self + (-other)

    def __mul__(self, s) -> "KForm":
        if isinstance(s, KForm):
            return NotImplemented
        return KForm(self.degree, {idx: _poly_scale(p, s) for idx, p in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, s) -> "KForm":
        return self * (Fraction(1) / _exact.frac(s) if not isinstance(s, float) else 1.0 / s)

    def __xor__(self, other: "KForm") -> "KForm":
        return wedge(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, KForm):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, tuple(sorted((k, tuple(sorted(v.items()))) for k, v in self.terms.items()))))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return f"KForm({self.degree}, 0)"
        parts = []
        for idx in sorted(self.terms):
            p = self.terms[idx]
            coeff = _poly_str(p)
            name = "dx" + "".join(str(i + 1) for i in idx) if idx else "1"
            parts.append(f"({coeff}) {name}" if len(p) > 1 else f"{coeff} {name}")
        return " + ".join(parts)

    # inspection -------------------------------------------------------------
    def coefficient(self, *indices: int) -> Poly:
        """Polynomial coefficient of dx_{i1...ik}, 1-based, any order."""
        idx0 = [i - 1 for i in indices]
        order = sorted(range(len(idx0)), key=lambda k: idx0[k])
        key = tuple(idx0[k] for k in order)
        if len(set(key)) != len(key):
            return {}
        sign = _perm_sign(order)
        return _poly_scale(self.terms.get(key, {}), sign)

    def constant_coefficient(self, *indices: int):
        p = self.coefficient(*indices)
        if not _is_constant(p):
            raise ValueError("coefficient is not constant")
        return p.get(_ZERO_MONO, Fraction(0))

    def is_constant(self) -> bool:
        return all(_is_constant(p) for p in self.terms.values())

    def constants(self) -> Dict[Tuple[int, ...], Fraction]:
        """0-based index tuple -> constant coefficient."""
        if not self.is_constant():
            raise ValueError("form has non-constant coefficients")
        return {idx: p[_ZERO_MONO] for idx, p in self.terms.items()}

    def at(self, point: Sequence) -> "KForm":
        """Freeze the coefficients at a point of R^7."""
        return KForm.constant(self.degree, {idx: _poly_eval(p, point) for idx, p in self.terms.items()})

    def evaluate(self, *vectors: Sequence) -> Fraction:
        """Value on k vectors (constant coefficients only)."""
        if len(vectors) != self.degree:
            raise ValueError(f"need {self.degree} vectors")
        total = Fraction(0)
        for idx, c in self.constants().items():
            total += c * _exact.det([[v[i] for i in idx] for v in vectors]) if idx else c
        return total


def _perm_sign(order: Sequence[int]) -> int:
    sign = 1
    seen = list(order)
    for i in range(len(seen)):
        for j in range(i + 1, len(seen)):
            if seen[i] > seen[j]:
                sign = -sign
    return sign


def _poly_str(p: Poly) -> str:
    if not p:
        return "0"
    out = []
    for m in sorted(p, reverse=True):
        c = p[m]
        mono = "*".join(f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(m) if e)
        out.append(f"{c}" if not mono else (mono if c == 1 else f"{c}*{mono}"))
    return " + ".join(out)


def dx(*indices: int, coeff=1) -> KForm:
    """Basis form dx_{i1} ^ ... ^ dx_{ik} (1-based), optionally scaled."""
    if not indices:
        return KForm.scalar(coeff)
    f = KForm(len(indices), {})
    zero_based = [i - 1 for i in indices]
    if len(set(zero_based)) != len(zero_based):
        return f
    order = sorted(range(len(zero_based)), key=lambda k: zero_based[k])
    key = tuple(zero_based[k] for k in order)
    c = coeff if isinstance(coeff, dict) else _poly_const(coeff)
    return KForm(len(key), {key: _poly_scale(c, _perm_sign(order))})


def wedge(a: KForm, b: KForm) -> KForm:
    deg = a.degree + b.degree
    if deg > DIM:
        return KForm.zero(DIM)
    terms: Dict[Tuple[int, ...], Poly] = {}
    for ia, pa in a.terms.items():
        for ib, pb in b.terms.items():
            s = _merge_sign(ia, ib)
            if s == 0:
                continue
            key = tuple(sorted(ia + ib))
            terms[key] = _poly_add(terms.get(key, {}), _poly_mul(pa, pb), s)
    return KForm(deg, terms)


def interior(v: Sequence, a: KForm) -> KForm:
    """Contraction of a by the constant vector v."""
    if a.degree == 0:
        raise ValueError("cannot contract a 0-form")
    terms: Dict[Tuple[int, ...], Poly] = {}
    for idx, p in a.terms.items():
        for pos, i in enumerate(idx):
            if v[i] == 0:
                continue
            key = idx[:pos] + idx[pos + 1:]
            terms[key] = _poly_add(terms.get(key, {}), p, (-1) ** pos * v[i])
    return KForm(a.degree - 1, terms)


def interior_field(field_coeffs: Sequence[Poly], a: KForm) -> KForm:
    """Contraction by a vector field with polynomial components."""
    if a.degree == 0:
        raise ValueError("cannot contract a 0-form")
    terms: Dict[Tuple[int, ...], Poly] = {}
    for idx, p in a.terms.items():
        for pos, i in enumerate(idx):
            if not field_coeffs[i]:
                continue
            key = idx[:pos] + idx[pos + 1:]
            terms[key] = _poly_add(terms.get(key, {}), _poly_mul(field_coeffs[i], p), (-1) ** pos)
    return KForm(a.degree - 1, terms)


def exterior_derivative(a: KForm) -> KForm:
    if a.degree == DIM:
        return KForm.zero(DIM)
    terms: Dict[Tuple[int, ...], Poly] = {}
    for idx, p in a.terms.items():
        for i in range(DIM):
            dp = _poly_diff(p, i)
            if not dp:
                continue
            s = _merge_sign((i,), idx)
            if s == 0:
                continue
            key = tuple(sorted((i,) + idx))
            terms[key] = _poly_add(terms.get(key, {}), dp, s)
    return KForm(a.degree + 1, terms)


def random_form(rng, degree: int, max_den: int = 8, poly_degree: int = 0, density: float = 1.0) -> KForm:
    """Random form with small-denominator rational coefficients.

    With ``poly_degree > 0`` every coefficient is a random polynomial of at
    most that total degree.
    """
    monos = [m for m in itertools.product(range(poly_degree + 1), repeat=DIM) if sum(m) <= poly_degree]
    terms = {}
    for idx in itertools.combinations(range(DIM), degree):
        if rng.random() > density:
            continue
        if poly_degree == 0:
            p = _poly_const(random_rational(rng, max_den))
        else:
            p = {}
            for m in rng.sample(monos, min(3, len(monos))):
                c = random_rational(rng, max_den)
                if c:
                    p[m] = c
        if p:
            terms[idx] = p
    return KForm(degree, terms)


def random_rational(rng, max_den: int = 8, max_num: int = 9) -> Fraction:
    return Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))


def random_vector(rng, max_den: int = 8):
    return [random_rational(rng, max_den) for _ in range(DIM)]


# ---------------------------------------------------------------------------
# metrics, Hodge star


@dataclass(frozen=True)
class Metric7:
    """Symmetric 7x7 Gram matrix plus an orientation sign.

    Entries are Fractions, or floats when produced by a normalisation with an
    irrational root.
    """

    matrix: Tuple[Tuple[object, ...], ...]
    orientation: int = 1
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        m = tuple(tuple(row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        if len(m) != DIM or any(len(r) != DIM for r in m):
            raise ValueError("metric must be 7x7")
        if any(m[i][j] != m[j][i] for i in range(DIM) for j in range(DIM)):
            raise ValueError("metric must be symmetric")
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")

    @classmethod
    def euclidean(cls, orientation: int = 1) -> "Metric7":
        return cls(tuple(tuple(Fraction(int(i == j)) for j in range(DIM)) for i in range(DIM)), orientation)

    @property
    def is_euclidean(self) -> bool:
        return all(self.matrix[i][j] == (1 if i == j else 0) for i in range(DIM) for j in range(DIM))

    def is_positive_definite(self) -> bool:
        return _exact.is_positive_definite(self.matrix)

    def inverse(self):
        if "inv" not in self._cache:
            if self.is_euclidean:
                self._cache["inv"] = [list(r) for r in self.matrix]
            elif any(isinstance(x, float) for r in self.matrix for x in r):
                import numpy as np

                self._cache["inv"] = np.linalg.inv(np.array(self.matrix, dtype=float)).tolist()
            else:
                aug = [list(r) + [Fraction(int(i == j)) for j in range(DIM)] for i, r in enumerate(self.matrix)]
                red, _ = _exact.rref(aug)
                self._cache["inv"] = [row[DIM:] for row in red]
        return self._cache["inv"]

    def sqrt_det(self):
        """sqrt(det g): exact when rational, float otherwise."""
        if "sqrt_det" not in self._cache:
            if self.is_euclidean:
                self._cache["sqrt_det"] = Fraction(1)
            elif any(isinstance(x, float) for r in self.matrix for x in r):
                import numpy as np

                self._cache["sqrt_det"] = float(np.sqrt(np.linalg.det(np.array(self.matrix, dtype=float))))
            else:
                self._cache["sqrt_det"] = _exact.real_root(_exact.det(self.matrix), 2)
        return self._cache["sqrt_det"]

    def inner(self, u: Sequence, v: Sequence):
        return sum(self.matrix[i][j] * u[i] * v[j] for i in range(DIM) for j in range(DIM) if self.matrix[i][j])

    def raise_matrix(self, k: int):
        """Induced inverse metric on k-forms: minors of g^{-1}."""
        key = ("raise", k)
        if key not in self._cache:
            ginv = self.inverse()
            idxs = list(itertools.combinations(range(DIM), k))
            table = {}
            for I in idxs:
                row = {}
                for J in idxs:
                    val = _exact.det([[ginv[i][j] for j in J] for i in I]) if k else Fraction(1)
                    if val != 0:
                        row[J] = val
                table[I] = row
            self._cache[key] = table
        return self._cache[key]


G0 = Metric7.euclidean()


def _complement(idx: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(i for i in range(DIM) if i not in idx)


@lru_cache(maxsize=None)
def _star_sign(idx: Tuple[int, ...]) -> int:
    return _merge_sign(idx, _complement(idx))


def _raise(a: KForm, g: Metric7) -> Dict[Tuple[int, ...], Poly]:
    if g.is_euclidean:
        return a.terms
    table = g.raise_matrix(a.degree)
    out: Dict[Tuple[int, ...], Poly] = {}
    for I, row in table.items():
        p: Poly = {}
        for J, m in row.items():
            if J in a.terms:
                p = _poly_add(p, a.terms[J], m)
        if p:
            out[I] = p
    return out


def hodge_star(a: KForm, g: Metric7 = G0) -> KForm:
    if not g.is_euclidean and not g.is_positive_definite():
        raise ValueError("degenerate or indefinite metric")
    scale = g.sqrt_det() * g.orientation
    terms = {}
    for I, p in _raise(a, g).items():
        terms[_complement(I)] = _poly_scale(p, scale * _star_sign(I))
    return KForm(DIM - a.degree, terms)


def inner_product(a: KForm, b: KForm, g: Metric7 = G0):
    """Pointwise inner product of constant-coefficient forms of equal degree."""
    if a.degree != b.degree:
        raise ValueError("degree mismatch")
    up = _raise(a, g)
    total = 0
    for I, p in up.items():
        q = b.terms.get(I)
        if q:
            total += p[_ZERO_MONO] * q[_ZERO_MONO]
    return total if total != 0 else Fraction(0)


def norm_sq(a: KForm, g: Metric7 = G0):
    return inner_product(a, a, g)


def top_coefficient(a: KForm, g: Metric7 = G0):
    """Scalar c with a = c * vol_g for a constant 7-form."""
    if a.degree != DIM:
        raise ValueError("not a top-degree form")
    c = a.constants().get(tuple(range(DIM)), Fraction(0))
    return c / (g.sqrt_det() * g.orientation)


def volume_form(g: Metric7 = G0) -> KForm:
    return hodge_star(KForm.scalar(1), g)


# ---------------------------------------------------------------------------
# G2 structures

_PHI0_TERMS = [((1, 2, 3), 1), ((1, 4, 5), 1), ((1, 6, 7), 1), ((2, 4, 6), 1),
               ((2, 5, 7), -1), ((3, 4, 7), -1), ((3, 5, 6), -1)]


def standard_phi0() -> KForm:
    """dx123 + dx145 + dx167 + dx246 - dx257 - dx347 - dx356."""
    return KForm.constant(3, {tuple(i - 1 for i in idx): c for idx, c in _PHI0_TERMS})


def standard_psi0() -> KForm:
    return hodge_star(standard_phi0())


def basis_vector(i: int):
    """e_i, 1-based."""
    return [Fraction(int(k == i - 1)) for k in range(DIM)]


def radial_field(scale=Fraction(1, 3)):
    """The vector field scale * sum x_i d/dx_i."""
    return [_poly_scale(coordinate(i + 1), scale) for i in range(DIM)]


def _check_three_form(phi: KForm):
    if phi.degree != 3:
        raise ValueError("expected a 3-form")


def cross(u: Sequence, v: Sequence, phi: Optional[KForm] = None, g: Metric7 = G0):
    """The vector u x v with phi(u, v, w) = g(u x v, w) for all w."""
    phi = standard_phi0() if phi is None else phi
    _check_three_form(phi)
    lowered = interior(v, interior(u, phi)).constants()
    covec = [lowered.get((i,), Fraction(0)) for i in range(DIM)]
    ginv = g.inverse()
    return [sum(ginv[k][l] * covec[l] for l in range(DIM) if covec[l]) for k in range(DIM)]


def pullback(phi: KForm, a: Sequence[Sequence]) -> KForm:
    """Pullback of a constant form by the linear map x -> a x."""
    out = KForm.zero(phi.degree)
    rows = [[_exact.frac(x) for x in r] for r in a]
    # (A* dx_i) = sum_j A[i][j] dx_j
    one_forms = [KForm.constant(1, {(j,): rows[i][j] for j in range(DIM) if rows[i][j]}) for i in range(DIM)]
    for idx, c in phi.constants().items():
        term = KForm.scalar(c)
        for i in idx:
            term = wedge(term, one_forms[i])
        out = out + term
    return out


def b_matrix(phi: KForm):
    """B_ij with i_{e_i}phi ^ i_{e_j}phi ^ phi = 6 B_ij vol0."""
    _check_three_form(phi)
    if not phi.is_constant():
        raise ValueError("metric recovery needs constant coefficients")
    contracted = [interior(basis_vector(i + 1), phi) for i in range(DIM)]
    full = tuple(range(DIM))
    b = [[Fraction(0)] * DIM for _ in range(DIM)]
    for i in range(DIM):
        wi = wedge(contracted[i], phi)
        for j in range(i, DIM):
            top = wedge(contracted[j], wi)
            # i_j phi ^ (i_i phi ^ phi) equals i_i phi ^ i_j phi ^ phi: 2-forms commute.
            val = top.constants().get(full, Fraction(0)) / 6
            b[i][j] = b[j][i] = val
    return b


def metric_from_3form(phi: KForm):
    """Recover (g_phi, volume factor) from a positive 3-form.

    Returns the metric ``det(B)^(-1/9) B`` and ``det(B)^(1/9)``, the factor with
    ``vol_phi = factor * vol0``.  The metric carries the orientation induced
    by ``phi``.
    """
    b = b_matrix(phi)
    d = _exact.det(b)
    if d == 0:
        raise NotPositive("B is singular")
    orientation = 1 if d > 0 else -1
    signed = [[orientation * x for x in row] for row in b]
    if not _exact.is_positive_definite(signed):
        raise NotPositive("B is not definite")
    root = _exact.real_root(d, 9)
    g = tuple(tuple(x / root for x in row) for row in b)
    return Metric7(g, orientation), root


def _check_two_form(omega: KForm):
    if omega.degree != 2:
        raise ValueError("expected a 2-form")


def phi_operator(omega: KForm, phi: Optional[KForm] = None, g: Metric7 = G0) -> KForm:
    """omega -> *(phi ^ omega)."""
    phi = standard_phi0() if phi is None else phi
    return hodge_star(wedge(phi, omega), g)


def project_7(omega: KForm, phi: Optional[KForm] = None, g: Metric7 = G0) -> KForm:
    _check_two_form(omega)
    return (omega + phi_operator(omega, phi, g)) / 3


def project_14(omega: KForm, phi: Optional[KForm] = None, g: Metric7 = G0) -> KForm:
    _check_two_form(omega)
    return (omega * 2 - phi_operator(omega, phi, g)) / 3


def energy_identity_check(omega: KForm, phi: Optional[KForm] = None, g: Metric7 = G0):
    """(coefficient of vol in omega^omega^phi, 2|pi7 omega|^2 - |pi14 omega|^2)."""
    phi = standard_phi0() if phi is None else phi
    _check_two_form(omega)
    if not omega.is_constant():
        raise ValueError("energy identity is pointwise: constant coefficients only")
    lhs = top_coefficient(wedge(wedge(omega, omega), phi), g)
    rhs = 2 * norm_sq(project_7(omega, phi, g), g) - norm_sq(project_14(omega, phi, g), g)
    return lhs, rhs


def instanton_operator_identity(F: KForm, phi: Optional[KForm] = None, g: Metric7 = G0) -> bool:
    """Check *(psi ^ *(psi ^ F)) == F + *(F ^ phi) with psi = *phi."""
    phi = standard_phi0() if phi is None else phi
    _check_two_form(F)
    psi = hodge_star(phi, g)
    lhs = hodge_star(wedge(psi, hodge_star(wedge(psi, F), g)), g)
    rhs = F + hodge_star(wedge(F, phi), g)
    return lhs == rhs


def gram_det(vectors: Sequence[Sequence], g: Metric7 = G0):
    return _exact.det([[g.inner(u, v) for v in vectors] for u in vectors])


def is_associative(u, v, w, phi: Optional[KForm] = None, g: Metric7 = G0, orientation: Optional[int] = 1) -> bool:
    """Is the plane spanned by (u, v, w) calibrated by phi?

    ``orientation=+1`` asks that (u, v, w) be a positively oriented basis of an
    associative plane; ``-1`` the opposite orientation; ``None`` ignores the
    orientation and compares |phi(u, v, w)| with the induced volume.
    """
    phi = standard_phi0() if phi is None else phi
    gd = gram_det([u, v, w], g)
    if gd == 0:
        raise ValueError("vectors are linearly dependent")
    val = phi.evaluate(u, v, w)
    if val * val != gd:
        return False
    return orientation is None or val * orientation > 0


def fixed_subspace(generators: Iterable[Sequence[Sequence]]):
    """(dimension, basis) of the common fixed space of orthogonal matrices."""
    rows = []
    n = None
    for m in generators:
        m = [[_exact.frac(x) for x in r] for r in m]
        n = len(m)
        if _exact.matmul(m, _exact.transpose(m)) != _exact.identity(n):
            raise ValueError("matrix is not orthogonal")
        rows.extend(_exact.sub(m, _exact.identity(n)))
    if n is None:
        raise ValueError("need at least one matrix")
    basis = _exact.nullspace(rows, n) if rows else _exact.identity(n)
    return len(basis), basis


def sphere_sides(alpha: KForm, r):
    """Both sides of 3 alpha^alpha^omega0 <= |alpha|^2 r vol at (r, 0, ..., 0).

    omega0 = i_nu phi0 with nu = (1/3) x . d/dx, the boundary volume form is
    dx234567, and |alpha|^2 = sum over all ordered pairs (i, j) of
    alpha_ij^2, i.e. twice the sum over increasing pairs.
    """
    _check_two_form(alpha)
    if not alpha.is_constant():
        raise ValueError("alpha must have constant coefficients")
    r = _exact.frac(r)
    if r <= 0:
        raise ValueError("radius must be positive")
    omega0 = interior_field(radial_field(), standard_phi0())
    point = [r] + [Fraction(0)] * (DIM - 1)
    omega_at = omega0.at(point)
    six = wedge(wedge(alpha, alpha), omega_at)
    lhs = 3 * six.constants().get(tuple(range(1, DIM)), Fraction(0))
    rhs = 2 * norm_sq(alpha) * r
    return lhs, rhs


def sphere_inequality_sample(alpha: KForm, r) -> bool:
    lhs, rhs = sphere_sides(alpha, r)
    return lhs <= rhs


def two_form_basis():
    return [KForm.constant(2, {idx: 1}) for idx in itertools.combinations(range(DIM), 2)]


def operator_matrix(op, basis):
    """Matrix of a linear map on forms in a basis of unit monomials."""
    keys = [next(iter(b.terms)) for b in basis]
    cols = []
    for b in basis:
        img = op(b).constants()
        cols.append([img.get(k, Fraction(0)) for k in keys])
    return _exact.transpose(cols)


def eigenspace_dimensions(phi: Optional[KForm] = None, g: Metric7 = G0):
    """dim ker(T - 2) and dim ker(T + 1) for T = *(phi ^ -) on 2-forms."""
    basis = two_form_basis()
    t = operator_matrix(lambda w: phi_operator(w, phi, g), basis)
    n = len(basis)
    eye = _exact.identity(n)
    t2 = _exact.sub(t, [[2 * x for x in r] for r in eye])
    t1 = [[a + b for a, b in zip(r, s)] for r, s in zip(t, eye)]
    return n - _exact.bareiss_rank(t2), n - _exact.bareiss_rank(t1)
