"""Chern character and index-parity algebra, truncated at weight 4.

Polynomials live in the generators c1, c2, c3, c4 (weights 1..4) and p1
(weight 2), with coefficients that may depend polynomially on a formal rank
``r``.  A monomial is stored as the exponent tuple ``(r, c1, c2, c3, c4, p1)``;
``r`` carries weight 0.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

GENERATORS = ("c1", "c2", "c3", "c4", "p1")
WEIGHTS = (1, 2, 3, 4, 2)
MAX_WEIGHT = 4

Monomial = Tuple[int, int, int, int, int, int]
RankParam = Union[int, str]

FORMAL = "r"


def _weight(m: Monomial) -> int:
    return sum(w * e for w, e in zip(WEIGHTS, m[1:]))


class GradedPoly:
    """Truncated graded polynomial with exact rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Monomial, object]] = None):
        clean: Dict[Monomial, Fraction] = {}
        for m, c in (terms or {}).items():
            c = Fraction(c)
            if c != 0 and _weight(m) <= MAX_WEIGHT:
                clean[tuple(m)] = clean.get(tuple(m), Fraction(0)) + c
        self.terms = {m: c for m, c in clean.items() if c != 0}

    @classmethod
    def const(cls, c) -> "GradedPoly":
        return cls({(0,) * 6: c})

    @classmethod
    def gen(cls, name: str) -> "GradedPoly":
        m = [0] * 6
        if name == FORMAL:
            m[0] = 1
        else:
            m[1 + GENERATORS.index(name)] = 1
        return cls({tuple(m): 1})

    @classmethod
    def rank(cls, r: RankParam) -> "GradedPoly":
        return cls.gen(FORMAL) if r == FORMAL else cls.const(r)

    def __add__(self, other):
        other = _lift(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return GradedPoly(terms)

    __radd__ = __add__

    def __neg__(self):
        return GradedPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        terms: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                if _weight(m) > MAX_WEIGHT:
                    continue
                terms[m] = terms.get(m, Fraction(0)) + c1 * c2
        return GradedPoly(terms)

    __rmul__ = __mul__

    def __truediv__(self, k):
        return GradedPoly({m: c / k for m, c in self.terms.items()})

    def __pow__(self, n: int):
        out = GradedPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GradedPoly.const(other)
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"GradedPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        groups: Dict[Tuple[int, ...], Dict[int, Fraction]] = {}
        for m, c in self.terms.items():
            groups.setdefault(m[1:], {})[m[0]] = c
        parts = []
        for key in sorted(groups, key=lambda k: (_weight((0,) + k), k)):
            coeff = format_rank_poly(groups[key])
            mono = monomial_name(key)
            if not mono:
                parts.append(coeff)
            elif coeff == "1":
                parts.append(mono)
            elif coeff == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"({coeff})*{mono}" if ("+" in coeff or " - " in coeff) else f"{coeff}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    # structure ------------------------------------------------------------
    def weight_part(self, k: int) -> "GradedPoly":
        return GradedPoly({m: c for m, c in self.terms.items() if _weight(m) == k})

    def coefficient(self, *factors: str) -> Dict[int, Fraction]:
        """Coefficient of a generator monomial as {power of r: value}.

        ``coefficient("c2", "p1")`` is the coefficient of c2*p1.
        """
        key = [0] * 5
        for f in factors:
            key[GENERATORS.index(f)] += 1
        return {m[0]: c for m, c in self.terms.items() if list(m[1:]) == key}

    def coefficient_at(self, *factors: str) -> Fraction:
        """Coefficient of a monomial when it does not involve r."""
        coeff = self.coefficient(*factors)
        if any(k for k in coeff):
            raise ValueError("coefficient depends on the formal rank")
        return coeff.get(0, Fraction(0))

    def substitute_rank(self, r: int) -> "GradedPoly":
        terms: Dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            key = (0,) + m[1:]
            terms[key] = terms.get(key, Fraction(0)) + c * Fraction(r) ** m[0]
        return GradedPoly(terms)

    def kill_chern_above(self, r: int) -> "GradedPoly":
        """Set c_k = 0 for k > r (a rank-r bundle has no higher classes)."""
        return GradedPoly({m: c for m, c in self.terms.items() if all(m[1 + k] == 0 for k in range(r, 4))})

    def generator_monomials(self):
        return sorted({m[1:] for m in self.terms})


def _lift(x) -> GradedPoly:
    if isinstance(x, GradedPoly):
        return x
    return GradedPoly.const(x)


def monomial_name(key: Tuple[int, ...]) -> str:
    return "*".join(f"{g}^{e}" if e > 1 else g for g, e in zip(GENERATORS, key) if e)


def format_rank_poly(coeff: Mapping[int, Fraction]) -> str:
    """Render {power: value} as a polynomial in r."""
    items = [(k, v) for k, v in sorted(coeff.items()) if v != 0]
    if not items:
        return "0"
    out = ""
    for k, v in items:
        body = "" if k == 0 else ("r" if k == 1 else f"r^{k}")
        mag = abs(v)
        text = str(mag) if (not body or mag != 1) else ""
        term = f"{text}{body}" if text and body and mag.denominator == 1 else (
            f"({text}){body}" if text and body else (text or body))
        if not out:
            out = ("-" if v < 0 else "") + term
        else:
            out += (" - " if v < 0 else " + ") + term
    return out


C1, C2, C3, C4, P1 = (GradedPoly.gen(n) for n in GENERATORS)


def power_sums(r: RankParam = FORMAL):
    """(s1, s2, s3, s4) in terms of Chern classes via Newton's identities."""
    c = [None, C1, C2, C3, C4]
    s = [GradedPoly.rank(r)]
    for k in range(1, 5):
        acc = GradedPoly()
        for i in range(1, k):
            acc = acc + (-1) ** (i - 1) * c[i] * s[k - i]
        acc = acc + (-1) ** (k - 1) * k * c[k]
        s.append(acc)
    return tuple(s[1:])


def chern_character(r: RankParam = FORMAL, dual: bool = False) -> GradedPoly:
    """r + s1 + s2/2 + s3/6 + s4/24; with ``dual`` the odd terms change sign."""
    s = power_sums(r)
    ch = GradedPoly.rank(r)
    for k, sk in enumerate(s, start=1):
        sign = -1 if (dual and k % 2) else 1
        ch = ch + sign * sk * Fraction(1, math.factorial(k))
    return ch


def ch_adjoint(r: RankParam = FORMAL) -> GradedPoly:
    """ch(E) ch(E*) - 1: the Chern character of the complexified adjoint bundle."""
    return chern_character(r) * chern_character(r, dual=True) - 1


def ch_adjoint_closed_form(r: RankParam = FORMAL) -> GradedPoly:
    """The closed form r^2 - 1 + (r-1)c1^2 - 2r c2 + (1/12)(...)."""
    R = GradedPoly.rank(r)
    quartic = ((R - 1) * C1 ** 4 - 4 * R * C2 * C1 ** 2 + (4 * R - 12) * C3 * C1
               + (2 * R + 12) * C2 ** 2 - 4 * R * C4)
    return R * R - 1 + (R - 1) * C1 ** 2 - 2 * R * C2 + quartic * Fraction(1, 12)


def p1_adjoint(r: RankParam = FORMAL) -> GradedPoly:
    R = GradedPoly.rank(r)
    return (R - 1) * C1 ** 2 - 2 * R * C2


# Monomials whose integrals vanish: c1^3 * (anything) and c1^2 * p1.
VANISHING = ((0, 3, 0, 0, 0, 0), (0, 2, 0, 0, 0, 1))


def _divisible(m: Monomial, d: Monomial) -> bool:
    return all(a >= b for a, b in zip(m[1:], d[1:]))


def reduce_vanishing(poly: GradedPoly) -> GradedPoly:
    return GradedPoly({m: c for m, c in poly.terms.items() if not any(_divisible(m, d) for d in VANISHING)})


def index_integrand(ch: GradedPoly) -> GradedPoly:
    """Weight-4 part of ch * (1 - p1/24), modulo the vanishing monomials."""
    a_hat = 1 - P1 * Fraction(1, 24)
    return reduce_vanishing((ch * a_hat).weight_part(4))


def parity_combination(r: RankParam = FORMAL) -> GradedPoly:
    R = GradedPoly.rank(r)
    return index_integrand(ch_adjoint(r)) - (12 + 2 * R) * index_integrand(chern_character(r))


PARITY_LEADING = -Fraction(1, 2) * C2 * P1 - 3 * C3 * C1


def parity_remainder(r: RankParam = FORMAL) -> GradedPoly:
    return parity_combination(r) - PARITY_LEADING


def all_even_integers(poly: GradedPoly) -> bool:
    return all(c.denominator == 1 and c.numerator % 2 == 0 for c in poly.terms.values())


# ---------------------------------------------------------------------------
# independent oracle: explicit Chern roots


Exps = Tuple[int, ...]


def _root_mul(p: Dict[Exps, Fraction], q: Dict[Exps, Fraction], max_deg: int):
    out: Dict[Exps, Fraction] = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            if sum(m) > max_deg:
                continue
            out[m] = out.get(m, Fraction(0)) + c1 * c2
    return {m: c for m, c in out.items() if c != 0}


def _root_add(p, q, scale=1):
    out = dict(p)
    for m, c in q.items():
        out[m] = out.get(m, Fraction(0)) + scale * c
    return {m: c for m, c in out.items() if c != 0}


def _elementary(n: int, k: int) -> Dict[Exps, Fraction]:
    out = {}
    for subset in itertools.combinations(range(n), k):
        m = [0] * n
        for i in subset:
            m[i] = 1
        out[tuple(m)] = Fraction(1)
    return out


def symmetric_to_elementary(poly: Dict[Exps, Fraction], n: int, max_deg: int = MAX_WEIGHT) -> GradedPoly:
    """Rewrite a symmetric polynomial in n roots via e1..en (as c1..cn)."""
    elem = [None] + [_elementary(n, k) for k in range(1, n + 1)]
    poly = dict(poly)
    result = GradedPoly()
    while poly:
        lead = max(poly)
        c = poly[lead]
        if any(lead[i] < lead[i + 1] for i in range(n - 1)):
            raise ValueError("polynomial is not symmetric")
        powers = [lead[i] - (lead[i + 1] if i + 1 < n else 0) for i in range(n)]
        term = {(0,) * n: Fraction(1)}
        mono = [0] * 6
        for k, e in enumerate(powers, start=1):
            for _ in range(e):
                term = _root_mul(term, elem[k], max_deg)
            if e:
                mono[k] = e
        poly = _root_add(poly, term, -c)
        result = result + GradedPoly({tuple(mono): c})
    return result


def _exp_series(linear: Dict[Exps, Fraction], n: int, max_deg: int):
    total = {(0,) * n: Fraction(1)}
    power = {(0,) * n: Fraction(1)}
    for k in range(1, max_deg + 1):
        power = _root_mul(power, linear, max_deg)
        total = _root_add(total, power, Fraction(1, math.factorial(k)))
    return total


def root_power_sum(n: int, k: int) -> GradedPoly:
    """x1^k + ... + xn^k rewritten through elementary symmetric functions."""
    poly: Dict[Exps, Fraction] = {}
    for i in range(n):
        m = [0] * n
        m[i] = k
        poly[tuple(m)] = Fraction(1)
    return symmetric_to_elementary(poly, n)


def splitting_oracle(r: int) -> GradedPoly:
    """sum_{i,j} exp(x_i - x_j) - 1 for formal Chern roots x_1..x_r."""
    if not 1 <= r <= 4:
        raise ValueError("rank must be in 1..4")
    total: Dict[Exps, Fraction] = {}
    for i in range(r):
        for j in range(r):
            lin: Dict[Exps, Fraction] = {}
            if i != j:
                ei = [0] * r
                ei[i] = 1
                ej = [0] * r
                ej[j] = 1
                lin = {tuple(ei): Fraction(1), tuple(ej): Fraction(-1)}
            total = _root_add(total, _exp_series(lin, r, MAX_WEIGHT))
    total = _root_add(total, {(0,) * r: Fraction(1)}, -1)
    return symmetric_to_elementary(total, r)


def verify(r: RankParam) -> Dict[str, bool]:
    """The identity checks reported by the ``chern`` subcommand."""
    checks = {}
    if r == FORMAL:
        checks["ch_adjoint == closed form"] = ch_adjoint() == ch_adjoint_closed_form()
        checks["weight-2 part of ch_adjoint == p1(adjoint)"] = ch_adjoint().weight_part(2) == p1_adjoint()
        for n in (1, 2, 3, 4):
            checks[f"splitting oracle r={n}"] = (
                ch_adjoint().substitute_rank(n).kill_chern_above(n) == splitting_oracle(n))
    else:
        n = int(r)
        checks["ch_adjoint == closed form"] = ch_adjoint(n) == ch_adjoint_closed_form(n)
        checks["weight-2 part of ch_adjoint == p1(adjoint)"] = ch_adjoint(n).weight_part(2) == p1_adjoint(n)
        checks[f"splitting oracle r={n}"] = ch_adjoint(n).kill_chern_above(n) == splitting_oracle(n)
    par = parity_combination(r)
    checks["c2*p1 coefficient == -1/2"] = par.coefficient("c2", "p1") == {0: Fraction(-1, 2)}
    checks["c3*c1 coefficient == -3"] = par.coefficient("c3", "c1") == {0: Fraction(-3)}
    checks["remaining coefficients even"] = all_even_integers(parity_remainder(r))
    return checks
