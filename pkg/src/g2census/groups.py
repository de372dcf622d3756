"""Finite exact matrix groups used as representation targets.

Two models:

* ``rotation``: 3x3 rational rotation matrices (targets in SO(3));
* ``spin``: unit quaternions with rational components (targets in SU(2)).

Every group carries its multiplication table over element indices; the
enumeration code works on indices only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

ROTATION = "rotation"
SPIN = "spin"

Mat3 = Tuple[Tuple[Fraction, ...], ...]
Quat = Tuple[Fraction, Fraction, Fraction, Fraction]


class BoundExceeded(RuntimeError):
    """The generated group is infinite or larger than the allowed order."""


# ---------------------------------------------------------------------------
# elementary arithmetic


def mat3(rows) -> Mat3:
    return tuple(tuple(Fraction(x) for x in r) for r in rows)


def mat_mul(a: Mat3, b: Mat3) -> Mat3:
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)) for i in range(3))


def mat_t(a: Mat3) -> Mat3:
    return tuple(tuple(a[j][i] for j in range(3)) for i in range(3))


def mat_vec(a: Mat3, v: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    return tuple(sum(a[i][k] * v[k] for k in range(3)) for i in range(3))


def mat_det(a: Mat3) -> Fraction:
    return (a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]))


I3 = mat3([[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def quat(w, x, y, z) -> Quat:
    return (Fraction(w), Fraction(x), Fraction(y), Fraction(z))


def qmul(p: Quat, q: Quat) -> Quat:
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return (a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2)


def qconj(q: Quat) -> Quat:
    return (q[0], -q[1], -q[2], -q[3])


def qnorm(q: Quat) -> Fraction:
    return sum(x * x for x in q)


def quat_adjoint(q: Quat) -> Mat3:
    """Rotation v -> q v q^-1 on the imaginary quaternions."""
    n = qnorm(q)
    cols = []
    for e in ((0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)):
        v = qmul(qmul(q, quat(*e)), qconj(q))
        cols.append([x / n for x in v[1:]])
    return tuple(tuple(cols[j][i] for j in range(3)) for i in range(3))


def rotation_lift(r: Mat3) -> Quat:
    """A rational quaternion, up to positive scale, whose adjoint is r."""
    t = r[0][0] + r[1][1] + r[2][2]
    candidates = [
        (1 + t, r[2][1] - r[1][2], r[0][2] - r[2][0], r[1][0] - r[0][1]),
        (r[2][1] - r[1][2], 1 + r[0][0] - r[1][1] - r[2][2], r[0][1] + r[1][0], r[0][2] + r[2][0]),
        (r[0][2] - r[2][0], r[0][1] + r[1][0], 1 - r[0][0] + r[1][1] - r[2][2], r[1][2] + r[2][1]),
        (r[1][0] - r[0][1], r[0][2] + r[2][0], r[1][2] + r[2][1], 1 - r[0][0] - r[1][1] + r[2][2]),
    ]
    # The k-th candidate is 4 q_k q; pick the one with the largest pivot.
    pivots = [c[k] for k, c in enumerate(candidates)]
    k = max(range(4), key=lambda i: pivots[i])
    q = tuple(Fraction(x) for x in candidates[k])
    if q[k] < 0:
        q = tuple(-x for x in q)
    return q


# ---------------------------------------------------------------------------
# groups


@dataclass(eq=False)
class TargetGroup:
    name: str
    kind: str
    elements: List[tuple]
    names: List[str]
    mult: np.ndarray
    inverse: np.ndarray
    identity: int
    minus_one: Optional[int] = None
    _index: Dict[tuple, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index = {e: i for i, e in enumerate(self.elements)}

    def __len__(self):
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def index_of(self, element) -> Optional[int]:
        return self._index.get(element)

    def adjoint(self, i: int) -> Mat3:
        e = self.elements[i]
        return e if self.kind == ROTATION else quat_adjoint(e)

    def trace(self, i: int) -> Fraction:
        e = self.elements[i]
        if self.kind == ROTATION:
            return e[0][0] + e[1][1] + e[2][2]
        return 2 * e[0]

    def lift(self, i: int) -> Quat:
        """Quaternion lift (up to positive scale) used for w2 signs."""
        e = self.elements[i]
        return rotation_lift(e) if self.kind == ROTATION else e

    def is_central(self, i: int) -> bool:
        return bool(np.all(self.mult[i, :] == self.mult[:, i]))

    def conjugacy_class_reps(self) -> List[int]:
        seen = set()
        reps = []
        for g in range(self.order):
            if g in seen:
                continue
            reps.append(g)
            for h in range(self.order):
                seen.add(int(self.mult[self.mult[h, g], self.inverse[h]]))
        return reps

    def multiply(self, *idx: int) -> int:
        out = self.identity
        for i in idx:
            out = int(self.mult[out, i])
        return out

    def subgroup_closure(self, gens: Sequence[int]) -> List[int]:
        seen = {self.identity}
        frontier = [self.identity]
        gens = [int(g) for g in gens]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = int(self.mult[x, g])
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(seen)


def _element_key(kind: str, e) -> tuple:
    if kind == ROTATION:
        tr = e[0][0] + e[1][1] + e[2][2]
        flat = tuple(x for r in e for x in r)
    else:
        tr = e[0]
        flat = tuple(e)
    return (e != (I3 if kind == ROTATION else quat(1, 0, 0, 0)), -tr, tuple(-x for x in flat))


def _validate(kind: str, e):
    if kind == ROTATION:
        if mat_mul(e, mat_t(e)) != I3 or mat_det(e) != 1:
            raise ValueError(f"not a rotation matrix: {e}")
    else:
        if qnorm(e) != 1:
            raise ValueError(f"not a unit quaternion: {e}")


def close_group(generators: Sequence, kind: str = ROTATION, max_order: int = 120, name: str = "") -> TargetGroup:
    """Closure of exact generators under multiplication."""
    if kind == ROTATION:
        gens = [mat3(g) for g in generators]
        mul = mat_mul
        one = I3
    elif kind == SPIN:
        gens = [quat(*g) for g in generators]
        mul = qmul
        one = quat(1, 0, 0, 0)
    else:
        raise ValueError(f"unknown model {kind!r}")
    for g in gens:
        _validate(kind, g)
    seen = {one}
    frontier = [one]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > max_order:
                        raise BoundExceeded(f"group order exceeds {max_order}")
        frontier = nxt
    elements = sorted(seen, key=lambda e: _element_key(kind, e))
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    table = np.empty((n, n), dtype=np.int32)
    for i, x in enumerate(elements):
        for j, y in enumerate(elements):
            table[i, j] = index[mul(x, y)]
    ident = index[one]
    inverse = np.array([int(np.nonzero(table[i] == ident)[0][0]) for i in range(n)], dtype=np.int32)
    minus = index.get(quat(-1, 0, 0, 0)) if kind == SPIN else None
    names = [element_name(kind, e) for e in elements]
    return TargetGroup(name or f"<{n}>", kind, elements, names, table, inverse, ident, minus)


_V4_NAMES = {
    I3: "1",
    mat3([[1, 0, 0], [0, -1, 0], [0, 0, -1]]): "a",
    mat3([[-1, 0, 0], [0, 1, 0], [0, 0, -1]]): "b",
    mat3([[-1, 0, 0], [0, -1, 0], [0, 0, 1]]): "c",
}


def _frac_str(x: Fraction) -> str:
    return str(x)


def element_name(kind: str, e) -> str:
    if kind == ROTATION:
        if e in _V4_NAMES:
            return _V4_NAMES[e]
        rows = []
        for r in e:
            terms = []
            for coeff, var in zip(r, "xyz"):
                if coeff == 0:
                    continue
                if coeff == 1:
                    terms.append(("+", var))
                elif coeff == -1:
                    terms.append(("-", var))
                else:
                    terms.append(("-" if coeff < 0 else "+", f"{_frac_str(abs(coeff))}{var}"))
            s = "".join(f"{sg}{t}" for sg, t in terms)
            rows.append(s[1:] if s.startswith("+") else s)
        return "[" + ",".join(rows) + "]"
    w, x, y, z = e
    parts = []
    for c, u in ((w, ""), (x, "i"), (y, "j"), (z, "k")):
        if c == 0:
            continue
        mag = abs(c)
        body = (str(mag) if (mag != 1 or not u) else "") + u
        parts.append(("-" if c < 0 else "+") + body)
    s = "".join(parts)
    return s[1:] if s.startswith("+") else s


# ---------------------------------------------------------------------------
# catalog

A = [[1, 0, 0], [0, -1, 0], [0, 0, -1]]
B = [[-1, 0, 0], [0, 1, 0], [0, 0, -1]]
C = [[-1, 0, 0], [0, -1, 0], [0, 0, 1]]
ROT_X = [[1, 0, 0], [0, 0, -1], [0, 1, 0]]
ROT_Y = [[0, 0, 1], [0, 1, 0], [-1, 0, 0]]
CYCLE = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]

_CATALOG_GENERATORS = {
    "1": (ROTATION, []),
    "Z2": (ROTATION, [A]),
    "V4": (ROTATION, [A, B]),
    "Z4": (ROTATION, [ROT_X]),
    "D4": (ROTATION, [ROT_X, B]),
    "A4": (ROTATION, [A, B, CYCLE]),
    "S4": (ROTATION, [ROT_X, ROT_Y]),
    "Q8": (SPIN, [(0, 1, 0, 0), (0, 0, 1, 0)]),
    "2T": (SPIN, [(0, 1, 0, 0), (0, 0, 1, 0), (Fraction(1, 2),) * 4]),
}


_CACHE: Dict[str, TargetGroup] = {}


def catalog_names() -> List[str]:
    return list(_CATALOG_GENERATORS)


def target(name: str) -> TargetGroup:
    if name not in _CATALOG_GENERATORS:
        raise KeyError(f"unknown target {name!r}; choose from {catalog_names()}")
    if name not in _CACHE:
        kind, gens = _CATALOG_GENERATORS[name]
        _CACHE[name] = close_group(gens, kind, name=name)
    return _CACHE[name]


def builtin_targets() -> Dict[str, TargetGroup]:
    return {n: target(n) for n in catalog_names()}


def octahedral_rotations() -> List[Mat3]:
    """The 24 signed permutation matrices of determinant 1."""
    return list(target("S4").elements)
