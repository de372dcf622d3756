"""Representation census: homomorphisms from a finitely presented group into a
finite exact target, up to conjugation.

Pipeline::

    enumerate_homs -> orbit canonicalization -> trace buckets
        -> exact conjugacy inside buckets -> per-class invariants

Everything works on element indices of a :class:`~.groups.TargetGroup`.
"""

from __future__ import annotations

import hashlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from . import _exact
from . import deformation
from .groups import ROTATION, SPIN, TargetGroup, qmul, qconj, target as catalog_target
from .presentation import Presentation, hom_count_mod2

_CHUNK = 1 << 18


class UnsupportedImage(RuntimeError):
    """The centralizer of an image cannot be certified inside the catalog."""


class AmbiguousClass(RuntimeError):
    """A trace bucket could not be split into conjugacy classes."""


class ModelMismatch(ValueError):
    """Signed relators need a spin-model target."""


# ---------------------------------------------------------------------------
# representations


@dataclass(frozen=True)
class Rep:
    group: TargetGroup = field(compare=False, hash=False, repr=False)
    values: Tuple[int, ...]

    def evaluate(self, word) -> int:
        return deformation._eval(self.group, self.values, word)

    def element(self, i: int):
        return self.group.elements[self.values[i]]

    def names(self, presentation: Presentation) -> Dict[str, str]:
        return {g: self.group.names[v] for g, v in zip(presentation.generators, self.values)}

    def conjugate(self, h: int) -> "Rep":
        """The representation h rho h^-1 for h in the target."""
        m, inv = self.group.mult, self.group.inverse
        return Rep(self.group, tuple(int(m[m[h, v], inv[h]]) for v in self.values))


def _relator_targets(p: Presentation, g: TargetGroup) -> List[Optional[int]]:
    out = []
    for i in range(len(p.relators)):
        if p.relator_sign(i) == 1:
            out.append(g.identity)
        else:
            if g.kind != SPIN:
                raise ModelMismatch("signed relators require a spin-model target")
            out.append(g.minus_one)
    return out


def generator_order(p: Presentation) -> List[int]:
    """Greedy order: next is the generator completing the most relators."""
    remaining = [set(g for g, _ in r) for r in p.relators]
    order: List[int] = []
    chosen = set()
    while len(order) < p.ngens:
        best, best_key = None, None
        for g in range(p.ngens):
            if g in chosen:
                continue
            done = sum(1 for s in remaining if s and s <= chosen | {g})
            mentions = sum(1 for s in remaining if g in s)
            key = (done, mentions, -g)
            if best_key is None or key > best_key:
                best, best_key = g, key
        order.append(best)
        chosen.add(best)
        remaining = [s if not (s and s <= chosen) else set() for s in remaining]
    return order


class _Plan:
    """Precomputed schedule shared by enumeration workers."""

    def __init__(self, p: Presentation, g: TargetGroup, prune: bool, order=None):
        self.group = g
        self.order = list(order) if order is not None else generator_order(p)
        if sorted(self.order) != list(range(p.ngens)):
            raise ValueError("generator order must be a permutation")
        self.pos = {gen: k for k, gen in enumerate(self.order)}
        targets = _relator_targets(p, g)
        self.unsat = False
        self.stage_checks: List[List[Tuple[Tuple[Tuple[int, int], ...], int]]] = [[] for _ in self.order]
        for r, t in zip(p.relators, targets):
            if t is None:
                self.unsat = True
                continue
            if not r:
                if t != g.identity:
                    self.unsat = True
                continue
            stage = max(self.pos[x] for x, _ in r)
            word = tuple((self.pos[x], e) for x, e in r)
            self.stage_checks[stage].append((word, t))
        self.prune = prune
        self.central = np.array([g.is_central(i) for i in range(g.order)], dtype=bool)
        reps = np.zeros(g.order, dtype=bool)
        reps[g.conjugacy_class_reps()] = True
        self.class_rep = reps


def _filter(plan: _Plan, rows: np.ndarray, stage: int) -> np.ndarray:
    g = plan.group
    keep = np.ones(len(rows), dtype=bool)
    if plan.prune:
        prefix_central = plan.central[rows[:, :stage]].all(axis=1) if stage else np.ones(len(rows), bool)
        keep &= ~prefix_central | plan.class_rep[rows[:, stage]]
    for word, t in plan.stage_checks[stage]:
        prod = np.full(len(rows), g.identity, dtype=np.int64)
        for k, e in word:
            col = rows[:, k] if e == 1 else g.inverse[rows[:, k]]
            prod = g.mult[prod, col]
        keep &= prod == t
    return rows[keep]


def _expand(plan: _Plan, rows: np.ndarray, stage: int) -> Iterator[np.ndarray]:
    n = plan.group.order
    if stage == len(plan.order):
        yield rows
        return
    step = max(1, _CHUNK // n)
    for start in range(0, len(rows), step):
        block = rows[start:start + step]
        new = np.empty((len(block) * n, stage + 1), dtype=np.int16)
        new[:, :stage] = np.repeat(block, n, axis=0)
        new[:, stage] = np.tile(np.arange(n, dtype=np.int16), len(block))
        new = _filter(plan, new, stage)
        if len(new):
            yield from _expand(plan, new, stage + 1)


def _branch(args) -> np.ndarray:
    plan, first = args
    start = _filter(plan, np.array([[first]], dtype=np.int16), 0)
    parts = list(_expand(plan, start, 1)) if len(start) else []
    if not parts:
        return np.zeros((0, len(plan.order)), dtype=np.int16)
    return np.concatenate(parts)


def enumerate_array(p: Presentation, g: TargetGroup, prune: bool = False, jobs: int = 1,
                    order=None) -> np.ndarray:
    """All solutions as an int16 array (rows indexed by generator)."""
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    plan = _Plan(p, g, prune, order)
    n = p.ngens
    if plan.unsat:
        return np.zeros((0, n), dtype=np.int16)
    if n == 0:
        return np.zeros((1, 0), dtype=np.int16)
    branches = [(plan, v) for v in range(g.order)]
    if jobs == 1:
        parts = [_branch(b) for b in branches]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_branch, branches))
    solved = np.concatenate(parts) if parts else np.zeros((0, n), dtype=np.int16)
    out = np.empty_like(solved)
    out[:, plan.order] = solved
    return out


def enumerate_homs(p: Presentation, g: TargetGroup, prune: bool = False, jobs: int = 1, order=None) -> List[Rep]:
    """Every (signed) solution of the relators, in depth-first order."""
    arr = enumerate_array(p, g, prune=prune, jobs=jobs, order=order)
    return [Rep(g, tuple(int(x) for x in row)) for row in arr]


def exhaustive_homs(p: Presentation, g: TargetGroup) -> List[Rep]:
    """Plain |G|^n scan; the oracle for :func:`enumerate_homs`."""
    import itertools

    targets = _relator_targets(p, g)
    if any(t is None for t in targets):
        return []
    out = []
    for values in itertools.product(range(g.order), repeat=p.ngens):
        if all(deformation._eval(g, values, r) == t for r, t in zip(p.relators, targets)):
            out.append(Rep(g, tuple(values)))
    return out


# ---------------------------------------------------------------------------
# conjugation


def _conjugators(g: TargetGroup) -> np.ndarray:
    """Permutations of element indices induced by a conjugation group.

    Octahedral rotations act on the target when the adjoint image of the
    target lies inside them (true for the whole catalog); otherwise the
    target's own inner automorphisms are used.
    """
    s4 = catalog_target("S4")
    if g.kind == ROTATION:
        inside = all(s4.index_of(e) is not None for e in g.elements)
        actors = list(s4.elements) if inside else list(g.elements)

        def act(h, e):
            from .groups import mat_mul, mat_t
            return mat_mul(mat_mul(h, e), mat_t(h))
    else:
        inside = all(s4.index_of(g.adjoint(i)) is not None for i in range(g.order))
        actors = list(s4.elements) if inside else list(g.elements)

        def act(h, e):
            if len(h) == 4:
                return qmul(qmul(h, e), qconj(h))
            v = [sum(h[i][k] * e[k + 1] for k in range(3)) for i in range(3)]
            return (e[0], v[0], v[1], v[2])

    perms = []
    for h in actors:
        perm = [g.index_of(act(h, e)) for e in g.elements]
        if any(x is None for x in perm):
            continue
        perms.append(perm)
    uniq = sorted(set(tuple(x) for x in perms))
    return np.array(uniq, dtype=np.int16)


def _lex_min(rows: np.ndarray, perms: np.ndarray) -> np.ndarray:
    best = rows.copy()
    for perm in perms:
        cand = perm[rows]
        diff = cand != best
        first = diff.argmax(axis=1)
        idx = np.arange(len(rows))
        better = diff.any(axis=1) & (cand[idx, first] < best[idx, first])
        best[better] = cand[better]
    return best


def canonical_orbits(rows: np.ndarray, g: TargetGroup) -> np.ndarray:
    """Sorted unique orbit representatives (lex-least conjugate in G)."""
    if rows.shape[1] == 0:
        return rows[:1]
    perms = _conjugators(g)
    parts = []
    for start in range(0, len(rows), _CHUNK):
        parts.append(_lex_min(rows[start:start + _CHUNK], perms))
    if not parts:
        return rows
    return np.unique(np.concatenate(parts), axis=0)


# ---------------------------------------------------------------------------
# trace signatures


def _trace_table(g: TargetGroup):
    traces = [g.trace(i) for i in range(g.order)]
    values = sorted(set(traces))
    ids = np.array([values.index(t) for t in traces], dtype=np.int16)
    return ids, values


def schedule(ngens: int, depth: int = 3) -> List[Tuple[int, ...]]:
    """Positive words of length 1..depth in the order used by signatures."""
    words: List[Tuple[int, ...]] = []
    level = [(i,) for i in range(ngens)]
    for _ in range(depth):
        words.extend(level)
        level = [w + (i,) for w in level for i in range(ngens)]
    return words


def _signature_ids(rows: np.ndarray, g: TargetGroup, depth: int) -> np.ndarray:
    ids, _ = _trace_table(g)
    rows = rows.astype(np.int64)
    out = []
    level = rows
    for k in range(depth):
        out.append(ids[level])
        if k + 1 < depth:
            level = g.mult[level[:, :, None], rows[:, None, :]].reshape(len(rows), -1)
    return np.concatenate(out, axis=1)


def trace_signature(rep: Rep, depth: int = 3) -> Tuple[Fraction, ...]:
    g = rep.group
    return tuple(g.trace(rep.evaluate(tuple((x, 1) for x in w))) for w in schedule(len(rep.values), depth))


# ---------------------------------------------------------------------------
# exact conjugacy


def _intertwiners(g: TargetGroup, a: Sequence[int], b: Sequence[int]):
    """Basis of {X : X rho_a(x) = rho_b(x) X for all generators}."""
    if g.kind == ROTATION:
        eqs = []
        for x, y in zip(a, b):
            ma, mb = g.elements[x], g.elements[y]
            # (X A - B X)[i][j] = sum_k X[i][k] A[k][j] - B[i][k] X[k][j]
            for i in range(3):
                for j in range(3):
                    row = [Fraction(0)] * 9
                    for k in range(3):
                        row[3 * i + k] += ma[k][j]
                        row[3 * k + j] -= mb[i][k]
                    eqs.append(row)
        return _exact.nullspace(eqs, 9) if eqs else [[Fraction(int(i == j)) for j in range(9)] for i in range(9)]
    eqs = []
    basis = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    for x, y in zip(a, b):
        qa, qb = g.elements[x], g.elements[y]
        cols = []
        for e in basis:
            e = tuple(Fraction(t) for t in e)
            left = qmul(e, qa)
            right = qmul(qb, e)
            cols.append([l - r for l, r in zip(left, right)])
        for i in range(4):
            eqs.append([cols[k][i] for k in range(4)])
    return _exact.nullspace(eqs, 4) if eqs else [[Fraction(int(i == j)) for j in range(4)] for i in range(4)]


def _det_poly_nonzero(basis) -> bool:
    """Whether det(sum t_i X_i) is a nonzero polynomial."""
    import itertools

    k = len(basis)
    if k == 0:
        return False
    # entries as linear forms: entry (i, j) -> vector over t
    entries = [[[basis[t][3 * i + j] for t in range(k)] for j in range(3)] for i in range(3)]
    poly: Dict[Tuple[int, ...], Fraction] = {}
    for perm in itertools.permutations(range(3)):
        sign = 1
        for x in range(3):
            for y in range(x + 1, 3):
                if perm[x] > perm[y]:
                    sign = -sign
        forms = [entries[i][perm[i]] for i in range(3)]
        for t0, c0 in enumerate(forms[0]):
            if not c0:
                continue
            for t1, c1 in enumerate(forms[1]):
                if not c1:
                    continue
                for t2, c2 in enumerate(forms[2]):
                    if not c2:
                        continue
                    key = tuple(sorted((t0, t1, t2)))
                    poly[key] = poly.get(key, Fraction(0)) + sign * c0 * c1 * c2
    return any(v != 0 for v in poly.values())


def conjugate_in_ambient(g: TargetGroup, a: Sequence[int], b: Sequence[int]) -> bool:
    """Exact SO(3)- (rotation) or SU(2)- (spin) conjugacy of two tuples."""
    pairs = tuple(sorted(set(zip((int(x) for x in a), (int(y) for y in b)))))
    # a conjugation is a bijection on elements
    if len({x for x, _ in pairs}) != len(pairs) or len({y for _, y in pairs}) != len(pairs):
        return False
    return _pairs_conjugate(g, pairs)


@lru_cache(maxsize=None)
def _pairs_conjugate(g: TargetGroup, pairs) -> bool:
    a = [x for x, _ in pairs]
    b = [y for _, y in pairs]
    basis = _intertwiners(g, a, b)
    if g.kind == SPIN:
        return bool(basis)
    return _det_poly_nonzero(basis)


# ---------------------------------------------------------------------------
# bundle signatures


@dataclass(frozen=True)
class BundleSignature:
    xi: Tuple[int, ...]
    tau: Tuple[int, ...]
    w2: str

    def key(self) -> str:
        bits = lambda t: "".join(str(x) for x in t) or "-"
        return f"xi={bits(self.xi)} tau={bits(self.tau)} w2={self.w2}"

    def __str__(self):
        return self.key()


class MissingLinking(ValueError):
    pass


@lru_cache(maxsize=16)
def _lift_tables(g: TargetGroup):
    """Sign cocycle of rational lifts: lift(x) lift(y) = eps(x,y) * lam * lift(xy)."""
    lifts = [g.lift(i) for i in range(g.order)]
    n = g.order
    eps = np.ones((n, n), dtype=np.int8)
    for x in range(n):
        for y in range(n):
            prod = qmul(lifts[x], lifts[y])
            ref = lifts[int(g.mult[x, y])]
            k = next(i for i in range(4) if ref[i] != 0)
            eps[x, y] = 1 if prod[k] / ref[k] > 0 else -1
    inv_sign = np.ones(n, dtype=np.int8)
    for x in range(n):
        conj = qconj(lifts[x])
        ref = lifts[int(g.inverse[x])]
        k = next(i for i in range(4) if ref[i] != 0)
        inv_sign[x] = 1 if conj[k] / ref[k] > 0 else -1
    return eps, inv_sign


def relator_signs(p: Presentation, rep: Rep) -> List[int]:
    """Sign of each relator evaluated on quaternion lifts of the images."""
    g = rep.group
    eps, inv_sign = _lift_tables(g)
    out = []
    for r in p.relators:
        cur, sign = g.identity, 1
        for x, e in r:
            v = rep.values[x]
            if e == -1:
                sign *= int(inv_sign[v])
                v = int(g.inverse[v])
            sign *= int(eps[cur, v])
            cur = int(g.mult[cur, v])
        if g.kind == SPIN and g.minus_one is not None and cur == g.minus_one:
            sign = -sign
            cur = g.identity
        if cur != g.identity:
            raise ValueError("not a representation")
        out.append(sign)
    return out


@lru_cache(maxsize=16)
def _w2_basis(p: Presentation):
    """Reduced echelon basis (mod 2) of the span of the exponent-sum columns."""
    rows = p.exponent_matrix()
    cols = [[rows[i][j] % 2 for i in range(len(rows))] for j in range(p.ngens)]
    basis: List[Tuple[int, List[int]]] = []
    for v in cols:
        v = list(v)
        for piv, b in basis:
            if v[piv]:
                v = [x ^ y for x, y in zip(v, b)]
        if any(v):
            piv = v.index(1)
            basis = [(q, [x ^ y for x, y in zip(b, v)] if b[piv] else b) for q, b in basis]
            basis.append((piv, v))
    return sorted(basis)


def w2_class(p: Presentation, rep: Rep) -> str:
    """Canonical representative of the relator-sign vector modulo sign changes of lifts."""
    signs = relator_signs(p, rep)
    v = [1 if s == -1 else 0 for s in signs]
    for piv, b in _w2_basis(p):
        if v[piv]:
            v = [x ^ y for x, y in zip(v, b)]
    bits = "".join(str(x) for x in v)
    return hex(int(bits, 2))[2:] if bits else "0"


def _translation_generators(p: Presentation) -> List[int]:
    if p.affine is None:
        return []
    out = []
    for i, name in enumerate(p.generators):
        lin, tr = p.affine[name]
        if all(lin[r][c] == int(r == c) for r in range(len(lin)) for c in range(len(lin))) and any(tr):
            out.append(i)
    return out


def bundle_signature(rep: Rep, p: Presentation, require_linking: bool = True) -> BundleSignature:
    if require_linking and not p.linking:
        raise MissingLinking("presentation has no linking words")
    g = rep.group

    def nontrivial(idx: int) -> int:
        return int(g.adjoint(idx) != g.adjoint(g.identity))

    xi = tuple(nontrivial(rep.evaluate(w)) for _, w in p.linking)
    tau = tuple(nontrivial(rep.values[i]) for i in _translation_generators(p))
    return BundleSignature(xi, tau, w2_class(p, rep))


# ---------------------------------------------------------------------------
# per-class invariants


def is_irreducible(rep: Rep) -> bool:
    return deformation.h0_dimension(rep) == 0


def image_order(rep: Rep) -> int:
    return len(rep.group.subgroup_closure(rep.values))


def centralizer_order(rep: Rep) -> int:
    """Order of the centralizer of the adjoint image among octahedral rotations."""
    if not is_irreducible(rep):
        raise ValueError("centralizer order is defined for irreducible classes")
    s4 = catalog_target("S4")
    g = rep.group
    image = [g.adjoint(v) for v in rep.values]
    if any(s4.index_of(m) is None for m in image):
        raise UnsupportedImage("image is not inside the octahedral rotation group")
    # Skew matrices commuting with A correspond to vectors fixed by A, so the
    # so(3)-commutant is trivial exactly when h0 = 0 (checked above).
    idx = [s4.index_of(m) for m in image]
    count = 0
    for h in range(s4.order):
        if all(s4.mult[h, x] == s4.mult[x, h] for x in idx):
            count += 1
    return count


@dataclass
class RepClass:
    rep: Rep
    signature_ids: np.ndarray = field(repr=False)
    depth: int
    orbits: int
    image_order: int
    irreducible: bool
    h0: int
    h1: int
    walpuski: Optional[int]
    bundle: BundleSignature
    centralizer: Optional[int] = None
    multiplicity: Optional[int] = None

    @property
    def trace_signature(self) -> Tuple[Fraction, ...]:
        _, values = _trace_table(self.rep.group)
        return tuple(values[int(i)] for i in self.signature_ids)

    @property
    def signature_digest(self) -> str:
        text = ",".join(str(x) for x in self.trace_signature)
        return hashlib.sha256(text.encode()).hexdigest()

    @property
    def nondegenerate(self) -> bool:
        return self.h1 == 0

    @property
    def values(self) -> Tuple[int, ...]:
        return self.rep.values


def reduce_to_classes(rows: np.ndarray, g: TargetGroup, depth: int = 3):
    """Group solutions into conjugacy classes.

    Returns a list of (representative values, signature ids, orbit count),
    sorted by representative.
    """
    orbits = canonical_orbits(np.asarray(rows, dtype=np.int16), g)
    if len(orbits) == 0:
        return []
    if orbits.shape[1] == 0:
        return [((), np.zeros(0, dtype=np.int16), 1)]
    sig = _signature_ids(orbits, g, depth)
    buckets: Dict[bytes, List[int]] = {}
    for i in range(len(orbits)):
        buckets.setdefault(sig[i].tobytes(), []).append(i)
    out = []
    for members in buckets.values():
        classes: List[List[int]] = []
        for i in members:
            for cl in classes:
                if conjugate_in_ambient(g, orbits[cl[0]], orbits[i]):
                    cl.append(i)
                    break
            else:
                classes.append([i])
        for cl in classes:
            first = min(cl)  # orbits are sorted, so the least index is lex-least
            out.append((tuple(int(x) for x in orbits[first]), sig[first], len(cl)))
    out.sort(key=lambda t: t[0])
    return out


def _w2_bits(p: Presentation, g: TargetGroup, v: np.ndarray) -> List[str]:
    eps, inv_sign = _lift_tables(g)
    k = len(v)
    bits = np.zeros((k, len(p.relators)), dtype=np.uint8)
    for j, r in enumerate(p.relators):
        cur = np.full(k, g.identity, dtype=np.int64)
        sign = np.ones(k, dtype=np.int8)
        for x, e in r:
            val = v[:, x].astype(np.int64)
            if e == -1:
                sign *= inv_sign[val]
                val = g.inverse[val].astype(np.int64)
            sign *= eps[cur, val]
            cur = g.mult[cur, val].astype(np.int64)
        if g.kind == SPIN and g.minus_one is not None:
            flip = cur == g.minus_one
            sign[flip] *= -1
            cur[flip] = g.identity
        if np.any(cur != g.identity):
            raise ValueError("not a representation")
        bits[:, j] = sign == -1
    for piv, b in _w2_basis(p):
        hit = bits[:, piv] == 1
        bits[hit] ^= np.array(b, dtype=np.uint8)
    out = []
    for row in bits:
        text = "".join("1" if x else "0" for x in row)
        out.append(hex(int(text, 2))[2:] if text else "0")
    return out


def bundle_signatures(p: Presentation, g: TargetGroup, v: np.ndarray) -> List[BundleSignature]:
    v = np.asarray(v, dtype=np.int64)
    adj, d = deformation.group_adjoint_int(g)
    nontrivial = np.array([not np.array_equal(m, d * np.eye(3, dtype=np.int64)) for m in adj])
    xi = [nontrivial[deformation.evaluate_batch(g, v, w)] for _, w in p.linking]
    taus = [nontrivial[v[:, i]] for i in _translation_generators(p)]
    w2 = _w2_bits(p, g, v)
    out = []
    for i in range(len(v)):
        out.append(BundleSignature(tuple(int(x[i]) for x in xi), tuple(int(t[i]) for t in taus), w2[i]))
    return out


def analyse_classes(p: Presentation, g: TargetGroup, grouped, depth: int, count_mod2: int,
                    strict: bool = False, batch: int = 2048) -> List[RepClass]:
    """Per-class invariants for the output of :func:`reduce_to_classes`."""
    out: List[RepClass] = []
    image_cache: Dict[frozenset, tuple] = {}
    for start in range(0, len(grouped), batch):
        chunk = grouped[start:start + batch]
        v = np.array([c[0] for c in chunk], dtype=np.int64).reshape(len(chunk), p.ngens)
        h0 = deformation.batch_h0(g, v)
        h1 = deformation.batch_h1(p, g, v, h0)
        wal = deformation.batch_walpuski(p, g, v) if p.affine is not None else None
        sigs = bundle_signatures(p, g, v)
        for i, (values, sig_ids, orbits) in enumerate(chunk):
            w = None if wal is None else int(wal[i])
            if w is not None and (h1[i] == 0) != (w == 0):
                raise deformation.ConsistencyFailure(f"h1={h1[i]}, fixed-vector dimension {w} at {values}")
            rep = Rep(g, tuple(values))
            irreducible = bool(h0[i] == 0)
            key = frozenset(values)
            if key not in image_cache:
                cent, err = None, None
                if irreducible:
                    try:
                        cent = centralizer_order(rep)
                    except UnsupportedImage as exc:
                        err = exc
                image_cache[key] = (image_order(rep), cent, err)
            order, cent, err = image_cache[key]
            cls = RepClass(rep, sig_ids, depth, orbits, order, irreducible, int(h0[i]), int(h1[i]), w, sigs[i])
            if irreducible:
                if g.kind == SPIN:
                    cls.multiplicity = 1
                elif err is not None:
                    if strict:
                        raise err
                else:
                    if count_mod2 % cent:
                        raise deformation.ConsistencyFailure("centralizer order does not divide |Hom(G, Z/2)|")
                    cls.centralizer = cent
                    cls.multiplicity = count_mod2 // cent
            out.append(cls)
    return out


def invariant(classes: Sequence[RepClass]) -> Dict[str, int]:
    """Per bundle-signature totals over irreducible non-degenerate classes."""
    totals: Dict[str, int] = {}
    for c in classes:
        if c.irreducible and c.nondegenerate and c.multiplicity is not None:
            k = c.bundle.key()
            totals[k] = totals.get(k, 0) + c.multiplicity
    return dict(sorted(totals.items()))


# ---------------------------------------------------------------------------
# estimator


class RepresentationCensus(BaseEstimator):
    """Count irreducible flat classes of a presentation in a finite target.

    Parameters
    ----------
    target : str or TargetGroup
        Catalog name (``V4``, ``S4``, ``Q8`` ...) or an explicit group.
    prune : bool
        Restrict the first noncentral generator to conjugacy class
        representatives during enumeration.
    jobs : int
        Worker processes for enumeration; results do not depend on it.
    depth : int
        Word length of the trace schedule.
    strict : bool
        Raise on images whose centralizer cannot be certified.
    """

    def __init__(self, target="S4", prune=False, jobs=1, depth=3, strict=False):
        self.target = target
        self.prune = prune
        self.jobs = jobs
        self.depth = depth
        self.strict = strict

    def _validate_params(self):
        if not isinstance(self.jobs, int) or self.jobs < 1:
            raise ValueError(f"jobs must be a positive integer, got {self.jobs!r}")
        if not isinstance(self.depth, int) or self.depth < 1:
            raise ValueError(f"depth must be a positive integer, got {self.depth!r}")

    def _target_group(self) -> TargetGroup:
        return self.target if isinstance(self.target, TargetGroup) else catalog_target(self.target)

    def fit(self, presentation: Presentation, y=None):
        self._validate_params()
        if not isinstance(presentation, Presentation):
            raise TypeError("fit expects a Presentation")
        g = self._target_group()
        rows = enumerate_array(presentation, g, prune=bool(self.prune), jobs=self.jobs)
        count_mod2 = hom_count_mod2(presentation)
        grouped = reduce_to_classes(rows, g, self.depth)
        self.group_ = g
        self.presentation_ = presentation
        self.raw_count_ = int(len(rows))
        self.hom_count_mod2_ = count_mod2
        self.classes_ = analyse_classes(presentation, g, grouped, self.depth, count_mod2, self.strict)
        self.totals_ = invariant(self.classes_)
        return self

    def irreducible_classes(self) -> List[RepClass]:
        check_is_fitted(self, "classes_")
        return [c for c in self.classes_ if c.irreducible]

    def score(self, presentation=None, y=None) -> int:
        """Total count over all bundle signatures."""
        check_is_fitted(self, "classes_")
        return sum(self.totals_.values())
