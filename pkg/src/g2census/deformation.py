"""Infinitesimal deformations of flat representations.

H^1(G, ad rho) is computed from a finite presentation by Fox calculus:

* cocycles: xi in (R^3)^gens with sum_g ad(rho(dr/dg)) xi_g = 0 for each relator;
* coboundaries: xi_g = (1 - ad(rho(g))) v.

The fixed-vector criterion checks for common fixed vectors of L(g) (x) ad(rho(g))
on R^7 (x) R^3, with L(g) the linear part of the affine action.  For flat
orbifolds both vanish together.

All ranks are exact: matrices are scaled to integers and ranked by the
multi-modular certificate in :mod:`._exact`.
"""

from __future__ import annotations

import math
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import _exact
from .presentation import Presentation, PresentationError, free_reduce

Word = Tuple[Tuple[int, int], ...]


class ConsistencyFailure(RuntimeError):
    """The cohomological and fixed-vector criteria disagree."""


class GroupRingElement:
    """Finite formal sum of group words with rational coefficients."""

    def __init__(self, terms=None):
        acc: Dict[Word, Fraction] = defaultdict(Fraction)
        for w, c in (terms.items() if isinstance(terms, dict) else (terms or [])):
            acc[free_reduce(w)] += Fraction(c)
        self.terms = {w: c for w, c in acc.items() if c != 0}

    def __add__(self, other):
        return GroupRingElement(list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other):
        return self + GroupRingElement({w: -c for w, c in other.terms.items()})

    def __mul__(self, other):
        if isinstance(other, GroupRingElement):
            out = []
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    out.append((w1 + w2, c1 * c2))
            return GroupRingElement(out)
        return GroupRingElement({w: c * other for w, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, GroupRingElement) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{list(w)}" for w, c in sorted(self.terms.items()))

    @staticmethod
    def word(w) -> "GroupRingElement":
        return GroupRingElement({tuple(w): 1})

    def evaluate(self, matrix_of_word) -> np.ndarray:
        """Sum of c * M(w) for a function M returning exact matrices."""
        total = None
        for w, c in self.terms.items():
            m = np.array(matrix_of_word(w), dtype=object) * c
            total = m if total is None else total + m
        return total


def fox_derivative(word: Sequence[Tuple[int, int]], g: int) -> GroupRingElement:
    terms = []
    prefix: List[Tuple[int, int]] = []
    for h, e in word:
        if h == g:
            if e == 1:
                terms.append((tuple(prefix), 1))
            else:
                terms.append((tuple(prefix) + ((h, -1),), -1))
        prefix.append((h, e))
    return GroupRingElement(terms)


@lru_cache(maxsize=64)
def _fox_table(relators: Tuple[Word, ...], ngens: int):
    return tuple(tuple(tuple(fox_derivative(r, g).terms.items()) for g in range(ngens)) for r in relators)


# ---------------------------------------------------------------------------
# adjoint data


def _lcm_den(values) -> int:
    d = 1
    for x in values:
        d = d * Fraction(x).denominator // math.gcd(d, Fraction(x).denominator)
    return d


_ADJ_CACHE: Dict[int, tuple] = {}


def group_adjoint_int(group) -> Tuple[np.ndarray, int]:
    """(D * ad(g) for all g as int64 array, D) with D clearing denominators."""
    key = id(group)
    hit = _ADJ_CACHE.get(key)
    if hit is not None and hit[2] is group:
        return hit[0], hit[1]
    mats = [group.adjoint(i) for i in range(group.order)]
    d = _lcm_den(x for m in mats for r in m for x in r)
    arr = np.array([[[int(x * d) for x in r] for r in m] for m in mats], dtype=np.int64)
    _ADJ_CACHE[key] = (arr, d, group)
    return arr, d


def ad_matrix(rep, element: Optional[int] = None, word=None):
    """Exact 3x3 adjoint matrix of an element index (or of a word under rep)."""
    group = rep.group
    if word is not None:
        element = rep.evaluate(word)
    return [list(r) for r in group.adjoint(element)]


def _eval(group, values, word) -> int:
    out = group.identity
    mult, inv = group.mult, group.inverse
    for g, e in word:
        x = values[g]
        out = int(mult[out, x if e == 1 else inv[x]])
    return out


# ---------------------------------------------------------------------------
# ranks


def _stack_minus_identity(group, values) -> np.ndarray:
    adj, d = group_adjoint_int(group)
    eye = d * np.eye(3, dtype=np.int64)
    if not len(values):
        return np.zeros((0, 3), dtype=np.int64)
    return np.concatenate([adj[v] - eye for v in values], axis=0)


def h0_dimension(rep) -> int:
    m = _stack_minus_identity(rep.group, rep.values)
    return 3 - _exact.certified_rank(m, 3)


def cocycle_matrix(presentation: Presentation, rep) -> np.ndarray:
    """Integer matrix (scaled by the adjoint denominator) of size 3R x 3n."""
    group = rep.group
    adj, _ = group_adjoint_int(group)
    n = presentation.ngens
    table = _fox_table(presentation.relators, n)
    out = np.zeros((3 * len(table), 3 * n), dtype=object if _needs_object(adj, table) else np.int64)
    for i, row in enumerate(table):
        for g, terms in enumerate(row):
            if not terms:
                continue
            block = 0
            for w, c in terms:
                block = block + adj[_eval(group, rep.values, w)] * _as_int(c)
            out[3 * i:3 * i + 3, 3 * g:3 * g + 3] = block
    return out


def _as_int(c: Fraction) -> int:
    if c.denominator != 1:
        raise ValueError("Fox coefficients are integers")
    return int(c.numerator)


def _needs_object(adj: np.ndarray, table) -> bool:
    bound = int(np.abs(adj).max()) if adj.size else 1
    longest = max((sum(abs(int(c)) for _, c in terms) for row in table for terms in row), default=0)
    return bound * max(longest, 1) > 2 ** 40


def coboundary_matrix(rep) -> np.ndarray:
    """Integer matrix (3n x 3) of v -> (D v - D ad(rho(g)) v)_g."""
    adj, d = group_adjoint_int(rep.group)
    eye = d * np.eye(3, dtype=np.int64)
    if not len(rep.values):
        return np.zeros((0, 3), dtype=np.int64)
    return np.concatenate([eye - adj[v] for v in rep.values], axis=0)


def h1_dimension(presentation: Presentation, rep) -> int:
    n = presentation.ngens
    h0 = h0_dimension(rep)
    boundary = 3 - h0
    if not presentation.relators:
        return 3 * n - boundary
    c = cocycle_matrix(presentation, rep)
    rank_c = _exact.certified_rank(c, 3 * n - boundary)
    return 3 * n - rank_c - boundary


@lru_cache(maxsize=16)
def _affine_int(presentation: Presentation):
    lin = presentation.linear_parts()
    d = _lcm_den(x for m in lin for r in m for x in r)
    return [np.array([[int(x * d) for x in r] for r in m], dtype=np.int64) for m in lin], d


def walpuski_fixed_dim(presentation: Presentation, rep) -> int:
    if presentation.affine is None:
        raise PresentationError("fixed-vector criterion needs an affine realization")
    lin, dl = _affine_int(presentation)
    adj, da = group_adjoint_int(rep.group)
    dim = lin[0].shape[0] * 3
    eye = dl * da * np.eye(dim, dtype=np.int64)
    blocks = [np.kron(lin[g], adj[v]) - eye for g, v in enumerate(rep.values)]
    return dim - _exact.certified_rank(np.concatenate(blocks, axis=0), dim)


def nondegenerate(presentation: Presentation, rep) -> bool:
    """H^1 = 0, cross-checked against the fixed-vector criterion."""
    h1 = h1_dimension(presentation, rep)
    if presentation.affine is not None:
        w = walpuski_fixed_dim(presentation, rep)
        if (h1 == 0) != (w == 0):
            raise ConsistencyFailure(f"h1={h1} but fixed-vector dimension {w} for {rep.values}")
    return h1 == 0


# ---------------------------------------------------------------------------
# structural checks


def fox_identity_holds(presentation: Presentation, rep) -> bool:
    """sum_g ad(dr/dg)(ad(g) - 1) == ad(r) - 1 for every relator."""
    group = rep.group
    adj, d = group_adjoint_int(group)
    eye = d * np.eye(3, dtype=object)
    table = _fox_table(presentation.relators, presentation.ngens)
    for r, row in zip(presentation.relators, table):
        lhs = np.zeros((3, 3), dtype=object)
        for g, terms in enumerate(row):
            fox = np.zeros((3, 3), dtype=object)
            for w, c in terms:
                fox = fox + adj[_eval(group, rep.values, w)].astype(object) * int(c)
            lhs = lhs + fox.dot(adj[rep.values[g]].astype(object) - eye)
        # both sides carry one extra factor of D from the matrix product
        rhs = (adj[_eval(group, rep.values, r)].astype(object) - eye) * d
        if not np.array_equal(lhs, rhs):
            return False
    return True


def coboundaries_are_cocycles(presentation: Presentation, rep) -> bool:
    if not presentation.relators:
        return True
    c = cocycle_matrix(presentation, rep).astype(object)
    b = coboundary_matrix(rep).astype(object)
    return not np.any(c.dot(b))


# ---------------------------------------------------------------------------
# batched evaluation over many representations
#
# Modular ranks of randomly compressed matrices are lower bounds for the
# rational rank.  Where a bound meets the known maximum the answer is exact;
# every other entry is recomputed with the certified single-matrix routine.


class _Values:
    __slots__ = ("group", "values")

    def __init__(self, group, values):
        self.group = group
        self.values = tuple(int(x) for x in values)


def evaluate_batch(group, v: np.ndarray, word) -> np.ndarray:
    out = np.full(len(v), group.identity, dtype=np.int64)
    for g, e in word:
        col = v[:, g] if e == 1 else group.inverse[v[:, g]]
        out = group.mult[out, col]
    return out


def batch_h0(group, v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=np.int64)
    k, n = v.shape
    if n == 0:
        return np.full(k, 3)
    adj, d = group_adjoint_int(group)
    stack = (adj[v] - d * np.eye(3, dtype=np.int64)).reshape(k, 3 * n, 3)
    lower = _exact.batch_rank_mod(stack)
    out = 3 - lower
    for i in np.nonzero(lower < 3)[0]:
        out[i] = h0_dimension(_Values(group, v[i]))
    return out


def cocycle_stack(presentation: Presentation, group, v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=np.int64)
    adj, _ = group_adjoint_int(group)
    n = presentation.ngens
    table = _fox_table(presentation.relators, n)
    out = np.zeros((len(v), 3 * len(table), 3 * n), dtype=np.int64)
    for i, row in enumerate(table):
        for g, terms in enumerate(row):
            for w, c in terms:
                out[:, 3 * i:3 * i + 3, 3 * g:3 * g + 3] += adj[evaluate_batch(group, v, w)] * _as_int(c)
    return out


def batch_h1(presentation: Presentation, group, v: np.ndarray, h0: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=np.int64)
    n = presentation.ngens
    boundary = 3 - np.asarray(h0)
    upper = 3 * n - boundary
    if not presentation.relators:
        return 3 * n - boundary
    lower = _exact.batch_rank_lower_bound(cocycle_stack(presentation, group, v), 3 * n)
    out = 3 * n - lower - boundary
    for i in np.nonzero(lower < upper)[0]:
        out[i] = h1_dimension(presentation, _Values(group, v[i]))
    return out


def batch_walpuski(presentation: Presentation, group, v: np.ndarray) -> np.ndarray:
    if presentation.affine is None:
        raise PresentationError("fixed-vector criterion needs an affine realization")
    v = np.asarray(v, dtype=np.int64)
    lin, dl = _affine_int(presentation)
    adj, da = group_adjoint_int(group)
    dim = lin[0].shape[0] * 3
    k = len(v)
    eye = dl * da * np.eye(dim, dtype=np.int64)
    blocks = [np.einsum("ij,kab->kiajb", lin[g], adj[v[:, g]]).reshape(k, dim, dim) - eye
              for g in range(presentation.ngens)]
    lower = _exact.batch_rank_lower_bound(np.concatenate(blocks, axis=1), dim)
    out = dim - lower
    for i in np.nonzero(lower < dim)[0]:
        out[i] = walpuski_fixed_dim(presentation, _Values(group, v[i]))
    return out


def batch_fox_identity(presentation: Presentation, group, v: np.ndarray) -> np.ndarray:
    """Per representation: does sum_g ad(dr/dg)(ad(g) - 1) == ad(r) - 1 hold for all r?"""
    v = np.asarray(v, dtype=np.int64)
    adj, d = group_adjoint_int(group)
    eye = d * np.eye(3, dtype=np.int64)
    table = _fox_table(presentation.relators, presentation.ngens)
    ok = np.ones(len(v), dtype=bool)
    for r, row in zip(presentation.relators, table):
        lhs = np.zeros((len(v), 3, 3), dtype=np.int64)
        for g, terms in enumerate(row):
            if not terms:
                continue
            fox = np.zeros((len(v), 3, 3), dtype=np.int64)
            for w, c in terms:
                fox += adj[evaluate_batch(group, v, w)] * _as_int(c)
            lhs += np.einsum("kij,kjl->kil", fox, adj[v[:, g]] - eye)
        rhs = (adj[evaluate_batch(group, v, r)] - eye) * d
        ok &= (lhs == rhs).all(axis=(1, 2))
    return ok


def batch_coboundary_check(presentation: Presentation, group, v: np.ndarray) -> np.ndarray:
    """Per representation: is cocycle_matrix @ coboundary_matrix == 0?"""
    v = np.asarray(v, dtype=np.int64)
    if not presentation.relators:
        return np.ones(len(v), dtype=bool)
    adj, d = group_adjoint_int(group)
    c = cocycle_stack(presentation, group, v)
    b = (d * np.eye(3, dtype=np.int64) - adj[v]).reshape(len(v), -1, 3)
    return ~np.einsum("kij,kjl->kil", c, b).any(axis=(1, 2))
