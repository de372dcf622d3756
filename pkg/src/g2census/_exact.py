"""Exact rational linear algebra used throughout the package.

Matrices are plain lists of rows.  Entries may be ``int`` or ``Fraction``;
ranks are computed fraction-free (Bareiss) after clearing denominators row by
row, so no floating point ever enters a zero/nonzero decision.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

Matrix = List[List[Fraction]]

# Largest prime below 2**31; products of two residues fit in int64.
_PRIME = 2147483629


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> List[Fraction]:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(r) for r in zip(*a)]


def sub(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def kron(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    return [[x * y for x in ra for y in rb] for ra in a for rb in b]


def _integer_rows(rows: Sequence[Sequence]) -> List[List[int]]:
    out = []
    for row in rows:
        row = [frac(x) for x in row]
        if not any(row):
            continue
        den = 1
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def bareiss_rank(rows: Sequence[Sequence]) -> int:
    """Rank of a rational matrix by fraction-free elimination."""
    m = _integer_rows(rows)
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = None
        for r in range(rank, len(m)):
            if m[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, len(m)):
            a = m[r][col]
            row_r, row_p = m[r], m[rank]
            m[r] = [(p * row_r[c] - a * row_p[c]) // prev for c in range(ncols)]
        prev = p
        rank += 1
        if rank == len(m):
            break
    return rank


def _rank_mod(a: np.ndarray, prime: int) -> int:
    a = np.mod(a, prime)
    nrows, ncols = a.shape
    rank = 0
    for col in range(ncols):
        nz = np.nonzero(a[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, col]), prime - 2, prime)
        a[rank] = (a[rank] * inv) % prime
        factors = a[rank + 1:, col].copy()
        if factors.any():
            a[rank + 1:] = (a[rank + 1:] - (factors[:, None] * a[rank][None, :]) % prime) % prime
        rank += 1
        if rank == nrows:
            break
    return rank


def modular_rank(rows: Sequence[Sequence], prime: int = _PRIME) -> int:
    """Rank modulo a large prime.  A lower bound for the rational rank."""
    m = _integer_rows(rows)
    if not m:
        return 0
    return _rank_mod(np.array([[x % prime for x in r] for r in m], dtype=np.int64), prime)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13):  # deterministic below 3.4e12
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _primes_below(n: int, count: int) -> List[int]:
    out = []
    while len(out) < count:
        n -= 1
        if _is_prime(n):
            out.append(n)
    return out


_PRIMES = _primes_below(2 ** 31, 64)


def _hadamard(norms_sq: List[int], k: int) -> int:
    """Upper bound for |minor| of size k, from the k largest row norms."""
    bound = 1
    for v in sorted(norms_sq, reverse=True)[:k]:
        bound *= math.isqrt(v) + 1
    return bound


def _inverse_mod(x: np.ndarray, prime: int) -> np.ndarray:
    result = np.ones_like(x)
    base = x % prime
    e = prime - 2
    while e:
        if e & 1:
            result = result * base % prime
        base = base * base % prime
        e >>= 1
    return result


def batch_rank_mod(a: np.ndarray, prime: int = _PRIME) -> np.ndarray:
    """Ranks modulo ``prime`` of a stack of matrices, shape (k, m, n)."""
    a = np.mod(np.asarray(a, dtype=np.int64), prime)
    k, m, n = a.shape
    rank = np.zeros(k, dtype=np.int64)
    rows = np.arange(m)
    for col in range(n):
        mask = (a[:, :, col] != 0) & (rows[None, :] >= rank[:, None])
        has = mask.any(axis=1)
        if not has.any():
            continue
        sel = np.nonzero(has)[0]
        r = rank[sel]
        piv = mask[sel].argmax(axis=1)
        top = a[sel, r].copy()
        a[sel, r] = a[sel, piv]
        a[sel, piv] = top
        inv = _inverse_mod(a[sel, r, col], prime)
        a[sel, r] = a[sel, r] * inv[:, None] % prime
        pivot_rows = a[sel, r]
        factors = np.where(rows[None, :] > r[:, None], a[sel, :, col], 0)
        a[sel] = (a[sel] - factors[:, :, None] * pivot_rows[:, None, :] % prime) % prime
        rank[sel] += 1
    return rank


def batch_rank_lower_bound(a: np.ndarray, target: int, seed: int = 0, prime: int = _PRIME) -> np.ndarray:
    """Lower bounds for the rational ranks of a stack of integer matrices.

    Each matrix is compressed by a fixed random integer matrix with ``target``
    rows before elimination modulo ``prime``; every step can only lose rank.
    """
    a = np.asarray(a, dtype=np.int64)
    k, m, n = a.shape
    if m <= target:
        return batch_rank_mod(a, prime)
    rng = np.random.default_rng(seed)
    proj = rng.integers(0, 1 << 16, size=(target, m), dtype=np.int64)
    reduced = np.mod(a, prime)
    out = np.empty((k, target, n), dtype=np.int64)
    # split so partial sums stay below 2**63
    step = max(1, (1 << 62) // ((1 << 16) * prime))
    out[:] = 0
    for s in range(0, m, step):
        out = (out + np.einsum("tm,kmn->ktn", proj[:, s:s + step], reduced[:, s:s + step, :])) % prime
    return batch_rank_mod(out, prime)


def certified_rank(m, upper: Optional[int] = None) -> int:
    """Exact rank of an integer matrix by multi-modular elimination.

    The rank modulo any prime is a lower bound.  If r is the best lower bound
    found, every (r+1)-minor is divisible by all primes tried; once their
    product exceeds the Hadamard bound for such minors they must all vanish.
    """
    a = np.asarray(m)
    if a.size == 0:
        return 0
    small = a.dtype.kind == "i" and int(np.abs(a).max()) < 2 ** 20
    if small:
        a = a.astype(np.int64)
        a = np.unique(a[np.any(a != 0, axis=1)], axis=0)
        norms = [int(x) for x in (a * a).sum(axis=1)]
    else:
        a = np.array([[int(x) for x in row] for row in a.tolist()], dtype=object)
        a = a[[any(row) for row in a]]
        norms = [sum(x * x for x in row) for row in a]
    if a.shape[0] == 0:
        return 0
    limit = min(a.shape)
    if upper is not None:
        limit = min(limit, upper)
    best = 0
    product = 1
    for p in _PRIMES:
        if small:
            res = np.mod(a, p)
        else:
            res = np.array([[x % p for x in row] for row in a], dtype=np.int64)
        best = max(best, _rank_mod(res, p))
        product *= p
        if best >= limit or product > _hadamard(norms, best + 1):
            return best
    return bareiss_rank(a.tolist())


def rref(rows: Sequence[Sequence]):
    m = [[frac(x) for x in row] for row in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(rows: Sequence[Sequence], ncols: Optional[int] = None) -> Matrix:
    """Basis (list of vectors) of the right kernel."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return identity(ncols)
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def det(a: Sequence[Sequence]) -> Fraction:
    m = [[frac(x) for x in row] for row in a]
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        p = m[c][c]
        d *= p
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / p
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d


def is_positive_definite(a: Sequence[Sequence]) -> bool:
    """Sylvester's criterion on leading principal minors."""
    n = len(a)
    return all(det([row[:k] for row in a[:k]]) > 0 for k in range(1, n + 1))


def _int_root(n: int, k: int) -> Optional[int]:
    if n < 0:
        if k % 2 == 0:
            return None
        r = _int_root(-n, k)
        return None if r is None else -r
    if n < 2:
        return n
    r = round(n ** (1.0 / k)) if n.bit_length() < 1000 else 1 << (n.bit_length() // k)
    # Newton refinement from the float guess.
    while True:
        nxt = ((k - 1) * r + n // r ** (k - 1)) // k
        if nxt >= r:
            break
        r = nxt
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand ** k == n:
            return cand
    return None


def rational_root(x, k: int) -> Optional[Fraction]:
    """Exact k-th root of a rational, or None when it is irrational."""
    x = frac(x)
    num = _int_root(x.numerator, k)
    den = _int_root(x.denominator, k)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def real_root(x, k: int):
    """k-th root, exact when rational and a float otherwise."""
    exact = rational_root(x, k)
    if exact is not None:
        return exact
    xf = float(x)
    return math.copysign(abs(xf) ** (1.0 / k), xf)
