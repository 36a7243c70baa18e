"""Integer matrix helpers behind the group element representation.

A matrix over Z[zeta_N] of size n is stored as an integer matrix of size
n * phi(N): every entry a is replaced by the matrix of multiplication by a in
the power basis.  This is a ring homomorphism, so products, equality and
ranks (divided by phi(N)) carry over unchanged, and all heavy loops run on
plain int64 numpy arrays.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .cyclotomic import CycloNumber, _field

# primes just below 2**31: products of two residues stay inside int64
_PRIMES = (
    2147483629, 2147483587, 2147483579, 2147483563, 2147483549,
    2147483543, 2147483497, 2147483489, 2147483477, 2147483423,
    2147483399, 2147483353, 2147483323, 2147483269, 2147483249,
    2147483237, 2147483179, 2147483171, 2147483137, 2147483123,
)


def multiplication_matrix(a: CycloNumber, order: int) -> np.ndarray:
    """Integer matrix of z -> a*z on the power basis of Z[zeta_order]."""
    a = a.embed(order) if a.order != order else a
    f = _field(order)
    deg = f.degree
    out = np.zeros((deg, deg), dtype=np.int64)
    for k in range(deg):
        col = [Fraction(0)] * deg
        for j, c in enumerate(a.coeffs):
            if c:
                row = f.powers[(j + k) % order]
                for i, r in enumerate(row):
                    if r:
                        col[i] += c * r
        for i, v in enumerate(col):
            if v.denominator != 1:
                raise ValueError(f"entry {a!r} is not an algebraic integer in the power basis")
            out[i, k] = int(v)
    return out


def realify(rows, order: int) -> np.ndarray:
    n = len(rows)
    deg = _field(order).degree
    big = np.zeros((n * deg, n * deg), dtype=np.int64)
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ValueError("matrix is not square")
        for j, a in enumerate(row):
            a = CycloNumber.coerce(a)
            if a.is_zero():
                continue
            big[i * deg:(i + 1) * deg, j * deg:(j + 1) * deg] = multiplication_matrix(a, order)
    return big


def derealify(big: np.ndarray, n: int, order: int) -> list[list[CycloNumber]]:
    deg = _field(order).degree
    return [
        [CycloNumber(order, [int(v) for v in big[i * deg:(i + 1) * deg, j * deg]]) for j in range(n)]
        for i in range(n)
    ]


def _rank_mod(a: np.ndarray, p: int) -> np.ndarray:
    a = np.mod(a, p)
    batch, nrows, ncols = a.shape
    rank = np.zeros(batch, dtype=np.int64)
    used = np.zeros((batch, nrows), dtype=bool)
    for col in range(ncols):
        cand = (~used) & (a[:, :, col] != 0)
        has = cand.any(axis=1)
        if not has.any():
            continue
        idx = np.nonzero(has)[0]
        sub = a[idx]
        piv = cand[idx].argmax(axis=1)
        sel = np.arange(len(idx))
        prow = sub[sel, piv]  # (k, ncols)
        pval = prow[:, col][:, None, None]
        factors = sub[:, :, col][:, :, None]
        sub = np.mod(pval * sub - factors * prow[:, None, :], p)
        sub[sel, piv] = prow
        a[idx] = sub
        used[idx, piv] = True
        rank[idx] += 1
    return rank


def _log_minor_bound(mats: np.ndarray) -> float:
    """log2 of a Hadamard bound for every minor, plus slack."""
    norms = np.sqrt((mats.astype(np.float64) ** 2).sum(axis=2))
    k = min(mats.shape[1], mats.shape[2])
    logs = -np.sort(-np.log2(np.maximum(norms, 1.0)), axis=1)[:, :k]
    return float(logs.sum(axis=1).max()) + 2.0


def batch_rank(mats: np.ndarray) -> np.ndarray:
    """Exact ranks over Q of a stack of integer matrices.

    Ranks are taken modulo several large primes; once the product of the
    primes exceeds a Hadamard bound for every minor, the largest modular rank
    equals the rational rank.
    """
    mats = np.asarray(mats, dtype=np.int64)
    if mats.ndim == 2:
        return batch_rank(mats[None])[0]
    batch = mats.shape[0]
    if batch == 0:
        return np.zeros(0, dtype=np.int64)
    if mats.shape[1] == 0 or mats.shape[2] == 0:
        return np.zeros(batch, dtype=np.int64)
    log_bound = _log_minor_bound(mats)
    best = np.zeros(batch, dtype=np.int64)
    acc = 0.0
    for p in _PRIMES:
        best = np.maximum(best, _rank_mod(mats, p))
        acc += math.log2(p)
        if acc > log_bound:
            return best
    raise OverflowError("matrix entries too large for the modular rank certificate")


def lex_order(flat: np.ndarray) -> np.ndarray:
    """Indices sorting the rows of a 2-d integer array lexicographically."""
    if len(flat) == 0:
        return np.zeros(0, dtype=np.int64)
    return np.lexsort(flat.T[::-1])


def compact(flat: np.ndarray) -> np.ndarray:
    """Smallest integer dtype holding the values (used for hashing keys)."""
    if flat.size == 0:
        return flat.astype(np.int8)
    lo, hi = int(flat.min()), int(flat.max())
    for dt in (np.int8, np.int16, np.int32):
        info = np.iinfo(dt)
        if info.min <= lo and hi <= info.max:
            return flat.astype(dt)
    return flat


_HASH_WEIGHTS = np.random.default_rng(20240917).integers(1, 2**62, size=4096, dtype=np.int64)


def unique_rows(flat: np.ndarray) -> np.ndarray:
    """Indices of the first occurrence of each distinct row (sorted)."""
    if len(flat) == 0:
        return np.zeros(0, dtype=np.int64)
    flat = np.ascontiguousarray(flat, dtype=np.int64)
    width = flat.shape[1]
    if width > len(_HASH_WEIGHTS):
        _, first = np.unique(flat, axis=0, return_index=True)
        return np.sort(first)
    with np.errstate(over="ignore"):
        hashes = flat @ _HASH_WEIGHTS[:width]
    _, first, inverse = np.unique(hashes, return_index=True, return_inverse=True)
    # exactness: every row must equal the representative of its hash class
    if not np.array_equal(flat, flat[first[inverse.ravel()]]):
        _, first = np.unique(flat, axis=0, return_index=True)
    return np.sort(first)


def _prime_budget(mats: np.ndarray) -> int:
    log_bound = _log_minor_bound(mats)
    acc, count = 0.0, 0
    for p in _PRIMES:
        acc += math.log2(p)
        count += 1
        if acc > log_bound:
            return count
    raise OverflowError("matrix entries too large for the modular rank certificate")


def rank_at_most(mats: np.ndarray, r) -> np.ndarray:
    """Mask of matrices whose rational rank is <= r (r scalar or per matrix).

    A modular rank never exceeds the rational one, so anything above r modulo
    one prime is rejected at once; survivors are certified by the full set
    of primes.
    """
    mats = np.asarray(mats, dtype=np.int64)
    batch = len(mats)
    r = np.broadcast_to(np.asarray(r, dtype=np.int64), (batch,))
    if batch == 0 or mats.shape[1] == 0 or mats.shape[2] == 0:
        return r >= 0
    alive = np.arange(batch)
    for p in _PRIMES[:_prime_budget(mats)]:
        if not len(alive):
            break
        ranks = _rank_mod(mats[alive], p)
        alive = alive[ranks <= r[alive]]
    out = np.zeros(batch, dtype=bool)
    out[alive] = True
    return out


def batch_inverse(mats: np.ndarray) -> np.ndarray:
    """Inverses of unimodular integer matrices (group elements), checked exactly."""
    mats = np.asarray(mats, dtype=np.int64)
    if mats.size == 0:
        return mats.copy()
    inv = np.rint(np.linalg.inv(mats.astype(np.float64))).astype(np.int64)
    eye = np.eye(mats.shape[-1], dtype=np.int64)
    if not np.array_equal(mats @ inv, np.broadcast_to(eye, mats.shape)):
        raise ArithmeticError("matrix inverse is not integral or lost precision")
    return inv


def row_keys(flat: np.ndarray) -> list[bytes]:
    flat = np.ascontiguousarray(flat, dtype=np.int64)
    return [r.tobytes() for r in flat]
