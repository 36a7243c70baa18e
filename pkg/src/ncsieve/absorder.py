"""Reflection length, the absolute order and the interval [1, c].

Lengths are fixed-space codimensions: l(w) = rank(w - I).  Since
rank(u^-1 w - I) = rank(w - u), the test u <= w needs no inverse:

    u <= w  iff  rank(u - I) + rank(w - u) = rank(w - I).

All ranks are computed in batch on the realified integer matrices and
divided by the field degree.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._intmat import _HASH_WEIGHTS, batch_inverse, batch_rank, lex_order, rank_at_most, row_keys, unique_rows
from .groups import GroupElement, ReflectionGroup

__all__ = [
    "NCIndex",
    "NCStratum",
    "abs_length",
    "abs_lengths",
    "interval_below",
    "kreweras",
    "le_T",
    "nc_index",
    "nc_interval",
    "reflection_length_bfs",
    "reflections_below",
]

DEFAULT_NC_BOUND = 1_000_000
_CHUNK = 100_000


def abs_lengths(g: ReflectionGroup, arrays: np.ndarray) -> np.ndarray:
    arrays = np.asarray(arrays, dtype=np.int64)
    if len(arrays) == 0:
        return np.zeros(0, dtype=np.int64)
    eye = np.eye(g.dim, dtype=np.int64)
    return np.concatenate(
        [batch_rank(arrays[s:s + _CHUNK] - eye) for s in range(0, len(arrays), _CHUNK)]
    ) // max(g.phi, 1)


def abs_length(g: ReflectionGroup, w: GroupElement) -> int:
    if g.rank == 0:
        return 0
    return int(abs_lengths(g, w.array[None])[0])


def _below_mask(g: ReflectionGroup, us: np.ndarray, w: np.ndarray, lu: np.ndarray | None = None) -> np.ndarray:
    """Mask of the rows u of ``us`` with u <= w."""
    if len(us) == 0 or g.rank == 0:
        return np.ones(len(us), dtype=bool)
    lw = abs_lengths(g, w[None])[0]
    if lu is None:
        lu = abs_lengths(g, us)
    mask = lu <= lw
    idx = np.nonzero(mask)[0]
    out = np.zeros(len(us), dtype=bool)
    for s in range(0, len(idx), _CHUNK):
        part = idx[s:s + _CHUNK]
        r = batch_rank(w[None] - us[part]) // g.phi
        out[part] = (lu[part] + r) == lw
    return out


def le_T(g: ReflectionGroup, u: GroupElement, w: GroupElement) -> bool:
    return bool(_below_mask(g, u.array[None], w.array)[0])


def kreweras(g: ReflectionGroup, w: GroupElement) -> GroupElement:
    """w^-1 c for w in [1, c]."""
    if not le_T(g, w, g.coxeter):
        raise ValueError("kreweras complement needs an element below the Coxeter element")
    return g.element(batch_inverse(w.array[None])[0] @ g.coxeter.array)


@dataclass(frozen=True)
class NCStratum:
    length: int
    elements: tuple

    @property
    def size(self) -> int:
        return len(self.elements)


class NCIndex:
    """The interval [1, c] as one array, ordered by (length, canonical order).

    Element i has matrix ``arrays[i]`` and length ``lengths[i]``; the helper
    tables (conjugation by c, complements, down-sets) are built lazily.
    """

    def __init__(self, g: ReflectionGroup, arrays: np.ndarray, lengths: np.ndarray):
        self.group = g
        self.arrays = arrays
        self.arrays.flags.writeable = False
        self.lengths = lengths
        self.keys = row_keys(arrays.reshape(len(arrays), -1))
        self.lookup = {k: i for i, k in enumerate(self.keys)}
        n = g.rank
        self.offsets = np.searchsorted(lengths, np.arange(n + 2))
        self.identity = 0
        self.coxeter = self.lookup[g.coxeter.key] if n else 0
        self._conj: dict[int, np.ndarray] = {}
        self._complement = None
        self._down: dict[int, tuple[np.ndarray, np.ndarray]] = {}
        self._elements = None
        self._inverses = None
        self._hash_sorted = None

    def __len__(self):
        return len(self.arrays)

    @property
    def elements(self) -> list[GroupElement]:
        if self._elements is None:
            self._elements = [self.group.element(a) for a in self.arrays]
        return self._elements

    def stratum(self, k: int) -> np.ndarray:
        """Indices of the elements of length k."""
        return np.arange(self.offsets[k], self.offsets[k + 1])

    def index(self, w: GroupElement | np.ndarray) -> int:
        arr = w.array if isinstance(w, GroupElement) else np.ascontiguousarray(w, dtype=np.int64)
        return self.lookup.get(arr.tobytes(), -1)

    def _hashes(self, flat: np.ndarray) -> np.ndarray:
        with np.errstate(over="ignore"):
            return flat @ _HASH_WEIGHTS[: flat.shape[1]]

    def indices(self, arrays: np.ndarray) -> np.ndarray:
        """Index of each matrix in the interval, -1 where absent."""
        flat = np.ascontiguousarray(arrays, dtype=np.int64).reshape(len(arrays), -1)
        width = flat.shape[1]
        if self._hash_sorted is None:
            own = self.arrays.reshape(len(self.arrays), -1)
            if own.shape[1] <= len(_HASH_WEIGHTS):
                hs = self._hashes(own)
                order = np.argsort(hs, kind="stable")
                if len(np.unique(hs)) == len(hs):
                    self._hash_sorted = (hs[order], order)
            if self._hash_sorted is None:
                self._hash_sorted = False
        if self._hash_sorted is False or width > len(_HASH_WEIGHTS) or len(flat) == 0:
            return np.array([self.lookup.get(k, -1) for k in row_keys(flat)], dtype=np.int64)
        sorted_h, order = self._hash_sorted
        hs = self._hashes(flat)
        pos = np.minimum(np.searchsorted(sorted_h, hs), len(sorted_h) - 1)
        out = np.where(sorted_h[pos] == hs, order[pos], -1)
        hit = out >= 0
        # a hash match must be an exact match
        exact = (self.arrays.reshape(len(self.arrays), -1)[out[hit]] == flat[hit]).all(axis=1)
        out[np.nonzero(hit)[0][~exact]] = -1
        return out

    @property
    def inverses(self) -> np.ndarray:
        if self._inverses is None:
            self._inverses = batch_inverse(self.arrays)
            self._inverses.flags.writeable = False
        return self._inverses

    def conj_perm(self, k: int = 1) -> np.ndarray:
        """perm[i] = index of c^k x_i c^-k."""
        k %= self.group.h
        if k not in self._conj:
            if k == 0:
                self._conj[0] = np.arange(len(self))
            else:
                base = self.conj_perm(1) if k != 1 else None
                if base is None:
                    out = self.indices(self.group.conjugate_batch(self.arrays, 1))
                    if (out < 0).any():
                        raise AssertionError("conjugation by c does not preserve [1, c]")
                    self._conj[1] = out
                else:
                    self._conj[k] = base[self.conj_perm(k - 1)]
        return self._conj[k]

    def complement(self) -> np.ndarray:
        """comp[i] = index of x_i^-1 c."""
        if self._complement is None:
            inv = batch_inverse(self.arrays)
            comp = self.indices(inv @ self.group.coxeter.array)
            if (comp < 0).any():
                raise AssertionError("complement left the interval")
            self._complement = comp
        return self._complement

    def down_set(self, y: int) -> tuple[np.ndarray, np.ndarray]:
        """(xs, zs): all x <= x_y with x * z = x_y, as index arrays."""
        if y not in self._down:
            ly = int(self.lengths[y])
            cand = np.arange(self.offsets[ly + 1])
            if y == self.coxeter:
                xs = cand
                zs = self.complement()[xs]
            else:
                # for x, y in [1, c]: x <= y iff l(x) + l(x^-1 y) = l(y), and then x^-1 y is in [1, c]
                zs = self.indices(self.inverses[cand] @ self.arrays[y])
                keep = zs >= 0
                keep[keep] = self.lengths[cand[keep]] + self.lengths[zs[keep]] == ly
                xs, zs = cand[keep], zs[keep]
            self._down[y] = (xs, zs)
        return self._down[y]


def _bfs_strata(g: ReflectionGroup, bound: int) -> list[np.ndarray]:
    n, dim, phi = g.rank, g.dim, g.phi
    eye = np.eye(dim, dtype=np.int64)
    strata = [eye[None]]
    if n == 0:
        return strata
    refl = g.stack(g.reflections)
    c = g.coxeter.array
    total = 1
    for k in range(n):
        if 2 * (k + 1) > n:
            # upper half by complements: x -> x^-1 c maps length j onto n - j
            low = strata[n - k - 1]
            layer = batch_inverse(low) @ c
            layer = layer[lex_order(layer.reshape(len(layer), -1))]
            total += len(layer)
            if total > bound:
                raise OverflowError(f"[1, c] exceeds the size bound {bound}")
            strata.append(layer)
            continue
        frontier = strata[-1]
        found: dict[bytes, np.ndarray] = {}
        step = max(1, _CHUNK // len(refl))
        for s in range(0, len(frontier), step):
            prods = (frontier[s:s + step, None] @ refl[None]).reshape(-1, dim, dim)
            prods = prods[unique_rows(prods.reshape(len(prods), -1))]
            # lengths grow by at most one, so rank(c - x) alone certifies x <= c
            keep = rank_at_most(c[None] - prods, (n - k - 1) * phi)
            for a in prods[keep]:
                found.setdefault(a.tobytes(), a)
        layer = np.array(list(found.values()), dtype=np.int64).reshape(-1, dim, dim)
        layer = layer[lex_order(layer.reshape(len(layer), -1))]
        total += len(layer)
        if total > bound:
            raise OverflowError(f"[1, c] exceeds the size bound {bound}")
        strata.append(layer)
    return strata


def nc_index(g: ReflectionGroup, bound: int = DEFAULT_NC_BOUND) -> NCIndex:
    if "nc_index" not in g.cache:
        strata = _bfs_strata(g, bound)
        arrays = np.concatenate(strata)
        lengths = np.concatenate([np.full(len(s), k, dtype=np.int64) for k, s in enumerate(strata)])
        g.cache["nc_index"] = NCIndex(g, arrays, lengths)
    return g.cache["nc_index"]


def nc_interval(g: ReflectionGroup, bound: int = DEFAULT_NC_BOUND) -> list[NCStratum]:
    """Strata 0..n of [1, c], each in canonical order."""
    idx = nc_index(g, bound)
    return [
        NCStratum(length=k, elements=tuple(idx.elements[i] for i in idx.stratum(k)))
        for k in range(g.rank + 1)
    ]


def reflections_below(g: ReflectionGroup, w: GroupElement) -> list[GroupElement]:
    refl = g.stack(g.reflections)
    mask = _below_mask(g, refl, w.array, np.ones(len(refl), dtype=np.int64))
    return [t for t, ok in zip(g.reflections, mask) if ok]


def interval_below(g: ReflectionGroup, w: GroupElement) -> list[list[GroupElement]]:
    """Strata of [1, w], found by multiplying up with reflections below w."""
    dim = g.dim
    eye = np.eye(dim, dtype=np.int64)
    lw = abs_length(g, w)
    tb = g.stack(reflections_below(g, w))
    layers = [eye[None]]
    for k in range(lw):
        prods = (layers[-1][:, None] @ tb[None]).reshape(-1, dim, dim)
        prods = prods[unique_rows(prods.reshape(len(prods), -1))]
        keep = rank_at_most(w.array[None] - prods, (lw - k - 1) * g.phi)
        layer = prods[keep]
        layers.append(layer[lex_order(layer.reshape(len(layer), -1))])
    return [[g.element(a) for a in layer] for layer in layers]


def reflection_length_bfs(g: ReflectionGroup, bound: int = 100_000) -> dict[bytes, int]:
    """Word length over T of every group element (Cayley graph distance)."""
    dim = g.dim
    eye = np.eye(dim, dtype=np.int64)
    dist = {eye.tobytes(): 0}
    frontier = eye[None]
    refl = g.stack(g.reflections)
    d = 0
    while len(frontier):
        d += 1
        prods = (frontier[:, None] @ refl[None]).reshape(-1, dim, dim)
        new = []
        for a in prods:
            key = a.tobytes()
            if key not in dist:
                dist[key] = d
                new.append(a)
                if len(dist) > bound:
                    raise OverflowError(f"group exceeds the BFS bound {bound}")
        frontier = np.array(new, dtype=np.int64).reshape(-1, dim, dim)
    return dist
