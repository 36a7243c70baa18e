"""m-divisible non-crossing partitions and the two cyclic actions on them.

A tuple (w0; w1, ..., wm) with product c and lengths summing to n is the
same thing as a multichain u0 <= u1 <= ... <= u_{m-1} <= c of prefix
products, which is how the tuples are enumerated.  Internally a tuple is a
row of indices into the interval [1, c] (see ``absorder.NCIndex``), so the
actions reduce to column shuffles and lookups in the conjugation table.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import prod

import numpy as np

from ._intmat import batch_inverse
from .absorder import NCIndex, abs_lengths, nc_index
from .groups import GroupElement, ReflectionGroup

__all__ = [
    "ActionKind",
    "NCTuple",
    "act_power",
    "act_power_indices",
    "action_order",
    "brute_fixed_count",
    "enumerate_ncm",
    "ncm_indices",
    "phi_once",
    "psi_once",
]

DEFAULT_NCM_BOUND = 1_000_000


class ActionKind(str, Enum):
    PHI = "phi"
    PSI = "psi"

    @classmethod
    def parse(cls, value) -> "ActionKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"action must be 'phi' or 'psi', got {value!r}") from None


@dataclass(frozen=True)
class NCTuple:
    m: int
    parts: tuple[GroupElement, ...]

    def __post_init__(self):
        if len(self.parts) != self.m + 1:
            raise ValueError(f"expected {self.m + 1} components, got {len(self.parts)}")

    def product(self) -> GroupElement:
        out = self.parts[0]
        for w in self.parts[1:]:
            out = out * w
        return out

    def is_valid(self, g: ReflectionGroup) -> bool:
        if self.product() != g.coxeter:
            return False
        lengths = abs_lengths(g, np.stack([w.array for w in self.parts])) if g.rank else [0]
        return int(sum(lengths)) == g.rank

    def key(self) -> bytes:
        return b"".join(w.key for w in self.parts)


def action_order(g: ReflectionGroup, m: int, kind) -> int:
    kind = ActionKind.parse(kind)
    return m * g.h if kind is ActionKind.PHI else (m + 1) * g.h


def _fuss_catalan(g: ReflectionGroup, m: int) -> int:
    value = prod(Fraction(m * g.h + d, d) for d in g.degrees)
    assert value.denominator == 1
    return int(value)


def ncm_indices(g: ReflectionGroup, m: int, bound: int = DEFAULT_NCM_BOUND) -> np.ndarray:
    """All tuples of NC^m as an (N, m+1) array of interval indices, sorted.

    Rows are ordered by the component lengths first and then by the
    component indices, which follow the canonical element order.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    key = ("ncm", m)
    if key in g.cache:
        return g.cache[key]
    expected = _fuss_catalan(g, m)
    if expected > bound:
        raise OverflowError(f"|NC^{m}({g.name})| = {expected} exceeds the bound {bound}")
    idx = nc_index(g)
    # columns are filled from the right: u_m = c, then u_{k} <= u_{k+1}
    cur = np.array([idx.coxeter], dtype=np.int64)
    cols: list[np.ndarray] = []
    for _ in range(m):
        uniq, inverse = np.unique(cur, return_inverse=True)
        inverse = inverse.ravel()
        xs_list, zs_list, deg = [], [], np.zeros(len(uniq), dtype=np.int64)
        for i, y in enumerate(uniq):
            xs, zs = idx.down_set(int(y))
            xs_list.append(xs)
            zs_list.append(zs)
            deg[i] = len(xs)
        starts = np.concatenate([[0], np.cumsum(deg)[:-1]])
        flat_x = np.concatenate(xs_list)
        flat_z = np.concatenate(zs_list)
        counts = deg[inverse]
        rows = np.repeat(np.arange(len(cur)), counts)
        offs = np.arange(counts.sum()) - np.repeat(np.cumsum(counts) - counts, counts)
        pick = starts[inverse][rows] + offs
        cols = [col[rows] for col in cols]
        cols.insert(0, flat_z[pick])
        cur = flat_x[pick]
    cols.insert(0, cur)
    tuples = np.stack(cols, axis=1) if cols else np.zeros((1, 1), dtype=np.int64)
    if len(tuples) != expected:
        raise AssertionError(f"enumerated {len(tuples)} tuples, product formula gives {expected}")
    lens = idx.lengths[tuples]
    order = np.lexsort(np.concatenate([tuples, lens], axis=1).T[::-1])
    tuples = tuples[order]
    tuples.flags.writeable = False
    g.cache[key] = tuples
    return tuples


def enumerate_ncm(g: ReflectionGroup, m: int, bound: int = DEFAULT_NCM_BOUND) -> list[NCTuple]:
    idx = nc_index(g)
    els = idx.elements
    return [NCTuple(m, tuple(els[i] for i in row)) for row in ncm_indices(g, m, bound)]


def act_power_indices(idx: NCIndex, tuples: np.ndarray, m: int, kind, p: int) -> np.ndarray:
    """Closed-form p-th power of the action on index tuples.

    For phi only columns 1..m are meaningful on return; column 0 is left as
    -1 because it is determined by the others (see ``complete_first``).
    """
    kind = ActionKind.parse(kind)
    h = idx.group.h
    tuples = np.asarray(tuples)
    out = np.empty_like(tuples)
    if kind is ActionKind.PHI:
        p %= m * h
        a, b = divmod(p, m)
        ca, ca1 = idx.conj_perm(a), idx.conj_perm(a + 1)
        for j in range(1, m + 1):
            if j <= b:
                out[:, j] = ca1[tuples[:, m - b + j]]
            else:
                out[:, j] = ca[tuples[:, j - b]]
        out[:, 0] = -1
    else:
        p %= (m + 1) * h
        a, b = divmod(p, m + 1)
        ca, ca1 = idx.conj_perm(a), idx.conj_perm(a + 1)
        for j in range(m + 1):
            if j < b:
                out[:, j] = ca1[tuples[:, j - b + m + 1]]
            else:
                out[:, j] = ca[tuples[:, j - b]]
    return out


def complete_first(idx: NCIndex, tuples: np.ndarray) -> np.ndarray:
    """Fill column 0 with the element completing the product to c."""
    g = idx.group
    out = np.array(tuples, copy=True)
    if out.shape[1] == 1:
        out[:, 0] = idx.coxeter
        return out
    prod_arr = idx.arrays[out[:, 1]]
    for j in range(2, out.shape[1]):
        prod_arr = prod_arr @ idx.arrays[out[:, j]]
    first = g.coxeter.array @ batch_inverse(prod_arr)
    out[:, 0] = idx.indices(first)
    if (out[:, 0] < 0).any():
        raise AssertionError("completion left the interval")
    return out


def act_power(g: ReflectionGroup, m: int, x: NCTuple, kind, p: int) -> NCTuple:
    """Apply phi^p or psi^p to a tuple, directly from the closed form."""
    kind = ActionKind.parse(kind)
    if p < 0:
        raise ValueError("p must be nonnegative")
    w = list(x.parts)
    if kind is ActionKind.PHI:
        p %= m * g.h
        a, b = divmod(p, m)
        new = [None] * (m + 1)
        for j in range(1, m + 1):
            new[j] = g.conjugate(w[m - b + j], a + 1) if j <= b else g.conjugate(w[j - b], a)
        rest = new[1]
        for v in new[2:]:
            rest = rest * v
        new[0] = g.coxeter * rest.inverse()
    else:
        p %= (m + 1) * g.h
        a, b = divmod(p, m + 1)
        new = [g.conjugate(w[j - b + m + 1], a + 1) if j < b else g.conjugate(w[j - b], a) for j in range(m + 1)]
    return NCTuple(m, tuple(new))


def phi_once(g: ReflectionGroup, x: NCTuple) -> NCTuple:
    w = x.parts
    y = g.conjugate(w[-1], 1)
    return NCTuple(x.m, (y * w[0] * y.inverse(), y) + tuple(w[1:-1]))


def psi_once(g: ReflectionGroup, x: NCTuple) -> NCTuple:
    w = x.parts
    return NCTuple(x.m, (g.conjugate(w[-1], 1),) + tuple(w[:-1]))


def brute_fixed_count(g: ReflectionGroup, m: int, kind, p: int, bound: int = DEFAULT_NCM_BOUND) -> int:
    """Number of tuples of NC^m fixed by the p-th power of the action."""
    kind = ActionKind.parse(kind)
    if p < 0:
        raise ValueError("p must be nonnegative")
    tuples = ncm_indices(g, m, bound)
    idx = nc_index(g)
    moved = act_power_indices(idx, tuples, m, kind, p)
    if kind is ActionKind.PHI:
        same = (moved[:, 1:] == tuples[:, 1:]).all(axis=1)
    else:
        same = (moved == tuples).all(axis=1)
    return int(same.sum())
