"""Parabolic types of elements of [1, c] and decomposition numbers.

An element below c is a Coxeter element of a parabolic subgroup, and its
type is read off from its eigenvalues: the multiset of orders of its
non-trivial eigenvalues, found exactly as rank deficiencies of Phi_k(w).
The bundled signature table maps (signature, number of reflections below
the element) to a type label; it is generated by
``tools/make_signature_table.py`` from ``TYPE_CATALOG``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from pathlib import Path

import numpy as np
from sympy import Poly, cyclotomic_poly
from sympy.abc import x as _x

from ._intmat import batch_rank, rank_at_most
from .absorder import NCIndex, abs_lengths, nc_index
from .groups import GroupElement, ReflectionGroup, _closure

__all__ = [
    "ParabolicType",
    "TYPE_CATALOG",
    "TypeLookupError",
    "decomposition_number",
    "eigen_signature",
    "eigen_signatures",
    "factorization_count",
    "format_label",
    "nc_types",
    "parabolic_type",
    "parabolic_types",
    "parse_label",
    "subgroup_type",
]


class TypeLookupError(LookupError):
    pass


def _real(name, rank, degrees):
    return {"rank": rank, "degrees": tuple(degrees), "reflection_orders": {2: sum(d - 1 for d in degrees)}}


def _build_catalog() -> dict:
    cat = {}
    for k in range(1, 9):
        cat[f"A{k}"] = _real(f"A{k}", k, range(2, k + 2))
    for k in range(2, 9):
        cat[f"B{k}"] = _real(f"B{k}", k, range(2, 2 * k + 1, 2))
    for k in range(4, 9):
        cat[f"D{k}"] = _real(f"D{k}", k, sorted(list(range(2, 2 * k - 1, 2)) + [k]))
    cat["E6"] = _real("E6", 6, (2, 5, 6, 8, 9, 12))
    cat["E7"] = _real("E7", 7, (2, 6, 8, 10, 12, 14, 18))
    cat["E8"] = _real("E8", 8, (2, 8, 12, 14, 18, 20, 24, 30))
    cat["F4"] = _real("F4", 4, (2, 6, 8, 12))
    cat["H3"] = _real("H3", 3, (2, 6, 10))
    cat["H4"] = _real("H4", 4, (2, 12, 20, 30))
    cat["G2"] = _real("G2", 2, (2, 6))
    for e in range(5, 31):
        if e != 6:
            cat[f"I2({e})"] = _real(f"I2({e})", 2, (2, e))
    # complex types: reflection orders counted per order
    cat["Z3"] = {"rank": 1, "degrees": (3,), "reflection_orders": {3: 2}}
    cat["G(3,1,2)"] = {"rank": 2, "degrees": (3, 6), "reflection_orders": {2: 3, 3: 4}}
    cat["G4"] = {"rank": 2, "degrees": (4, 6), "reflection_orders": {3: 8}}
    cat["G5"] = {"rank": 2, "degrees": (6, 12), "reflection_orders": {3: 16}}
    cat["G6"] = {"rank": 2, "degrees": (4, 12), "reflection_orders": {2: 6, 3: 8}}
    cat["G24"] = {"rank": 3, "degrees": (4, 6, 14), "reflection_orders": {2: 21}}
    cat["G25"] = {"rank": 3, "degrees": (6, 9, 12), "reflection_orders": {3: 24}}
    cat["G26"] = {"rank": 3, "degrees": (6, 12, 18), "reflection_orders": {2: 9, 3: 24}}
    # reflections lying below a Coxeter element; for complex types this is
    # smaller than the reflection count (s^2 is not below s)
    atoms = {"Z3": 1, "G(3,1,2)": 4, "G4": 3, "G5": 4, "G6": 6, "G24": 14, "G25": 6, "G26": 9}
    for name, entry in cat.items():
        degrees = entry["degrees"]
        h = degrees[-1]
        # the Coxeter element has eigenvalues zeta_h^(1 - d_i)
        entry["eigen_orders"] = tuple(sorted(h // gcd(d - 1, h) for d in degrees))
        entry["reflections"] = atoms.get(name, sum(d - 1 for d in degrees))
    return cat


TYPE_CATALOG = _build_catalog()

# irreducible components of proper parabolic subgroups of the bundled groups:
# real ones combine up to total rank 7 (at most one H-type factor), the
# complex ones only up to rank 2
REAL_COMPONENTS = (
    "A1", "A2", "A3", "A4", "A5", "A6", "A7", "B2", "B3", "D4", "D5", "D6", "D7",
    "E6", "E7", "H3", "I2(5)",
)
COMPLEX_COMPONENTS = ("A1", "A2", "B2", "Z3", "G4", "G(3,1,2)")
SINGLE_USE = ("H3", "I2(5)")


def _rank_name_key(name: str):
    return (TYPE_CATALOG[name]["rank"], name)


def format_label(components: dict[str, int]) -> str:
    parts = []
    for name in sorted(components, key=_rank_name_key):
        k = components[name]
        if k:
            parts.append(name if k == 1 else f"{name}^{k}")
    return "*".join(parts)


def parse_label(label: str) -> dict[str, int]:
    out: dict[str, int] = {}
    label = label.strip()
    if not label:
        return out
    for part in label.split("*"):
        name, _, exp = part.partition("^")
        if name not in TYPE_CATALOG:
            raise TypeLookupError(f"unknown irreducible type {name!r}")
        out[name] = out.get(name, 0) + (int(exp) if exp else 1)
    return out


@dataclass(frozen=True)
class ParabolicType:
    label: str
    rank: int

    @classmethod
    def parse(cls, label: str) -> "ParabolicType":
        comps = parse_label(label)
        return cls(format_label(comps), sum(TYPE_CATALOG[n]["rank"] * k for n, k in comps.items()))

    def __str__(self):
        return self.label or "1"


# ---------------------------------------------------------------------------
# eigenvalue signatures


@lru_cache(maxsize=None)
def _cyclo_coeffs(k: int) -> tuple[int, ...]:
    return tuple(int(c) for c in Poly(cyclotomic_poly(k, _x), _x).all_coeffs())


def _divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


def eigen_signatures(g: ReflectionGroup, arrays: np.ndarray) -> list[tuple[tuple[int, int], ...]]:
    """Per element: sorted ((order, multiplicity), ...) of non-trivial eigenvalues.

    For a finite-order matrix, the number of eigenvalues of order k equals
    dim ker Phi_k(w).  On the realified matrix every eigenvalue of w shows
    up once per embedding of the base field, which the division by phi(N)
    undoes.
    """
    arrays = np.asarray(arrays, dtype=np.int64)
    count = len(arrays)
    if count == 0:
        return []
    dim, phi = g.dim, g.phi
    eye = np.eye(dim, dtype=np.int64)
    if dim == 0:
        return [()] * count
    # element orders bound the eigenvalue orders
    orders = np.zeros(count, dtype=np.int64)
    cur = arrays.copy()
    for j in range(1, 10 * g.h + 1):
        hit = (orders == 0) & (cur == eye).all(axis=(1, 2))
        orders[hit] = j
        if (orders > 0).all():
            break
        cur = cur @ arrays
    if (orders == 0).any():
        raise ValueError("element of unexpectedly large order")
    sigs: list[list[tuple[int, int]]] = [[] for _ in range(count)]
    ks = sorted({k for o in set(orders.tolist()) for k in _divisors(o) if k > 1})
    for k in ks:
        sel = np.nonzero(orders % k == 0)[0]
        if not len(sel):
            continue
        w = arrays[sel]
        val = np.zeros_like(w)
        for coef in _cyclo_coeffs(k):
            val = val @ w + coef * eye
        kdim = dim - batch_rank(val)
        for i, kd in zip(sel, kdim):
            if kd:
                sigs[i].append((k, int(kd) // phi))
    return [tuple(s) for s in sigs]


def eigen_signature(g: ReflectionGroup, w: GroupElement) -> tuple[tuple[int, int], ...]:
    return eigen_signatures(g, w.array[None])[0]


def signature_of_orders(orders) -> tuple[tuple[int, int], ...]:
    counts: dict[int, int] = {}
    for o in orders:
        if o > 1:
            counts[o] = counts.get(o, 0) + 1
    return tuple(sorted(counts.items()))


# ---------------------------------------------------------------------------
# signature table


_TABLE_PATH = Path(__file__).resolve().parent / "data" / "signature_table.json"


@lru_cache(maxsize=None)
def _table():
    data = json.loads(_TABLE_PATH.read_text())
    by_sig: dict = {}
    for entry in data["entries"]:
        sig = tuple(tuple(p) for p in entry["signature"])
        by_sig.setdefault(sig, []).append(entry)
    return by_sig


def _reflections_below_counts(g: ReflectionGroup, arrays: np.ndarray, lengths: np.ndarray) -> np.ndarray:
    refl = g.stack(g.reflections)
    out = np.zeros(len(arrays), dtype=np.int64)
    for i, (w, lw) in enumerate(zip(arrays, lengths)):
        if lw == 0:
            continue
        out[i] = int(rank_at_most(w[None] - refl, (lw - 1) * g.phi).sum())
    return out


def _lookup(sig, refl_count_fn) -> ParabolicType:
    if not sig:
        return ParabolicType("", 0)
    entries = _table().get(sig)
    if not entries:
        raise TypeLookupError(f"eigenvalue signature {sig} is not in the table")
    labels = {e["label"] for e in entries}
    if len(labels) > 1:
        r = refl_count_fn()
        entries = [e for e in entries if e["reflections"] == r]
        labels = {e["label"] for e in entries}
        if len(labels) != 1:
            raise TypeLookupError(f"signature {sig} with {r} reflections is ambiguous or unknown: {sorted(labels)}")
    e = entries[0]
    return ParabolicType(e["label"], e["rank"])


def parabolic_type(g: ReflectionGroup, w: GroupElement) -> ParabolicType:
    sig = eigen_signature(g, w)
    lw = sum(k for _, k in sig)

    def refl_count():
        return int(_reflections_below_counts(g, w.array[None], np.array([lw]))[0])

    return _lookup(sig, refl_count)


def parabolic_types(g: ReflectionGroup, arrays: np.ndarray) -> list[ParabolicType]:
    """Batched ``parabolic_type`` for a stack of element matrices."""
    arrays = np.asarray(arrays, dtype=np.int64)
    sigs = []
    for s in range(0, len(arrays), 20_000):
        sigs.extend(eigen_signatures(g, arrays[s:s + 20_000]))
    out = []
    for i, sig in enumerate(sigs):
        lw = np.array([sum(k for _, k in sig)])
        out.append(_lookup(sig, lambda i=i, lw=lw: int(_reflections_below_counts(g, arrays[i:i + 1], lw)[0])))
    return out


def nc_types(g: ReflectionGroup) -> list[ParabolicType]:
    """Parabolic type of every element of [1, c], in interval index order."""
    if "nc_types" not in g.cache:
        g.cache["nc_types"] = parabolic_types(g, nc_index(g).arrays)
    return g.cache["nc_types"]


# ---------------------------------------------------------------------------
# subgroup oracle


def subgroup_type(g: ReflectionGroup, w: GroupElement, order_bound: int = 200_000) -> ParabolicType:
    """Type of the subgroup generated by the reflections below w.

    Independent of the signature table: reflections are split into
    components of the non-commutation graph, and each component is named by
    its rank, its reflections counted by order, and if needed its order.
    """
    lw = int(abs_lengths(g, w.array[None])[0]) if g.rank else 0
    if lw == 0:
        return ParabolicType("", 0)
    refl = g.stack(g.reflections)
    mask = rank_at_most(w.array[None] - refl, (lw - 1) * g.phi)
    below = refl[mask]
    k = len(below)
    adj = [[not np.array_equal(below[i] @ below[j], below[j] @ below[i]) for j in range(k)] for i in range(k)]
    comp = [-1] * k
    ncomp = 0
    for i in range(k):
        if comp[i] >= 0:
            continue
        stack = [i]
        comp[i] = ncomp
        while stack:
            a = stack.pop()
            for b in range(k):
                if adj[a][b] and comp[b] < 0:
                    comp[b] = ncomp
                    stack.append(b)
        ncomp += 1
    eye = np.eye(g.dim, dtype=np.int64)
    found: dict[str, int] = {}
    for cidx in range(ncomp):
        members = below[[i for i in range(k) if comp[i] == cidx]]
        rank = int(batch_rank(np.concatenate(list(members - eye), axis=0)[None])[0]) // g.phi
        closure = None
        if g.is_real:
            pool = members
        else:
            # below-w reflections miss powers like s^2; count in the subgroup
            closure = _closure(members, g.dim, order_bound)
            pool = [a for a in closure if int(batch_rank(a - eye)) == g.phi]
        ref_orders: dict[int, int] = {}
        for t in pool:
            o = GroupElement(t, g.rank, g.field_order).order()
            ref_orders[o] = ref_orders.get(o, 0) + 1
        cands = [
            name for name, e in TYPE_CATALOG.items()
            if e["rank"] == rank and e["reflection_orders"] == ref_orders
        ]
        if len(cands) > 1:
            order = len(closure if closure is not None else _closure(members, g.dim, order_bound))
            cands = [name for name in cands if _type_order(name) == order]
        if len(cands) != 1:
            raise TypeLookupError(f"cannot name component with rank {rank}, reflections {ref_orders}: {cands}")
        found[cands[0]] = found.get(cands[0], 0) + 1
    return ParabolicType(format_label(found), sum(TYPE_CATALOG[n]["rank"] * v for n, v in found.items()))


def _type_order(name: str) -> int:
    out = 1
    for d in TYPE_CATALOG[name]["degrees"]:
        out *= d
    return out


# ---------------------------------------------------------------------------
# factorization counts


def _down_within(idx: NCIndex, y: int, allowed: np.ndarray | None):
    xs, zs = idx.down_set(y)
    if allowed is None:
        return xs, zs
    keep = allowed[xs] & allowed[zs]
    return xs[keep], zs[keep]


def factorization_count(
    g: ReflectionGroup,
    target: int,
    parts: list,
    allowed: np.ndarray | None = None,
) -> int:
    """Ordered factorizations target = x_1 ... x_r with additive lengths.

    ``target`` is an interval index.  ``parts`` lists one predicate per
    factor: either a ParabolicType (type must match), an int (length must
    match) or None (any non-identity element).  ``allowed`` optionally
    restricts every factor (and every partial product) to a subset of the
    interval given as a boolean mask.
    """
    idx = nc_index(g)
    types = None
    if any(isinstance(p, ParabolicType) for p in parts):
        types = nc_types(g)

    def ok(p, z):
        if isinstance(p, ParabolicType):
            return types[z] == p
        if isinstance(p, int):
            return idx.lengths[z] == p
        return idx.lengths[z] > 0

    memo: dict = {}

    def count(y: int, r: int) -> int:
        if r == 0:
            return 1 if y == idx.identity else 0
        key = (y, r)
        if key in memo:
            return memo[key]
        if r == 1:
            res = 1 if ok(parts[0], y) and (allowed is None or allowed[y]) else 0
            memo[key] = res
            return res
        total = 0
        xs, zs = _down_within(idx, y, allowed)
        for x, z in zip(xs.tolist(), zs.tolist()):
            if ok(parts[r - 1], z):
                total += count(x, r - 1)
        memo[key] = total
        return total

    return count(target, len(parts))


def decomposition_number(g: ReflectionGroup, types, below: GroupElement | None = None) -> int:
    """Number of ordered factorizations c_1 ... c_d <= c (length additive) by type.

    With the ranks summing to n this is the classical count of minimal
    factorizations of c; with a smaller sum every product of the right
    length is counted.  ``below`` replaces c by another element of [1, c].
    """
    types = [t if isinstance(t, ParabolicType) else ParabolicType.parse(t) for t in types]
    idx = nc_index(g)
    total_rank = sum(t.rank for t in types)
    if below is not None:
        y = idx.index(below)
        if y < 0:
            raise ValueError("element is not below the Coxeter element")
        if idx.lengths[y] != total_rank:
            return 0
        targets = [y]
    elif total_rank == g.rank:
        targets = [idx.coxeter]
    else:
        targets = idx.stratum(total_rank).tolist()
    return sum(factorization_count(g, y, types) for y in targets)
