"""Catalog of well-generated reflection groups as exact matrix groups.

Each group is read from a JSON data file holding its generator matrices
(entries serialized as cyclotomic numbers), degrees, codegrees and the word
whose product is the Coxeter element.  Loading validates the data: the
Coxeter element must have order h and a regular eigenvector, reflections are
saturated under conjugation and counted, and small groups are enumerated in
full to confirm the order and the fixed-space distribution.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, prod
from pathlib import Path

import numpy as np

from ._intmat import batch_rank, derealify, lex_order, realify
from .cyclotomic import CycloNumber, _field, kernel_basis, root_of_unity

__all__ = [
    "DATA_DIR_ENV",
    "GroupDataError",
    "GroupElement",
    "GroupError",
    "GroupSpec",
    "GroupValidationError",
    "ReflectionGroup",
    "UnknownGroupError",
    "catalog_names",
    "centralizer_degrees",
    "coxeter_power_conjugate",
    "enumerate_reflections",
    "load_group",
    "parse_word",
]

DATA_DIR_ENV = "NCSIEVE_DATA_DIR"
DEFAULT_ORDER_BOUND = 100_000
DEFAULT_REFLECTION_BOUND = 100_000


class GroupError(Exception):
    """Base class for catalog problems."""


class UnknownGroupError(GroupError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown group"


class GroupDataError(GroupError, ValueError):
    pass


class GroupValidationError(GroupError, ValueError):
    pass


class GroupElement:
    """A group element stored as an integer matrix over the realified field.

    Two elements are equal iff their matrices agree entry by entry.  The
    public ``matrix`` property gives the n x n matrix of cyclotomic numbers.
    """

    __slots__ = ("array", "rank", "field_order", "_key", "_hash")

    def __init__(self, array: np.ndarray, rank: int, field_order: int):
        arr = np.array(array, dtype=np.int64, copy=True, order="C")
        arr.flags.writeable = False
        self.array = arr
        self.rank = rank
        self.field_order = field_order
        self._key = arr.tobytes()
        self._hash = hash(self._key)

    @property
    def key(self) -> bytes:
        return self._key

    @property
    def matrix(self) -> list[list[CycloNumber]]:
        return derealify(self.array, self.rank, self.field_order)

    def sort_key(self) -> tuple[int, ...]:
        return tuple(self.array.ravel().tolist())

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.array, np.eye(len(self.array), dtype=np.int64)))

    def _wrap(self, arr) -> "GroupElement":
        return GroupElement(arr, self.rank, self.field_order)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self._wrap(self.array @ other.array)

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return self._hash

    def __lt__(self, other: "GroupElement"):
        return self.sort_key() < other.sort_key()

    def order(self, limit: int = 10_000) -> int:
        eye = np.eye(len(self.array), dtype=np.int64)
        cur = self.array
        for k in range(1, limit + 1):
            if np.array_equal(cur, eye):
                return k
            cur = cur @ self.array
        raise GroupValidationError(f"element order exceeds {limit}")

    def inverse(self) -> "GroupElement":
        return self.power(self.order() - 1)

    def power(self, k: int) -> "GroupElement":
        if k < 0:
            return self.inverse().power(-k)
        result = np.eye(len(self.array), dtype=np.int64)
        base = self.array
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return self._wrap(result)

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "field_order": self.field_order,
            "matrix": [[a.to_dict() for a in row] for row in self.matrix],
        }

    def __repr__(self):
        return f"GroupElement(rank={self.rank}, field_order={self.field_order}, key={self._key[:8].hex()}...)"


@dataclass(frozen=True)
class GroupSpec:
    name: str
    rank: int
    field_order: int
    generators: tuple
    degrees: tuple[int, ...]
    codegrees: tuple[int, ...]
    coxeter_word: tuple[int, ...]
    coxeter_matrix: tuple | None = None
    description: str = ""

    @property
    def h(self) -> int:
        return self.degrees[-1] if self.degrees else 1


@dataclass
class ReflectionGroup:
    """A validated group: generators, all reflections, Coxeter element."""

    spec: GroupSpec
    generators: list[GroupElement]
    reflections: list[GroupElement]
    coxeter: GroupElement
    validation: dict = field(default_factory=dict)

    def __post_init__(self):
        self._c_powers = None
        self._cache: dict = {}

    # basic data -------------------------------------------------------------
    @property
    def name(self) -> str:
        return self.spec.name

    @property
    def rank(self) -> int:
        return self.spec.rank

    @property
    def h(self) -> int:
        return self.spec.h

    @property
    def degrees(self) -> tuple[int, ...]:
        return self.spec.degrees

    @property
    def codegrees(self) -> tuple[int, ...]:
        return self.spec.codegrees

    @property
    def field_order(self) -> int:
        return self.spec.field_order

    @property
    def phi(self) -> int:
        return _field(self.spec.field_order).degree

    @property
    def dim(self) -> int:
        return self.rank * self.phi

    @property
    def order(self) -> int:
        return prod(self.degrees)

    @property
    def identity(self) -> GroupElement:
        return self.element(np.eye(self.dim, dtype=np.int64))

    @property
    def is_real(self) -> bool:
        return self.spec.coxeter_matrix is not None

    @property
    def cache(self) -> dict:
        """Scratch space for derived data (NC strata, lookup tables)."""
        return self._cache

    def element(self, arr) -> GroupElement:
        return GroupElement(arr, self.rank, self.field_order)

    def stack(self, elements) -> np.ndarray:
        if not elements:
            return np.zeros((0, self.dim, self.dim), dtype=np.int64)
        return np.stack([e.array for e in elements])

    def sort_elements(self, elements) -> list[GroupElement]:
        if not elements:
            return []
        flat = self.stack(elements).reshape(len(elements), -1)
        return [elements[i] for i in lex_order(flat)]

    # Coxeter element powers -------------------------------------------------
    def c_power_array(self, k: int) -> np.ndarray:
        if self._c_powers is None:
            pows = [np.eye(self.dim, dtype=np.int64)]
            for _ in range(self.h - 1):
                pows.append(pows[-1] @ self.coxeter.array)
            self._c_powers = pows
        return self._c_powers[k % self.h]

    def c_power(self, k: int) -> GroupElement:
        return self.element(self.c_power_array(k))

    def conjugate(self, w: GroupElement, k: int) -> GroupElement:
        """c^k w c^-k with k read modulo h."""
        k %= self.h
        if k == 0:
            return w
        return self.element(self.c_power_array(k) @ w.array @ self.c_power_array(-k))

    def conjugate_batch(self, arr: np.ndarray, k: int) -> np.ndarray:
        k %= self.h
        if k == 0:
            return arr
        return self.c_power_array(k) @ arr @ self.c_power_array(-k)

    # words ------------------------------------------------------------------
    def word(self, letters) -> GroupElement:
        """Product s_{j1} s_{j2} ... of 1-based generator indices."""
        arr = np.eye(self.dim, dtype=np.int64)
        for j in letters:
            if not 1 <= j <= len(self.generators):
                raise GroupDataError(f"generator index {j} out of range for {self.name}")
            arr = arr @ self.generators[j - 1].array
        return self.element(arr)

    def parse_word(self, text: str) -> GroupElement:
        return self.word(parse_word(text))

    # enumeration ------------------------------------------------------------
    def enumerate_elements(self, bound: int = 1_000_000) -> list[GroupElement]:
        """All group elements by breadth-first closure (canonically ordered)."""
        arrays = _closure(self.stack(self.generators), self.dim, bound)
        flat = arrays.reshape(len(arrays), -1)
        order = lex_order(flat)
        return [self.element(arrays[i]) for i in order]

    def __repr__(self):
        return f"ReflectionGroup({self.name}, rank={self.rank}, h={self.h})"


_WORD_RE = re.compile(r"^\s*\[\s*(\d+(\s*,\s*\d+)*)?\s*\]\s*$")


def parse_word(text: str) -> list[int]:
    """Parse the bracket notation "[j1,j2,...,jk]"."""
    if not _WORD_RE.match(text):
        raise GroupDataError(f"malformed word {text!r}; expected e.g. [1,3,2]")
    inner = text.strip()[1:-1].strip()
    return [int(t) for t in inner.split(",")] if inner else []


def _closure(gens: np.ndarray, dim: int, bound: int) -> np.ndarray:
    if len(gens) == 0:
        return np.eye(dim, dtype=np.int64)[None]
    seen = {np.eye(dim, dtype=np.int64).tobytes()}
    found = [np.eye(dim, dtype=np.int64)]
    frontier = np.eye(dim, dtype=np.int64)[None]
    while len(frontier):
        prods = (frontier[:, None] @ gens[None]).reshape(-1, dim, dim)
        new = []
        for a in prods:
            key = a.tobytes()
            if key not in seen:
                seen.add(key)
                new.append(a)
                if len(seen) > bound:
                    raise GroupValidationError(f"group enumeration exceeded bound {bound}")
        found.extend(new)
        frontier = np.array(new, dtype=np.int64).reshape(-1, dim, dim)
    return np.array(found, dtype=np.int64).reshape(-1, dim, dim)


# ---------------------------------------------------------------------------
# loading and validation


def _default_data_dir() -> Path:
    env = os.environ.get(DATA_DIR_ENV)
    if env:
        return Path(env)
    return Path(__file__).resolve().parent / "data"


def _file_stem(name: str) -> str:
    m = re.fullmatch(r"I2\((\d+)\)", name)
    if m:
        return f"I2_{m.group(1)}"
    return name


def canonical_name(name: str) -> str:
    name = name.strip()
    m = re.fullmatch(r"I2[_(]?(\d+)\)?", name)
    if m:
        return f"I2({int(m.group(1))})"
    return name


def catalog_names(data_dir: str | Path | None = None) -> list[str]:
    root = Path(data_dir) if data_dir else _default_data_dir()
    names = []
    for p in sorted((root / "groups").glob("*.json")):
        names.append(canonical_name(p.stem))
    return names


def _parse_matrix(raw, rank: int, where: str) -> list[list[CycloNumber]]:
    if not isinstance(raw, list) or len(raw) != rank:
        raise GroupDataError(f"{where}: expected {rank} rows")
    rows = []
    for row in raw:
        if not isinstance(row, list) or len(row) != rank:
            raise GroupDataError(f"{where}: expected {rank} columns")
        try:
            rows.append([CycloNumber.from_dict(a) for a in row])
        except (KeyError, ValueError, TypeError, ZeroDivisionError) as exc:
            raise GroupDataError(f"{where}: bad entry ({exc})") from exc
    return rows


def read_spec(name: str, data_dir: str | Path | None = None) -> GroupSpec:
    name = canonical_name(name)
    root = Path(data_dir) if data_dir else _default_data_dir()
    path = root / "groups" / f"{_file_stem(name)}.json"
    if not path.exists():
        raise UnknownGroupError(f"unknown group {name!r} (no data file in {root / 'groups'})")
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise GroupDataError(f"{path}: unreadable ({exc})") from exc
    try:
        rank = int(data["rank"])
        order = int(data["field_order"])
        degrees = tuple(int(d) for d in data["degrees"])
        codegrees = tuple(int(d) for d in data["codegrees"])
        word = tuple(int(j) for j in data["coxeter_word"])
        gens = tuple(
            _parse_matrix(g, rank, f"{path.name} generator {i + 1}")
            for i, g in enumerate(data["generators"])
        )
        cox = data.get("coxeter_matrix")
        cox = tuple(tuple(int(v) for v in row) for row in cox) if cox is not None else None
    except GroupDataError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise GroupDataError(f"{path}: missing or malformed field ({exc})") from exc
    if data.get("name") != name:
        raise GroupDataError(f"{path}: name field {data.get('name')!r} does not match {name!r}")
    if len(gens) != rank or len(degrees) != rank or len(codegrees) != rank:
        raise GroupDataError(f"{path}: expected {rank} generators, degrees and codegrees")
    if list(degrees) != sorted(degrees) or list(codegrees) != sorted(codegrees, reverse=True):
        raise GroupDataError(f"{path}: degrees must ascend and codegrees descend")
    return GroupSpec(
        name=name,
        rank=rank,
        field_order=order,
        generators=gens,
        degrees=degrees,
        codegrees=codegrees,
        coxeter_word=word,
        coxeter_matrix=cox,
        description=str(data.get("description", "")),
    )


def _saturate_reflections(gens: list[GroupElement], bound: int) -> list[GroupElement]:
    found: dict[bytes, GroupElement] = {}
    queue = []
    for g in gens:
        k = g.order()
        for e in range(1, k):
            t = g.power(e)
            if t.key not in found:
                found[t.key] = t
                queue.append(t)
    inverses = [g.inverse() for g in gens]
    while queue:
        t = queue.pop()
        for g, gi in zip(gens, inverses):
            u = g * t * gi
            if u.key not in found:
                found[u.key] = u
                queue.append(u)
                if len(found) > bound:
                    raise GroupValidationError(f"reflection saturation exceeded bound {bound}")
    return list(found.values())


def _count_hyperplanes(group: ReflectionGroup) -> int:
    """Reflections fixing a hyperplane pointwise form a cyclic group minus 1."""
    seen: set[bytes] = set()
    count = 0
    # a generator of the full pointwise stabilizer has the largest order
    for t in sorted(group.reflections, key=lambda r: -r.order()):
        if t.key in seen:
            continue
        count += 1
        cur = t
        while not cur.is_identity():
            seen.add(cur.key)
            cur = cur * t
    return count


def _is_regular(group: ReflectionGroup) -> tuple[bool, int | None]:
    """Look for a primitive h-th root of unity with an eigenvector off all hyperplanes."""
    h = group.h
    n = group.rank
    c = group.coxeter.matrix
    # one nonzero row of t - I per reflection cuts out its hyperplane
    forms = []
    for t in group.reflections:
        m = t.matrix
        for i in range(n):
            row = [m[i][j] - (1 if i == j else 0) for j in range(n)]
            if any(not a.is_zero() for a in row):
                forms.append(row)
                break
    order = group.field_order * h // gcd(group.field_order, h)
    ks = [1] + [k for k in range(2, h) if gcd(k, h) == 1]
    for k in ks:
        lam = root_of_unity(h, k).embed(order)
        shifted = [[c[i][j] - (lam if i == j else 0) for j in range(n)] for i in range(n)]
        basis = kernel_basis(shifted)
        if not basis:
            continue
        ok = not any(
            all(sum((f[j] * v[j] for j in range(n)), CycloNumber.rational(0)).is_zero() for v in basis)
            for f in forms
        )
        if ok:
            return True, k
    return False, None


def _fix_dimension_counts(group: ReflectionGroup, arrays: np.ndarray) -> list[int]:
    counts = [0] * (group.rank + 1)
    eye = np.eye(group.dim, dtype=np.int64)
    for start in range(0, len(arrays), 50_000):
        chunk = arrays[start:start + 50_000]
        ranks = batch_rank(chunk - eye) // group.phi
        for r, c in zip(*np.unique(ranks, return_counts=True)):
            counts[group.rank - int(r)] += int(c)
    return counts


def _poly_prod_linear(degrees) -> list[int]:
    """Coefficients (low to high) of prod (t + d_i - 1)."""
    poly = [1]
    for d in degrees:
        nxt = [0] * (len(poly) + 1)
        for i, a in enumerate(poly):
            nxt[i] += a * (d - 1)
            nxt[i + 1] += a
        poly = nxt
    return poly


def build_group(
    spec: GroupSpec,
    order_bound: int = DEFAULT_ORDER_BOUND,
    reflection_bound: int = DEFAULT_REFLECTION_BOUND,
) -> ReflectionGroup:
    n = spec.rank
    gens = []
    for i, g in enumerate(spec.generators):
        try:
            gens.append(GroupElement(realify(g, spec.field_order), n, spec.field_order))
        except ValueError as exc:
            raise GroupDataError(f"{spec.name} generator {i + 1}: {exc}") from exc
    report: dict = {}
    dim = n * _field(spec.field_order).degree
    eye = np.eye(dim, dtype=np.int64)
    phi = _field(spec.field_order).degree

    if gens:
        ranks = batch_rank(np.stack([g.array for g in gens]) - eye)
        if any(int(r) != phi for r in ranks):
            raise GroupValidationError(f"{spec.name}: some generator is not a reflection")

    d = spec.degrees
    if n and any(a + b != d[-1] for a, b in zip(d, spec.codegrees)):
        raise GroupValidationError(f"{spec.name}: degrees and codegrees violate d_i + d_i* = d_n")

    if any(not 1 <= j <= n for j in spec.coxeter_word) or sorted(spec.coxeter_word) != list(range(1, n + 1)):
        raise GroupDataError(f"{spec.name}: coxeter_word must use every generator once")
    c_arr = eye.copy()
    for j in spec.coxeter_word:
        c_arr = c_arr @ gens[j - 1].array
    coxeter = GroupElement(c_arr, n, spec.field_order)
    h = spec.h
    c_order = coxeter.order(limit=max(h, 1) * 4 + 10)
    if c_order != h:
        raise GroupValidationError(f"{spec.name}: Coxeter element has order {c_order}, expected h={h}")

    refl = _saturate_reflections(gens, reflection_bound)
    expected_refl = sum(x - 1 for x in d)
    if len(refl) != expected_refl:
        raise GroupValidationError(
            f"{spec.name}: found {len(refl)} reflections, expected sum(d_i - 1) = {expected_refl}"
        )
    refl_sorted = [refl[i] for i in lex_order(np.stack([t.array for t in refl]).reshape(len(refl), -1))] if refl else []
    group = ReflectionGroup(spec=spec, generators=gens, reflections=refl_sorted, coxeter=coxeter)
    report["reflections"] = len(refl_sorted)

    keys = {t.key for t in refl_sorted}
    for t in refl_sorted:
        if group.conjugate(t, 1).key not in keys:
            raise GroupValidationError(f"{spec.name}: reflections not closed under conjugation by c")

    if n:
        hyper = _count_hyperplanes(group)
        expected_hyper = sum(x + 1 for x in spec.codegrees)
        if hyper != expected_hyper:
            raise GroupValidationError(
                f"{spec.name}: {hyper} reflecting hyperplanes, codegrees predict {expected_hyper}"
            )
        report["hyperplanes"] = hyper
        ok, k = _is_regular(group)
        if not ok:
            raise GroupValidationError(f"{spec.name}: Coxeter element has no regular eigenvector of order h")
        report["regular_eigenvalue_exponent"] = k

    if group.order <= order_bound:
        arrays = _closure(group.stack(gens), dim, order_bound)
        if len(arrays) != group.order:
            raise GroupValidationError(
                f"{spec.name}: enumerated {len(arrays)} elements, product of degrees is {group.order}"
            )
        counts = _fix_dimension_counts(group, arrays)
        if counts != _poly_prod_linear(d):
            raise GroupValidationError(f"{spec.name}: fixed-space distribution contradicts the degrees")
        report["enumerated_order"] = len(arrays)
    else:
        report["enumeration_skipped"] = f"|W| = {group.order} exceeds bound {order_bound}"
    group.validation = report
    return group


@lru_cache(maxsize=None)
def _load_cached(name: str, data_dir: str | None, order_bound: int) -> ReflectionGroup:
    return build_group(read_spec(name, data_dir), order_bound=order_bound)


def load_group(
    name: str,
    data_dir: str | Path | None = None,
    order_bound: int = DEFAULT_ORDER_BOUND,
) -> ReflectionGroup:
    """Load and validate a catalog group ("A3", "I2(5)", "E8", "G24", ...)."""
    root = str(Path(data_dir).resolve()) if data_dir else str(_default_data_dir().resolve())
    return _load_cached(canonical_name(name), root, order_bound)


def enumerate_reflections(g: ReflectionGroup) -> list[GroupElement]:
    return list(g.reflections)


def coxeter_power_conjugate(g: ReflectionGroup, w: GroupElement, k: int) -> GroupElement:
    return g.conjugate(w, k)


def centralizer_degrees(g: ReflectionGroup, d: int) -> list[int]:
    """Degrees of the centralizer of c^(h/d): the degrees of W divisible by d."""
    if d < 1 or g.h % d:
        raise ValueError(f"{d} does not divide h = {g.h}")
    return [x for x in g.degrees if x % d == 0]
