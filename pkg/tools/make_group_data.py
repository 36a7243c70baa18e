"""Regenerate the bundled group data files.

Generators are built from a Cartan-style matrix C with integral entries:
the i-th generator is I - e_i * (row i of C), a reflection with non-trivial
eigenvalue 1 - C[i][i].  Real types use their Coxeter diagram; the complex
groups use matrices found by a small search (``--search``) and pinned below.

    python tools/make_group_data.py [--out DIR] [--only NAME ...] [--search]
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from math import gcd
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

import numpy as np  # noqa: E402

from ncsieve._intmat import realify  # noqa: E402
from ncsieve.cyclotomic import CycloNumber, root_of_unity  # noqa: E402
from ncsieve.groups import GroupSpec, GroupValidationError, _closure, build_group  # noqa: E402


def Q(v, order=1):
    return CycloNumber.rational(v, order)


def z(order, k=1):
    return root_of_unity(order, k)


# ---------------------------------------------------------------------------
# real types


def coxeter_matrix(kind: str, n: int = 0, e: int = 0) -> list[list[int]]:
    """Coxeter matrix in the usual (Bourbaki) node numbering."""
    m = [[1 if i == j else 2 for j in range(n)] for i in range(n)]

    def bond(i, j, v=3):
        m[i - 1][j - 1] = m[j - 1][i - 1] = v

    if kind == "A":
        for i in range(1, n):
            bond(i, i + 1)
    elif kind == "B":
        for i in range(1, n - 1):
            bond(i, i + 1)
        bond(n - 1, n, 4)
    elif kind == "D":
        for i in range(1, n - 1):
            bond(i, i + 1)
        bond(n - 2, n)
    elif kind == "E":
        bond(1, 3)
        bond(3, 4)
        bond(2, 4)
        for i in range(4, n):
            bond(i, i + 1)
    elif kind == "F":
        bond(1, 2)
        bond(2, 3, 4)
        bond(3, 4)
    elif kind == "H":
        bond(1, 2, 5)
        for i in range(2, n):
            bond(i, i + 1)
    elif kind == "I":
        bond(1, 2, e)
    else:
        raise ValueError(kind)
    return m


def real_cartan(cox: list[list[int]]):
    """Integral Cartan matrix realizing a Coxeter matrix.

    Bonds of label 3 get (-1, -1); labels 4 and 6 the crystallographic
    (-1, -2) and (-1, -3); label 5 the symmetric (-tau, -tau); any other
    label e the pair (-1, -(2 + z + 1/z)) with z a primitive e-th root.
    """
    n = len(cox)
    orders = {1}
    for row in cox:
        for v in row:
            if v == 5:
                orders.add(5)
            elif v > 6:
                orders.add(v)
    order = 1
    for o in orders:
        order = order * o // gcd(order, o)
    c = [[Q(0, order) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        c[i][i] = Q(2, order)
        for j in range(i + 1, n):
            v = cox[i][j]
            if v == 2:
                continue
            if v == 3:
                a, b = Q(-1), Q(-1)
            elif v == 4:
                a, b = Q(-1), Q(-2)
            elif v == 6:
                a, b = Q(-1), Q(-3)
            elif v == 5:
                tau = 1 + z(5) + z(5, 4)
                a, b = -tau, -tau
            else:
                a, b = Q(-1), -(2 + z(v) + z(v, v - 1))
            c[i][j] = a.embed(order)
            c[j][i] = b.embed(order)
    return c, order


def generators_from_cartan(c, order):
    n = len(c)
    gens = []
    for i in range(n):
        g = [[Q(1 if r == s else 0, order) for s in range(n)] for r in range(n)]
        for s in range(n):
            g[i][s] = g[i][s] - c[i][s]
        gens.append(g)
    return gens


def real_degrees(kind: str, n: int, e: int = 0) -> list[int]:
    table = {
        "A": list(range(2, n + 2)),
        "B": list(range(2, 2 * n + 1, 2)),
        "D": sorted(list(range(2, 2 * n - 1, 2)) + [n]),
        "F": [2, 6, 8, 12],
        "H": {3: [2, 6, 10], 4: [2, 12, 20, 30]}.get(n),
        "I": [2, e],
    }
    if kind == "E":
        return {6: [2, 5, 6, 8, 9, 12], 7: [2, 6, 8, 10, 12, 14, 18], 8: [2, 8, 12, 14, 18, 20, 24, 30]}[n]
    return table[kind]


# Default word is 1, 2, ..., n.  For E8 this is the only orientation of the
# diagram reproducing the reference solution lists (tools/find_coxeter_word.py).
COXETER_WORDS: dict[str, list[int]] = {}


def real_entry(name: str, kind: str, n: int, e: int = 0) -> dict:
    cox = coxeter_matrix(kind, n, e)
    c, order = real_cartan(cox)
    degrees = real_degrees(kind, n, e)
    h = degrees[-1]
    return {
        "name": name,
        "rank": n,
        "field_order": order,
        "degrees": degrees,
        "codegrees": [h - d for d in degrees],
        "coxeter_word": COXETER_WORDS.get(name, list(range(1, n + 1))),
        "coxeter_matrix": cox,
        "generators": [[[a.to_dict() for a in row] for row in g] for g in generators_from_cartan(c, order)],
        "description": f"real reflection group of type {name}",
    }


# ---------------------------------------------------------------------------
# complex types


def _omega():
    return z(3)


def _b7():
    # (-1 + sqrt(-7)) / 2 inside Q(zeta_7)
    return z(7) + z(7, 2) + z(7, 4)


def complex_cartans():
    """Pinned Cartan matrices (found by ``search_complex``)."""
    return PINNED


COMPLEX_INFO = {
    "G4": dict(order=3, degrees=[4, 6], codegrees=[2, 0]),
    "G5": dict(order=3, degrees=[6, 12], codegrees=[6, 0]),
    "G6": dict(order=12, degrees=[4, 12], codegrees=[8, 0]),
    "G24": dict(order=7, degrees=[4, 6, 14], codegrees=[10, 8, 0]),
    "G25": dict(order=3, degrees=[6, 9, 12], codegrees=[6, 3, 0]),
    "G26": dict(order=3, degrees=[6, 12, 18], codegrees=[12, 6, 0]),
}


def _small_integers(order: int, radius: int = 1):
    """Elements sum c_k z^k with |c_k| <= radius over the power basis."""
    from ncsieve.cyclotomic import _field

    deg = _field(order).degree
    for cs in itertools.product(range(-radius, radius + 1), repeat=deg):
        yield CycloNumber(order, list(cs))


def _group_order_is(c, order, target):
    gens = generators_from_cartan(c, order)
    try:
        arr = np.stack([realify(g, order) for g in gens])
    except ValueError:
        return False
    try:
        found = _closure(arr, arr.shape[1], target)
    except GroupValidationError:
        return False
    return len(found) == target


def _try_spec(name, c, order, word=None):
    info = COMPLEX_INFO[name]
    n = len(c)
    spec = GroupSpec(
        name=name,
        rank=n,
        field_order=order,
        generators=tuple(generators_from_cartan(c, order)),
        degrees=tuple(info["degrees"]),
        codegrees=tuple(info["codegrees"]),
        coxeter_word=tuple(word or range(1, n + 1)),
    )
    try:
        build_group(spec, order_bound=10**6)
    except Exception as exc:  # noqa: BLE001 - search tool, report and move on
        return str(exc)
    return None


def search_complex(name: str):
    info = COMPLEX_INFO[name]
    order = info["order"]
    target = 1
    for d in info["degrees"]:
        target *= d
    w = _omega().embed(order) if order % 3 == 0 else None
    one = Q(1, order)

    if name in ("G4", "G5", "G6"):
        if name == "G4":
            diag = [1 - w, 1 - w]
        elif name == "G5":
            diag = [1 - w, 1 - w]
        else:
            diag = [Q(2, order), 1 - w]
        for a21 in _small_integers(order, 2):
            if a21.is_zero():
                continue
            c = [[diag[0], -one], [a21, diag[1]]]
            if _group_order_is(c, order, target):
                err = _try_spec(name, c, order)
                if err is None:
                    return c
        return None

    if name == "G24":
        b = _b7()
        cands = [x + y * b for x in range(-2, 3) for y in range(-2, 3)]
        for a13 in cands:
            if a13.is_zero():
                continue
            for a31 in cands:
                if a31.is_zero() or (a13 * a31) != 2:
                    continue
                c = [[Q(2, 7), -one, a13.embed(7)], [-one, Q(2, 7), -one], [a31.embed(7), -one, Q(2, 7)]]
                if _group_order_is(c, 7, target):
                    err = _try_spec(name, c, 7)
                    if err is None:
                        return c
        return None

    g4 = PINNED.get("G4") or search_complex("G4")
    p = g4[1][0] * g4[0][1]
    for conj in (p, p.conjugate()):
        if name == "G25":
            c = [[1 - w, -one, Q(0, 3)], [-conj, 1 - w, -one], [Q(0, 3), -conj, 1 - w]]
            if _group_order_is(c, 3, target) and _try_spec(name, c, 3) is None:
                return c
        else:
            for a21 in _small_integers(3, 2):
                if a21.is_zero():
                    continue
                c = [[Q(2, 3), -one, Q(0, 3)], [a21, 1 - w, -one], [Q(0, 3), -conj, 1 - w]]
                if _group_order_is(c, 3, target) and _try_spec(name, c, 3) is None:
                    return c
    return None


def _cartan_from_json(rows, order):
    return [[CycloNumber.from_dict(a).embed(order) for a in row] for row in rows]


PINNED_FILE = Path(__file__).with_name("complex_cartans.json")
PINNED: dict = {}
if PINNED_FILE.exists():
    for _name, _item in json.loads(PINNED_FILE.read_text()).items():
        PINNED[_name] = _cartan_from_json(_item["cartan"], _item["field_order"])


def complex_entry(name: str) -> dict:
    info = COMPLEX_INFO[name]
    c = PINNED[name]
    order = info["order"]
    n = len(c)
    return {
        "name": name,
        "rank": n,
        "field_order": order,
        "degrees": info["degrees"],
        "codegrees": info["codegrees"],
        "coxeter_word": COXETER_WORDS.get(name, list(range(1, n + 1))),
        "generators": [[[a.to_dict() for a in row] for row in g] for g in generators_from_cartan(c, order)],
        "description": f"complex reflection group {name}",
    }


def trivial_entry() -> dict:
    return {
        "name": "A0",
        "rank": 0,
        "field_order": 1,
        "degrees": [],
        "codegrees": [],
        "coxeter_word": [],
        "coxeter_matrix": [],
        "generators": [],
        "description": "trivial group of rank 0",
    }


def all_entries():
    yield trivial_entry()
    for n in range(1, 9):
        yield real_entry(f"A{n}", "A", n)
    for n in range(2, 5):
        yield real_entry(f"B{n}", "B", n)
    for n in range(4, 6):
        yield real_entry(f"D{n}", "D", n)
    for e in range(3, 31):
        yield real_entry(f"I2({e})", "I", 2, e)
    yield real_entry("H3", "H", 3)
    yield real_entry("H4", "H", 4)
    yield real_entry("F4", "F", 4)
    for n in (6, 7, 8):
        yield real_entry(f"E{n}", "E", n)
    for name in COMPLEX_INFO:
        if name in PINNED:
            yield complex_entry(name)
        else:
            print(f"warning: no pinned Cartan matrix for {name}; run --search", file=sys.stderr)


def file_stem(name: str) -> str:
    return name.replace("(", "_").replace(")", "")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=str(ROOT / "src" / "ncsieve" / "data" / "groups"))
    ap.add_argument("--only", nargs="*")
    ap.add_argument("--search", action="store_true", help="search Cartan matrices for the complex groups")
    args = ap.parse_args(argv)

    if args.search:
        found = {}
        for name in COMPLEX_INFO:
            c = search_complex(name)
            if c is None:
                print(f"{name}: no matrix found", file=sys.stderr)
                continue
            PINNED[name] = c
            order = COMPLEX_INFO[name]["order"]
            found[name] = {"field_order": order, "cartan": [[a.embed(order).to_dict() for a in row] for row in c]}
            print(f"{name}: found", file=sys.stderr)
        PINNED_FILE.write_text(json.dumps(found, indent=1) + "\n")

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for entry in all_entries():
        if args.only and entry["name"] not in args.only:
            continue
        (out / f"{file_stem(entry['name'])}.json").write_text(json.dumps(entry, separators=(",", ":")) + "\n")
        print(f"wrote {entry['name']}", file=sys.stderr)


if __name__ == "__main__":
    main()
