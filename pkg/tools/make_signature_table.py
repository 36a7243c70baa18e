"""Regenerate the parabolic-type signature table shipped with the package.

Each entry lists a type label, its rank, the number of reflections below
its Coxeter element and the eigenvalue-order signature of its Coxeter
element.  Entries cover every irreducible type of the catalog and every
product of components that can occur in a proper parabolic subgroup of a
bundled group.

    python tools/make_signature_table.py [--out PATH]
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from ncsieve.decomp import (  # noqa: E402
    COMPLEX_COMPONENTS,
    REAL_COMPONENTS,
    SINGLE_USE,
    TYPE_CATALOG,
    format_label,
    signature_of_orders,
)


def products(names, max_rank):
    names = sorted(names, key=lambda n: (TYPE_CATALOG[n]["rank"], n))

    def rec(start, rank_left, chosen):
        if chosen:
            yield dict(chosen)
        for i in range(start, len(names)):
            r = TYPE_CATALOG[names[i]]["rank"]
            if r <= rank_left:
                chosen[names[i]] = chosen.get(names[i], 0) + 1
                yield from rec(i, rank_left - r, chosen)
                chosen[names[i]] -= 1
                if not chosen[names[i]]:
                    del chosen[names[i]]

    yield from rec(0, max_rank, {})


def entry(components):
    orders, rank, refl = [], 0, 0
    for name, k in components.items():
        t = TYPE_CATALOG[name]
        orders.extend(list(t["eigen_orders"]) * k)
        rank += t["rank"] * k
        refl += t["reflections"] * k
    return {
        "label": format_label(components),
        "rank": rank,
        "reflections": refl,
        "signature": [list(p) for p in signature_of_orders(orders)],
    }


def build():
    seen = {}
    for names, max_rank in ((REAL_COMPONENTS, 7), (COMPLEX_COMPONENTS, 2)):
        for comps in products(names, max_rank):
            if sum(comps.get(n, 0) for n in SINGLE_USE) > 1:
                continue
            e = entry(comps)
            seen[e["label"]] = e
    for name in TYPE_CATALOG:
        e = entry({name: 1})
        seen.setdefault(e["label"], e)
    entries = sorted(seen.values(), key=lambda e: (e["rank"], e["signature"], e["reflections"], e["label"]))
    clashes = {}
    for e in entries:
        key = (json.dumps(e["signature"]), e["reflections"])
        clashes.setdefault(key, []).append(e["label"])
    ambiguous = {k: v for k, v in clashes.items() if len(v) > 1}
    return entries, ambiguous


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=str(ROOT / "src" / "ncsieve" / "data" / "signature_table.json"))
    args = ap.parse_args(argv)
    entries, ambiguous = build()
    for (sig, refl), labels in sorted(ambiguous.items()):
        print(f"indistinguishable: {labels} (signature {sig}, {refl} reflections)", file=sys.stderr)
    Path(args.out).write_text(json.dumps({"entries": entries}, separators=(",", ":")) + "\n")
    print(f"wrote {len(entries)} entries to {args.out}", file=sys.stderr)


if __name__ == "__main__":
    main()
