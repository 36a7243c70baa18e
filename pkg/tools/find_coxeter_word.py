"""Find a Coxeter word for E8 under which the reference solution lists hold.

The reference lists are the solutions w of

    w = c^5 w c^-5   and   w * (c^2 w c^-2) <= c

of absolute length 2 and 4.  Every ordering of the simple reflections gives a
Coxeter element; orderings with the same orientation of the Dynkin tree give
the same element, so it suffices to try one word per acyclic orientation.
"""

from __future__ import annotations

import itertools
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

import numpy as np  # noqa: E402

from ncsieve._intmat import batch_rank  # noqa: E402
from ncsieve.groups import load_group, parse_word  # noqa: E402

LENGTH2 = [
    "[1,4,2,3,4,5,6,7,6,5,4,2,3,4]",
    "[3,1,5,4,2,3,4,5,6,7,8,7,6,5,4,2,3,1,4,5]",
    "[1,2,3,4,5,6,7,8,7,6,5,4,2,3,1,4]",
    "[3,4,3,5]",
    "[2,4,5,4,2,6]",
    "[1,3,4,5,6,5,4,3,1,7]",
    "[2,3,4,5,6,7,6,5,4,2,3,8]",
    "[2,4,2,3,4,5,6,5,4,3]",
    "[1,3,4,5,4,2,3,1,4,5,6,7,6,5,4,2]",
    "[2,3,1,4,5,6,5,4,2,3,1,4,5,6,7,8,7,6,5,4,3,1]",
]
LENGTH4 = [
    "[1,2,3,4,5,6,7,6,5,4,2,3,4,8]",
    "[1,2,4,2,3,4,5,4,3,6,5,7,6,5,4,2,3,4]",
    "[1,2,3,1,4,5,6,7,8,7,6,5,4,2,3,1,4,5]",
    "[1,3,1,4,5,4,2,3,4,5,6,5,4,2,7,6,8,7,6,5,4,2,3,1,4,5]",
    "[1,2,3,4,2,5,4,2,3,4,6,5,7,6,5,4,3,8,7,6,5,4,2,3,1,4]",
    "[4,2,3,4,5,6]",
    "[2,3,1,4,2,5,4,6,5,4,2,3,1,4,5,6,7,8,7,6,5,4,3,1]",
    "[1,5,4,2,3,1,4,5,6,7]",
    "[3,1,6,5,4,2,3,1,4,3,5,6,7,8]",
    "[2,3,4,2,3,5,4,6,5,4,2,7,6,5,4,2,3,8]",
]
EDGES = [(1, 3), (3, 4), (2, 4), (4, 5), (5, 6), (6, 7), (7, 8)]


def word_for_orientation(bits) -> list[int]:
    """Topological order of the tree with edge i oriented by bit i."""
    before = {v: set() for v in range(1, 9)}
    for (a, b), bit in zip(EDGES, bits):
        if bit:
            before[b].add(a)
        else:
            before[a].add(b)
    order, done = [], set()
    while len(order) < 8:
        for v in range(1, 9):
            if v not in done and before[v] <= done:
                order.append(v)
                done.add(v)
                break
    return order


def satisfies(g, c, w, length) -> bool:
    eye = np.eye(g.dim, dtype=np.int64)
    c2 = np.linalg.matrix_power(c, 2)
    c5 = np.linalg.matrix_power(c, 5)
    c2i = np.linalg.matrix_power(c, g.h - 2)
    c5i = np.linalg.matrix_power(c, g.h - 5)
    if not np.array_equal(c5 @ w @ c5i, w):
        return False
    prod = w @ c2 @ w @ c2i
    r = batch_rank(np.stack([w - eye, prod - eye, c - prod]))
    return r[0] == length and r[1] == 2 * length and r[2] == 8 - 2 * length


def main():
    g = load_group("E8")
    l2 = [g.word(parse_word(s)).array for s in LENGTH2]
    l4 = [g.word(parse_word(s)).array for s in LENGTH4]
    hits = []
    for bits in itertools.product((0, 1), repeat=len(EDGES)):
        word = word_for_orientation(bits)
        c = g.word(word).array
        if all(satisfies(g, c, w, 2) for w in l2) and all(satisfies(g, c, w, 4) for w in l4):
            hits.append(word)
            print("match:", word)
    if not hits:
        print("no orientation reproduces the lists")


if __name__ == "__main__":
    main()
