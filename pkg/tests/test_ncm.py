import numpy as np
import pytest

import oracles
from ncsieve.absorder import kreweras, nc_index
from ncsieve.groups import load_group
from ncsieve.ncm import (
    ActionKind,
    NCTuple,
    act_power,
    act_power_indices,
    brute_fixed_count,
    complete_first,
    enumerate_ncm,
    ncm_indices,
    phi_once,
    psi_once,
)


@pytest.mark.parametrize("name,m", [("A1", 1), ("A1", 4), ("A2", 1), ("A2", 3), ("B3", 2), ("H3", 2), ("G4", 3), ("I2(5)", 2), ("G26", 1)])
def test_enumeration_matches_oracle(name, m):
    g = load_group(name)
    got = sorted(x.parts for x in enumerate_ncm(g, m))
    assert got == sorted(x.parts for x in oracles.ncm_tuples(name, m))


def test_small_counts():
    assert len(enumerate_ncm(load_group("A1"), 3)) == 4
    assert len(enumerate_ncm(load_group("A2"), 1)) == 5


def test_g24_catalan_number():
    # the oracle enumerates [1, c] over all 336 elements of G24
    assert len(oracles.ncm_tuples("G24", 1)) == 30
    assert len(ncm_indices(load_group("G24"), 1)) == 30


def test_tuples_are_valid():
    g = load_group("G25")
    for x in enumerate_ncm(g, 2)[::7]:
        assert x.is_valid(g)


def test_bad_tuple_length():
    g = load_group("A2")
    with pytest.raises(ValueError):
        NCTuple(2, (g.identity, g.coxeter))


def test_bound():
    with pytest.raises(OverflowError):
        ncm_indices(load_group("E8"), 3, bound=1000)


@pytest.mark.parametrize("name,m", [("A3", 2), ("G5", 2), ("H3", 1), ("B2", 3)])
@pytest.mark.parametrize("kind", ["phi", "psi"])
def test_closed_form_matches_iteration(name, m, kind):
    g = load_group(name)
    step = phi_once if kind == "phi" else psi_once
    order = (m if kind == "phi" else m + 1) * g.h
    for x in enumerate_ncm(g, m)[::3]:
        y = x
        for p in range(order + 2):
            assert act_power(g, m, x, kind, p).parts == y.parts
            y = step(g, y)


def test_index_form_matches_element_form():
    g = load_group("H3")
    idx = nc_index(g)
    tuples = ncm_indices(g, 2)
    for p in (1, 7, 13):
        moved = complete_first(idx, act_power_indices(idx, tuples, 2, "phi", p))
        for row, x in zip(moved[::11], enumerate_ncm(g, 2)[::11]):
            y = act_power(g, 2, x, "phi", p)
            assert tuple(idx.elements[i] for i in row) == y.parts


def test_phi_at_m1_is_conjugation():
    g = load_group("D4")
    for x in enumerate_ncm(g, 1):
        y = phi_once(g, x)
        assert y.parts == tuple(g.conjugate(w, 1) for w in x.parts)


def test_psi_at_m1_inverts_kreweras():
    g = load_group("B3")
    for x in enumerate_ncm(g, 1):
        y = psi_once(g, x)
        assert kreweras(g, y.parts[1]) == x.parts[1]


def test_fixed_count_basics():
    g = load_group("A3")
    for m in (1, 2, 3):
        assert brute_fixed_count(g, m, "phi", 0) == len(ncm_indices(g, m))
        assert brute_fixed_count(g, m, "phi", m) == m + 1
        for p in range(1, m + 1):
            if (m + 1) % p == 0:
                assert brute_fixed_count(g, m, "psi", p) == 0


@pytest.mark.parametrize("name,m,kind,p", [("A3", 2, "phi", 4), ("H3", 2, "phi", 5), ("G6", 2, "psi", 6), ("B3", 1, "psi", 3)])
def test_fixed_count_matches_iteration(name, m, kind, p):
    g = load_group(name)
    assert brute_fixed_count(g, m, kind, p) == oracles.fixed_by_iteration(name, m, kind, p)


def test_action_kind_parse():
    assert ActionKind.parse("PHI") is ActionKind.PHI
    with pytest.raises(ValueError):
        ActionKind.parse("chi")


def test_negative_power_rejected():
    g = load_group("A2")
    with pytest.raises(ValueError):
        brute_fixed_count(g, 1, "phi", -1)
