from math import factorial

import numpy as np
import pytest

import oracles
from ncsieve.absorder import nc_index
from ncsieve.decomp import (
    ParabolicType,
    TypeLookupError,
    decomposition_number,
    eigen_signature,
    factorization_count,
    format_label,
    nc_types,
    parabolic_type,
    parse_label,
    subgroup_type,
)
from ncsieve.groups import load_group


def test_labels_round_trip():
    for label in ["A1", "A1^2", "A1*A2", "A1^2*A2", "D4", "G(3,1,2)", "A1*G4"]:
        assert format_label(parse_label(label)) == label
    assert str(ParabolicType.parse("")) == "1"
    assert ParabolicType.parse("A2^2").rank == 4


def test_identity_and_reflections():
    g = load_group("E7")
    assert parabolic_type(g, g.identity).rank == 0
    for t in g.reflections[:10]:
        assert str(parabolic_type(g, t)) == "A1"


def test_coxeter_element_type():
    for name in ["A4", "D5", "E6", "H4", "F4", "G24", "G26"]:
        g = load_group(name)
        assert str(parabolic_type(g, g.coxeter)) == name


def test_e8_length_two_types():
    g = load_group("E8")
    idx = nc_index(g)
    for y in idx.stratum(2)[:200].tolist():
        w = idx.elements[y]
        sig = dict(eigen_signature(g, w))
        t = str(parabolic_type(g, w))
        # eigenvalues other than 1, counted by multiplicative order
        if sig == {3: 2}:
            assert t == "A2"
        elif sig == {2: 2}:
            assert t == "A1^2"
        else:
            pytest.fail(f"unexpected signature {sig}")


@pytest.mark.parametrize("name", ["A3", "B3", "H3", "D4", "G4", "G5", "G6", "G24", "G25", "G26"])
def test_types_match_subgroup_oracle(name):
    g = load_group(name)
    idx = nc_index(g)
    types = nc_types(g)
    for i in range(len(idx)):
        assert types[i] == subgroup_type(g, idx.elements[i])


def test_types_match_subgroup_oracle_e8_sample():
    g = load_group("E8")
    idx = nc_index(g)
    types = nc_types(g)
    rng = np.random.default_rng(5)
    for i in rng.choice(len(idx), size=60, replace=False).tolist():
        assert types[i] == subgroup_type(g, idx.elements[i])


def test_unknown_type_label():
    with pytest.raises((TypeLookupError, KeyError)):
        ParabolicType.parse("X9")


def test_decomposition_numbers_from_text():
    assert decomposition_number(load_group("A2"), ["A1", "A1"]) == 3
    g = load_group("A3")
    idx = nc_index(g)
    y = next(i for i, t in enumerate(nc_types(g)) if str(t) == "A1^2")
    assert decomposition_number(g, ["A1", "A1"], below=idx.elements[y]) == 2


@pytest.mark.parametrize("name", ["A3", "E6", "G24", "H3"])
def test_coxeter_element_alone(name):
    g = load_group(name)
    assert decomposition_number(g, [name]) == 1


def _pair_oracle(name, left, right):
    g = load_group(name)
    lengths = oracles.cayley_lengths(name)
    nc = oracles.nc_elements(name)
    count = 0
    for x in nc:
        z = x.inverse() * g.coxeter
        if lengths[x.key] + lengths[z.key] != g.rank:
            continue
        if str(subgroup_type(g, x)) == left and str(subgroup_type(g, z)) == right:
            count += 1
    return count


@pytest.mark.parametrize("name,left,right", [("A3", "A2", "A1"), ("A3", "A1", "A2"), ("B3", "B2", "A1"), ("H3", "A1", "I2(5)"), ("G25", "A1", "G4")])
def test_pairs_match_oracle(name, left, right):
    assert decomposition_number(load_group(name), [left, right]) == _pair_oracle(name, left, right)


@pytest.mark.parametrize("name", ["A3", "A4", "B3", "H3", "F4", "D4", "G24", "G25", "G26", "E6"])
def test_reduced_reflection_factorizations(name):
    # n! h^n / |W| maximal chains in [1, c]
    g = load_group(name)
    expected = factorial(g.rank) * g.h**g.rank // g.order
    if g.is_real:
        assert decomposition_number(g, ["A1"] * g.rank) == expected
    idx = nc_index(g)
    assert factorization_count(g, idx.coxeter, [1] * g.rank) == expected


def test_lengths_below_rank_count_all_products():
    g = load_group("A3")
    # products of two commuting-type factors of length 1: every length-2 element, split in all ways
    idx = nc_index(g)
    total = sum(factorization_count(g, y, [1, 1]) for y in idx.stratum(2).tolist())
    assert decomposition_number(g, ["A1", "A1"]) == total
