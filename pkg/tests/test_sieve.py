import json
from fractions import Fraction
from math import comb, gcd

import numpy as np
import pytest

from ncsieve.absorder import nc_index
from ncsieve.groups import catalog_names, load_group, parse_word
from ncsieve.ncm import brute_fixed_count
from ncsieve.qcat import eval_at, fuss_catalan
from ncsieve.sieve import (
    Handler,
    OrbitEquation,
    centralizer_mask,
    classify_p,
    composition_counts,
    fixed_count_structured,
    orbit_structure,
    solve_orbit_equation,
    verify_csp,
    verify_csp_all_m,
)


# ---------------------------------------------------------------- classification


def test_g24_search_cases():
    g = load_group("G24")
    for m in (6, 12):
        mod = m * g.h
        search = {p for p in range(1, mod) if mod % p == 0 and classify_p(g, m, p, "phi").handled_by is Handler.SEARCH}
        assert search == {7 * m // 3, 14 * m // 3, 7 * m // 2}


def test_g24_divisible_case():
    g = load_group("G24")
    for m in (1, 2, 5):
        cl = classify_p(g, m, 2 * m, "phi")
        assert cl.handled_by is Handler.DIVISIBLE
        assert cl.predicted_count == m + 1  # only the degree 14 is divisible by 7


@pytest.mark.parametrize("name", ["A3", "E8", "G26", "H4"])
def test_p_equal_m(name):
    g = load_group(name)
    for m in (1, 2, 5):
        assert classify_p(g, m, m, "phi").predicted_count == m + 1
        assert classify_p(g, m, m + 1, "psi").predicted_count == m + 1


def test_transfer_records_unit():
    g = load_group("E8")
    cl = classify_p(g, 2, 45, "phi")
    assert cl.handled_by is Handler.TRANSFER
    assert cl.divisor == 15 and cl.transfer == 3


def test_parameters_factor_p():
    g = load_group("E8")
    for m in (2, 3, 4):
        mod = m * g.h
        for p in range(1, mod):
            if mod % p:
                continue
            par = classify_p(g, m, p, "phi").parameters
            assert par["m1"] * par["m2"] == m and par["h1"] * par["h2"] == g.h
            assert par["m1"] * par["h1"] == p and gcd(par["h1"], par["m2"]) == 1


def test_classify_range():
    with pytest.raises(ValueError):
        classify_p(load_group("A2"), 2, 6, "phi")


@pytest.mark.parametrize("name", ["A2", "A3", "B3", "H3", "G4", "G5", "G6", "G24", "G25", "G26", "F4", "D4", "I2(8)"])
@pytest.mark.parametrize("kind", ["phi", "psi"])
def test_predictions_match_brute_force(name, kind):
    g = load_group(name)
    for m in (1, 2, 3):
        if fuss_catalan(g, m) > 5000:
            break
        M = m if kind == "phi" else m + 1
        for p in range(M * g.h):
            cl = classify_p(g, m, p, kind)
            if cl.predicted_count is not None and cl.handled_by is not Handler.DEGREES_DIVIDE_H:
                assert brute_fixed_count(g, m, kind, p) == cl.predicted_count, (m, p, cl.handled_by)


# ---------------------------------------------------------------- orbit structure


@pytest.mark.parametrize(
    "name,m,p,kind,exponents,E",
    [
        ("G24", 3, 7, "phi", (0, 2, 4), 7),
        ("G24", 3, 14, "phi", (0, 9, 4), 14),
        ("G24", 2, 7, "phi", (0, 3), 7),
        ("E8", 2, 15, "phi", (0, 7), 15),
        ("E8", 2, 5, "phi", (0, 2), 5),
        ("E8", 8, 15, "phi", (0, 13, 11, 9, 7, 5, 3, 1), 15),
        ("E8", 1, 15, "psi", (0, 7), 15),
    ],
)
def test_orbit_exponents(name, m, p, kind, exponents, E):
    st = orbit_structure(load_group(name), m, p, kind)
    assert st.exponents == exponents
    assert st.centralizer_exponent % load_group(name).h == E % load_group(name).h


def test_orbit_structure_is_position_independent_everywhere():
    g = load_group("E8")
    for kind in ("phi", "psi"):
        for m in range(1, 13):
            M = m if kind == "phi" else m + 1
            for p in range(M * g.h):
                st = orbit_structure(g, m, p, kind)
                assert st.slots * st.orbit_size == M


def test_normalization():
    g = load_group("G24")
    eq = OrbitEquation((0, 9, 4), (1,), "equals-c", 14).normalized(g)
    assert eq.exponents == (0, 2, 4) and eq.centralizer_exponent == 0
    with pytest.raises(ValueError):
        OrbitEquation((1, 2), (1,))
    with pytest.raises(ValueError):
        OrbitEquation((0, 2), (1,), "above-c")


# ---------------------------------------------------------------- orbit equations


def test_g24_equations():
    g = load_group("G24")
    a = solve_orbit_equation(g, OrbitEquation((0, 2, 4), (1,), "equals-c", 7))
    b = solve_orbit_equation(g, OrbitEquation((0, 9, 4), (1,), "equals-c", 14))
    c = solve_orbit_equation(g, OrbitEquation((0, 3), (1,), "below-c", 7))
    assert a.count(1) == 7 and c.count(1) == 7
    assert set(a.solutions[1].tolist()) == set(b.solutions[1].tolist())
    assert a.types == {1: {"A1": 7}}


def test_e8_no_solution_for_eight_orbits():
    g = load_group("E8")
    eq = OrbitEquation((0, 13, 11, 9, 7, 5, 3, 1), (1,), "equals-c", 15)
    assert solve_orbit_equation(g, eq).count() == 0


def test_e8_zeta4_length_two():
    g = load_group("E8")
    inv = solve_orbit_equation(g, OrbitEquation((0, 7), (1, 2), "below-c", 15).normalized(g))
    assert inv.types == {1: {"A1": 45}, 2: {"A1^2": 150, "A2": 100}}


def test_e8_zeta12_fixture(fixtures_dir):
    data = json.loads((fixtures_dir / "e8_zeta12_solutions.json").read_text())
    g = load_group("E8")
    idx = nc_index(g)
    eq = data["equation"]
    inv = solve_orbit_equation(g, OrbitEquation(tuple(eq["exponents"]), (2, 4), eq["relation"], eq["centralizer_exponent"]))
    for length, words in data["solutions"].items():
        expected = {idx.index(g.word(parse_word(w))) for w in words}
        assert set(inv.solutions[int(length)].tolist()) == expected
    assert composition_counts(g, inv, 2, centralizer_mask(g, 5)) == {(2, 2): 25}


def test_length_out_of_range():
    with pytest.raises(ValueError):
        solve_orbit_equation(load_group("A2"), OrbitEquation((0, 1), (3,)))


def test_solutions_serialize():
    g = load_group("G24")
    inv = solve_orbit_equation(g, OrbitEquation((0, 3), (1,), "below-c", 7))
    d = inv.to_dict(with_solutions=True, g=g)
    assert len(d["solutions"]["1"]) == 7
    assert d["solutions"]["1"][0]["field_order"] == g.field_order


# ---------------------------------------------------------------- structured counts


@pytest.mark.parametrize(
    "name,m,p,kind,value",
    [
        ("G24", 3, 7, "phi", 8),
        ("G24", 6, 14, "phi", 15),
        ("G24", 2, 7, "phi", 8),
        ("E8", 2, 15, "phi", 714),
        ("E8", 2, 5, "phi", 21),
        ("E8", 1, 15, "psi", 88),
        ("G24", 1, 7, "psi", 0),
        ("G24", 3, 14, "psi", 0),
    ],
)
def test_structured_counts(name, m, p, kind, value):
    g = load_group(name)
    assert fixed_count_structured(g, m, p, kind) == value
    assert eval_at(g, m, p, kind) == value


def test_e8_zeta12_closed_form():
    g = load_group("E8")
    for m in (2, 4, 6, 8):
        k = m // 2
        assert fixed_count_structured(g, m, 5 * k, "phi") == 1 + 20 * k + 25 * comb(k, 2)


def test_e8_zeta4_closed_forms():
    g = load_group("E8")
    for m in (2, 4, 6):
        assert fixed_count_structured(g, m, 15 * m // 2, "phi") == Fraction(
            (5 * m + 4) * (3 * m + 2) * (5 * m + 2) * (15 * m + 4), 64
        )
    for m in (1, 3, 5):
        assert fixed_count_structured(g, m, 15 * (m + 1) // 2, "psi") == Fraction(
            (m + 1) * (5 * m + 3) * (15 * m + 7) * (15 * m + 1), 64
        )


def test_cross_check():
    g = load_group("H3")
    assert fixed_count_structured(g, 3, 10, "phi", cross_check=True) == brute_fixed_count(g, 3, "phi", 10)


def _oracle_cases(limit):
    for name in catalog_names():
        g = load_group(name)
        for m in (1, 2, 3):
            if fuss_catalan(g, m) <= limit:
                yield name, m


@pytest.mark.slow
@pytest.mark.parametrize("name,m", list(_oracle_cases(100_000)))
def test_oracle_equivalence(name, m):
    g = load_group(name)
    for kind in ("phi", "psi"):
        M = m if kind == "phi" else m + 1
        for p in range(M * g.h):
            brute = brute_fixed_count(g, m, kind, p)
            assert fixed_count_structured(g, m, p, kind) == brute
            assert eval_at(g, m, p, kind) == brute


# ---------------------------------------------------------------- reports


def test_verify_csp_a2():
    r = verify_csp(load_group("A2"), 2, "phi", mode="brute")
    assert r.passed and len(r.rows) == 6
    assert r.rows[0].count == 12 and r.rows[0].value == 12


@pytest.mark.parametrize("kind", ["phi", "psi"])
def test_modes_agree(kind):
    g = load_group("H3")
    reports = [verify_csp(g, 2, kind, mode=mode) for mode in ("brute", "structured", "auto")]
    counts = [[row.count for row in r.rows] for r in reports]
    assert counts[0] == counts[1] == counts[2]
    assert all(r.passed for r in reports)


def test_g24_row():
    r = verify_csp(load_group("G24"), 3, "phi")
    row = r.rows[7]
    assert row.count == 8 and row.value == 8 and row.passed
    assert 7 in r.inventories


def test_worker_count_does_not_change_report():
    g = load_group("B3")
    one = json.dumps(verify_csp(g, 2, "psi", mode="brute", workers=1).to_dict(), sort_keys=True)
    two = json.dumps(verify_csp(g, 2, "psi", mode="brute", workers=2).to_dict(), sort_keys=True)
    assert one == two


def test_infeasible_rows_are_reported():
    r = verify_csp(load_group("E8"), 2, "phi", mode="brute", brute_bound=1000)
    assert not r.passed
    assert all(row.count is None and row.note.startswith("infeasible") for row in r.rows)


def test_report_has_no_floats():
    doc = verify_csp(load_group("G24"), 6, "phi").to_dict()

    def walk(x):
        assert not isinstance(x, float)
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        elif isinstance(x, list):
            for v in x:
                walk(v)

    walk(doc)
    assert "PASS" in verify_csp(load_group("G24"), 6, "phi").to_text()


def test_all_m_a1():
    r = verify_csp_all_m(load_group("A1"), "phi")
    assert r.passed
    assert all(c["handled_by"] != Handler.SEARCH.value for c in r.classes)


def test_all_m_g24_residual_classes():
    r = verify_csp_all_m(load_group("G24"), "phi")
    assert r.passed
    residual = {(c["m2"], c["h2"]) for c in r.classes if c["handled_by"] == Handler.SEARCH.value}
    assert residual == {(3, 2), (3, 1), (2, 2)}


def test_all_m_h3_spot_checks():
    r = verify_csp_all_m(load_group("H3"), "phi")
    assert r.passed
    checks = [c["brute_check"] for c in r.classes if "brute_check" in c]
    assert checks and all(c["pass"] for c in checks)


def test_all_m_bounds():
    with pytest.raises(ValueError):
        verify_csp_all_m(load_group("H3"), "phi", m_bound=5)
    with pytest.raises(ValueError):
        verify_csp_all_m(load_group("H3"), "phi", degree_bound=1)
