"""Acceptance criteria 1-7, one test each.

Each test records its outcome in ``acceptance_log.RESULTS``; the terminal
summary prints one ``criterion k: PASS|FAIL`` line per entry.  Run
``python tests/test_acceptance.py`` for just this file.
"""

import json
import subprocess
import sys
from contextlib import contextmanager
from pathlib import Path

import pytest

from acceptance_log import RESULTS
from ncsieve.absorder import nc_index
from ncsieve.groups import load_group, parse_word
from ncsieve.ncm import brute_fixed_count
from ncsieve.qcat import eval_at, fuss_catalan
from ncsieve.sieve import (
    OrbitEquation,
    centralizer_mask,
    composition_counts,
    fixed_count_structured,
    solve_orbit_equation,
    verify_csp_all_m,
)

HERE = Path(__file__).resolve().parent


@contextmanager
def criterion(number: int, title: str):
    RESULTS[number] = (False, title)
    yield
    RESULTS[number] = (True, title)


def test_criterion_1_brute_oracle_suite():
    with criterion(1, "brute force equals the q-Catalan value on small groups"):
        for name in ["A1", "A2", "A3", "B2", "B3", "I2(5)", "I2(6)", "H3", "G4"]:
            g = load_group(name)
            for m in (1, 2, 3):
                for kind, M in (("phi", m), ("psi", m + 1)):
                    for p in range(M * g.h):
                        assert brute_fixed_count(g, m, kind, p) == eval_at(g, m, p, kind), (name, m, kind, p)


def test_criterion_2_g24_worked_case():
    with criterion(2, "G24 orbit equations and structured counts"):
        g = load_group("G24")
        three = solve_orbit_equation(g, OrbitEquation((0, 2, 4), (1,), "equals-c", 7))
        two = solve_orbit_equation(g, OrbitEquation((0, 3), (1,), "below-c", 7))
        assert three.count(1) == 7
        assert two.count(1) == 7
        assert fixed_count_structured(g, 3, 7, "phi") == 8 == (7 * 3 + 3) // 3
        assert fixed_count_structured(g, 6, 14, "phi") == 15 == (7 * 6 + 3) // 3
        assert fixed_count_structured(g, 2, 7, "phi") == 8 == (7 * 2 + 2) // 2


def test_criterion_3_e8_short_lengths():
    with criterion(3, "E8 inventories up to length 2"):
        g = load_group("E8")
        idx = nc_index(g)
        zeta4 = solve_orbit_equation(g, OrbitEquation((0, 7), (1, 2), "below-c", 15).normalized(g))
        assert zeta4.types == {1: {"A1": 45}, 2: {"A1^2": 150, "A2": 100}}

        data = json.loads((HERE / "fixtures" / "e8_zeta12_solutions.json").read_text())
        eq = data["equation"]
        zeta12 = solve_orbit_equation(
            g, OrbitEquation(tuple(eq["exponents"]), (2, 4), eq["relation"], eq["centralizer_exponent"])
        )
        for length, words in data["solutions"].items():
            assert len(words) == 10
            expected = {idx.index(g.word(parse_word(w))) for w in words}
            assert set(zeta12.solutions[int(length)].tolist()) == expected
        mask = centralizer_mask(g, eq["centralizer_exponent"])
        assert composition_counts(g, zeta12, 2, mask) == {(2, 2): 25}


@pytest.mark.tier2
def test_criterion_4_e8_lengths_three_and_four():
    with criterion(4, "E8 inventories at lengths 3 and 4 and assembled counts"):
        g = load_group("E8")
        inv = solve_orbit_equation(g, OrbitEquation((0, 7), (1, 2, 3, 4), "below-c", 15).normalized(g))
        assert inv.types[3] == {"A1^3": 75, "A1*A2": 165, "A3": 90}
        assert inv.types[4] == {"A1^2*A2": 15, "A1*A3": 45, "A2^2": 5, "A4": 18, "D4": 5}
        assert "A1^4" not in inv.types[4]
        assert composition_counts(g, inv, 2) == {
            (1, 1): 600, (1, 2): 1425, (1, 3): 660, (2, 1): 1425, (2, 2): 1195, (3, 1): 660,
        }
        assert composition_counts(g, inv, 3) == {(1, 1, 1): 3375, (1, 1, 2): 2850, (1, 2, 1): 2850, (2, 1, 1): 2850}
        assert composition_counts(g, inv, 4) == {(1, 1, 1, 1): 6750}


def test_criterion_5_polynomial_certification():
    with criterion(5, "all-m certification with brute spot checks"):
        for name in ["A2", "A3", "B3", "H3", "G24"]:
            g = load_group(name)
            for kind in ("phi", "psi"):
                report = verify_csp_all_m(g, kind)
                assert report.passed, (name, kind)
                for cls in report.classes:
                    assert cls["pass"]
                    if cls["certificate"] != "interpolation":
                        continue
                    assert len(cls["polynomial"]) - 1 <= g.rank
                    check = cls["brute_check"]
                    assert check["m"] == cls["sample_m"][0] and check["pass"], (name, kind, cls)


def test_criterion_6_formula_regressions():
    with criterion(6, "closed-form regressions"):
        e8 = load_group("E8")
        assert fuss_catalan(e8, 1) == 25080
        assert len(nc_index(load_group("H3"))) == 32
        assert eval_at(e8, 2, 15, "phi") == 714
        assert eval_at(e8, 1, 15, "psi") == 88


def test_criterion_7_property_suite_standalone():
    with criterion(7, "property suite runs on its own"):
        proc = subprocess.run(
            [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", str(HERE / "test_properties.py")],
            capture_output=True,
            text=True,
            cwd=HERE.parent,
        )
        assert proc.returncode == 0, proc.stdout[-3000:]


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider", "--rootdir", str(HERE.parent)]))
