"""Smoke tests for the python bindings (and a CLI round trip when available)."""

import json
import math
import os
import subprocess
import tempfile

import pytest

try:
    import menugap as mg
except ImportError:
    import _menugap as mg


def test_menu_gap_known_values():
    rep = mg.menu_gap_terms(1, [[2.0]], [[0.0], [1.0]])
    assert rep["total"] == 1.0
    rep2 = mg.menu_gap_terms(2, [[1, 0], [0, 1]], [[0, 0], [1, 0], [1, 1]])
    assert rep2["total"] == 2.0
    rep3 = mg.menu_gap_terms(2, [[1, 0], [1, 0]], [[0, 0], [1, 0], [0, 1]])
    assert rep3["terms"][1] == -1.0 and rep3["total"] == 0.0


def test_sup_gap_and_alignment():
    assert mg.sup_gap(2, [[0, 0], [1, 0], [0, 1]])["total"] == 2.0
    rep = mg.align_gap_terms(2, [[1, 0], [1, 0]], [0.0, 1.0, 0.5])
    assert rep["clipped"][1] == 0.0 and rep["total"] == 1.0
    q = mg.align_to_menu(2, [[1, 0], [1, 0]], [0.0, 1.0, 0.5])
    assert q[2] == [1.0, 0.0]


def test_alpha_and_construction():
    lo, hi = mg.alpha_enclosure(1e-6)
    assert 1.9 < lo <= hi <= 3.0 and hi - lo <= 1e-6
    pts = mg.build_x_sequence(3)
    assert len(pts) == 10
    assert pts[0] == [1.0, 0.0] and pts[2] == [0.0, 1.0] and pts[9] == [1.0, 0.0]
    for p in pts:
        assert abs(p[0] ** 2 + p[1] ** 2 - 1.0) < 1e-12
    q = mg.build_q_sequence(3)
    assert q[0] == [0.0, 0.0] and all(0.0 <= c <= 1.0 for row in q for c in row)


def test_lagrel_bound_below_6():
    for layers in (2, 6, 12):
        pts = mg.build_x_sequence(layers)
        v = mg.lagrel_closed_form(pts, True) + mg.lagrel_tail_bound(layers + 1)
        assert v <= 6.0
    chain = mg.lagrel_chain(mg.build_x_sequence(5))
    assert chain["chain_valid"]
    assert math.isclose(chain["lagrel1"], chain["lagrel"], rel_tol=1e-12)


def test_lp_and_search():
    obj, witness = mg.menu_gap_lp(1, [[1.0], [2.0], [4.0]])
    assert obj == 1.0
    obj2, _ = mg.menu_gap_lp(2, [[1, 0], [0, 1]])
    assert obj2 == 2.0
    val, scal = mg.align_gap_search(1, [[1.0], [2.0], [4.0]], 8, 7)
    assert math.isclose(val, 1.0, rel_tol=1e-12)
    bval, _ = mg.align_gap_bruteforce(2, [[1, 0], [0, 1]], 32)
    assert bval <= obj2 + 1e-12


def test_auction_semantics():
    support = [([4.0, 0.0], 0.5), ([0.0, 16.0], 0.5)]
    menu = [([0.0, 0.0], 0.0), ([1.0, 0.0], 4.0), ([0.0, 1.0], 16.0)]
    rep = mg.revenue(2, support, menu)
    assert rep["rev"] == 10.0 and rep["brev"] == 8.0 and rep["arev"] == 10.0
    price, value = mg.brev(2, support)
    assert price == 16.0 and value == 8.0
    clean, worst = mg.verify_ic_ir(2, support, menu)
    assert clean and worst == 0.0
    odd, even = mg.parity_split(2, menu, 4.0)
    assert len(even) == 3 and len(odd) == 1


def test_optimal_mechanism_and_pipeline():
    support = [([4.0, 0.0], 0.5), ([0.0, 16.0], 0.5)]
    rev, menu = mg.optimal_mechanism_lp(2, support)
    assert rev == 10.0
    cert = mg.theorem_main_pipeline(2, support)
    assert cert["pass"] and cert["gap_total"] == 2.0
    assert cert["claimed_bound"] == pytest.approx(10.0 / 72.0)
    ext = mg.theorem_ext_pipeline(2, support, menu)
    assert ext["pass"]


def test_hn_round_trip():
    pts = [[1.0, 0.0]]
    allocs = [[0.0, 0.0], [1.0, 0.0]]
    hn = mg.hn_construct(2, pts, allocs, 100.0)
    assert hn["ic_clean"]
    assert hn["support"][0][0] == [10000.0, 0.0]
    rep = mg.revenue(2, hn["support"], hn["menu"])
    assert rep["rev"] == 1.0 and rep["brev"] == 1.0


def test_extraction():
    support = [([4.0, 0.0], 0.5), ([0.0, 16.0], 0.5)]
    menu = [([0.0, 0.0], 0.0), ([1.0, 0.0], 4.0), ([0.0, 1.0], 16.0)]
    x, q = mg.representative_sequence(2, support, menu, 4.0)
    assert x == [[4.0, 0.0], [0.0, 16.0]]
    x2, c2 = mg.aligned_sequence(2, support, menu, 4.0)
    assert c2 == [0.0, 0.25, 0.0625]


def test_acceptance_hook_runs_single_criterion():
    results = mg.run_acceptance(seed=2026, layers=12, quick=True, which=[7])
    assert len(results) == 1 and results[0]["pass"]


@pytest.mark.skipif("MENUGAP_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_round_trip():
    cli = os.environ["MENUGAP_CLI"]
    with tempfile.TemporaryDirectory() as tmp:
        x_path = os.path.join(tmp, "x.json")
        q_path = os.path.join(tmp, "q.json")
        out = subprocess.run(
            [cli, "build-sequence", "--layers", "3", "--out", x_path, "--q-out", q_path],
            capture_output=True, text=True, check=True)
        assert json.loads(out.stdout)["points"] == 10
        ev = subprocess.run(
            [cli, "--backend", "rational", "menugap", x_path, "--q", q_path],
            capture_output=True, text=True, check=True)
        total = json.loads(ev.stdout)["total"]
        # rational backend serializes exact values as "num/den" strings
        num, _, den = total.partition("/")
        ratio = float(num) / float(den or "1")
        rep = mg.menu_gap_terms(2, mg.build_x_sequence(3), mg.build_q_sequence(3))
        assert math.isclose(ratio, rep["total"], rel_tol=1e-12)
