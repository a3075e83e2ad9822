import itertools

import pytest

from ilmt import fixtures
from ilmt.generate import generate, ilmt_step, iterate
from ilmt.props import (
    analyze,
    check_minimal_indominating_clone_lift,
    chromatic_number,
    connectivity,
    connectivity_bruteforce,
    diameter,
    domination,
    greedy_coloring,
    hero,
    is_coloring,
    is_dominating,
    is_minimal_dominating,
    is_separating,
    is_strong,
    is_transitive_set,
    check_chi_steps,
)
from ilmt.tournament import SizeCapError, build, nonisomorphic_tournaments, sources_and_sinks, transitive


def test_diameter():
    assert diameter(fixtures.d3()) == 2
    assert diameter(fixtures.t3()) is None
    assert diameter(build(1, [])) == 0


def test_diameter_after_zero_step_of_sink_free_bases():
    for g0 in nonisomorphic_tournaments(4) + nonisomorphic_tournaments(5):
        if sources_and_sinks(g0)[1]:
            continue
        for s in ("0", "10", "110"):
            g, _ = generate(g0, s)
            assert diameter(g) <= 3


def test_connectivity_small():
    assert connectivity(fixtures.d3()) == (1, frozenset({0})) or connectivity(fixtures.d3())[0] == 1
    assert connectivity(fixtures.t3()) == (0, frozenset())
    assert connectivity(ilmt_step(fixtures.d3(), 0)[0])[0] >= 2
    with pytest.raises(ValueError):
        connectivity(build(1, []))


def test_connectivity_matches_bruteforce():
    for n in range(2, 7):
        for g in nonisomorphic_tournaments(n):
            k, cut = connectivity(g)
            assert k == connectivity_bruteforce(g)
            if k:
                assert len(cut) == k and is_separating(g, cut)


def test_connectivity_bruteforce_on_steps():
    for g0 in nonisomorphic_tournaments(5):
        for bit in (0, 1):
            g1, _ = ilmt_step(g0, bit)
            assert connectivity(g1)[0] == connectivity_bruteforce(g1)


def test_strong_within_mask():
    g = transitive(4)
    assert not is_strong(g)
    assert is_strong(fixtures.d3(), within=0b111)


def test_domination_examples():
    assert domination(fixtures.t3(), "in") == (1, (0,))
    assert domination(fixtures.d3(), "out")[0] == 2
    for _, g, _ in iterate(fixtures.d3(), "0101"):
        assert domination(g, "out")[0] == 2
    with pytest.raises(ValueError):
        domination(fixtures.d3(), "sideways")


def test_domination_witness_is_minimum():
    for g in nonisomorphic_tournaments(5):
        for d in ("in", "out"):
            k, w = domination(g, d)
            assert len(w) == k and is_dominating(g, w, d)
            assert not any(is_dominating(g, s, d) for s in itertools.combinations(range(g.n), k - 1))


def test_clone_lift_examples():
    assert check_minimal_indominating_clone_lift(fixtures.d3(), [0, 1]) == (True, True, True)
    assert check_minimal_indominating_clone_lift(fixtures.t3(), [0]) == (True, False, False)
    assert check_minimal_indominating_clone_lift(fixtures.d3(), [0, 1, 2]) == (True, True, True)
    with pytest.raises(IndexError):
        check_minimal_indominating_clone_lift(fixtures.d3(), [5])


def test_clone_lift_biconditional_exhaustive():
    for n in range(1, 6):
        for g0 in nonisomorphic_tournaments(n):
            for k in range(1, n + 1):
                for sub in itertools.combinations(range(n), k):
                    ind, outd, lifted = check_minimal_indominating_clone_lift(g0, sub)
                    assert lifted == (ind and outd)


def test_minimal_in_dominating_set_need_not_out_dominate():
    # strong 4-node tournament: {0, 1} is minimal in-dominating, but 2 beats only 3
    g = build(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 0)])
    assert not sources_and_sinks(g)[0]
    assert is_minimal_dominating(g, [0, 1], "in")
    assert check_minimal_indominating_clone_lift(g, [0, 1]) == (True, False, False)


def test_in_domination_grows_after_two_zero_steps():
    gammas = [domination(g, "in")[0] for _, g, _ in iterate(fixtures.d3(), "00")]
    assert gammas == [2, 2, 3]


def test_transitive_sets_and_colorings():
    g = fixtures.d3()
    assert is_transitive_set(g, [0, 1]) and not is_transitive_set(g, [0, 1, 2])
    assert is_coloring(g, [0, 0, 1]) and not is_coloring(g, [0, 0, 0])
    assert is_coloring(g, greedy_coloring(g))


@pytest.mark.parametrize("name,chi", [("d3", 2), ("t3", 1), ("fig2:G", 2), ("fig2:H", 2), ("fig2:T", 2)])
def test_chromatic_number(name, chi):
    res = chromatic_number(fixtures.builtin(name))
    assert res.chi == chi and res.exact and is_coloring(fixtures.builtin(name), res.coloring)


@pytest.mark.parametrize("i", [1, 2, 3, 4])
def test_hero(i):
    s = hero(i)
    assert s.n == 2**i - 1
    res = chromatic_number(s)
    assert res.exact and res.chi == i


def test_hero_cap():
    with pytest.raises(SizeCapError):
        hero(20)


def test_chromatic_cap_falls_back_to_heuristic():
    g, _ = generate(fixtures.d3(), "000")
    res = chromatic_number(g, cap=10)
    assert not res.exact and is_coloring(g, res.coloring)


def test_chi_trio_deltas():
    for name, delta in (("G", 0), ("H", 1), ("T", 2)):
        g = fixtures.chi_trio(name)
        assert chromatic_number(ilmt_step(g, 0)[0]).chi - chromatic_number(g).chi == delta


def test_chi_step_checks():
    assert check_chi_steps(fixtures.d3(), "one-step")["pass"]
    assert check_chi_steps(fixtures.chi_trio("H"), "zero-pairs")["pass"]


def test_analyze_reports():
    d = analyze(fixtures.d3()).to_json()
    assert (d["diameter"], d["strong"], d["kappa"], d["gamma_in"], d["gamma_out"]) == (2, True, 1, 2, 2)
    t = analyze(fixtures.t3(), chi=True).to_json()
    assert (t["strong"], t["kappa"], t["gamma_in"], t["gamma_out"], t["chi"]) == (False, 0, 1, 1, 1)
    assert t["diameter"] == "not strong"
