import itertools

import pytest

from ilmt import fixtures
from ilmt.cops import BudgetExceeded, GameState, cop_number, cops_win, solve_game, check_cop_steps, verify_strategy
from ilmt.generate import ilmt_step
from ilmt.tournament import build, nonisomorphic_tournaments, sources_and_sinks, transitive


def test_game_state_validation():
    GameState((0, 2), 1, "cop-move")
    with pytest.raises(ValueError):
        GameState((2, 0), 1, "cop-move")
    with pytest.raises(ValueError):
        GameState((0,), 1, "nap")


def test_single_node_and_transitive():
    assert cop_number(build(1, [])).cop_number == 1
    assert cop_number(transitive(5)).cop_number == 1  # a cop on the source sweeps down


def test_d3_needs_two():
    win, _ = cops_win(fixtures.d3(), 1)
    assert not win
    res = cop_number(fixtures.d3())
    assert res.cop_number == 2 and verify_strategy(res.game)[0]


def test_zero_step_of_d3():
    g, _ = ilmt_step(fixtures.d3(), 0)
    res = cop_number(g)
    assert res.cop_number == 2 and verify_strategy(res.game)[0]


def test_monotone_in_k():
    for g0 in nonisomorphic_tournaments(5):
        c = cop_number(g0).cop_number
        assert all(cops_win(g0, k)[0] for k in range(c, g0.n + 1))
        assert not any(cops_win(g0, k)[0] for k in range(1, c))


def test_one_cop_implies_source():
    for n in range(1, 6):
        for g in nonisomorphic_tournaments(n):
            if cop_number(g).cop_number == 1:
                assert sources_and_sinks(g)[0]


def test_step_checks():
    for g0 in nonisomorphic_tournaments(4):
        assert check_cop_steps(g0)["pass"]


def test_strategy_moves_follow_arcs():
    res = cop_number(ilmt_step(fixtures.d3(), 0)[0])
    g = res.game.g

    def legal(cops, move):
        # configurations are multisets, so some pairing of cops to destinations must work
        return any(
            all(b == a or g.has_arc(a, b) for a, b in zip(cops, perm)) for perm in itertools.permutations(move)
        )

    strat = res.strategy()
    assert strat
    assert all(legal(cops, move) for (cops, _), move in strat.items())


def test_budget():
    with pytest.raises(BudgetExceeded):
        solve_game(transitive(12), 3, budget=100)


def test_to_json():
    d = cop_number(fixtures.d3()).to_json()
    assert d["cop_number"] == 2 and len(d["placement"]) == 2
