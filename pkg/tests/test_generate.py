import pytest

from ilmt import fixtures
from ilmt.generate import CloneMap, GeneratingSequence, generate, generate_oriented, ilmt_step, iterate, oriented_step
from ilmt.tournament import GraphError, SizeCapError, Tournament, build_oriented, nonisomorphic_tournaments


def test_sequence_parse_and_support():
    s = GeneratingSequence.parse("10", repeat=3)
    assert str(s) == "101010"
    assert s.s(1) == 1 and s.s(2) == 0
    assert s.support == (2, 4, 6)
    assert s.zero_index(2) == 4 and s.zero_index(4) is None
    with pytest.raises(ValueError):
        GeneratingSequence.parse("012")
    with pytest.raises(IndexError):
        s.s(0)


def test_clone_map():
    cm = CloneMap(t=2, n_prev=4, bit=0)
    assert cm.clone_of(3) == 7 and cm.parent_of(7) == 3
    assert cm.is_clone(4) and not cm.is_clone(3)
    assert cm.origin(6) == 2 and cm.origin(1) == 1


def test_edge_two_steps():
    g, maps = generate(fixtures.edge(), "10")
    assert g == fixtures.edge_10(2)
    assert [m.bit for m in maps] == [1, 0]


def test_edge_first_step():
    assert ilmt_step(fixtures.edge(), 1)[0] == fixtures.edge_10(1)


def test_oriented_edge_two_steps():
    g, _ = generate_oriented(build_oriented(2, [(0, 1)]), "10")
    assert g == fixtures.oriented_edge_10(2)
    assert oriented_step(fixtures.oriented_edge_10(0), 1)[0] == fixtures.oriented_edge_10(1)


def test_zero_steps_echoes_base():
    g, maps = generate(fixtures.d3(), "", 0)
    assert g == fixtures.d3() and maps == []


@pytest.mark.parametrize("bit", [0, 1])
def test_step_structure(bit):
    for g0 in nonisomorphic_tournaments(5):
        g1, cm = ilmt_step(g0, bit)
        assert isinstance(g1, Tournament) and g1.n == 10
        n = g0.n
        for u in range(n):
            for v in range(n):
                if u == v:
                    continue
                arc = g0.has_arc(u, v)
                assert g1.has_arc(u, v) == arc  # parents keep their tournament
                assert g1.has_arc(u + n, v + n) == (arc if bit else not arc)
                assert g1.has_arc(u, v + n) == arc and g1.has_arc(u + n, v) == arc
            assert g1.has_arc(u + n, u)


def test_oriented_step_has_no_arcs_among_clones():
    g, _ = oriented_step(build_oriented(3, [(0, 1), (1, 2)]), 0)
    n = 3
    assert not any(g.has_arc(u, v) for u in range(n, 2 * n) for v in range(n, 2 * n))


def test_iterate_and_caps():
    sizes = [g.n for _, g, _ in iterate(fixtures.d3(), "0101")]
    assert sizes == [3, 6, 12, 24, 48]
    with pytest.raises(SizeCapError):
        generate(fixtures.d3(), "0000", cap=40)
    with pytest.raises(GraphError):
        generate(fixtures.d3(), "01", 3)


def test_cap_from_environment(monkeypatch):
    monkeypatch.setenv("ILMT_MAX_NODES", "10")
    with pytest.raises(SizeCapError):
        generate(fixtures.d3(), "00")
