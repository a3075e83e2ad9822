"""Named tournaments used by tests, the CLI and the verification suites."""
from __future__ import annotations

from .tournament import GraphError, Tournament, build, build_oriented, transitive

# node labels a, b, c, ... map to 0, 1, 2, ...
CHI_TRIO_G = [(0, 2), (1, 0), (2, 1)]
CHI_TRIO_H = [(2, 0), (0, 1), (3, 1), (3, 2), (2, 1), (0, 3)]
CHI_TRIO_T = [
    (0, 1), (2, 0), (3, 0), (4, 0), (0, 5), (6, 0), (7, 0),
    (1, 2), (3, 1), (4, 1), (5, 1), (1, 6), (7, 1),
    (3, 2), (2, 4), (5, 2), (6, 2), (7, 2),
    (3, 5), (3, 4), (3, 6), (7, 3),
    (5, 4), (4, 6), (4, 7), (5, 7), (6, 5), (6, 7),
]

# Single arc a->b after s = 1, 0 (a=0, b=1); every clone sits at parent + n_{t-1}:
# G1: a'=2, b'=3.  G2: a''=4, b''=5, (a')'=6, (b')'=7.
EDGE_10_G1 = [(0, 1), (0, 3), (2, 1), (2, 0), (3, 1), (2, 3)]
EDGE_10_G2 = EDGE_10_G1 + [
    (5, 4), (7, 4), (5, 6), (4, 6), (5, 7), (7, 6),
    (4, 0), (5, 1), (6, 2), (7, 3),
    (0, 5), (4, 1), (0, 7), (4, 3), (2, 5), (6, 1),
    (2, 4), (6, 0), (3, 5), (7, 1), (2, 7), (6, 3),
]

# Oriented variant of the same two steps, same labelling.
ORIENTED_10_G1 = [(2, 0), (3, 1), (2, 1), (0, 1)]
ORIENTED_10_G2 = ORIENTED_10_G1 + [(4, 2), (4, 0), (5, 2), (5, 0), (5, 1), (5, 3), (6, 2), (7, 3)]


def d3() -> Tournament:
    return build(3, [(0, 1), (1, 2), (2, 0)])


def t3() -> Tournament:
    return transitive(3)


def edge() -> Tournament:
    return build(2, [(0, 1)])


def chi_trio(name: str) -> Tournament:
    """Three tournaments of chromatic number 2 whose chromatic number grows by
    0 (G), 1 (H) and 2 (T) under a 0-step."""
    arcs = {"G": CHI_TRIO_G, "H": CHI_TRIO_H, "T": CHI_TRIO_T}
    if name not in arcs:
        raise GraphError(f"unknown chi-trio fixture {name!r} (use G, H or T)")
    n = {"G": 3, "H": 4, "T": 8}[name]
    return build(n, arcs[name])


def edge_10(t: int) -> Tournament:
    return [edge, lambda: build(4, EDGE_10_G1), lambda: build(8, EDGE_10_G2)][t]()


def oriented_edge_10(t: int):
    return [
        lambda: build_oriented(2, [(0, 1)]),
        lambda: build_oriented(4, ORIENTED_10_G1),
        lambda: build_oriented(8, ORIENTED_10_G2),
    ][t]()


def winner() -> Tournament:
    """4-node tournament: node 3 beats a directed triangle."""
    return build(4, [(3, 0), (3, 1), (3, 2), (0, 1), (1, 2), (2, 0)])


def loser() -> Tournament:
    return build(4, [(0, 3), (1, 3), (2, 3), (0, 1), (1, 2), (2, 0)])


def mixed() -> Tournament:
    """4-node tournament with score sequence (1, 1, 2, 2)."""
    return build(4, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (3, 2)])


def builtin(name: str) -> Tournament:
    """Resolve a builtin base name: d3, t3, edge, hero:i, fig2:G|H|T, linear:n."""
    if name == "d3":
        return d3()
    if name == "t3":
        return t3()
    if name == "edge":
        return edge()
    kind, _, arg = name.partition(":")
    if kind == "hero" and arg:
        from .props import hero

        return hero(int(arg))
    if kind == "fig2" and arg:
        return chi_trio(arg)
    if kind == "linear" and arg:
        return transitive(int(arg))
    raise GraphError(f"unknown builtin tournament {name!r}")
