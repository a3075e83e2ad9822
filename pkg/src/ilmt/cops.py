"""Cops and Robbers on tournaments: exact cop number by backward induction.

Rules: cops place first, then the robber places (placing on a cop is an
immediate capture). Each round every cop independently passes or moves along
an out-arc, then the robber passes or moves along an out-arc. Cops are
anonymous and may share nodes, so a configuration is a sorted tuple.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import comb

import numpy as np

from . import kernels
from .generate import ilmt_step
from .tournament import IlmtError, Tournament, iter_bits, sources_and_sinks

STATE_BUDGET = 10**8
TURNS = ("cop-placement", "robber-placement", "cop-move", "robber-move")


class BudgetExceeded(IlmtError):
    """The game graph would exceed the configured state budget."""


@dataclass(frozen=True)
class GameState:
    cops: tuple[int, ...]
    robber: int | None
    turn: str

    def __post_init__(self):
        if tuple(sorted(self.cops)) != self.cops:
            raise ValueError("cop configuration must be sorted")
        if self.turn not in TURNS:
            raise ValueError(f"unknown turn {self.turn!r}")


@dataclass
class CopsGame:
    """Solved game for a fixed number of cops."""

    g: Tournament
    k: int
    configs: list[tuple[int, ...]]
    succ_ptr: np.ndarray
    succ_idx: np.ndarray
    cop_rank: np.ndarray  # cop-to-move states: round of forced capture, -1 = robber escapes
    rob_rank: np.ndarray  # robber-to-move states
    placement: tuple[int, ...] | None = None

    @property
    def win(self) -> bool:
        return self.placement is not None

    @cached_property
    def index(self) -> dict[tuple[int, ...], int]:
        return {c: i for i, c in enumerate(self.configs)}

    def successors(self, c: int) -> np.ndarray:
        return self.succ_idx[self.succ_ptr[c] : self.succ_ptr[c + 1]]

    def cop_move(self, cops: tuple[int, ...], robber: int) -> tuple[int, ...] | None:
        """Strategy: a joint move from a winning cop-to-move state into a
        robber-to-move state of strictly smaller rank (captures have rank 0)."""
        c = self.index[cops]
        rank = self.cop_rank[c, robber]
        if rank < 0:
            return None
        if rank == 0:
            return cops
        for nxt in self.successors(c):
            r = self.rob_rank[nxt, robber]
            if 0 <= r < rank:
                return self.configs[nxt]
        raise AssertionError("rank table inconsistent: no improving cop move")

    def strategy(self) -> dict[tuple[tuple[int, ...], int], tuple[int, ...]]:
        out = {}
        for c, cops in enumerate(self.configs):
            for r in range(self.g.n):
                if self.cop_rank[c, r] > 0:
                    out[(cops, r)] = self.cop_move(cops, r)
        return out

    @property
    def state_count(self) -> int:
        return len(self.configs) * (self.g.n + 1) * len(TURNS)


@dataclass
class SolveResult:
    cop_number: int
    game: CopsGame
    tried: list[int] = field(default_factory=list)

    @property
    def placement(self):
        return self.game.placement

    def strategy(self):
        return self.game.strategy()

    def to_json(self) -> dict:
        strat = self.strategy()
        return {
            "cop_number": self.cop_number,
            "placement": list(self.game.placement),
            "strategy": [
                {"cops": list(c), "robber": r, "move": list(m)} for (c, r), m in sorted(strat.items())
            ],
        }


def _closed_out(g: Tournament) -> list[list[int]]:
    return [[v, *iter_bits(g.out_masks[v])] for v in range(g.n)]


def solve_game(g: Tournament, k: int, budget: int = STATE_BUDGET, backend=None) -> CopsGame:
    """Full value table for ``k`` cops."""
    if k < 1:
        raise ValueError("need at least one cop")
    n = g.n
    nconf = comb(n + k - 1, k)
    if nconf * n > budget:
        raise BudgetExceeded(f"{nconf} cop configurations x {n} robber nodes exceeds budget {budget}")
    configs = list(itertools.combinations_with_replacement(range(n), k))
    index = {c: i for i, c in enumerate(configs)}
    moves = _closed_out(g)

    ptr = [0]
    idx: list[int] = []
    work = 0
    for cops in configs:
        reach = {()}
        for x in cops:
            reach = {tuple(sorted((*p, y))) for p in reach for y in moves[x]}
        work += len(reach)
        if work > budget:
            raise BudgetExceeded(f"joint cop moves exceed budget {budget}")
        idx.extend(sorted(index[p] for p in reach))
        ptr.append(len(idx))

    occ = np.zeros((nconf, n), dtype=bool)
    for c, cops in enumerate(configs):
        occ[c, list(cops)] = True
    nbr_ptr = np.cumsum([0] + [len(m) for m in moves])
    nbr_idx = np.array([v for m in moves for v in m], dtype=np.int64)
    succ_ptr, succ_idx = np.array(ptr, dtype=np.int64), np.array(idx, dtype=np.int64)
    cop_rank, rob_rank = kernels.cop_ranks(succ_ptr, succ_idx, occ, nbr_ptr, nbr_idx, backend=backend)

    game = CopsGame(g, k, configs, succ_ptr, succ_idx, cop_rank, rob_rank)
    best = None
    for c in range(nconf):
        ranks = np.where(occ[c], 0, cop_rank[c])
        if (ranks >= 0).all():
            worst = int(ranks.max())
            if best is None or worst < best[0]:
                best = (worst, c)
    if best is not None:
        game.placement = configs[best[1]]
    return game


def cops_win(g: Tournament, k: int, budget: int = STATE_BUDGET, backend=None) -> tuple[bool, CopsGame]:
    game = solve_game(g, k, budget=budget, backend=backend)
    return game.win, game


def cop_number(g: Tournament, budget: int = STATE_BUDGET, backend=None) -> SolveResult:
    """Smallest k for which the cops have a winning strategy."""
    tried = []
    for k in range(1, g.n + 1):
        try:
            game = solve_game(g, k, budget=budget, backend=backend)
        except BudgetExceeded as exc:
            raise BudgetExceeded(f"{exc} (last k tried: {k})") from None
        tried.append(k)
        if game.win:
            return SolveResult(k, game, tried)
    raise AssertionError("n cops always win")


def verify_strategy(game: CopsGame) -> tuple[bool, int]:
    """Replay the cop strategy against every robber opening and every robber reply.

    Returns ``(ok, rounds)`` where ``rounds`` is the longest forced game. Fails
    on a revisited state (a cycle) or a state without a capturing continuation.
    """
    if not game.win:
        return False, 0
    g = game.g
    moves = _closed_out(g)
    bound = game.state_count
    memo: dict[tuple, int] = {}
    on_stack: set[tuple] = set()

    def cop_turn(cops, r) -> int:
        if r in cops:
            return 0
        key = (cops, r)
        if key in memo:
            return memo[key]
        if key in on_stack:
            raise _Cycle
        on_stack.add(key)
        nxt = game.cop_move(cops, r)
        if nxt is None:
            raise _Escape
        if r in nxt:
            depth = 1
        else:
            depth = 1 + max(cop_turn(nxt, r2) for r2 in moves[r])
        on_stack.discard(key)
        memo[key] = depth
        return depth

    try:
        worst = max(cop_turn(game.placement, r) for r in range(g.n))
    except (_Cycle, _Escape):
        return False, 0
    return worst <= bound, worst


class _Cycle(Exception):
    pass


class _Escape(Exception):
    pass


def check_cop_steps(g0: Tournament, budget: int = STATE_BUDGET, backend=None) -> dict:
    """c(1-step) == c(G0); 2 <= c(0-step) <= 3 when n0 >= 2; c == 1 implies a source."""
    c0 = cop_number(g0, budget, backend).cop_number
    one, _ = ilmt_step(g0, 1)
    zero, _ = ilmt_step(g0, 0)
    c1 = cop_number(one, budget, backend).cop_number
    cz = cop_number(zero, budget, backend).cop_number
    checks = [
        {"claim": "c(1-step) == c(G0)", "observed": [c1, c0], "pass": c1 == c0},
        {"claim": "c(0-step) <= 3", "observed": cz, "pass": cz <= 3},
    ]
    if g0.n >= 2:
        checks.append({"claim": "c(0-step) >= 2", "observed": cz, "pass": cz >= 2})
    for name, g, c in (("G0", g0, c0), ("1-step", one, c1), ("0-step", zero, cz)):
        if c == 1:
            has_source = bool(sources_and_sinks(g)[0])
            checks.append({"claim": f"c({name}) == 1 implies a source", "observed": has_source, "pass": has_source})
    return {"c0": c0, "c_one": c1, "c_zero": cz, "checks": checks, "pass": all(c["pass"] for c in checks)}
