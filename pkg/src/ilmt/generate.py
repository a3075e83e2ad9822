"""The ILMT step, iterated generation, and the oriented-graph variant."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .tournament import (
    GraphError,
    OrientedGraph,
    SizeCapError,
    Tournament,
    max_nodes,
    pack_rows,
    unpack_rows,
    words_for,
)

_CHUNK_CELLS = 1 << 25


@dataclass(frozen=True)
class GeneratingSequence:
    """Finite prefix s(1), s(2), ... of a generating sequence."""

    bits: tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if any(b not in (0, 1) for b in bits):
            raise ValueError(f"generating sequence entries must be 0 or 1, got {self.bits!r}")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def parse(cls, literal: str, repeat: int = 1) -> "GeneratingSequence":
        """``"10"`` -> s(1)=1, s(2)=0; ``repeat`` cycles the literal."""
        literal = literal.strip()
        if repeat < 1:
            raise ValueError("repeat must be >= 1")
        if literal and set(literal) - {"0", "1"}:
            raise ValueError(f"sequence literal must be over {{0,1}}: {literal!r}")
        return cls(tuple(int(c) for c in literal * repeat))

    @classmethod
    def zeros(cls, t: int) -> "GeneratingSequence":
        return cls((0,) * t)

    @classmethod
    def ones(cls, t: int) -> "GeneratingSequence":
        return cls((1,) * t)

    def __len__(self) -> int:
        return len(self.bits)

    def __iter__(self):
        return iter(self.bits)

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    def s(self, t: int) -> int:
        """1-based access: s(1) is the first step's bit."""
        if not 1 <= t <= len(self.bits):
            raise IndexError(f"step {t} outside prefix of length {len(self.bits)}")
        return self.bits[t - 1]

    @property
    def support(self) -> tuple[int, ...]:
        """1-based positions holding a 0."""
        return tuple(t for t, b in enumerate(self.bits, 1) if b == 0)

    def zero_index(self, k: int) -> int | None:
        """Smallest r with exactly k zeros among s(1..r); None if the prefix is too short."""
        if k == 0:
            return 0
        sup = self.support
        return sup[k - 1] if len(sup) >= k else None


def as_sequence(s) -> GeneratingSequence:
    if isinstance(s, GeneratingSequence):
        return s
    if isinstance(s, str):
        return GeneratingSequence.parse(s)
    return GeneratingSequence(tuple(s))


@dataclass(frozen=True)
class CloneMap:
    """Index bookkeeping for one step: the clone of x is x + n_prev."""

    t: int
    n_prev: int
    bit: int

    @property
    def n(self) -> int:
        return 2 * self.n_prev

    def clone_of(self, x: int) -> int:
        if not 0 <= x < self.n_prev:
            raise IndexError(f"node {x} is not a parent at step {self.t}")
        return x + self.n_prev

    def parent_of(self, c: int) -> int:
        if not self.n_prev <= c < self.n:
            raise IndexError(f"node {c} is not a clone at step {self.t}")
        return c - self.n_prev

    def is_clone(self, v: int) -> bool:
        return v >= self.n_prev

    def origin(self, v: int) -> int:
        """Parent index in the previous graph for any node (parents map to themselves)."""
        return v - self.n_prev if v >= self.n_prev else v


def _check_cap(n_new: int, cap: int | None):
    limit = max_nodes() if cap is None else cap
    if n_new > limit:
        raise SizeCapError(f"step would produce {n_new} nodes, above the cap of {limit}")


def _check_bit(bit):
    if bit not in (0, 1):
        raise ValueError(f"step bit must be 0 or 1, got {bit!r}")


def ilmt_step(g: Tournament, bit: int, *, t: int = 1, cap: int | None = None):
    """One ILMT step. Returns ``(G_next, CloneMap)``.

    Parents keep indices 0..n-1, the clone of x is x + n. Row of parent u is
    (N+(u) | N+(u)); row of clone u' is (N+(u) + {u} | N+(u) if bit else N-(u)).
    """
    _check_bit(bit)
    n = g.n
    big = 2 * n
    _check_cap(big, cap)
    out = np.empty((big, words_for(big)), dtype=np.uint64)
    step = max(1, _CHUNK_CELLS // big)
    for lo in range(0, n, step):
        hi = min(n, lo + step)
        rows = unpack_rows(g.out_adj[lo:hi], n)
        out[lo:hi] = pack_rows(np.hstack([rows, rows]))
        eye = np.zeros_like(rows)
        eye[np.arange(hi - lo), np.arange(lo, hi)] = True
        clone_block = rows if bit else ~rows & ~eye
        out[n + lo : n + hi] = pack_rows(np.hstack([rows | eye, clone_block]))
    return Tournament._trusted(big, out), CloneMap(t, n, bit)


def oriented_step(g: OrientedGraph, bit: int, *, t: int = 1, cap: int | None = None):
    """Oriented variant: clone x' points at x and at N+(x) (bit=1) or N-(x) (bit=0)."""
    _check_bit(bit)
    n = g.n
    _check_cap(2 * n, cap)
    m = g.matrix
    big = np.zeros((2 * n, 2 * n), dtype=bool)
    big[:n, :n] = m
    big[n:, :n] = (m if bit else m.T) | np.eye(n, dtype=bool)
    return OrientedGraph._trusted(2 * n, pack_rows(big)), CloneMap(t, n, bit)


def iterate(g0, s, t: int | None = None, *, cap: int | None = None, oriented: bool = False) -> Iterator:
    """Yield ``(t, G_t, CloneMap | None)`` for t = 0..t (CloneMap is None at t=0)."""
    s = as_sequence(s)
    if t is None:
        t = len(s)
    if t < 0:
        raise ValueError("step count must be nonnegative")
    if t > len(s):
        raise GraphError(f"{t} steps requested but the sequence prefix has length {len(s)}")
    stepper = oriented_step if oriented else ilmt_step
    g = g0
    yield 0, g, None
    for k in range(1, t + 1):
        g, cm = stepper(g, s.s(k), t=k, cap=cap)
        yield k, g, cm


def generate(g0, s, t: int | None = None, *, cap: int | None = None):
    """``ILMT_{t,s}(G0)`` and the CloneMap chain. Checks the size cap up front."""
    s = as_sequence(s)
    t = len(s) if t is None else t
    if t > len(s):
        raise GraphError(f"{t} steps requested but the sequence prefix has length {len(s)}")
    _check_cap(g0.n << t, cap)
    maps = []
    g = g0
    for _, g, cm in iterate(g0, s, t, cap=cap):
        if cm is not None:
            maps.append(cm)
    return g, maps


def generate_oriented(g0: OrientedGraph, s, t: int | None = None, *, cap: int | None = None):
    s = as_sequence(s)
    t = len(s) if t is None else t
    if t > len(s):
        raise GraphError(f"{t} steps requested but the sequence prefix has length {len(s)}")
    _check_cap(g0.n << t, cap)
    maps = []
    g = g0
    for _, g, cm in iterate(g0, s, t, cap=cap, oriented=True):
        if cm is not None:
            maps.append(cm)
    return g, maps
