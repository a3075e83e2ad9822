"""Tournaments and oriented graphs on packed bit rows, plus small-graph queries."""
from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

DEFAULT_MAX_NODES = 1 << 17
ISO_CAP = 10


class IlmtError(Exception):
    """Base class for errors raised by this package."""


class GraphError(IlmtError, ValueError):
    """Malformed graph input (bad arc list, bad index, bad edge-list text)."""


class SizeCapError(IlmtError):
    """An operation would exceed a configured size cap."""


def max_nodes() -> int:
    """Node cap for generated graphs; ``ILMT_MAX_NODES`` overrides the default."""
    raw = os.environ.get("ILMT_MAX_NODES")
    if raw is None:
        return DEFAULT_MAX_NODES
    cap = int(raw)
    if cap <= 0:
        raise ValueError("ILMT_MAX_NODES must be positive")
    return cap


def words_for(n: int) -> int:
    return max(1, (n + 63) // 64)


def pack_rows(dense: np.ndarray) -> np.ndarray:
    """Pack an (m, n) bool matrix into (m, words_for(n)) uint64 rows."""
    m, n = dense.shape
    w = words_for(n)
    padded = np.zeros((m, w * 64), dtype=bool)
    padded[:, :n] = dense
    return np.packbits(padded, axis=1, bitorder="little").view("<u8").astype(np.uint64)


def unpack_rows(packed: np.ndarray, n: int) -> np.ndarray:
    """Inverse of :func:`pack_rows`."""
    raw = np.ascontiguousarray(packed, dtype="<u8").view(np.uint8)
    return np.unpackbits(raw, axis=1, bitorder="little")[:, :n].astype(bool)


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _BitDigraph:
    def __init__(self, n: int, out_adj: np.ndarray):
        out_adj = np.ascontiguousarray(out_adj, dtype=np.uint64)
        if out_adj.shape != (n, words_for(n)):
            raise GraphError(f"adjacency shape {out_adj.shape} does not match n={n}")
        out_adj.setflags(write=False)
        self._n = n
        self._out = out_adj
        self._check()

    @classmethod
    def _trusted(cls, n: int, out_adj: np.ndarray):
        """Skip validation; for outputs of constructions proven to keep the invariants."""
        obj = cls.__new__(cls)
        out_adj = np.ascontiguousarray(out_adj, dtype=np.uint64)
        out_adj.setflags(write=False)
        obj._n = n
        obj._out = out_adj
        return obj

    def validate(self):
        """Re-run the structural checks (used by debug paths and tests)."""
        self._check()
        return self

    @classmethod
    def from_matrix(cls, dense):
        dense = np.asarray(dense, dtype=bool)
        return cls(dense.shape[0], pack_rows(dense))

    @property
    def n(self) -> int:
        return self._n

    @property
    def out_adj(self) -> np.ndarray:
        return self._out

    def __len__(self) -> int:
        return self._n

    @cached_property
    def matrix(self) -> np.ndarray:
        m = unpack_rows(self._out, self._n)
        m.setflags(write=False)
        return m

    @cached_property
    def out_masks(self) -> tuple[int, ...]:
        return tuple(int.from_bytes(row.astype("<u8").tobytes(), "little") for row in self._out)

    @cached_property
    def in_masks(self) -> tuple[int, ...]:
        ins = [0] * self._n
        for u, mask in enumerate(self.out_masks):
            for v in iter_bits(mask):
                ins[v] |= 1 << u
        return tuple(ins)

    @cached_property
    def in_adj(self) -> np.ndarray:
        out = pack_rows(self.matrix.T)
        out.setflags(write=False)
        return out

    def has_arc(self, u: int, v: int) -> bool:
        return bool((self.out_masks[u] >> v) & 1)

    def arcs(self) -> Iterator[tuple[int, int]]:
        for u, mask in enumerate(self.out_masks):
            for v in iter_bits(mask):
                yield u, v

    @property
    def arc_count(self) -> int:
        return int(np.bitwise_count(self._out).sum())

    def out_degrees(self) -> np.ndarray:
        return np.bitwise_count(self._out).sum(axis=1, dtype=np.int64)

    def in_degrees(self) -> np.ndarray:
        return self.matrix.sum(axis=0, dtype=np.int64)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self._n == other._n and np.array_equal(self._out, other._out)

    def __hash__(self):
        return hash((type(self).__name__, self._n, self._out.tobytes()))

    def __repr__(self):
        return f"{type(self).__name__}(n={self._n}, arcs={self.arc_count})"

    def _check(self):
        n = self._n
        if n < 1:
            raise GraphError("graph needs at least one node")
        tail = n % 64
        if tail and np.any(self._out[:, -1] >> np.uint64(tail)):
            raise GraphError("bits set beyond the last node")
        m = self.matrix
        if np.any(np.diagonal(m)):
            raise GraphError(f"self-loop at node {int(np.flatnonzero(np.diagonal(m))[0])}")
        both = m & m.T
        if both.any():
            u, v = map(int, np.argwhere(both)[0])
            raise GraphError(f"antiparallel arcs between {u} and {v}")


class OrientedGraph(_BitDigraph):
    """Oriented graph: no loops, at most one arc per pair."""


class Tournament(_BitDigraph):
    """Tournament: exactly one arc per unordered pair of distinct nodes."""

    def _check(self):
        super()._check()
        m = self.matrix
        missing = ~(m | m.T)
        np.fill_diagonal(missing, False)
        if missing.any():
            u, v = map(int, np.argwhere(missing)[0])
            raise GraphError(f"no arc between {u} and {v}")

    @cached_property
    def in_adj(self) -> np.ndarray:
        n = self._n
        full = pack_rows(np.ones((1, n), dtype=bool))[0]
        inn = ~self._out & full
        idx = np.arange(n)
        inn[idx, idx >> 6] &= ~(np.uint64(1) << (idx & 63).astype(np.uint64))
        inn.setflags(write=False)
        return inn

    @cached_property
    def in_masks(self) -> tuple[int, ...]:
        full = (1 << self._n) - 1
        return tuple(full & ~m & ~(1 << i) for i, m in enumerate(self.out_masks))

    def in_degrees(self) -> np.ndarray:
        return (self._n - 1) - self.out_degrees()


@dataclass(frozen=True)
class DegreeProfile:
    out_degrees: tuple[int, ...]
    in_degrees: tuple[int, ...]


# ---------------------------------------------------------------- construction

def _arc_matrix(n: int, arcs: Iterable[Sequence[int]]) -> np.ndarray:
    if n < 1:
        raise GraphError("n must be positive")
    m = np.zeros((n, n), dtype=bool)
    for arc in arcs:
        u, v = (int(x) for x in arc)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"arc ({u}, {v}) out of range for n={n}")
        if u == v:
            raise GraphError(f"self-loop ({u}, {v})")
        if m[u, v]:
            raise GraphError(f"duplicate arc ({u}, {v})")
        if m[v, u]:
            raise GraphError(f"antiparallel arc ({u}, {v}) conflicts with ({v}, {u})")
        m[u, v] = True
    return m


def build(n: int, arcs: Iterable[Sequence[int]]) -> Tournament:
    """Tournament on nodes 0..n-1 with exactly the given arcs."""
    return Tournament.from_matrix(_arc_matrix(n, arcs))


def build_oriented(n: int, arcs: Iterable[Sequence[int]]) -> OrientedGraph:
    return OrientedGraph.from_matrix(_arc_matrix(n, arcs))


def from_bits(n: int, bits: int) -> Tournament:
    """Tournament whose i-th pair (lexicographic u < v) is oriented u->v iff bit i is set."""
    m = np.zeros((n, n), dtype=bool)
    for i, (u, v) in enumerate(itertools.combinations(range(n), 2)):
        if (bits >> i) & 1:
            m[u, v] = True
        else:
            m[v, u] = True
    return Tournament.from_matrix(m)


def transitive(n: int) -> Tournament:
    """Linear order 0 -> 1 -> ... -> n-1 (i beats j whenever i < j)."""
    return Tournament.from_matrix(np.triu(np.ones((n, n), dtype=bool), 1))


def reverse(g):
    """Same nodes, every arc flipped."""
    return type(g).from_matrix(g.matrix.T)


def induced(g, nodes: Sequence[int]):
    """Subgraph on ``nodes``, relabelled 0..k-1 in the given order."""
    idx = [int(x) for x in nodes]
    if not idx:
        raise GraphError("induced subgraph needs a nonempty node set")
    if len(set(idx)) != len(idx):
        raise GraphError("repeated node in induced subset")
    for x in idx:
        if not 0 <= x < g.n:
            raise GraphError(f"node {x} out of range for n={g.n}")
    sel = np.asarray(idx)
    return type(g).from_matrix(g.matrix[np.ix_(sel, sel)])


def degree_profile(g) -> DegreeProfile:
    return DegreeProfile(
        tuple(sorted(int(d) for d in g.out_degrees())),
        tuple(sorted(int(d) for d in g.in_degrees())),
    )


def sources_and_sinks(g) -> tuple[frozenset[int], frozenset[int]]:
    outs, ins = g.out_degrees(), g.in_degrees()
    return (
        frozenset(int(i) for i in np.flatnonzero(ins == 0)),
        frozenset(int(i) for i in np.flatnonzero(outs == 0)),
    )


# ---------------------------------------------------------------- isomorphism

def _isomorphisms(a, b, limit=None) -> Iterator[tuple[int, ...]]:
    """Yield arc-preserving bijections a -> b (as tuples, image of node i at i)."""
    n = a.n
    if n != b.n:
        return
    if n > ISO_CAP:
        raise SizeCapError(f"isomorphism search capped at {ISO_CAP} nodes (got {n})")
    if degree_profile(a) != degree_profile(b):
        return
    aout, bout = a.out_masks, b.out_masks
    adeg = [m.bit_count() for m in aout]
    bdeg = [m.bit_count() for m in bout]
    # most constrained nodes first
    order = sorted(range(n), key=lambda x: sum(d == adeg[x] for d in adeg))
    image = [-1] * n
    used = [False] * n
    found = 0

    def extend(depth):
        nonlocal found
        if depth == n:
            found += 1
            yield tuple(image)
            return
        x = order[depth]
        for y in range(n):
            if used[y] or bdeg[y] != adeg[x]:
                continue
            ok = True
            for k in range(depth):
                p = order[k]
                if ((aout[x] >> p) & 1) != ((bout[y] >> image[p]) & 1):
                    ok = False
                    break
                if ((aout[p] >> x) & 1) != ((bout[image[p]] >> y) & 1):
                    ok = False
                    break
            if not ok:
                continue
            image[x], used[y] = y, True
            yield from extend(depth + 1)
            image[x], used[y] = -1, False
            if limit is not None and found >= limit:
                return

    yield from extend(0)


def is_isomorphic(a, b) -> tuple[bool, tuple[int, ...] | None]:
    """Brute-force isomorphism test (n <= 10). Returns (flag, witness map a -> b)."""
    if a.n > ISO_CAP or b.n > ISO_CAP:
        raise SizeCapError(f"isomorphism search capped at {ISO_CAP} nodes")
    for perm in _isomorphisms(a, b, limit=1):
        return True, perm
    return False, None


def automorphism_count(g) -> int:
    if g.n > ISO_CAP:
        raise SizeCapError(f"automorphism count capped at {ISO_CAP} nodes (got {g.n})")
    return sum(1 for _ in _isomorphisms(g, g))


def _invariant(t: Tournament) -> tuple:
    out = t.out_masks
    deg = [m.bit_count() for m in out]
    return tuple(sorted((deg[v], tuple(sorted(deg[w] for w in iter_bits(out[v])))) for v in range(t.n)))


@lru_cache(maxsize=None)
def nonisomorphic_tournaments(n: int) -> tuple[Tournament, ...]:
    """One representative per isomorphism class of n-node tournaments (n <= 7).

    Built by extending every (n-1)-node representative with a new node in all
    2^(n-1) ways, then deduplicating with :func:`is_isomorphic`.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > 7:
        raise SizeCapError("tournament enumeration is capped at 7 nodes")
    if n == 1:
        return (build(1, []),)
    reps: dict[tuple, list[Tournament]] = {}
    result = []
    for base in nonisomorphic_tournaments(n - 1):
        m = base.matrix
        for pattern in range(1 << (n - 1)):
            big = np.zeros((n, n), dtype=bool)
            big[: n - 1, : n - 1] = m
            for i in range(n - 1):
                if (pattern >> i) & 1:
                    big[n - 1, i] = True
                else:
                    big[i, n - 1] = True
            cand = Tournament.from_matrix(big)
            key = _invariant(cand)
            bucket = reps.setdefault(key, [])
            if any(is_isomorphic(cand, r)[0] for r in bucket):
                continue
            bucket.append(cand)
            result.append(cand)
    result.sort(key=lambda t: (tuple(sorted(t.out_degrees())), t.out_adj.tobytes()))
    return tuple(result)


def all_labeled_tournaments(n: int) -> Iterator[Tournament]:
    for bits in range(1 << math.comb(n, 2)):
        yield from_bits(n, bits)


# ---------------------------------------------------------------- edge-list I/O

def parse_edgelist(text: str, oriented: bool = False):
    """Parse ``n <count>`` followed by ``u v`` arc lines; ``#`` starts a comment."""
    n = None
    arcs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise GraphError(f"line {lineno}: expected 'n <count>' header")
            try:
                n = int(parts[1])
            except ValueError:
                raise GraphError(f"line {lineno}: bad node count {parts[1]!r}") from None
            continue
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'u v'")
        try:
            arcs.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer arc {line!r}") from None
    if n is None:
        raise GraphError("missing 'n <count>' header")
    return (build_oriented if oriented else build)(n, arcs)


def format_edgelist(g) -> str:
    lines = [f"n {g.n}"]
    lines += [f"{u} {v}" for u, v in g.arcs()]
    return "\n".join(lines) + "\n"


def read_edgelist(path, oriented: bool = False):
    with open(path, encoding="utf-8") as fh:
        return parse_edgelist(fh.read(), oriented=oriented)
