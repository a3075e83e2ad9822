"""Exact 3- and 4-node motif counts, the D3 recurrence, densities and the
4-type Markov model."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from . import kernels
from .generate import as_sequence, iterate
from .tournament import SizeCapError, Tournament, automorphism_count, induced, is_isomorphic

CENSUS4_CAP = 1536
DIRECT_SUBSET_LIMIT = 5_000_000

TYPES4 = ("T4", "Winner", "Loser", "Mixed")
_SCORE_TO_TYPE = {(0, 1, 2, 3): 0, (1, 1, 1, 3): 1, (0, 2, 2, 2): 2, (1, 1, 2, 2): 3}


def classify4(scores) -> int:
    """Index into TYPES4 from the out-degree multiset of a 4-node tournament."""
    return _SCORE_TO_TYPE[tuple(sorted(scores))]


@dataclass(frozen=True)
class Census3:
    a: int  # directed triangles (D3)
    b: int  # transitive triples (T3)
    n: int

    def __post_init__(self):
        if self.a + self.b != comb(self.n, 3):
            raise ValueError(f"census3 counts {self.a}+{self.b} != C({self.n},3)")

    @property
    def d3_proportion(self) -> Fraction:
        total = comb(self.n, 3)
        return Fraction(self.a, total) if total else Fraction(0)


@dataclass(frozen=True)
class Census4:
    t4: int
    winner: int
    loser: int
    mixed: int
    n: int

    def __post_init__(self):
        if sum(self.counts) != comb(self.n, 4):
            raise ValueError(f"census4 counts {self.counts} do not sum to C({self.n},4)")

    @property
    def counts(self) -> tuple[int, int, int, int]:
        return (self.t4, self.winner, self.loser, self.mixed)

    @property
    def proportions(self) -> tuple[Fraction, ...] | None:
        total = comb(self.n, 4)
        if total == 0:
            return None
        return tuple(Fraction(c, total) for c in self.counts)


@dataclass(frozen=True)
class DensityReport:
    motif: str
    d_star: Fraction
    aut: int
    copies: int
    k: int
    n: int


# ---------------------------------------------------------------- 3-node

def census3(g: Tournament, backend=None) -> Census3:
    """D3/T3 counts from bit-row intersections: a = (1/3) sum_{u->v} |N+(v) & N-(u)|."""
    total = kernels.d3_arc_sum(g.out_adj, g.in_adj, g.n, backend=backend)
    a, rem = divmod(total, 3)
    assert rem == 0, "directed triangle arc-sum must be divisible by 3"
    return Census3(a, comb(g.n, 3) - a, g.n)


def census3_naive(g: Tournament) -> Census3:
    """Enumerate every triple. Oracle for :func:`census3`."""
    out = g.out_masks
    a = 0
    for x, y, z in itertools.combinations(range(g.n), 3):
        xy, yz, zx = (out[x] >> y) & 1, (out[y] >> z) & 1, (out[z] >> x) & 1
        if xy == yz == zx:
            a += 1
    return Census3(a, comb(g.n, 3) - a, g.n)


def census3_series(n0: int, a0: int, s, t: int | None = None) -> list[Census3]:
    """Exact D3/T3 counts for t = 0..t by the closed recurrence (big integers)."""
    s = as_sequence(s)
    t = len(s) if t is None else t
    if t > len(s):
        raise ValueError(f"{t} steps requested but the sequence prefix has length {len(s)}")
    if not 0 <= a0 <= comb(n0, 3):
        raise ValueError("a0 must lie in [0, C(n0,3)]")
    out = [Census3(a0, comb(n0, 3) - a0, n0)]
    a, n = a0, n0
    for k in range(1, t + 1):
        bit = s.s(k)
        a = (1 << (bit + 2)) * a + (1 - bit) * comb(n + 1, 3)
        n *= 2
        out.append(Census3(a, comb(n, 3) - a, n))
    return out


def census3_recurrence(n0: int, a0: int, s, t: int | None = None) -> Census3:
    return census3_series(n0, a0, s, t)[-1]


def d3_proportion_limit(n0: int, a0: int, regime: str) -> Fraction:
    """Limit of the D3 proportion under all-ones steps, or under infinitely many 0-steps."""
    if n0 < 3:
        raise ValueError("need n0 >= 3")
    if regime == "infinite-support":
        return Fraction(1, 4)
    if regime == "all-ones":
        mu = Fraction(a0, comb(n0, 3))
        return Fraction(n0 * (n0 - 1) * (n0 - 2), n0**3) * mu
    raise ValueError(f"unknown regime {regime!r}")


# ---------------------------------------------------------------- 4-node

def census4(g: Tournament, cap: int = CENSUS4_CAP, backend=None) -> Census4:
    """Exact 4-type counts in O(n^2 * n/64).

    T4 = sum over arcs u->v of C(|N+(u) & N+(v)|, 2); T4 + Winner is the number
    of (node, 3 out-neighbours) choices and T4 + Loser the in-neighbour
    analogue; Mixed takes the remainder of C(n, 4).
    """
    n = g.n
    if n > cap:
        raise SizeCapError(f"census4 capped at {cap} nodes (got {n})")
    t4 = kernels.t4_pair_sum(g.out_adj, n, backend=backend)
    outs = g.out_degrees()
    top = sum(comb(int(d), 3) for d in outs)
    bottom = sum(comb(n - 1 - int(d), 3) for d in outs)
    winner, loser = top - t4, bottom - t4
    return Census4(t4, winner, loser, comb(n, 4) - t4 - winner - loser, n)


def census4_bruteforce(g: Tournament, cap: int = 80) -> Census4:
    """Classify every 4-subset by its score multiset. Oracle for :func:`census4`."""
    if g.n > cap:
        raise SizeCapError(f"brute-force census4 capped at {cap} nodes")
    out = g.out_masks
    counts = [0, 0, 0, 0]
    for quad in itertools.combinations(range(g.n), 4):
        mask = sum(1 << v for v in quad)
        counts[classify4([(out[v] & mask).bit_count() for v in quad])] += 1
    return Census4(*counts, g.n)


# ---------------------------------------------------------------- density

def _motif_name(h: Tournament) -> str:
    if h.n == 3:
        return "D3" if census3_naive(h).a else "T3"
    if h.n == 4:
        return TYPES4[classify4(h.out_degrees())]
    return f"H{h.n}"


def copy_count(g: Tournament, h: Tournament, backend=None) -> int:
    """Number of node subsets of g inducing a copy of h."""
    k = h.n
    if k > 6:
        raise SizeCapError(f"density supports motifs of at most 6 nodes (got {k})")
    if k > g.n:
        return 0
    if k == 3:
        c3 = census3(g, backend=backend)
        return c3.a if census3_naive(h).a else c3.b
    if k == 4:
        return census4(g, backend=backend).counts[classify4(h.out_degrees())]
    if comb(g.n, k) > DIRECT_SUBSET_LIMIT:
        raise SizeCapError(f"direct {k}-subset classification over C({g.n},{k}) subsets is too large")
    out = g.out_masks
    target = sorted(int(d) for d in h.out_degrees())
    copies = 0
    for sub in itertools.combinations(range(g.n), k):
        mask = sum(1 << v for v in sub)
        if sorted((out[v] & mask).bit_count() for v in sub) != target:
            continue
        if is_isomorphic(induced(g, sub), h)[0]:
            copies += 1
    return copies


def density(g: Tournament, h: Tournament, backend=None) -> DensityReport:
    """|Aut(H)| n(H,G) / (|V(H)|! C(|V(G)|, |V(H)|)) as an exact rational."""
    k = h.n
    copies = copy_count(g, h, backend=backend)
    aut = automorphism_count(h)
    total = comb(g.n, k)
    d = Fraction(aut * copies, factorial(k) * total) if total else Fraction(0)
    return DensityReport(_motif_name(h), d, aut, copies, k, g.n)


def quasirandom_target(k: int) -> Fraction:
    """Limit density 2^-C(k,2) of every k-node motif in a quasirandom sequence."""
    return Fraction(1, 2 ** comb(k, 2))


# ---------------------------------------------------------------- Markov model

# LIFT_COUNTS[j][i]: of the 16 ways to swap members of a type-j 4-set for their
# 0-step clones, how many induce type i.
LIFT_COUNTS = (
    (11, 1, 1, 3),
    (3, 9, 1, 3),
    (3, 1, 9, 3),
    (3, 1, 1, 11),
)


@dataclass(frozen=True)
class MarkovModel:
    """Column-stochastic 0-step transition on (T4, Winner, Loser, Mixed) proportions."""

    transition: tuple[tuple[Fraction, ...], ...]
    stationary: tuple[Fraction, ...]

    def apply(self, sigma):
        return tuple(sum(self.transition[i][j] * sigma[j] for j in range(4)) for i in range(4))

    def iterate(self, sigma, steps: int):
        for _ in range(steps):
            sigma = self.apply(sigma)
        return sigma


def markov_model() -> MarkovModel:
    transition = tuple(tuple(Fraction(LIFT_COUNTS[j][i], 16) for j in range(4)) for i in range(4))
    pi = (Fraction(3, 8), Fraction(1, 8), Fraction(1, 8), Fraction(3, 8))
    model = MarkovModel(transition, pi)
    for j in range(4):
        assert sum(transition[i][j] for i in range(4)) == 1
    assert model.apply(pi) == pi
    return model


@dataclass
class TraceRow:
    t: int
    n: int
    bit: int | None
    a: int
    b: int
    counts4: tuple[int, int, int, int] | None
    sigma: tuple[Fraction, ...] | None
    d_star_T4: Fraction | None
    predicted_sigma: tuple[Fraction, ...] | None


@dataclass
class Trace:
    rows: list[TraceRow] = field(default_factory=list)
    requested: int = 0
    truncated: bool = False

    @property
    def reached(self) -> int:
        return self.rows[-1].t if self.rows else -1


def quasirandom_trace(g0: Tournament, s, t_max: int, cap: int = CENSUS4_CAP, backend=None) -> Trace:
    """Measured 4-type proportions per step next to the Markov prediction.

    The prediction starts from the first measured proportion vector and then
    applies the 0-step transition for each 0 bit and the identity for each 1
    bit (a 1-step maps every parent/clone lift of a 4-set to the same type).
    Stops quietly, with ``truncated`` set, once the next graph would exceed
    ``cap`` nodes.
    """
    model = markov_model()
    trace = Trace(requested=t_max)
    predicted = None
    s = as_sequence(s)
    if t_max > len(s):
        raise ValueError(f"{t_max} steps requested but the sequence prefix has length {len(s)}")
    for t, g, cm in iterate(g0, s, t_max):
        if g.n > cap:
            trace.truncated = True
            break
        c3 = census3(g, backend=backend)
        c4 = census4(g, cap=cap, backend=backend)
        sigma = c4.proportions
        if predicted is not None and cm is not None and cm.bit == 0:
            predicted = model.apply(predicted)
        if predicted is None and sigma is not None:
            predicted = sigma
        trace.rows.append(
            TraceRow(
                t=t,
                n=g.n,
                bit=None if cm is None else cm.bit,
                a=c3.a,
                b=c3.b,
                counts4=c4.counts if sigma is not None else None,
                sigma=sigma,
                d_star_T4=None if sigma is None else sigma[0] / 24,
                predicted_sigma=predicted,
            )
        )
        if t < t_max and 2 * g.n > cap:
            trace.truncated = True
            break
    return trace


def distinguish_sequences(g0: Tournament, s, s2, t_max: int) -> int | None:
    """First step t <= t_max where the two iterates' degree profiles differ, else None."""
    from .tournament import degree_profile

    s, s2 = as_sequence(s), as_sequence(s2)
    if len(s) < t_max or len(s2) < t_max:
        raise ValueError("both prefixes must have length >= t_max")
    for (t, g, _), (_, h, _) in zip(iterate(g0, s, t_max), iterate(g0, s2, t_max)):
        if t and degree_profile(g) != degree_profile(h):
            return t
    return None
