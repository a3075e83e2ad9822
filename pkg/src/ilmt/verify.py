"""Verification batteries for every quantitative claim, run at desk scale.

Each battery returns a list of :class:`Check`; named suites group batteries
and are what ``ilmt verify <suite>`` runs.
"""
from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from . import fixtures
from .census import (
    TYPES4,
    census3,
    census3_naive,
    census3_series,
    classify4,
    density,
    distinguish_sequences,
    markov_model,
    quasirandom_trace,
)
from .cops import cop_number, solve_game, verify_strategy
from .embed import universality_sweep
from .generate import ilmt_step, iterate
from .props import (
    chromatic_number,
    connectivity,
    connectivity_bruteforce,
    diameter,
    domination,
    hero,
    is_dominating,
    is_minimal_dominating,
    is_separating,
)
from .tournament import (
    all_labeled_tournaments,
    transitive,
    is_isomorphic,
    nonisomorphic_tournaments,
    sources_and_sinks,
)

QUASIRANDOM_TOL = 8  # |measured - predicted| <= QUASIRANDOM_TOL / n_t per coordinate
TRACE_STEPS = 8  # D3 after 8 zero-steps has 768 nodes


@dataclass
class Check:
    claim: str
    anchor: str
    instance: str
    expected: Any
    observed: Any
    passed: bool
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "anchor": self.anchor,
            "instance": self.instance,
            "expected": _jsonable(self.expected),
            "observed": _jsonable(self.observed),
            "pass": self.passed,
            "seconds": round(self.seconds, 6),
        }


@dataclass
class VerifyReport:
    suite: str
    checks: list[Check] = field(default_factory=list)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        return {"total": len(self.checks), "passed": len(self.checks) - len(self.failures), "failed": len(self.failures)}

    def to_json(self, timing: bool = True) -> dict:
        checks = [c.to_json() for c in self.checks]
        if not timing:
            for c in checks:
                c.pop("seconds")
        return {"suite": self.suite, "summary": self.summary(), "checks": checks}


def _jsonable(x):
    if isinstance(x, Fraction):
        return {"num": x.numerator, "den": x.denominator}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (frozenset, set)):
        return sorted(x)
    if hasattr(x, "item"):
        return x.item()
    return x


class _Recorder:
    def __init__(self, anchor: str):
        self.anchor = anchor
        self.checks: list[Check] = []
        self._t0 = time.perf_counter()

    def add(self, claim, instance, expected, observed, passed):
        now = time.perf_counter()
        self.checks.append(Check(claim, self.anchor, instance, expected, observed, bool(passed), now - self._t0))
        self._t0 = now


def _name(g) -> str:
    return "scores=" + "".join(str(int(d)) for d in sorted(g.out_degrees()))


def _prefixes(length: int):
    return ["".join(p) for p in itertools.product("01", repeat=length)]


def _reps(lo: int, hi: int):
    for n in range(lo, hi + 1):
        yield from nonisomorphic_tournaments(n)


# ---------------------------------------------------------------- motifs

def battery_recurrence() -> list[Check]:
    """Closed D3 recurrence against triple enumeration and the bit-parallel census."""
    rec = _Recorder("d3-recurrence")
    for g0 in _reps(3, 5):
        a0 = census3(g0).a
        for s in _prefixes(4):
            predicted = census3_series(g0.n, a0, s, 4)
            graphs = [g for _, g, _ in iterate(g0, s, 4)]
            brute = [census3_naive(g) for g in graphs]
            fast = [census3(g) for g in graphs]
            rec.add(
                "recurrence == enumeration == bit-parallel census at t=0..4",
                f"{_name(g0)} s={s}",
                [c.a for c in predicted],
                [c.a for c in brute],
                predicted == brute == fast,
            )
    return rec.checks


def battery_limits() -> list[Check]:
    """D3 proportion limits: 2/9 under all ones from D3, 1/4 under alternating steps."""
    rec = _Recorder("d3-limits")
    for label, s, t, target in (("all-ones", "1" * 12, 12, Fraction(2, 9)), ("alternating 0101", "01" * 7, 14, Fraction(1, 4))):
        prop = census3_series(3, 1, s, t)[-1].d3_proportion
        rel = abs(prop - target) / target
        rec.add(f"D3 proportion within 1% of {target}", f"D3 {label} t={t}", target, float(prop), rel <= Fraction(1, 100))
    return rec.checks


# ---------------------------------------------------------------- quasirandom

def battery_markov() -> list[Check]:
    rec = _Recorder("markov")
    model = markov_model()
    T, pi = model.transition, model.stationary
    rec.add("columns sum to 1", "transition", [1] * 4, [sum(T[i][j] for i in range(4)) for j in range(4)],
            all(sum(T[i][j] for i in range(4)) == 1 for j in range(4)))
    rec.add("T pi == pi (exact)", "stationary", list(pi), list(model.apply(pi)), model.apply(pi) == pi)

    # independent derivation: swap members of each 4-type for their 0-step clones
    reps = [transitive(4), fixtures.winner(), fixtures.loser(), fixtures.mixed()]
    derived = []
    for j, h in enumerate(reps):
        g1, cm = ilmt_step(h, 0)
        out = g1.out_masks
        counts = [0] * 4
        for choice in itertools.product((0, 1), repeat=4):
            quad = [x + 4 * c for x, c in enumerate(choice)]
            mask = sum(1 << v for v in quad)
            counts[classify4([(out[v] & mask).bit_count() for v in quad])] += 1
        derived.append(counts)
    expected = [[int(T[i][j] * 16) for i in range(4)] for j in range(4)]
    rec.add("lift counts match transition", "0-step lifts", expected, derived, derived == expected)

    for j in range(4):
        sigma = tuple(Fraction(int(i == j)) for i in range(4))
        for it in range(1, 81):
            sigma = model.apply(sigma)
            if max(abs(float(a - b)) for a, b in zip(sigma, pi)) <= 1e-9:
                break
        else:
            it = None
        rec.add("power iteration reaches pi within 1e-9 in <= 80 steps", f"start={TYPES4[j]}", "<= 80", it, it is not None)
    return rec.checks


def _max_gap(u, v) -> Fraction:
    return max(abs(a - b) for a, b in zip(u, v))


def battery_trace() -> list[Check]:
    rec = _Recorder("quasirandom")
    model = markov_model()
    pi = model.stationary
    tr = quasirandom_trace(fixtures.d3(), "0" * TRACE_STEPS, TRACE_STEPS)
    last = tr.rows[-1]
    tol = Fraction(QUASIRANDOM_TOL, last.n)
    gap = _max_gap(last.sigma, pi)
    rec.add(f"|sigma - pi| <= {QUASIRANDOM_TOL}/n_t", f"D3 zeros t={last.t} n={last.n}", float(tol), float(gap), gap <= tol)
    dgap = abs(last.d_star_T4 - Fraction(1, 64))
    rec.add(f"|d*(T4) - 1/64| <= {QUASIRANDOM_TOL}/n_t", f"D3 zeros t={last.t} n={last.n}", float(tol), float(dgap), dgap <= tol)
    for row in tr.rows:
        if row.sigma is None:
            continue
        g = Fraction(QUASIRANDOM_TOL, row.n)
        err = _max_gap(row.sigma, row.predicted_sigma)
        rec.add("measured vs Markov prediction <= 8/n_t", f"D3 zeros t={row.t}", float(g), float(err), err <= g)

    # one-step consistency for other sequences: predict each step from the previous measurement
    for base, s in ((fixtures.d3(), "01" * 4), (fixtures.d3(), "10" * 4), (fixtures.chi_trio("T"), "0011")):
        tr = quasirandom_trace(base, s, len(s))
        worst, ok = Fraction(0), True
        for prev, row in zip(tr.rows, tr.rows[1:]):
            if prev.sigma is None:
                continue
            pred = model.apply(prev.sigma) if row.bit == 0 else prev.sigma
            err = _max_gap(row.sigma, pred)
            worst = max(worst, err * row.n)
            ok &= err <= Fraction(QUASIRANDOM_TOL, row.n)
        rec.add("one-step prediction error <= 8/n_t", f"{_name(base)} s={s}", QUASIRANDOM_TOL, float(worst), ok)

    g, _ = next((g, cm) for t, g, cm in iterate(fixtures.d3(), "0" * 5, 5) if t == 5)
    rep = density(g, transitive(4))
    c4_prop = next(r for r in quasirandom_trace(fixtures.d3(), "0" * 5, 5).rows if r.t == 5).d_star_T4
    rec.add("density(T4) == census4 proportion / 24", "D3 zeros t=5", c4_prop, rep.d_star, rep.d_star == c4_prop)
    return rec.checks


# ---------------------------------------------------------------- diameter / connectivity

def battery_diameter() -> list[Check]:
    rec = _Recorder("diameter")
    for g0 in _reps(3, 5):
        if sources_and_sinks(g0)[1]:
            continue
        for s in _prefixes(3):
            if "0" not in s:
                continue
            first = s.index("0") + 1
            diams = {t: diameter(g) for t, g, _ in iterate(g0, s, 3) if t >= first}
            ok = all(d is not None and d <= 3 for d in diams.values())
            rec.add("diameter <= 3 from the first 0-step", f"{_name(g0)} s={s}", "<= 3", diams, ok)
    return rec.checks


def battery_connectivity() -> list[Check]:
    rec = _Recorder("connectivity")
    for g0 in _reps(3, 6):
        k0, cut0 = connectivity(g0)
        if k0 == 0:
            continue
        for bit in (0, 1):
            g1, _ = ilmt_step(g0, bit)
            k1, cut1 = connectivity(g1)
            oracle = connectivity_bruteforce(g1)
            rec.add(
                "kappa(step) >= 2 kappa(G0), flow == brute force, cut separates",
                f"{_name(g0)} bit={bit}",
                f">= {2 * k0}",
                {"kappa": k1, "bruteforce": oracle},
                k1 >= 2 * k0 and k1 == oracle and is_separating(g1, cut1) and is_separating(g0, cut0),
            )
    return rec.checks


# ---------------------------------------------------------------- domination

def battery_domination() -> list[Check]:
    rec = _Recorder("domination")
    for g0 in _reps(1, 5):
        gp0, _ = domination(g0, "out")
        gm0, _ = domination(g0, "in")
        has_source = bool(sources_and_sinks(g0)[0])
        for s in _prefixes(3):
            gp, gm = {}, {}
            for t, g, _ in iterate(g0, s, 3):
                gp[t] = domination(g, "out")[0]
                gm[t] = domination(g, "in")[0]
            rec.add("gamma+ constant", f"{_name(g0)} s={s}", gp0, gp, all(v == gp0 for v in gp.values()))
            if not has_source:
                rec.add("gamma- constant (sourceless base)", f"{_name(g0)} s={s}", gm0, gm, all(v == gm0 for v in gm.values()))
            elif g0.n >= 2 and "0" in s:
                first = s.index("0") + 1
                after = {t: v for t, v in gm.items() if t >= first}
                rec.add("gamma- == 2 from the first 0-step (source base)", f"{_name(g0)} s={s}", 2, after,
                        all(v == 2 for v in after.values()))
    return rec.checks


def indominating_counts(g0) -> dict:
    """Exhaustive counters for the clone-lift biconditionals on one base."""
    g1, cm = ilmt_step(g0, 0)
    n = g0.n
    sourceless = not sources_and_sinks(g0)[0]
    lift_bad = minimal_bad = lift_min_bad = 0
    for size in range(1, n + 1):
        for sub in itertools.combinations(range(n), size):
            clones = [cm.clone_of(x) for x in sub]
            both = is_dominating(g0, sub, "in") and is_dominating(g0, sub, "out")
            lifted = is_dominating(g1, clones, "in")
            lift_bad += both != lifted
            if size > 1:
                min0 = is_minimal_dominating(g0, sub, "in")
                min1 = is_minimal_dominating(g1, clones, "in")
                if sourceless:
                    minimal_bad += min0 != min1
                lift_min_bad += min0 and not lifted
    return {"lift": lift_bad, "lift_min": lift_min_bad, "minimal": minimal_bad, "sourceless": sourceless}


def battery_indominating(max_n: int = 5) -> list[Check]:
    """Clone-lift biconditionals over every labelled tournament with n <= max_n."""
    rec = _Recorder("in-dominating")
    for n in range(1, max_n + 1):
        totals = {"lift": 0, "lift_min": 0, "minimal": 0}
        graphs = sourceless = 0
        for g0 in all_labeled_tournaments(n):
            c = indominating_counts(g0)
            graphs += 1
            sourceless += c["sourceless"]
            for k in totals:
                totals[k] += c[k]
        rec.add("S' in-dominating <=> S in- and out-dominating", f"all {graphs} labelled n={n}", 0, totals["lift"], totals["lift"] == 0)
        rec.add("S minimal in-dominating, |S|>1 => S' in-dominating", f"all {graphs} labelled n={n}", 0, totals["lift_min"], totals["lift_min"] == 0)
        rec.add("S' minimal <=> S minimal (|S|>1, sourceless base)", f"{sourceless} sourceless labelled n={n}", 0, totals["minimal"], totals["minimal"] == 0)
    return rec.checks


# ---------------------------------------------------------------- cops

def battery_cops() -> list[Check]:
    rec = _Recorder("cops")
    for g0 in _reps(1, 5):
        res = cop_number(g0)
        c0 = res.cop_number
        ok, rounds = verify_strategy(res.game)
        rec.add("strategy replay captures", _name(g0), True, {"rounds": rounds}, ok)
        if c0 == 1:
            src = bool(sources_and_sinks(g0)[0])
            rec.add("c == 1 implies a source", _name(g0), True, src, src)
        if c0 > 1:
            monotone = all(solve_game(g0, k).win for k in range(c0, min(c0 + 2, g0.n + 1)))
            rec.add("cops_win monotone in k", _name(g0), True, monotone, monotone)
        if g0.n > 4:
            continue
        one, _ = ilmt_step(g0, 1)
        r1 = cop_number(one)
        rec.add("c(1-step) == c(G0)", _name(g0), c0, r1.cop_number, r1.cop_number == c0 and verify_strategy(r1.game)[0])
        if g0.n >= 2:
            zero, _ = ilmt_step(g0, 0)
            rz = cop_number(zero)
            rec.add("2 <= c(0-step) <= 3", _name(g0), "[2, 3]", rz.cop_number,
                    2 <= rz.cop_number <= 3 and verify_strategy(rz.game)[0])
    return rec.checks


# ---------------------------------------------------------------- coloring

def battery_coloring() -> list[Check]:
    rec = _Recorder("coloring")
    for g0 in _reps(1, 5):
        chi0 = chromatic_number(g0).chi
        one, _ = ilmt_step(g0, 1)
        chi1 = chromatic_number(one).chi
        rec.add("chi(1-step) == chi(G0)", _name(g0), chi0, chi1, chi1 == chi0)
        g1, _ = ilmt_step(g0, 0)
        g2, _ = ilmt_step(g1, 0)
        r1, r2 = chromatic_number(g1), chromatic_number(g2)
        rec.add("chi(G2) <= 3 chi(G0) after two 0-steps", _name(g0), f"<= {3 * chi0}", r2.chi, r2.exact and r2.chi <= 3 * chi0)
        lb_ok = r1.chi >= math.log2(2) and r2.chi >= math.log2(3)
        rec.add("log2(t+1) <= chi(G_t) after t 0-steps", _name(g0), "t=1,2", [r1.chi, r2.chi], lb_ok)
    for name, delta in (("G", 0), ("H", 1), ("T", 2)):
        g = fixtures.chi_trio(name)
        before = chromatic_number(g).chi
        after = chromatic_number(ilmt_step(g, 0)[0]).chi
        rec.add("0-step chi delta", f"fig2:{name}", {"chi": 2, "delta": delta}, {"chi": before, "delta": after - before},
                before == 2 and after - before == delta)
    for i in range(1, 5):
        res = chromatic_number(hero(i))
        rec.add("chi(S_i) >= i (exact)", f"hero:{i} n={2 ** i - 1}", f">= {i}", res.chi, res.exact and res.chi >= i)
    return rec.checks


# ---------------------------------------------------------------- universality / distinguish

def battery_universality() -> list[Check]:
    rec = _Recorder("universality")
    cases = [(fixtures.t3(), 3)] + [(g, 4) for g in nonisomorphic_tournaments(4)]
    for g0, n in cases:
        rows = universality_sweep(g0, n)
        ok = (
            len(rows) == len(nonisomorphic_tournaments(n))
            and all(r["verified"] and r["zeros_used"] == n and r["host_n"] == g0.n << r["r"] for r in rows)
        )
        rec.add(f"every {n}-node type embeds using exactly {n} zeros", f"base {_name(g0)}", len(nonisomorphic_tournaments(n)),
                sum(r["verified"] for r in rows), ok)
    return rec.checks


def battery_distinguish() -> list[Check]:
    rec = _Recorder("distinguish")
    for label, g0 in (("D3", fixtures.d3()), ("edge", fixtures.edge())):
        for length in (1, 2, 3):
            for s, s2 in itertools.combinations(_prefixes(length), 2):
                t = distinguish_sequences(g0, s, s2, length)
                rec.add("degree profiles diverge by t <= len", f"{label} {s} vs {s2}", f"<= {length}", t, t is not None)
    return rec.checks


def battery_distinguish_isomorphism() -> list[Check]:
    """Non-isomorphism of iterates checked by brute force where the size allows."""
    rec = _Recorder("distinguish-iso")
    for label, g0 in (("D3", fixtures.d3()), ("edge", fixtures.edge())):
        for length in (1, 2, 3):
            for s, s2 in itertools.combinations(_prefixes(length), 2):
                n = g0.n << length
                if n > 10:
                    continue
                g = [g for t, g, _ in iterate(g0, s, length)][-1]
                h = [g for t, g, _ in iterate(g0, s2, length)][-1]
                iso = is_isomorphic(g, h)[0]
                rec.add("iterates not isomorphic", f"{label} {s} vs {s2}", False, iso, not iso)
    return rec.checks


BATTERIES: dict[str, Callable[[], list[Check]]] = {
    "recurrence": battery_recurrence,
    "limits": battery_limits,
    "markov": battery_markov,
    "trace": battery_trace,
    "diameter": battery_diameter,
    "connectivity": battery_connectivity,
    "domination": battery_domination,
    "in-dominating": battery_indominating,
    "cops": battery_cops,
    "coloring": battery_coloring,
    "universality": battery_universality,
    "distinguish": battery_distinguish,
    "distinguish-iso": battery_distinguish_isomorphism,
}

SUITES: dict[str, tuple[str, ...]] = {
    "motifs": ("recurrence", "limits"),
    "quasirandom": ("markov", "trace"),
    "diameter": ("diameter",),
    "connectivity": ("connectivity",),
    "domination": ("domination", "in-dominating"),
    "cops": ("cops",),
    "coloring": ("coloring",),
    "universality": ("universality",),
    "distinguish": ("distinguish", "distinguish-iso"),
}
SUITES["all"] = tuple(b for name, bs in SUITES.items() for b in bs)


def run_suite(name: str) -> VerifyReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    report = VerifyReport(name)
    for battery in SUITES[name]:
        report.checks.extend(BATTERIES[battery]())
    return report
