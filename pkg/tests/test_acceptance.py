"""Acceptance criteria, one test each. Every test prints a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines inline;
they also appear in the captured output of any failing test.
"""
import time

import pytest

from ilmt import verify

CRITERIA = {
    1: ("motif recurrence == enumeration, n0 in 3..5, prefixes <= 4", ["recurrence"], None),
    2: ("D3 proportion within 1% of 2/9 (t=12) and 1/4 (t=14)", ["limits"], None),
    3: ("D3 zeros, n=768: |sigma - pi| and |d*(T4) - 1/64| <= 8/n", ["trace"], ("|sigma", "|d*(T4)")),
    4: ("T pi == pi exactly; power iteration within 1e-9 in <= 80 steps", ["markov"], None),
    5: ("diameter <= 3 after first 0-step, sink-free n0 in 3..5", ["diameter"], None),
    6: ("kappa(step) >= 2 kappa(G0), strong n0 <= 6, both steps", ["connectivity"], None),
    7: ("gamma+ constant; gamma- constant (sourceless) or 2 (source)", ["domination"], None),
    8: ("in-dominating clone-lift biconditionals, all n0 <= 5", ["in-dominating"], None),
    9: ("cop number under 1- and 0-steps; c = 1 implies a source", ["cops"], None),
    10: ("chi under 1-step, chi-trio deltas, heroes, 0-step pair bound", ["coloring"], None),
    11: ("every 3-/4-node type embeds using exactly n zeros", ["universality"], None),
    12: ("distinct prefixes <= 3 over D3 / single arc diverge in degrees", ["distinguish"], None),
}


def _evaluate(number):
    label, batteries, claims = CRITERIA[number]
    t0 = time.perf_counter()
    checks = [c for b in batteries for c in verify.BATTERIES[b]()]
    if claims:
        checks = [c for c in checks if c.claim.startswith(claims)]
    failed = [c for c in checks if not c.passed]
    verdict = "PASS" if checks and not failed else "FAIL"
    line = f"{verdict} criterion {number:>2}: {label} [{len(checks) - len(failed)}/{len(checks)} checks, {time.perf_counter() - t0:.1f}s]"
    return line, checks, failed


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    line, checks, failed = _evaluate(number)
    with capsys.disabled():
        print("\n" + line)
        for c in failed[:5]:
            print(f"    {c.claim} :: {c.instance}: expected {c.expected}, observed {c.observed}")
    assert checks, "criterion produced no checks"
    if failed:
        pytest.fail(line, pytrace=False)
