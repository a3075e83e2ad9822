"""Time each hot kernel under the numba and numpy backends.

    python3 benchmarks/bench_kernels.py [--steps 8] [--repeat 3]

The input is D3 after ``--steps`` 0-steps (3 * 2^steps nodes). Both backends
must agree before a timing is reported.
"""
import argparse
import time

import numpy as np

from ilmt import fixtures, kernels
from ilmt._accel import HAVE_NUMBA
from ilmt.cops import solve_game
from ilmt.generate import generate


def best_of(fn, repeat):
    out, best = None, float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return out, best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--steps", type=int, default=8)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    g, _ = generate(fixtures.d3(), "0" * args.steps)
    game = solve_game(generate(fixtures.d3(), "00")[0], 3)
    occ = np.zeros((len(game.configs), game.g.n), dtype=bool)
    for c, cops in enumerate(game.configs):
        occ[c, list(cops)] = True
    moves = [[v, *np.flatnonzero(game.g.matrix[v])] for v in range(game.g.n)]
    nbr_ptr = np.cumsum([0] + [len(m) for m in moves])
    nbr_idx = np.array([v for m in moves for v in m], dtype=np.int64)
    n, out, inn = g.n, g.out_adj, g.in_adj
    cases = {
        "d3_arc_sum": lambda b: kernels.d3_arc_sum(out, inn, n, backend=b),
        "t4_pair_sum": lambda b: kernels.t4_pair_sum(out, n, backend=b),
        "eccentricities": lambda b: kernels.eccentricities(out, n, backend=b),
        "cop_ranks (k=3, n=12)": lambda b: kernels.cop_ranks(
            game.succ_ptr, game.succ_idx, occ, nbr_ptr, nbr_idx, backend=b
        )[0],
    }
    print(f"n = {n}, best of {args.repeat}")
    print(f"{'kernel':<22}{'numba s':>10}{'numpy s':>10}{'speedup':>9}")
    for name, fn in cases.items():
        fn("numba")  # compile outside the timing
        a, t_nb = best_of(lambda: fn("numba"), args.repeat)
        b, t_np = best_of(lambda: fn("numpy"), args.repeat)
        assert np.array_equal(np.asarray(a), np.asarray(b)), name
        print(f"{name:<22}{t_nb:>10.4f}{t_np:>10.4f}{t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
