import os
import subprocess
import sys

import numpy as np
import pytest

from ilmt import kernels
from ilmt._accel import HAVE_NUMBA, resolve
from ilmt.cops import solve_game
from ilmt.generate import generate
from ilmt.tournament import from_bits, nonisomorphic_tournaments

needs_numba = pytest.mark.skipif(not HAVE_NUMBA, reason="numba not installed")


def _random(n, seed):
    rng = np.random.default_rng(seed)
    return from_bits(n, int(rng.integers(0, 2**62)) | (int(rng.integers(0, 2**62)) << 62))


def test_resolve():
    assert resolve("numpy") == "numpy"
    with pytest.raises(ValueError):
        resolve("cuda")


@needs_numba
@pytest.mark.parametrize("n", [3, 17, 64, 65, 130])
def test_census_kernels_agree(n):
    rng = np.random.default_rng(n)
    m = np.triu(rng.random((n, n)) < 0.5, 1)
    m = m | (np.triu(~m, 1).T)
    from ilmt.tournament import Tournament

    g = Tournament.from_matrix(m)
    for fn, args in ((kernels.d3_arc_sum, (g.out_adj, g.in_adj, n)), (kernels.t4_pair_sum, (g.out_adj, n))):
        assert fn(*args, backend="numba") == fn(*args, backend="numpy")
    a = kernels.eccentricities(g.out_adj, n, backend="numba")
    b = kernels.eccentricities(g.out_adj, n, backend="numpy")
    assert np.array_equal(a, b)


@needs_numba
def test_eccentricities_on_ilmt_graph():
    g, _ = generate(nonisomorphic_tournaments(4)[-1], "010")
    assert np.array_equal(
        kernels.eccentricities(g.out_adj, g.n, backend="numba"), kernels.eccentricities(g.out_adj, g.n, backend="numpy")
    )


@needs_numba
@pytest.mark.parametrize("k", [1, 2])
def test_cop_rank_kernels_agree(k):
    g, _ = generate(nonisomorphic_tournaments(4)[2], "0")
    a = solve_game(g, k, backend="numba")
    b = solve_game(g, k, backend="numpy")
    assert np.array_equal(a.cop_rank, b.cop_rank) and np.array_equal(a.rob_rank, b.rob_rank)
    assert a.placement == b.placement


def test_env_flag_selects_numpy():
    code = "from ilmt import _accel; print(_accel.USE_NUMBA, _accel.resolve(None))"
    env = dict(os.environ, ILMT_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["False", "numpy"]


def test_numpy_path_end_to_end():
    code = (
        "from ilmt import fixtures, census3, cop_number, diameter;"
        "from ilmt.generate import generate;"
        "g,_=generate(fixtures.d3(),'00');"
        "print(census3(g).a, diameter(g), cop_number(fixtures.d3()).cop_number)"
    )
    env = dict(os.environ, ILMT_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    # 4*(4*1 + C(4,3)) + C(7,3) = 67 directed triangles after two 0-steps
    assert out.stdout.split() == ["67", "2", "2"]
