import os
import subprocess
import sys

import numpy as np
import pytest

from kleinzeta import _accel, kernels
from kleinzeta.finite_field import build_field

needs_numba = pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba not installed")


def both(fn):
    """Run fn under each backend and return the two results."""
    saved = _accel.backend()
    out = []
    try:
        for name in ("numba", "numpy"):
            _accel.set_backend(name)
            out.append(fn())
    finally:
        _accel.set_backend(saved)
    return out


@needs_numba
@pytest.mark.parametrize("p,r", [(2, 1), (2, 9), (3, 6), (5, 4), (13, 3), (8191, 1)])
def test_tables_agree(p, r):
    fd = build_field(p, r)
    low = np.asarray(fd.modulus[:-1], np.int64)
    gen = kernels.digits(np.array([fd.generator]), p, r)[0]
    a, b = both(lambda: kernels.exp_log_tables(p, r, low, gen, fd.q))
    assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1]) and a[2] and b[2]


@needs_numba
def test_tables_flag_non_primitive():
    fd = build_field(2, 4)
    low = np.asarray(fd.modulus[:-1], np.int64)
    # x^3 has order 5 in F_16
    gen = kernels.digits(np.array([fd.pow(fd.generator, 3)]), 2, 4)[0]
    a, b = both(lambda: kernels.exp_log_tables(2, 4, low, gen, 16))
    assert not a[2] and not b[2]


@needs_numba
@pytest.mark.parametrize("p,r", [(2, 10), (3, 5), (29, 1), (7, 3), (4093, 1)])
def test_jacobi_histograms_agree(p, r):
    fd = build_field(p, r)
    n = 7 if (fd.q - 1) % 7 == 0 else fd.q - 1
    for a, b in [(1, 2), (3, 5), (0, 1)]:
        h1, h2 = both(lambda: kernels.jacobi_histogram(fd.log_table, fd.one_minus, a, b, n))
        assert np.array_equal(h1, h2)
        assert h1.sum() == fd.q - 2


@needs_numba
@pytest.mark.parametrize("q", [(2, 3), (2, 6), (29, 1), (3, 3)])
def test_jacobi3_histograms_agree(q):
    fd = build_field(*q)
    n = fd.q - 1
    for exps, triv in [((1, 2, 4), (False, False, False)), ((0, 1, 3), (True, False, False)),
                       ((0, 0, 0), (True, True, True))]:
        h1, h2 = both(lambda: kernels.jacobi3_histogram(fd.p, fd.r, fd.log_table, exps, triv, n))
        assert np.array_equal(h1, h2)
    # all-trivial counts every solution of x1 + x2 + x3 = 1
    assert h1.sum() == fd.q**2


@needs_numba
@pytest.mark.parametrize("p,r", [(29, 1), (127, 1), (2, 6), (3, 4), (5, 3)])
def test_plane_counts_agree(p, r):
    fd = build_field(p, r)
    # x^3 y + y^3 + x and x^4 + y^4 + 1 at z = 1
    for coef, ex, ey in [((1, 1, 1), (3, 0, 1), (1, 3, 0)), ((1, 1, 1), (4, 0, 0), (0, 4, 0))]:
        c1, c2 = both(lambda: kernels.plane_zero_count(p, r, fd.exp_table, fd.log_table, coef, ex, ey))
        assert c1 == c2


def test_code_addition_matches_digits():
    rng = np.random.default_rng(1)
    for p, r in [(3, 4), (5, 3), (2, 8)]:
        q = p**r
        a, b = rng.integers(0, q, 500), rng.integers(0, q, 500)
        want = kernels.from_digits((kernels.digits(a, p, r) + kernels.digits(b, p, r)) % p, p)
        assert np.array_equal(kernels.add_codes_np(a, b, p, r), want)
        back = kernels.sub_codes_np(kernels.add_codes_np(a, b, p, r), b, p, r)
        assert np.array_equal(back, a)


def test_backend_switch():
    with pytest.raises(ValueError):
        _accel.set_backend("cuda")


def _env_run(value):
    env = dict(os.environ, KLEINZETA_BACKEND=value)
    code = "from kleinzeta import _accel; print(_accel.backend())"
    return subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)


def test_backend_env_variable():
    proc = _env_run("numpy")
    assert proc.returncode == 0 and proc.stdout.strip() == "numpy"
    proc = _env_run("fortran")
    assert proc.returncode != 0 and "KLEINZETA_BACKEND" in proc.stderr
