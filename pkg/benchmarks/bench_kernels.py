"""Time the hot kernels under both backends and check they agree.

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]
"""

import argparse
import time

import numpy as np

from kleinzeta import _accel, kernels
from kleinzeta.finite_field import build_field, _construct


def _best(fn, repeat):
    out, best = None, float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return out, best


def cases(quick):
    klein = (np.array([1, 1, 1]), np.array([3, 0, 1]), np.array([1, 3, 0]))
    plane_prime = 257 if quick else 1021
    plane_ext = (2, 8) if quick else (3, 6)
    table = (3, 8) if quick else (3, 11)
    jac_q = (2, 12) if quick else (2, 18)

    def tables():
        p, r = table
        fd = _construct(p, r)
        return lambda: kernels.exp_log_tables(p, r, fd.modulus[:-1], fd.to_vector(fd.generator), fd.q)[0]

    def plane(p, r):
        fd = build_field(p, r)
        return lambda: kernels.plane_zero_count(p, r, fd.exp_table, fd.log_table, *klein)

    def jacobi():
        fd = build_field(*jac_q)
        n = 7 if (fd.q - 1) % 7 == 0 else 3
        return lambda: kernels.jacobi_histogram(fd.log_table, fd.one_minus, 1, 2, n)

    def jacobi3():
        fd = build_field(2, 6)
        return lambda: kernels.jacobi3_histogram(fd.p, fd.r, fd.log_table, [1, 2, 4], [False] * 3, 7)

    return [
        (f"exp/log tables F_{table[0]}^{table[1]}", tables),
        (f"plane scan klein F_{plane_prime}", lambda: plane(plane_prime, 1)),
        (f"plane scan klein F_{plane_ext[0]}^{plane_ext[1]}", lambda: plane(*plane_ext)),
        (f"jacobi histogram F_{jac_q[0]}^{jac_q[1]}", jacobi),
        ("jacobi3 histogram F_64", jacobi3),
    ]


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--quick", action="store_true", help="smaller fields")
    args = parser.parse_args(argv)
    if not _accel.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    print(f"{'kernel':40s} {'numba s':>10s} {'numpy s':>10s} {'speedup':>8s}  agree")
    for name, make in cases(args.quick):
        timings, outputs = {}, {}
        for backend in ("numba", "numpy"):
            _accel.set_backend(backend)
            fn = make()
            fn()  # warm-up, includes any JIT compile
            outputs[backend], timings[backend] = _best(fn, args.repeat)
        _accel.set_backend("numba")
        agree = np.array_equal(np.asarray(outputs["numba"]), np.asarray(outputs["numpy"]))
        speedup = timings["numpy"] / timings["numba"] if timings["numba"] else float("inf")
        print(f"{name:40s} {timings['numba']:10.4f} {timings['numpy']:10.4f} {speedup:8.1f}  {agree}")


if __name__ == "__main__":
    main()
