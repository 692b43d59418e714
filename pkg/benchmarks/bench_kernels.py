"""Compare the compiled and pure-Python monomial kernels on identical inputs.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from leavitt import _kernel_py
from leavitt.algebra import LeavittAlgebra, power
from leavitt.embedding import full_spectrum_unitary, power_endomorphism, endomorphism_unitary
from leavitt.graph import two_vertex_F
from leavitt.rings import ZZ

from support import random_element

try:
    from leavitt import _kernel_c
except ImportError:
    _kernel_c = None


def workloads():
    u = full_spectrum_unitary()
    w = endomorphism_unitary(*power_endomorphism(4))
    u6, w4 = power(u, 6), power(w, 4)
    A = LeavittAlgebra(two_vertex_F(), ZZ)
    rng = random.Random(1)
    pairs = [(random_element(A, rng, 6, 4), random_element(A, rng, 6, 4)) for _ in range(300)]
    yield "u^6 * u^6 in L_2", [(u6.terms, u6.terms, u.algebra)]
    yield "w^4 * w^4* in L_2", [(w4.terms, w4.star().terms, w.algebra)]
    yield "300 random products in L(F)", [(x.terms, y.terms, A) for x, y in pairs]
    L2 = u.algebra
    big = [random_element(L2, rng, 12, 5) for _ in range(40)]
    yield "40 squares of 12-term elements", [(x.terms, x.terms, L2) for x in big]


def timed(kernel, cases, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for x, y, A in cases:
            kernel.mul_terms(x, y, A.tables, A.modulus)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _kernel_c is None:
        print("compiled kernel not built; only the pure-Python timings are shown")
    print(f"{'workload':32} {'python (ms)':>12} {'cython (ms)':>12} {'speedup':>8}")
    for name, cases in workloads():
        ref = [_kernel_py.mul_terms(x, y, A.tables, A.modulus) for x, y, A in cases]
        tp = timed(_kernel_py, cases, args.repeat)
        if _kernel_c is None:
            print(f"{name:32} {tp * 1e3:12.2f} {'-':>12} {'-':>8}")
            continue
        got = [_kernel_c.mul_terms(x, y, A.tables, A.modulus) for x, y, A in cases]
        if got != ref:
            raise SystemExit(f"backends disagree on {name}")
        tc = timed(_kernel_c, cases, args.repeat)
        print(f"{name:32} {tp * 1e3:12.2f} {tc * 1e3:12.2f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
