"""Compare the compiled and pure-Python term kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--terms 40]

Part one times the raw kernels in-process.  Part two times a Koszul
square-and-verify workload end to end, once per backend, in a child
process since the backend is fixed at import.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from syzmf import kernels

WORKLOAD = """
import random, time
from syzmf.kernels import BACKEND
from syzmf.matfac import FactorPair, mf_koszul, mf_square
from syzmf.ring import LaurentPoly, Monomial
from fractions import Fraction

r = random.Random(0)
def poly(n, k):
    return LaurentPoly(n, {{Monomial(Fraction(r.randint(-6, 6), r.choice((1, 2, 3))),
                                     tuple(r.randint(-3, 3) for _ in range(n))): r.randint(-3, 3) or 1
                           for _ in range(k)}})
pairs = [FactorPair(poly(3, {terms}), poly(3, {terms})) for _ in range(4)]
best = float("inf")
for _ in range({repeat}):
    t0 = time.perf_counter()
    mf_square(mf_koszul(pairs))
    best = min(best, time.perf_counter() - t0)
print(BACKEND, best)
"""


def random_terms(r, n, k):
    out = {}
    for _ in range(k):
        key = (r.randint(-12, 12), r.choice((1, 2, 3, 6))) + tuple(r.randint(-4, 4) for _ in range(n))
        out[key] = r.randint(-5, 5) or 1
    # keys must be in lowest terms
    return {kernels.pure.key_mul(k, (0, 1) + (0,) * n): c for k, c in out.items()}


def time_kernel(mod, a, b, repeat):
    return min(timeit.repeat(lambda: mod.mul_terms(a, b), number=20, repeat=repeat)) / 20


def run_workload(pure, terms, repeat):
    env = dict(os.environ)
    if pure:
        env["SYZMF_PURE_PYTHON"] = "1"
    else:
        env.pop("SYZMF_PURE_PYTHON", None)
    code = WORKLOAD.format(terms=terms, repeat=repeat)
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    backend, secs = out.stdout.split()
    return backend, float(secs)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--terms", type=int, default=40)
    args = ap.parse_args(argv)

    if kernels.compiled is None:
        print("compiled extension not available; only the pure backend can be timed")

    r = random.Random(1)
    print(f"{'kernel':<28}{'pure (ms)':>12}{'cython (ms)':>14}{'speedup':>10}")
    for n, k in [(1, args.terms), (2, args.terms), (3, args.terms), (3, 4 * args.terms)]:
        a, b = random_terms(r, n, k), random_terms(r, n, k)
        tp = time_kernel(kernels.pure, a, b, args.repeat)
        label = f"mul_terms n={n} terms={k}"
        if kernels.compiled is None:
            print(f"{label:<28}{tp * 1e3:>12.3f}{'-':>14}{'-':>10}")
            continue
        assert kernels.compiled.mul_terms(a, b) == kernels.pure.mul_terms(a, b)
        tc = time_kernel(kernels.compiled, a, b, args.repeat)
        print(f"{label:<28}{tp * 1e3:>12.3f}{tc * 1e3:>14.3f}{tp / tc:>9.1f}x")

    _, tp = run_workload(True, args.terms // 4, args.repeat)
    label = "koszul square (4 pairs)"
    backend, tc = run_workload(False, args.terms // 4, args.repeat)
    if backend == "python":
        print(f"{label:<28}{tp * 1e3:>12.3f}{'-':>14}{'-':>10}")
    else:
        print(f"{label:<28}{tp * 1e3:>12.3f}{tc * 1e3:>14.3f}{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()
