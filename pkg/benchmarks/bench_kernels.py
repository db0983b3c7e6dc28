"""Benchmark: compiled kernels vs the pure-Python fallback.

Covers the isolation/refinement hot loops directly (Taylor shift,
Descartes bound, scaled evaluation) and an end-to-end isolate+refine
workload run in subprocesses with and without POLYCERT_PURE=1.

Usage: python benchmarks/bench_kernels.py [--end-to-end]
"""

import argparse
import os
import random
import subprocess
import sys
import time

from polycert import _kernels_py as pure

try:
    from polycert import _kernels as compiled
except ImportError:
    compiled = None


def _workload(rng, deg, bits, count):
    polys = []
    for _ in range(count):
        polys.append([rng.getrandbits(bits) - (1 << (bits - 1)) for _ in range(deg + 1)])
    return polys


def _time(fn, polys, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for p in polys:
            fn(p)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels():
    rng = random.Random(1)
    cases = [
        ("taylor_shift1 deg16 x 400 (64-bit coeffs)", "taylor_shift1", _workload(rng, 16, 64, 400)),
        ("taylor_shift1 deg48 x 60 (256-bit coeffs)", "taylor_shift1", _workload(rng, 48, 256, 60)),
        ("descartes_bound_01 deg32 x 200", "descartes_bound_01", _workload(rng, 32, 128, 200)),
        ("half_scale deg64 x 2000", "half_scale", _workload(rng, 64, 64, 2000)),
        ("sign_variations deg64 x 5000", "sign_variations", _workload(rng, 64, 64, 5000)),
    ]
    num = rng.getrandbits(200)
    den = rng.getrandbits(180) | 1
    evals = _workload(rng, 24, 128, 150)
    print(f"{'case':50s} {'pure':>9s} {'cython':>9s} {'speedup':>8s}")
    for label, fname, polys in cases:
        tp = _time(getattr(pure, fname), polys)
        if compiled is None:
            print(f"{label:50s} {tp*1e3:8.2f}ms {'n/a':>9s}")
            continue
        tc = _time(getattr(compiled, fname), polys)
        print(f"{label:50s} {tp*1e3:8.2f}ms {tc*1e3:8.2f}ms {tp/tc:7.2f}x")
    tp = _time(lambda p: pure.eval_rat_scaled(p, num, den), evals)
    if compiled is not None:
        tc = _time(lambda p: compiled.eval_rat_scaled(p, num, den), evals)
        print(f"{'eval_rat_scaled deg24 x 150 (200-bit point)':50s} {tp*1e3:8.2f}ms {tc*1e3:8.2f}ms {tp/tc:7.2f}x")


_E2E = r"""
import random, time
from polycert import kernels
from polycert.unipoly import UniPoly, isolate_real_roots, refine_root
from polycert.rationals import Rational
rng = random.Random(7)
t0 = time.perf_counter()
for _ in range(40):
    deg = rng.randrange(6, 12)
    p = UniPoly([rng.randrange(-10**6, 10**6) for _ in range(deg)] + [rng.randrange(1, 10**6)])
    for iv in isolate_real_roots(p):
        refine_root(iv, Rational(1, 2**200))
print(f"{kernels.IMPLEMENTATION}: {time.perf_counter() - t0:.3f}s")
"""


def bench_end_to_end():
    print("\nend-to-end isolate + refine to 2^-200 (40 random polynomials):")
    sys.stdout.flush()
    for pure_env in ("", "1"):
        env = dict(os.environ)
        if pure_env:
            env["POLYCERT_PURE"] = "1"
        else:
            env.pop("POLYCERT_PURE", None)
        subprocess.run([sys.executable, "-c", _E2E], env=env, check=True)


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--end-to-end", action="store_true")
    args = ap.parse_args()
    bench_kernels()
    if args.end_to_end:
        bench_end_to_end()
