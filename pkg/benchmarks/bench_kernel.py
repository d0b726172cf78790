#!/usr/bin/env python3
"""Benchmark: compiled term kernel vs the pure-Python twin.

Two layers:
  * kernel level: identical multiply/reduce workloads run through both
    implementations in-process;
  * end to end: a Gröbner-basis workload run in a subprocess with
    DFACTOR_PURE=1 against the default (compiled when built).

Usage: python benchmarks/bench_kernel.py [--trials N] [--inner]
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import time

from dfactor import _kernel
from dfactor.fields import GF
from dfactor.rings import GREVLEX


def _rand_terms(rng, nvars=3, nterms=8, max_exp=5):
    mons = set()
    while len(mons) < nterms:
        mons.add(tuple(rng.randint(0, max_exp) for _ in range(nvars)))
    terms = [(m, rng.randint(1, 6)) for m in mons]
    terms.sort(key=lambda t: GREVLEX.key(t[0]), reverse=True)
    return tuple(terms)


def bench_kernel_level(trials: int):
    field = GF(7)
    lanes = [("pure", _kernel.ops_for(field, GREVLEX, force_pure=True))]
    if _kernel.HAVE_SPEEDUPS:
        lanes.append(("compiled", _kernel.ops_for(field, GREVLEX)))
    rng = random.Random(1)
    polys = [_rand_terms(rng) for _ in range(60)]
    basis = [_rand_terms(rng, nterms=4) for _ in range(6)]
    results = {}
    for name, ops in lanes:
        t0 = time.perf_counter()
        for _ in range(trials):
            for a in polys:
                for b in polys[:10]:
                    ops.mul(a, b)
        t_mul = time.perf_counter() - t0
        t0 = time.perf_counter()
        for _ in range(trials):
            for a in polys:
                ops.divmod_basis(ops.mul(a, a), basis)
        t_div = time.perf_counter() - t0
        results[name] = (t_mul, t_div)
    return results


GB_WORKLOAD = r"""
import random, time
from dfactor.fields import GF
from dfactor.rings import Ambient, groebner
from dfactor import _kernel
rng = random.Random(7)
amb = Ambient(GF(7), ("x", "y", "z"))
def rand_poly():
    p = amb.zero()
    for _ in range(rng.randint(2, 4)):
        mon = tuple(rng.randint(0, 3) for _ in range(3))
        p = p + amb.monomial(mon, rng.randrange(1, 7))
    return p
start = time.perf_counter()
for _ in range(10):
    gens = [rand_poly() for _ in range(3)]
    groebner(gens)
elapsed = time.perf_counter() - start
lane = "pure" if _kernel.ops_for(GF(7), __import__("dfactor.rings", fromlist=["GREVLEX"]).GREVLEX).name == "pure" else "compiled"
print(f"{lane} {elapsed:.4f}")
"""


def bench_end_to_end():
    out = {}
    for lane, env_extra in (("default", {}), ("pure", {"DFACTOR_PURE": "1"})):
        env = dict(os.environ, **env_extra)
        proc = subprocess.run(
            [sys.executable, "-c", GB_WORKLOAD], capture_output=True, text=True, env=env
        )
        if proc.returncode != 0:
            raise RuntimeError(proc.stderr)
        name, elapsed = proc.stdout.split()
        out[lane] = (name, float(elapsed))
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=20)
    parser.add_argument("--inner", action="store_true", help="kernel level only")
    args = parser.parse_args()

    print(f"compiled kernel available: {_kernel.HAVE_SPEEDUPS}")
    results = bench_kernel_level(args.trials)
    print("\nkernel level (seconds, lower is better):")
    print(f"  {'lane':<10} {'multiply':>10} {'reduce':>10}")
    for name, (t_mul, t_div) in results.items():
        print(f"  {name:<10} {t_mul:>10.4f} {t_div:>10.4f}")
    if "compiled" in results and "pure" in results:
        su_mul = results["pure"][0] / results["compiled"][0]
        su_div = results["pure"][1] / results["compiled"][1]
        print(f"  speedup    {su_mul:>9.2f}x {su_div:>9.2f}x")

    if not args.inner:
        print("\nend to end (10 Groebner bases over F7[x,y,z]):")
        for lane, (name, elapsed) in bench_end_to_end().items():
            print(f"  {lane:<10} ({name:<9}) {elapsed:.4f}s")


if __name__ == "__main__":
    main()
