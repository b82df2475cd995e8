#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-NumPy fallback.

Times the two hot kernels on representative workloads:

  * positive_levels -- per-level root isolation of the dispersion relation
    (dominates numerical-spectrum sweeps)
  * boltzmann_weights -- shifted Boltzmann sums (dominates per-cell cost
    of perturbative sweeps)

Run:  python benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import time

import numpy as np

from qwell import _pure

try:
    from qwell import _speedups
except ImportError:
    _speedups = None


def timeit(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    cases = [
        ("positive_levels f=-0.02 p=0.37 n=200",
         lambda mod: mod.positive_levels(-0.02, 0.37, 200, 1e-12)),
        ("positive_levels f=1.0  p=0.50 n=200",
         lambda mod: mod.positive_levels(1.0, 0.5, 200, 1e-12)),
        ("boltzmann_weights n=2000 (x200 calls)",
         None),
    ]
    energies = np.sort(np.random.RandomState(0).uniform(0.0, 1.0, 2000))

    def boltz(mod):
        for _ in range(200):
            mod.boltzmann_weights(energies, 7.3)

    backends = [("pure", _pure)]
    if _speedups is not None:
        backends.append(("compiled", _speedups))
    else:
        print("compiled extension not available; timing the fallback only")

    print(f"{'kernel':45s} " + " ".join(f"{name:>12s}" for name, _ in backends)
          + ("      speedup" if len(backends) == 2 else ""))
    for label, call in cases:
        times = []
        for _, mod in backends:
            fn = (lambda m=mod: boltz(m)) if call is None else (lambda m=mod: call(m))
            times.append(timeit(fn, args.repeats))
        line = f"{label:45s} " + " ".join(f"{t*1e3:10.2f} ms" for t in times)
        if len(times) == 2:
            line += f"   {times[0] / times[1]:8.1f}x"
        print(line)


if __name__ == "__main__":
    main()
