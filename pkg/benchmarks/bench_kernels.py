"""Time the hot kernels compiled with numba against the pure-Python fallback.

Each mode runs in its own interpreter (the fallback is chosen by setting
ARBSPARSE_DISABLE_JIT=1 before import). The first call in compiled mode is
reported separately as compile time.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
from fractions import Fraction
import arbsparse as A
from arbsparse.graph import generate_forest_union, generate_random_graph

repeat = int(sys.argv[1])
big = generate_forest_union(5000, 3, 1)
mid = generate_forest_union(150, 2, 2)
rnd = generate_random_graph(50, 75, 3)
cases = {
    "degeneracy n=5000": lambda: A.degeneracy(big),
    "matching sparsifier n=5000": lambda: A.build_matching_sparsifier(big, 8),
    "short augment n=5000 eps=1/3": lambda: A.approx_matching_short_augment(big, Fraction(1, 3)),
    "max matching exact n=150": lambda: A.max_matching_exact(mid),
    "min vc exact n=150": lambda: A.min_vc_exact(mid),
    "max is exact random n=50": lambda: A.max_is_exact(rnd),
}
out = {}
for name, fn in cases.items():
    t0 = time.perf_counter()
    fn()
    first = time.perf_counter() - t0
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    out[name] = (first, best)
print(json.dumps({"jit": A.JIT_ENABLED, "times": out}))
"""


def run(disable: bool, repeat: int) -> dict:
    env = os.environ.copy()
    env.pop("ARBSPARSE_DISABLE_JIT", None)
    if disable:
        env["ARBSPARSE_DISABLE_JIT"] = "1"
    res = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    jit = run(False, args.repeat)
    plain = run(True, args.repeat)
    print("kernel,first_call_jit_s,jit_s,python_s,speedup")
    for name, (first, best) in jit["times"].items():
        py = plain["times"][name][1]
        print(f"{name},{first:.4f},{best:.6f},{py:.6f},{py / max(best, 1e-9):.1f}")


if __name__ == "__main__":
    main()
