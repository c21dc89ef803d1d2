"""Time the exhaustive oracle scan with and without numba.

Each backend runs in its own interpreter because the switch is read at
import time.  Usage: python3 benchmarks/bench_oracle.py [--n 11] [--lam 1]
"""
import argparse
import json
import os
import subprocess
import sys

CHILD = r"""
import json, sys, time
from blockspectrum import oracle
from blockspectrum._accel import USE_NUMBA
n, lam = int(sys.argv[1]), int(sys.argv[2])
oracle.scan(min(n, 4), lam)  # compile / warm up
oracle.scan.cache_clear()
t = time.perf_counter()
s = oracle.scan(n, lam)
dt = time.perf_counter() - t
print(json.dumps({"numba": USE_NUMBA, "n": n, "matchings": len(s.min_stack), "seconds": dt,
                  "digest": int(s.min_stack.sum() + 7 * s.max_genus.sum() + 13 * s.btype.sum())}))
"""


def run(n, lam, disable):
    env = dict(os.environ)
    env["BLOCKSPECTRUM_NO_NUMBA"] = "1" if disable else "0"
    out = subprocess.run([sys.executable, "-c", CHILD, str(n), str(lam)],
                         env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=11)
    ap.add_argument("--lam", type=int, default=1)
    args = ap.parse_args()
    fast = run(args.n, args.lam, disable=False)
    slow = run(args.n, args.lam, disable=True)
    if (fast["matchings"], fast["digest"]) != (slow["matchings"], slow["digest"]):
        sys.exit(f"backends disagree: {fast} vs {slow}")
    print(f"n={args.n} lambda={args.lam} matchings={fast['matchings']}")
    print(f"numba  {fast['seconds']:9.3f} s")
    print(f"python {slow['seconds']:9.3f} s   speedup x{slow['seconds'] / fast['seconds']:.0f}")


if __name__ == "__main__":
    main()
