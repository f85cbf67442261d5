"""Compiled kernels against the pure-Python fallback.

Each mode runs in its own interpreter because the choice is made at import
time from ``RAINBOW_KIT_DISABLE_JIT``.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import json
import os
import random
import subprocess
import sys
import time

WORKLOADS = ("verify", "rc-exact", "two-connected")


def run_workloads(repeat: int) -> dict:
    from rainbow_kit import generators as gen
    from rainbow_kit._jit import jit_enabled
    from rainbow_kit.colourers import colour_two_connected
    from rainbow_kit.colouring import rc_exact, verify_rainbow_connected

    rng = random.Random(1)
    big = [gen.random_k_connected(60, 3, rng) for _ in range(3)]
    cols = [[rng.randrange(12) for _ in range(g.m)] for g in big]
    small = [gen.cycle(9), gen.theta(3, 3, 3), gen.hypercube(3)]
    mids = [gen.random_two_connected(12, rng) for _ in range(10)]
    jobs = {
        "verify": lambda: [verify_rainbow_connected(g, c) for g, c in zip(big, cols)],
        "rc-exact": lambda: [rc_exact(g) for g in small],
        "two-connected": lambda: [colour_two_connected(g) for g in mids],
    }
    out = {"jit": jit_enabled()}
    for name in WORKLOADS:
        jobs[name]()  # warm-up, includes compilation
        best = float("inf")
        for _ in range(repeat):
            t = time.perf_counter()
            jobs[name]()
            best = min(best, time.perf_counter() - t)
        out[name] = best
    return out


def spawn(disable: bool, repeat: int) -> dict:
    env = dict(os.environ, RAINBOW_KIT_DISABLE_JIT="1" if disable else "0")
    res = subprocess.run([sys.executable, __file__, "--child", "--repeat", str(repeat)],
                         env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--child", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()
    if args.child:
        print(json.dumps(run_workloads(args.repeat)))
        return
    jit, py = spawn(False, args.repeat), spawn(True, args.repeat)
    if not jit["jit"]:
        print("numba unavailable: both columns use the fallback")
    print(f"{'workload':<15}{'numba s':>10}{'python s':>10}{'speedup':>9}")
    for name in WORKLOADS:
        print(f"{name:<15}{jit[name]:>10.4f}{py[name]:>10.4f}{py[name] / jit[name]:>8.1f}x")


if __name__ == "__main__":
    main()
