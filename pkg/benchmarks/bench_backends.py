#!/usr/bin/env python3
"""Compare the compiled round kernel against the pure-Python fallback.

Times the fused per-round kernel on synthetic networks of several sizes and
the full bundled paper_fig2 scenario end to end. Run from anywhere after
installing the package:

    python benchmarks/bench_backends.py [--rounds 2000]
"""

import argparse
import dataclasses
import os
import subprocess
import sys
import time

import numpy as np

from ceopt import bundled_scenario_path, load_scenario, run_simulation
from ceopt._kernels import available_backends


def synthetic_inputs(rng, n, d):
    """One round's worth of kernel inputs for n agents (one faulty)."""
    h, m = n - 1, n - 1
    estimates = rng.standard_normal((h, d))
    inbox = np.ascontiguousarray(rng.standard_normal((h, m, d)))
    sender_ids = np.ascontiguousarray(
        np.stack([np.array(sorted(set(range(1, n + 1)) - {i}), dtype=np.int64) for i in range(1, n)])
    )
    proj_mats = np.ascontiguousarray(np.stack([np.eye(d)] * h))
    proj_offs = np.ascontiguousarray(rng.standard_normal((h, d)))
    return estimates, inbox, sender_ids, proj_mats, proj_offs


def time_round_step(backend, args_tuple, repeats):
    est, inbox, ids, pm, po = args_tuple
    out = np.empty_like(est)
    backend.round_step(est, inbox, ids, 1, 0.01, True, pm, po, out=out)  # warm up
    t0 = time.perf_counter()
    for _ in range(repeats):
        backend.round_step(est, inbox, ids, 1, 0.01, True, pm, po, out=out)
    return (time.perf_counter() - t0) / repeats


def time_simulation(rounds):
    scenario = dataclasses.replace(
        load_scenario(bundled_scenario_path("paper_fig2")), max_rounds=rounds
    )
    times = {}
    for name in available_backends():
        # fresh interpreter so the backend selection actually takes effect
        code = (
            "import time, dataclasses\n"
            "from ceopt import load_scenario, run_simulation, bundled_scenario_path\n"
            f"sc = dataclasses.replace(load_scenario(bundled_scenario_path('paper_fig2')), max_rounds={rounds})\n"
            "t0 = time.perf_counter(); run_simulation(sc); print(time.perf_counter() - t0)\n"
        )
        env = dict(os.environ, CEOPT_BACKEND=name)
        out = subprocess.run(
            [sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True
        )
        times[name] = float(out.stdout.strip())
    return times


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--rounds", type=int, default=2000, help="simulation rounds to time")
    args = parser.parse_args()

    backends = available_backends()
    if "native" not in backends:
        print("note: compiled kernel not built; only the python backend is available")

    rng = np.random.default_rng(0)
    print(f"{'kernel round_step':<28}" + "".join(f"{name:>14}" for name in backends) + f"{'speedup':>10}")
    for n, d, repeats in [(6, 2, 2000), (32, 8, 300), (128, 16, 30)]:
        inputs = synthetic_inputs(rng, n, d)
        per = {name: time_round_step(mod, inputs, repeats) for name, mod in backends.items()}
        row = f"n={n:<4} d={d:<19}"
        row += "".join(f"{per[name] * 1e6:>11.1f} us" for name in backends)
        if len(per) == 2:
            row += f"{per['python'] / per['native']:>9.1f}x"
        print(row)

    print()
    times = time_simulation(args.rounds)
    print(f"paper_fig2 scenario, {args.rounds} rounds, end to end (fresh interpreter):")
    for name, t in times.items():
        print(f"  {name:<8} {t:8.3f} s")
    if len(times) == 2:
        print(f"  speedup  {times['python'] / times['native']:8.1f}x")


if __name__ == "__main__":
    main()
