"""Compare the compiled and NumPy sweep kernels.

    python3 benchmarks/bench_kernels.py [--repeat N] [--points 101,1001,10001]

Times ``assemble_divider_s`` on the synthesized 28 GHz lossy design for each
backend and sweep size, single-threaded, and reports the best of N runs.
"""

import argparse
import timeit

import numpy as np

from mmdivider import DividerSpec, assemble_divider_s, make_frequency_grid, rogers3003, synthesize_divider
from mmdivider.kernels import BACKENDS


def run(points, repeat):
    design = synthesize_divider(DividerSpec(28e9, rogers3003()))
    backends = sorted(BACKENDS)
    print(f"{'points':>8} " + " ".join(f"{b + ' [ms]':>15}" for b in backends) + f" {'speedup':>9} {'max |diff|':>11}")
    for n in points:
        grid = make_frequency_grid(1e9, 60e9, n)
        times, results = {}, {}
        for b in backends:
            results[b] = assemble_divider_s(design, grid, backend=b, workers=1).s
            timer = timeit.Timer(lambda b=b: assemble_divider_s(design, grid, backend=b, workers=1))
            loops, _ = timer.autorange()
            times[b] = min(timer.repeat(repeat, loops)) / loops * 1e3
        speed = times["python"] / times["compiled"] if "compiled" in times else float("nan")
        diff = max(float(np.max(np.abs(results[b] - results["python"]))) for b in backends)
        print(f"{n:>8} " + " ".join(f"{times[b]:>15.3f}" for b in backends) + f" {speed:>8.2f}x {diff:>11.1e}")


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--points", default="101,1001,10001,100001")
    args = p.parse_args()
    run([int(x) for x in args.points.split(",")], args.repeat)


if __name__ == "__main__":
    main()
