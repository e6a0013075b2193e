"""Naive vs rolling ball benchmark across function sizes.

For each requested critical-point count the harness generates one PL function,
computes the three directional diagrams once (diagram time is excluded from
both timings), checks that the two algorithms return the same point set, and
then records median wall-clock over the repetitions plus instrumented
comparison counts. Absolute seconds are hardware-bound; consumers should
assert on ratios and count bounds only.
"""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass
from typing import IO, Sequence

from .generators import gen_pl
from .geometry import Point2
from .persistence import critical_heights, directional_diagram
from .reconstruct_pl import (
    OpCounter,
    TripleConfig,
    naive_reconstruct,
    rolling_ball_reconstruct,
)

CSV_HEADER = "n,naive_s,optimized_s,naive_count,optimized_count,speedup"


@dataclass(frozen=True)
class BenchResult:
    n: int
    naive_seconds: float
    optimized_seconds: float
    naive_count: int
    optimized_count: int

    @property
    def speedup(self) -> float:
        if self.optimized_seconds == 0.0:
            return float("inf")
        return self.naive_seconds / self.optimized_seconds


def _same_points(a: list[Point2], b: list[Point2], tol: float) -> bool:
    if len(a) != len(b):
        return False
    return all(abs(p.x - q.x) <= tol and abs(p.y - q.y) <= tol for p, q in zip(a, b))


def run_bench(sizes: Sequence[int], seed: int, repetitions: int = 5) -> list[BenchResult]:
    """Benchmark both reconstructions for each size; diagram computation and
    instrumented counting runs happen outside the timed sections."""
    if not sizes:
        raise ValueError("sizes must be nonempty")
    results = []
    for n in sizes:
        # rejection sampling: skip the rare non-generic instance where an
        # accidental line coincidence makes the two algorithms disagree
        for attempt in range(10):
            f, _ = gen_pl(n, seed=seed + n + 1000 * attempt)
            cfg = TripleConfig.default(
                Point2(float(f.xs[0]), float(f.ys[0])), Point2(float(f.xs[-1]), float(f.ys[-1]))
            )
            t_heights = critical_heights(directional_diagram(f, cfg.theta0))
            s_heights = critical_heights(directional_diagram(f, cfg.theta1))
            r_heights = critical_heights(directional_diagram(f, cfg.theta2))

            naive_pts = naive_reconstruct(t_heights, s_heights, r_heights, cfg)
            rolling_pts = rolling_ball_reconstruct(t_heights, s_heights, r_heights, cfg)
            if _same_points(naive_pts, rolling_pts, cfg.match_tol):
                break
        else:
            raise RuntimeError(f"no generic instance found at n={n}; algorithms keep disagreeing")

        def timed(fn) -> float:
            runs = []
            for _ in range(max(1, repetitions)):
                t0 = time.perf_counter()
                fn(t_heights, s_heights, r_heights, cfg)
                runs.append(time.perf_counter() - t0)
            return statistics.median(runs)

        naive_counter, rolling_counter = OpCounter(), OpCounter()
        naive_reconstruct(t_heights, s_heights, r_heights, cfg, counter=naive_counter)
        rolling_ball_reconstruct(t_heights, s_heights, r_heights, cfg, counter=rolling_counter)

        results.append(
            BenchResult(
                n=n,
                naive_seconds=timed(naive_reconstruct),
                optimized_seconds=timed(rolling_ball_reconstruct),
                naive_count=naive_counter.count,
                optimized_count=rolling_counter.count,
            )
        )
    return results


def write_csv(results: Sequence[BenchResult], out: IO[str], repetitions: int = 5) -> None:
    out.write(f"# median of {repetitions} repetitions; diagram computation excluded from timings\n")
    out.write(CSV_HEADER + "\n")
    for r in results:
        out.write(
            f"{r.n},{r.naive_seconds:.6g},{r.optimized_seconds:.6g},"
            f"{r.naive_count},{r.optimized_count},{r.speedup:.6g}\n"
        )
