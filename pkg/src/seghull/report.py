"""Benchmark CSV writing and the companion timing figure."""

import csv
from collections import defaultdict
from dataclasses import dataclass

BENCH_HEADER = ("distribution kind", "n", "dim", "seed",
                "wall-milliseconds", "iterations", "hull_size")


@dataclass(frozen=True)
class BenchRecord:
    kind: str
    n: int
    dim: int
    seed: int
    wall_ms: float
    iterations: int
    hull_size: int

    def row(self) -> tuple:
        return (self.kind, self.n, self.dim, self.seed,
                repr(self.wall_ms), self.iterations, self.hull_size)


def write_bench_csv(path, records) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(BENCH_HEADER)
        for rec in records:
            writer.writerow(rec.row())


def render_bench_figure(path, records) -> None:
    """Log-log wall time and iteration count vs n, one line per kind,
    averaged over repetitions; written next to the CSV."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    by_kind: dict = defaultdict(lambda: defaultdict(list))
    for rec in records:
        by_kind[rec.kind][rec.n].append(rec)

    fig, (ax_time, ax_iter) = plt.subplots(1, 2, figsize=(9.5, 4.0))
    for kind in sorted(by_kind):
        sizes = sorted(by_kind[kind])
        mean_ms = [sum(r.wall_ms for r in by_kind[kind][n]) / len(by_kind[kind][n])
                   for n in sizes]
        mean_it = [sum(r.iterations for r in by_kind[kind][n]) / len(by_kind[kind][n])
                   for n in sizes]
        ax_time.plot(sizes, mean_ms, marker="o", label=kind)
        ax_iter.plot(sizes, mean_it, marker="s", label=kind)
    for ax, ylabel in ((ax_time, "wall time [ms]"), (ax_iter, "iterations")):
        ax.set_xscale("log")
        ax.set_xlabel("points")
        ax.set_ylabel(ylabel)
        ax.grid(True, which="both", alpha=0.3)
    ax_time.set_yscale("log")
    ax_time.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
