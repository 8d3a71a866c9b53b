#!/usr/bin/env python3
"""Plot training curves from semcom metrics CSV files.

Reads one or more metrics CSVs (or run directories containing them),
computes trailing-window means of episode length and transmission cost per
method, and writes two PNG figures. Curves are downsampled for plotting;
the CSVs always hold every episode.

Usage:
  python3 scripts/plot_metrics.py --inputs out/cl out/flat --window 10000 --out-prefix figs/run
"""

import argparse
import pathlib
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def collect_csvs(inputs):
    paths = []
    for raw in inputs:
        path = pathlib.Path(raw)
        if path.is_dir():
            paths.extend(sorted(path.glob("metrics_*.csv")))
        elif path.is_file():
            paths.append(path)
        else:
            sys.exit(f"input {path} does not exist")
    if not paths:
        sys.exit("no metrics CSV files found under the given inputs")
    return paths


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--inputs", nargs="+", required=True,
                        help="metrics CSV files or run directories")
    parser.add_argument("--window", type=int, default=10_000,
                        help="trailing window for the running mean")
    parser.add_argument("--max-points", type=int, default=2_000,
                        help="downsampling budget per curve")
    parser.add_argument("--out-prefix", default="metrics",
                        help="output path prefix; writes <prefix>_length.png and <prefix>_cost.png")
    args = parser.parse_args()

    frames = [pd.read_csv(path) for path in collect_csvs(args.inputs)]
    data = pd.concat(frames, ignore_index=True)

    figures = {
        "length": ("episode length (slots)", "length"),
        "cost": ("transmission cost per episode", "cost"),
    }
    for name, (ylabel, column) in figures.items():
        fig, ax = plt.subplots(figsize=(7, 4))
        for (method, seed), group in data.groupby(["method", "seed"]):
            group = group.sort_values("episode")
            series = group[column].rolling(args.window, min_periods=1).mean()
            step = max(1, len(group) // args.max_points)
            ax.plot(
                group["episode"][::step],
                series[::step],
                label=f"{method} seed {seed}",
                linewidth=1.2,
            )
        ax.set_xlabel("episode")
        ax.set_ylabel(ylabel)
        ax.legend(fontsize=8)
        ax.grid(True, alpha=0.3)
        fig.tight_layout()
        out = f"{args.out_prefix}_{name}.png"
        pathlib.Path(out).parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(out, dpi=150)
        print(f"wrote {out}")


if __name__ == "__main__":
    main()
