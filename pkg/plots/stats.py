#!/usr/bin/env python3
"""Runtime-statistics chart from harness CSVs: updates and subtrellis counts
vs SNR, one curve per decoder (two panels).

Usage:
    python plots/stats.py --in stats.csv [more.csv ...] --out stats.png
"""

from __future__ import annotations

import argparse
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from csvdata import load_rows, series

MARKERS = ("o", "s", "^", "d", "v", "x")


def plot_stats(inputs, out, title=None):
    rows = load_rows(inputs)
    updates = series(rows, "avg_updates")
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(6.4, 7.2), sharex=True)
    for i, (label, (xs, ys)) in enumerate(sorted(updates.items())):
        ax1.plot(xs, ys, marker=MARKERS[i % len(MARKERS)], label=label)
    ax1.set_ylabel("avg updates per frame")
    ax1.grid(True, alpha=0.4)
    ax1.legend()
    try:
        subs = series(rows, "avg_subtrellises")
    except ValueError:
        subs = {}
    for i, (label, (xs, ys)) in enumerate(sorted(subs.items())):
        ax2.plot(xs, ys, marker=MARKERS[i % len(MARKERS)], label=label)
    ax2.set_xlabel("Eb/N0 (dB)")
    ax2.set_ylabel("avg subtrellises examined")
    ax2.grid(True, alpha=0.4)
    if subs:
        ax2.legend()
    codes = sorted({r["code"] for r in rows})
    fig.suptitle(title or f"decoder runtime statistics ({', '.join(codes)})")
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    plt.close(fig)


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--in", dest="inputs", nargs="+", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--title")
    args = p.parse_args(argv)
    try:
        plot_stats(args.inputs, args.out, args.title)
    except (OSError, ValueError) as e:
        print(f"stats.py: {e}", file=sys.stderr)
        return 1
    print(f"wrote {args.out}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
