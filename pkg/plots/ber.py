#!/usr/bin/env python3
"""BER-vs-SNR chart from harness CSVs: log-scale y, one curve per decoder.

Usage:
    python plots/ber.py --in maa.csv ah.csv --out ber.png [--title TEXT]
"""

from __future__ import annotations

import argparse
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from csvdata import load_rows, series

MARKERS = ("o", "s", "^", "d", "v", "x")


def plot_ber(inputs, out, title=None):
    rows = load_rows(inputs)
    by_dec = series(rows, "ber")
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    for i, (label, (xs, ys)) in enumerate(sorted(by_dec.items())):
        ax.semilogy(xs, ys, marker=MARKERS[i % len(MARKERS)], label=label)
    ax.set_xlabel("Eb/N0 (dB)")
    ax.set_ylabel("BER")
    codes = sorted({r["code"] for r in rows})
    ax.set_title(title or f"bit error rate ({', '.join(codes)})")
    ax.grid(True, which="both", alpha=0.4)
    ax.legend()
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
        plot_ber(args.inputs, args.out, args.title)
    except (OSError, ValueError) as e:
        print(f"ber.py: {e}", file=sys.stderr)
        return 1
    print(f"wrote {args.out}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
