"""Shared CSV loading for the plot scripts.

Reads the harness CSV schema (decoder,code,ebn0_db,frames,info_bits,
bit_errors,ber,avg_updates,avg_subtrellises,wrap,mu,seed) from one or more
files and groups rows into per-decoder series.
"""

from __future__ import annotations

import csv

REQUIRED = ("decoder", "code", "ebn0_db", "ber", "avg_updates", "avg_subtrellises")


def load_rows(paths) -> list[dict]:
    rows: list[dict] = []
    for path in paths:
        with open(path, newline="", encoding="utf-8") as f:
            reader = csv.DictReader(f)
            missing = [c for c in REQUIRED if c not in (reader.fieldnames or ())]
            if missing:
                raise ValueError(f"{path}: missing columns {missing}")
            rows.extend(reader)
    if not rows:
        raise ValueError("no data rows in the input CSVs")
    return rows


def decoder_label(row: dict) -> str:
    dec = row["decoder"]
    if dec == "ah" and row.get("wrap"):
        return f"ah (wrap={row['wrap']})"
    if dec == "mu-maa" and row.get("mu"):
        return f"{row['mu']}-maa"
    return dec


def series(rows: list[dict], field: str) -> dict[str, tuple[list[float], list[float]]]:
    """Per-decoder (snr, value) series, sorted by SNR; empty values skipped."""
    out: dict[str, tuple[list[float], list[float]]] = {}
    for row in rows:
        if row[field] == "":
            continue
        label = decoder_label(row)
        xs, ys = out.setdefault(label, ([], []))
        xs.append(float(row["ebn0_db"]))
        ys.append(float(row[field]))
    for label, (xs, ys) in out.items():
        order = sorted(range(len(xs)), key=lambda i: xs[i])
        out[label] = ([xs[i] for i in order], [ys[i] for i in order])
    if not out:
        raise ValueError(f"no usable values in column {field!r}")
    return out
