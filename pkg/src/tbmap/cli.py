"""Command-line harness: BER sweeps, runtime statistics, trellis inspection,
and single-frame decoding.

Exit codes: 0 success, 2 usage error, 3 runtime failure.  Diagnostics go to
stderr; experiment data goes to the --out CSV files.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .exact import ah_decode, exact_tb_map
from .maa import MaaConfig, maa_decode
from .results import hard_decisions
from .simulate import ExperimentConfig, PointStats, make_code, run_experiment
from .trellis import build_product_tbt, load_span_spec, subtrellis_stats
from .weights import ChannelParams, awgn_edge_weights

CSV_FIELDS = (
    "decoder",
    "code",
    "ebn0_db",
    "frames",
    "info_bits",
    "bit_errors",
    "ber",
    "avg_updates",
    "avg_subtrellises",
    "wrap",
    "mu",
    "seed",
)


def parse_snr_grid(text: str) -> list[float]:
    """A:B:STEP, inclusive of both ends within 1e-9."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"--snr wants A:B:STEP, got {text!r}")
    a, b, step = (float(p) for p in parts)
    if step <= 0:
        raise ValueError("--snr step must be positive")
    if b < a - 1e-9:
        raise ValueError("--snr upper end below lower end")
    grid = []
    i = 0
    while True:
        v = a + i * step
        if v > b + 1e-9:
            break
        grid.append(round(v, 12))
        i += 1
    if not grid:
        raise ValueError("empty Eb/N0 grid")
    return grid


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_csv(path: str, rows: list[PointStats]) -> None:
    lines = [",".join(CSV_FIELDS)]
    for r in rows:
        lines.append(",".join(_csv_cell(getattr(r, f)) for f in CSV_FIELDS))
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("\n".join(lines) + "\n")


def _experiment_args(p: argparse.ArgumentParser, with_decoder: bool) -> None:
    p.add_argument("--code", required=True, choices=("golay", "conv"))
    if with_decoder:
        p.add_argument(
            "--decoder", required=True, choices=("maa", "mu-maa", "ah", "exact")
        )
    p.add_argument("--snr", default="0:5:0.5", help="grid as A:B:STEP (dB)")
    p.add_argument("--frames", type=int, default=1000, help="minimum frames per point")
    p.add_argument(
        "--min-errors",
        type=int,
        default=0,
        help="keep running a point until this many bit errors (0 disables)",
    )
    p.add_argument("--max-frames", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--source", choices=("random", "zero"), default="random")
    p.add_argument("--compare", choices=("coded", "info"), default="coded")
    p.add_argument("--wrap", type=int, default=None, help="wrap depth for ah")
    p.add_argument("--mu", type=int, default=None, help="candidate count for mu-maa")
    p.add_argument("--out", required=True, help="CSV output path")


def _build_config(args, decoder: str, parser: argparse.ArgumentParser) -> ExperimentConfig:
    try:
        grid = parse_snr_grid(args.snr)
        return ExperimentConfig(
            code=args.code,
            decoder=decoder,
            ebn0_grid=grid,
            frames=args.frames,
            min_errors=args.min_errors,
            max_frames=args.max_frames,
            master_seed=args.seed,
            source=args.source,
            mu=args.mu if decoder == "mu-maa" else None,
            wrap=args.wrap if decoder == "ah" else None,
            compare=args.compare,
        )
    except ValueError as e:
        parser.error(str(e))


def cmd_ber(args, parser) -> int:
    if args.decoder != "mu-maa" and args.mu is not None:
        parser.error("--mu only applies to --decoder mu-maa")
    if args.decoder == "mu-maa" and args.mu is None:
        parser.error("--decoder mu-maa needs --mu")
    if args.decoder != "ah" and args.wrap is not None:
        parser.error("--wrap only applies to --decoder ah")
    cfg = _build_config(args, args.decoder, parser)
    rows = run_experiment(cfg)
    write_csv(args.out, rows)
    print(
        f"{args.decoder}/{args.code}: {len(rows)} points -> {args.out} "
        f"(compare={args.compare}, seed={args.seed})",
        file=sys.stderr,
    )
    return 0


def cmd_stats(args, parser) -> int:
    """Runtime statistics sweep: maa and ah side by side (plus optional mu-maa)."""
    decoders = ["maa", "ah"]
    if args.mu is not None:
        decoders.append("mu-maa")
    rows: list[PointStats] = []
    for dec in decoders:
        cfg = _build_config(args, dec, parser)
        rows.extend(run_experiment(cfg))
    write_csv(args.out, rows)
    print(
        f"stats/{args.code}: {decoders} x {len(rows) // len(decoders)} points -> "
        f"{args.out} (compare={args.compare}, seed={args.seed})",
        file=sys.stderr,
    )
    return 0


def _load_trellis(args, parser):
    if getattr(args, "spec", None):
        try:
            return build_product_tbt(load_span_spec(args.spec)), args.spec
        except FileNotFoundError:
            parser.error(f"span spec file not found: {args.spec}")
    if args.code is None:
        parser.error("need --code or --spec")
    return make_code(args.code).trellis, args.code


def cmd_trellis_info(args, parser) -> int:
    t, label = _load_trellis(args, parser)
    edges_per_section = [len(f) for f in t.edges_from]
    uniform_e = len(set(edges_per_section)) == 1
    lines = [
        f"trellis: {label}",
        f"sections: {t.n}, label bits/section: {t.bps}",
        f"states: {t.num_states} total, per boundary: "
        + (
            str(t.state_counts[0])
            if len(set(t.state_counts)) == 1
            else " ".join(map(str, t.state_counts[:-1]))
        ),
        "edges: "
        + (
            f"{t.num_edges} total, {edges_per_section[0]} per section"
            if uniform_e
            else f"{t.num_edges} total, per section: "
            + " ".join(map(str, edges_per_section))
        ),
        f"subtrellises: {t.num_subtrellises}",
    ]
    stats = [subtrellis_stats(t, j) for j in t.start_states]
    if len({(s.state_count, s.edge_count) for s in stats}) == 1:
        lines.append(
            f"per subtrellis: {stats[0].state_count} states, {stats[0].edge_count} edges"
        )
    else:
        for j, s in enumerate(stats):
            lines.append(f"subtrellis {j}: {s.state_count} states, {s.edge_count} edges")
    print("\n".join(lines))
    if args.dump:
        with open(args.dump, "w", encoding="utf-8") as f:
            f.write(t.dump_edges())
        print(f"edge dump -> {args.dump}", file=sys.stderr)
    return 0


def cmd_decode(args, parser) -> int:
    if args.decoder != "mu-maa" and args.mu is not None:
        parser.error("--mu only applies to --decoder mu-maa")
    if args.decoder == "mu-maa" and args.mu is None:
        parser.error("--decoder mu-maa needs --mu")
    if args.decoder != "ah" and args.wrap is not None:
        parser.error("--wrap only applies to --decoder ah")
    t, label = _load_trellis(args, parser)
    try:
        received = np.loadtxt(args.input, dtype=np.float64).reshape(-1)
    except FileNotFoundError:
        parser.error(f"received-vector file not found: {args.input}")
    except ValueError as e:
        parser.error(f"malformed received-vector file: {e}")
    if received.size != t.num_positions:
        parser.error(
            f"received vector has {received.size} samples, trellis wants {t.num_positions}"
        )
    params = ChannelParams(args.ebn0, args.rate)
    wt = awgn_edge_weights(t, received, params)
    if args.decoder == "ah":
        wrap = args.wrap if args.wrap is not None else 40
        app = ah_decode(wt, wrap)
    elif args.decoder == "exact":
        app = exact_tb_map(wt)
    else:
        cfg = MaaConfig(mu=args.mu if args.decoder == "mu-maa" else None)
        app = maa_decode(wt, cfg)
    bits = hard_decisions(app)
    print(f"trellis: {label}, decoder: {args.decoder}, ebn0: {args.ebn0} dB")
    st = app.stats
    sub = st.subtrellises_examined
    print(
        f"updates: {st.updates} (global {st.phase1_updates}, "
        f"fwd {st.phase2_fwd_updates}, bwd {st.phase2_bwd_updates})"
        + (f", subtrellises examined: {sub}" if sub is not None else "")
    )
    print("decisions: " + "".join(map(str, bits)))
    print("pos p0 p1")
    for i, (p0, p1) in enumerate(app.app):
        print(f"{i} {p0:.6g} {p1:.6g}")
    if args.trace and app.trace is not None:
        sm = app.trace
        print("forward winners: " + " ".join(f"{j}@{k}" for j, k in sm.winners_fwd))
        print("backward winners: " + " ".join(f"{j}@{k}" for j, k in sm.winners_bwd))
        opened = [
            f"{j}: fwd->{sm.fwd_reached[j]} bwd->{sm.bwd_reached[j]}"
            for j in sm.candidates
            if j in sm.examined
        ]
        print("opened: " + "; ".join(opened))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tbmap", description="MAP decoding on tail-biting trellises"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_ber = sub.add_parser("ber", help="BER sweep for one decoder")
    _experiment_args(p_ber, with_decoder=True)

    p_stats = sub.add_parser("stats", help="runtime statistics: maa and ah side by side")
    _experiment_args(p_stats, with_decoder=False)

    p_info = sub.add_parser("trellis-info", help="structural report")
    p_info.add_argument("--code", choices=("golay", "conv"))
    p_info.add_argument("--spec", help="span spec file")
    p_info.add_argument("--dump", help="write edge dump to this file")

    p_dec = sub.add_parser("decode", help="decode one received vector from a file")
    p_dec.add_argument("--code", choices=("golay", "conv"))
    p_dec.add_argument("--spec", help="span spec file")
    p_dec.add_argument(
        "--decoder", required=True, choices=("maa", "mu-maa", "ah", "exact")
    )
    p_dec.add_argument("--input", required=True, help="whitespace-separated reals")
    p_dec.add_argument("--ebn0", type=float, required=True)
    p_dec.add_argument("--rate", type=float, default=0.5)
    p_dec.add_argument("--wrap", type=int, default=None)
    p_dec.add_argument("--mu", type=int, default=None)
    p_dec.add_argument("--trace", action="store_true")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "ber": cmd_ber,
        "stats": cmd_stats,
        "trellis-info": cmd_trellis_info,
        "decode": cmd_decode,
    }
    try:
        return handlers[args.command](args, parser)
    except SystemExit:
        raise
    except Exception as e:  # runtime failure -> exit 3
        print(f"tbmap: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
