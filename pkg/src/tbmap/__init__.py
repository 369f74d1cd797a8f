"""Exact and approximate MAP decoding on tail-biting trellises."""

from .exact import (
    GlobalMetrics,
    SubtrellisMetrics,
    ah_decode,
    brute_force_app,
    exact_tb_map,
    phase1_global,
    subtrellis_pass,
)
from .maa import MaaConfig, maa_decode, mu_select, phase2_pass, phase3_marginalize
from .results import AppVector, RunStats, hard_decisions, hard_info_decisions
from .simulate import (
    ExperimentConfig,
    FrameRng,
    PointStats,
    awgn_transmit,
    encode_block,
    encode_conv_tb,
    make_code,
    run_experiment,
)
from .trellis import (
    Edge,
    Membership,
    SpanGeneratorSpec,
    TailBitingTrellis,
    build_conv_tbt,
    build_product_tbt,
    compute_membership,
    enumerate_tb_paths,
    golay_span_spec,
    load_span_spec,
    parse_span_spec,
    subtrellis_stats,
    tb_codebook,
)
from .weights import (
    ChannelParams,
    WeightedTrellis,
    apply_section_scaling,
    awgn_edge_weights,
)

__version__ = "0.1.0"

__all__ = [
    "AppVector",
    "ChannelParams",
    "Edge",
    "ExperimentConfig",
    "FrameRng",
    "GlobalMetrics",
    "MaaConfig",
    "Membership",
    "PointStats",
    "RunStats",
    "SpanGeneratorSpec",
    "SubtrellisMetrics",
    "TailBitingTrellis",
    "WeightedTrellis",
    "ah_decode",
    "apply_section_scaling",
    "awgn_edge_weights",
    "awgn_transmit",
    "brute_force_app",
    "build_conv_tbt",
    "build_product_tbt",
    "compute_membership",
    "encode_block",
    "encode_conv_tb",
    "enumerate_tb_paths",
    "exact_tb_map",
    "golay_span_spec",
    "hard_decisions",
    "hard_info_decisions",
    "load_span_spec",
    "maa_decode",
    "make_code",
    "mu_select",
    "parse_span_spec",
    "phase1_global",
    "phase2_pass",
    "phase3_marginalize",
    "run_experiment",
    "subtrellis_pass",
    "subtrellis_stats",
    "tb_codebook",
]
