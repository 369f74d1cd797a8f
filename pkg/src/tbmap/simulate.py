"""Deterministic, seedable Monte-Carlo machinery for BER/runtime experiments.

Every frame draws its randomness from a private stream that is a pure
function of (master_seed, frame_index), so results are bit-identical for a
fixed configuration regardless of processing order, and any frame can be
replayed in isolation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .exact import ah_decode, exact_tb_map
from .maa import MaaConfig, maa_decode
from .results import AppVector, hard_decisions, hard_info_decisions
from .trellis import (
    SpanGeneratorSpec,
    TailBitingTrellis,
    build_conv_tbt,
    build_product_tbt,
    conv_next_state,
    conv_output_bits,
    golay_span_spec,
)
from .weights import ChannelParams, awgn_edge_weights

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_FRAME_SALT = 0xD1B54A32D192ED03


def _mix64(z: int) -> int:
    """64-bit finalizer (SplitMix-style avalanche)."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


class FrameRng:
    """Counter-based 64-bit generator with a documented fixed algorithm.

    Stream state starts at mix64(master_seed XOR mix64((frame_index + 1) *
    0xD1B54A32D192ED03)); each draw adds the increment 0x9E3779B97F4A7C15 and
    applies the same finalizer.  Uniforms take the top 53 bits; Gaussians come
    from the Box-Muller transform of consecutive uniform pairs (u1 shifted
    into (0, 1]), cosine variate first.  Any implementation of this recipe
    reproduces the streams bit for bit.
    """

    def __init__(self, master_seed: int, frame_index: int):
        self.master_seed = master_seed & _MASK64
        self.frame_index = frame_index
        self._state = _mix64(
            self.master_seed ^ _mix64(((frame_index + 1) * _FRAME_SALT) & _MASK64)
        )
        self._spare: float | None = None

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        return _mix64(self._state)

    def uniform(self) -> float:
        """Uniform double in [0, 1)."""
        return (self.next_u64() >> 11) * 2.0**-53

    def bit(self) -> int:
        return self.next_u64() >> 63

    def bits(self, count: int) -> np.ndarray:
        return np.array([self.bit() for _ in range(count)], dtype=np.uint8)

    def gaussian(self) -> float:
        if self._spare is not None:
            z, self._spare = self._spare, None
            return z
        u1 = ((self.next_u64() >> 11) + 1) * 2.0**-53  # (0, 1]
        u2 = self.uniform()
        rad = math.sqrt(-2.0 * math.log(u1))
        ang = 2.0 * math.pi * u2
        self._spare = rad * math.sin(ang)
        return rad * math.cos(ang)

    def gaussians(self, count: int) -> np.ndarray:
        return np.array([self.gaussian() for _ in range(count)])


# ---------------------------------------------------------------------------
# encoders
# ---------------------------------------------------------------------------

def encode_conv_tb(info: np.ndarray, polys, m: int) -> np.ndarray:
    """Tail-biting convolutional encoding: the shift register starts loaded
    with the last m information bits, so it ends in its starting state."""
    info = np.asarray(info, dtype=np.uint8)
    L = len(info)
    if L <= m:
        raise ValueError("need more information bits than the encoder memory")
    state = 0
    for i in range(m):
        state |= int(info[L - 1 - i]) << (m - 1 - i)
    out = np.empty(L * len(polys), dtype=np.uint8)
    for k, u in enumerate(info):
        bits = conv_output_bits(polys, m, state, int(u))
        out[k * len(polys) : (k + 1) * len(polys)] = bits
        state = conv_next_state(m, state, int(u))
    return out


def encode_block(info: np.ndarray, spec: SpanGeneratorSpec) -> np.ndarray:
    info = np.asarray(info, dtype=np.uint8)
    if info.shape != (spec.k,):
        raise ValueError(f"need {spec.k} information bits")
    return (info @ spec.rows) % 2


def awgn_transmit(codeword: np.ndarray, params: ChannelParams, rng: FrameRng) -> np.ndarray:
    x = params.amplitude * (1.0 - 2.0 * np.asarray(codeword, dtype=np.float64))
    return x + params.sigma * rng.gaussians(len(x))


# ---------------------------------------------------------------------------
# code registry
# ---------------------------------------------------------------------------

CONV_POLYS = (0o133, 0o171)
CONV_MEMORY = 6
CONV_CIRCLE = 48


@dataclass
class CodeSetup:
    name: str
    trellis: TailBitingTrellis
    k_info: int
    rate: float
    encode: Callable[[np.ndarray], np.ndarray]
    default_wrap: int


def make_code(name: str) -> CodeSetup:
    if name == "conv":
        t = build_conv_tbt(CONV_POLYS, CONV_MEMORY, CONV_CIRCLE)
        enc = lambda info: encode_conv_tb(info, CONV_POLYS, CONV_MEMORY)
        return CodeSetup("conv", t, CONV_CIRCLE, 0.5, enc, 40)
    if name == "golay":
        spec = golay_span_spec()
        t = build_product_tbt(spec)
        enc = lambda info: encode_block(info, spec)
        return CodeSetup("golay", t, spec.k, spec.k / (t.n * t.bps), enc, 10)
    raise ValueError(f"unknown code {name!r} (expected 'conv' or 'golay')")


# ---------------------------------------------------------------------------
# experiments
# ---------------------------------------------------------------------------

DECODERS = ("maa", "mu-maa", "ah", "exact")


@dataclass
class ExperimentConfig:
    code: str
    decoder: str
    ebn0_grid: list[float]
    frames: int
    min_errors: int = 0
    max_frames: int = 1_000_000
    master_seed: int = 1
    source: str = "random"  # or "zero"
    mu: int | None = None
    wrap: int | None = None
    compare: str = "coded"  # or "info"

    def __post_init__(self):
        if self.code not in ("conv", "golay"):
            raise ValueError(f"unknown code {self.code!r}")
        if self.decoder not in DECODERS:
            raise ValueError(f"unknown decoder {self.decoder!r}")
        if not self.ebn0_grid:
            raise ValueError("empty Eb/N0 grid")
        if self.frames < 1:
            raise ValueError("need at least one frame per point")
        if self.max_frames < self.frames:
            raise ValueError("max_frames must be >= frames")
        if self.decoder == "mu-maa" and self.mu is None:
            raise ValueError("mu-maa needs mu")
        if self.decoder != "mu-maa" and self.mu is not None:
            raise ValueError("mu only applies to the mu-maa decoder")
        if self.decoder != "ah" and self.wrap is not None:
            raise ValueError("wrap only applies to the ah decoder")
        if self.source not in ("random", "zero"):
            raise ValueError(f"unknown source {self.source!r}")
        if self.compare not in ("coded", "info"):
            raise ValueError(f"unknown comparison mode {self.compare!r}")


@dataclass
class PointStats:
    decoder: str
    code: str
    ebn0_db: float
    frames: int
    info_bits: int  # number of compared bits (the BER denominator)
    bit_errors: int
    ber: float
    avg_updates: float
    avg_subtrellises: float | None
    wrap: int | None
    mu: int | None
    seed: int


def _decoder_fn(cfg: ExperimentConfig, code: CodeSetup, want_info: bool):
    if cfg.decoder == "maa":
        c = MaaConfig()
        return lambda wt: maa_decode(wt, c, want_info=want_info)
    if cfg.decoder == "mu-maa":
        c = MaaConfig(mu=cfg.mu)
        return lambda wt: maa_decode(wt, c, want_info=want_info)
    if cfg.decoder == "ah":
        wrap = cfg.wrap if cfg.wrap is not None else code.default_wrap
        return lambda wt: ah_decode(wt, wrap, want_info=want_info)
    return lambda wt: exact_tb_map(wt, want_info=want_info)


def run_frame(
    cfg: ExperimentConfig,
    code: CodeSetup,
    params: ChannelParams,
    decode: Callable[..., AppVector],
    point_index: int,
    frame_index: int,
) -> tuple[int, int, AppVector]:
    """Decode one frame; returns (bit errors, compared bits, decode output)."""
    rng = FrameRng(cfg.master_seed, (point_index << 32) + frame_index)
    if cfg.source == "zero":
        info = np.zeros(code.k_info, dtype=np.uint8)
    else:
        info = rng.bits(code.k_info)
    cw = code.encode(info)
    received = awgn_transmit(cw, params, rng)
    wt = awgn_edge_weights(code.trellis, received, params)
    app = decode(wt)
    if cfg.compare == "coded":
        errors = int((hard_decisions(app) != cw).sum())
        nbits = len(cw)
    else:
        errors = int((hard_info_decisions(app) != info).sum())
        nbits = len(info)
    return errors, nbits, app


def run_experiment(cfg: ExperimentConfig) -> list[PointStats]:
    """Per grid point: encode, transmit, decode, compare, aggregate.

    A point runs at least cfg.frames frames and keeps going (up to
    cfg.max_frames) until cfg.min_errors bit errors were seen.  All
    aggregation uses integer accumulators, so the output is a pure function
    of (config, master_seed).
    """
    code = make_code(cfg.code)
    want_info = cfg.compare == "info"
    decode = _decoder_fn(cfg, code, want_info)
    track_sub = cfg.decoder in ("maa", "mu-maa", "exact")
    wrap = (
        (cfg.wrap if cfg.wrap is not None else code.default_wrap)
        if cfg.decoder == "ah"
        else None
    )
    out = []
    for pi, ebn0 in enumerate(cfg.ebn0_grid):
        params = ChannelParams(ebn0, code.rate)
        frames = errors = bits = updates_total = sub_total = 0
        while frames < cfg.frames or (
            0 < cfg.min_errors
            and errors < cfg.min_errors
            and frames < cfg.max_frames
        ):
            e, b, app = run_frame(cfg, code, params, decode, pi, frames)
            errors += e
            bits += b
            updates_total += app.stats.updates
            if track_sub:
                sub_total += app.stats.subtrellises_examined
            frames += 1
        out.append(
            PointStats(
                decoder=cfg.decoder,
                code=cfg.code,
                ebn0_db=ebn0,
                frames=frames,
                info_bits=bits,
                bit_errors=errors,
                ber=errors / bits,
                avg_updates=updates_total / frames,
                avg_subtrellises=sub_total / frames if track_sub else None,
                wrap=wrap,
                mu=cfg.mu,
                seed=cfg.master_seed,
            )
        )
    return out
