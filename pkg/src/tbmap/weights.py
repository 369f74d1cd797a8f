"""Channel-dependent edge weights for a tail-biting trellis.

Edge weights are per-edge Gaussian likelihood factors so that the product of
weights along a path is proportional to the a-posteriori probability of the
path's codeword.  Weights stay in the probability domain; numerical range is
managed by per-section scale factors c_k.  Because every stored quantity then
carries the same global constant (the product of all c_k), argmax decisions,
heuristic comparisons at unequal working indices, and normalized APPs are
unchanged by the scaling.

Signal mapping is fixed project-wide: bit 0 -> +1, bit 1 -> -1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .trellis import TailBitingTrellis


@dataclass(frozen=True)
class ChannelParams:
    """AWGN channel at a given Eb/N0 for a rate-``rate`` code.

    Antipodal signaling with unit amplitude; sigma is the noise standard
    deviation sqrt(1 / (2 * rate * 10^(ebn0_db/10))).
    """

    ebn0_db: float
    rate: float = 0.5
    amplitude: float = 1.0

    @property
    def sigma(self) -> float:
        return float(np.sqrt(1.0 / (2.0 * self.rate * 10.0 ** (self.ebn0_db / 10.0))))


def bit_to_signal(bit: int, amplitude: float = 1.0) -> float:
    return amplitude if bit == 0 else -amplitude


class WeightedTrellis:
    """A trellis plus per-edge nonnegative weights, built once per frame.

    ``scale`` is None until per-section scale factors are frozen in; after
    that the object is considered scaled and must not be rescaled.
    """

    def __init__(self, base: TailBitingTrellis, w: list[np.ndarray], scale=None):
        self.base = base
        self.w = w
        self.scale = None if scale is None else np.asarray(scale, dtype=np.float64)

    @property
    def scaled(self) -> bool:
        return self.scale is not None

    def with_scale(self, scale: np.ndarray) -> "WeightedTrellis":
        scale = np.asarray(scale, dtype=np.float64)
        w = [wk * scale[k] for k, wk in enumerate(self.w)]
        return WeightedTrellis(self.base, w, scale)


def awgn_edge_weights(
    t: TailBitingTrellis, received: np.ndarray, params: ChannelParams
) -> WeightedTrellis:
    """Raw (unscaled) edge weights for a received AWGN vector.

    w(e) is the product over the edge's label bits of
    exp(-(r - x)^2 / (2 sigma^2)) with x the antipodal image of the bit.
    Uniform priors cancel under normalization and are omitted.
    """
    r = np.asarray(received, dtype=np.float64)
    if r.shape != (t.num_positions,):
        raise ValueError(
            f"received vector has length {r.size}, trellis wants {t.num_positions}"
        )
    sigma = params.sigma
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    a = params.amplitude
    inv = 1.0 / (2.0 * sigma * sigma)
    # per-position metrics for bit 0 (+a) and bit 1 (-a)
    m0 = np.exp(-((r - a) ** 2) * inv)
    m1 = np.exp(-((r + a) ** 2) * inv)
    nlab = 1 << t.bps
    w = []
    for k in range(t.n):
        table = np.ones(nlab, dtype=np.float64)
        for tt in range(t.bps):
            pos = k * t.bps + tt
            bit1 = (np.arange(nlab) >> tt) & 1
            table *= np.where(bit1 == 1, m1[pos], m0[pos])
        w.append(table[t.edge_labels[k]])
    return WeightedTrellis(t, w)


def apply_section_scaling(wt: WeightedTrellis, scale) -> WeightedTrellis:
    """Multiply all section-k edge weights by scale[k] and freeze the scale."""
    if wt.scaled:
        raise ValueError("trellis weights are already scaled")
    scale = np.asarray(scale, dtype=np.float64)
    if scale.shape != (wt.base.n,):
        raise ValueError("need one scale factor per section")
    if not np.all(scale > 0):
        raise ValueError("scale factors must be positive")
    return wt.with_scale(scale)
