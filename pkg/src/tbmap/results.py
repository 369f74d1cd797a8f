"""Result containers shared by the exact and approximate decoders."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass
class RunStats:
    """Work accounting for one decode.

    An update is one edge-term accumulation inside a forward/backward
    recursion; marginalization products are not counted.
    ``subtrellises_examined`` counts candidates whose working index advanced
    at least once in either best-first pass (None where not meaningful).
    """

    updates: int = 0
    subtrellises_examined: int | None = None
    phase1_updates: int = 0
    phase2_fwd_updates: int = 0
    phase2_bwd_updates: int = 0


@dataclass
class AppVector:
    """Per-position, per-symbol a-posteriori probabilities plus run stats.

    ``app[i]`` is (Pr(bit i = 0), Pr(bit i = 1)), normalized per position.
    ``mass[i]`` keeps the unnormalized decision-sum total; positions whose
    total was zero are listed in ``zero_mass`` and emitted as (0.5, 0.5).
    ``info_app`` optionally holds the same marginals for encoder input bits.
    """

    app: np.ndarray
    stats: RunStats = field(default_factory=RunStats)
    normalized: bool = True
    mass: np.ndarray | None = None
    zero_mass: list[int] = field(default_factory=list)
    info_app: np.ndarray | None = None
    subtrellis_weights: np.ndarray | None = None
    trace: object | None = None


def hard_decisions(app: AppVector) -> np.ndarray:
    """Per-position argmax decisions; ties resolve to bit 0."""
    a = app.app
    return (a[:, 1] > a[:, 0]).astype(np.uint8)


def hard_info_decisions(app: AppVector) -> np.ndarray:
    if app.info_app is None:
        raise ValueError("decoder did not produce input-bit marginals")
    a = app.info_app
    return (a[:, 1] > a[:, 0]).astype(np.uint8)
