"""Exact reference computations on weighted tail-biting trellises.

This module holds the global forward-backward pass (with its per-section
scale factors), full per-subtrellis passes, the exact tail-biting MAP
decoder, a brute-force codeword-enumeration oracle, and the wrap-around
forward-backward baseline decoder.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .results import AppVector, RunStats
from .trellis import Membership, TailBitingTrellis
from .weights import ChannelParams, WeightedTrellis


@dataclass
class GlobalMetrics:
    """Whole-trellis forward/backward node metrics.

    alpha[k][u] sums path weights from any start state to state u at
    boundary k (alpha[0] is all ones); beta[k][u] sums path weights from u to
    any final state (beta[n] is all ones).  With the canonical scale the
    alpha vector at every boundary k >= 1 sums to one.
    """

    alpha: list[np.ndarray]
    beta: list[np.ndarray]
    scale: np.ndarray
    updates: int


def phase1_global(wt: WeightedTrellis) -> tuple[WeightedTrellis, GlobalMetrics]:
    """Forward-backward pass over the whole trellis; returns exactly
    2 * |E| updates.

    If ``wt`` is unscaled, per-section scale factors c_k = 1 / sum(alpha_k)
    are computed during the forward sweep and frozen into the returned
    WeightedTrellis so later passes consume identical scaled weights.
    An already-scaled trellis is used as-is.
    """
    t = wt.base
    n = t.n
    alpha: list[np.ndarray] = [np.ones(t.state_counts[0])] + [None] * n
    updates = 0
    if wt.scaled:
        out = wt
        for k in range(n):
            alpha[k + 1] = np.bincount(
                t.edges_to[k],
                weights=alpha[k][t.edges_from[k]] * wt.w[k],
                minlength=t.state_counts[k + 1],
            )
            updates += len(wt.w[k])
    else:
        scale = np.empty(n)
        w = []
        for k in range(n):
            raw = np.bincount(
                t.edges_to[k],
                weights=alpha[k][t.edges_from[k]] * wt.w[k],
                minlength=t.state_counts[k + 1],
            )
            s = raw.sum()
            if not s > 0:
                raise FloatingPointError(f"section {k}: forward metrics underflowed")
            scale[k] = 1.0 / s
            w.append(wt.w[k] * scale[k])
            alpha[k + 1] = raw * scale[k]
            updates += len(wt.w[k])
        out = WeightedTrellis(t, w, scale)
    beta: list[np.ndarray] = [None] * n + [np.ones(t.state_counts[n])]
    for k in range(n - 1, -1, -1):
        beta[k] = np.bincount(
            t.edges_from[k],
            weights=beta[k + 1][t.edges_to[k]] * out.w[k],
            minlength=t.state_counts[k],
        )
        updates += len(out.w[k])
    return out, GlobalMetrics(alpha, beta, out.scale, updates)


class SubtrellisMetrics:
    """Partial per-subtrellis forward/backward tables.

    For candidate j, ``alpha[j][b]`` is filled for boundaries 0..fwd_reached[j]
    and ``beta[j][b]`` for boundaries bwd_reached[j]..n; vectors are dense per
    boundary (zero off the subtrellis).  Also records the opened-section log
    (winner sequence) and per-advance heuristic values for instrumentation.
    """

    def __init__(self, trellis: TailBitingTrellis, candidates):
        self.trellis = trellis
        self.candidates = list(candidates)
        n = trellis.n
        self.alpha: dict[int, list] = {j: [None] * (n + 1) for j in self.candidates}
        self.beta: dict[int, list] = {j: [None] * (n + 1) for j in self.candidates}
        self.fwd_reached: dict[int, int | None] = {j: None for j in self.candidates}
        self.bwd_reached: dict[int, int | None] = {j: None for j in self.candidates}
        self.updates_fwd = 0
        self.updates_bwd = 0
        self.winners_fwd: list[tuple[int, int]] = []
        self.winners_bwd: list[tuple[int, int]] = []
        self.h_log_fwd: dict[int, list[tuple[int, float]]] = {}
        self.h_log_bwd: dict[int, list[tuple[int, float]]] = {}
        self.advanced_fwd: set[int] = set()
        self.advanced_bwd: set[int] = set()

    @property
    def examined(self) -> set[int]:
        return self.advanced_fwd | self.advanced_bwd

    def init_forward(self, j: int) -> None:
        if self.fwd_reached[j] is None:
            v = np.zeros(self.trellis.state_counts[0])
            v[j] = 1.0
            self.alpha[j][0] = v
            self.fwd_reached[j] = 0

    def init_backward(self, j: int) -> None:
        if self.bwd_reached[j] is None:
            n = self.trellis.n
            v = np.zeros(self.trellis.state_counts[n])
            v[j] = 1.0
            self.beta[j][n] = v
            self.bwd_reached[j] = n

    def advance_forward(self, wt: WeightedTrellis, memb: Membership, j: int) -> None:
        k = self.fwd_reached[j]  # process section k: boundary k -> k+1
        arrs = memb.arrays_for(j)
        sel = arrs["edges"][k]
        wk = wt.w[k][sel]
        out = np.bincount(
            arrs["heads"][k],
            weights=self.alpha[j][k][arrs["tails"][k]] * wk,
            minlength=self.trellis.state_counts[k + 1],
        )
        self.alpha[j][k + 1] = out
        self.fwd_reached[j] = k + 1
        self.updates_fwd += len(wk)
        self.winners_fwd.append((j, k + 1))
        self.advanced_fwd.add(j)

    def advance_backward(self, wt: WeightedTrellis, memb: Membership, j: int) -> None:
        k = self.bwd_reached[j] - 1  # process section k: boundary k+1 -> k
        arrs = memb.arrays_for(j)
        sel = arrs["edges"][k]
        wk = wt.w[k][sel]
        out = np.bincount(
            arrs["tails"][k],
            weights=self.beta[j][k + 1][arrs["heads"][k]] * wk,
            minlength=self.trellis.state_counts[k],
        )
        self.beta[j][k] = out
        self.bwd_reached[j] = k
        self.updates_bwd += len(wk)
        self.winners_bwd.append((j, k))
        self.advanced_bwd.add(j)

    def log_h(self, direction: str, j: int, boundary: int, h: float) -> None:
        log = self.h_log_fwd if direction == "forward" else self.h_log_bwd
        log.setdefault(j, []).append((boundary, h))

    def weight(self, j: int) -> float:
        """weight(T_j): total path weight of a fully opened subtrellis."""
        if self.fwd_reached.get(j) == self.trellis.n:
            return float(self.alpha[j][self.trellis.n][j])
        if self.bwd_reached.get(j) == 0:
            return float(self.beta[j][0][j])
        raise ValueError(f"subtrellis {j} is not fully opened in either direction")


def subtrellis_pass(
    wt: WeightedTrellis,
    j: int,
    direction: str,
    upto: int,
    resume: SubtrellisMetrics | None = None,
) -> SubtrellisMetrics:
    """Run subtrellis j's recursion contiguously from its end to ``upto``.

    ``upto`` is a boundary index: forward fills boundaries 0..upto, backward
    fills boundaries upto..n.  Pass ``resume`` to extend an earlier fragment;
    asking it to regress is a non-contiguous request and is rejected.
    """
    t = wt.base
    if not 0 <= j < t.num_subtrellises:
        raise ValueError(f"no subtrellis {j}")
    if not 0 <= upto <= t.n:
        raise ValueError(f"boundary {upto} out of range")
    memb = t.membership()
    sm = resume if resume is not None else SubtrellisMetrics(t, [j])
    if sm.trellis is not t:
        raise ValueError("resumed fragment belongs to a different trellis")
    if j not in sm.alpha:
        raise ValueError(f"subtrellis {j} is not a candidate of the resumed fragment")
    if direction == "forward":
        sm.init_forward(j)
        if upto < sm.fwd_reached[j]:
            raise ValueError(
                f"non-contiguous extension: forward pass already at {sm.fwd_reached[j]}"
            )
        while sm.fwd_reached[j] < upto:
            sm.advance_forward(wt, memb, j)
    elif direction == "backward":
        sm.init_backward(j)
        if upto > sm.bwd_reached[j]:
            raise ValueError(
                f"non-contiguous extension: backward pass already at {sm.bwd_reached[j]}"
            )
        while sm.bwd_reached[j] > upto:
            sm.advance_backward(wt, memb, j)
    else:
        raise ValueError("direction must be 'forward' or 'backward'")
    return sm


def marginalize(
    wt: WeightedTrellis, sm: SubtrellisMetrics, want_info: bool = False
) -> AppVector:
    """Edge-sum marginalization over the computed per-subtrellis tables.

    For each section-k edge the inner sum runs over exactly those candidates
    whose forward table reaches boundary k and whose backward table reaches
    boundary k+1.  Output is normalized per position; zero-mass positions
    (impossible when some candidate is fully opened both ways) fall back to
    (0.5, 0.5) and are flagged.
    """
    t = wt.base
    memb = t.membership()
    nlab = 1 << t.bps
    bitsel = [((np.arange(nlab) >> tt) & 1).astype(bool) for tt in range(t.bps)]
    app = np.zeros((t.num_positions, 2))
    mass = np.zeros(t.num_positions)
    zero_mass: list[int] = []
    info_rows: list[np.ndarray] = []
    for k in range(t.n):
        tot = np.zeros(nlab)
        itot = None
        if want_info and t.info_bits[k] > 0:
            itot = np.zeros(1 << t.info_bits[k])
        for j in sm.candidates:
            fr = sm.fwd_reached.get(j)
            br = sm.bwd_reached.get(j)
            if fr is None or br is None or fr < k or br > k + 1:
                continue
            arrs = memb.arrays_for(j)
            sel = arrs["edges"][k]
            contrib = (
                sm.alpha[j][k][arrs["tails"][k]]
                * wt.w[k][sel]
                * sm.beta[j][k + 1][arrs["heads"][k]]
            )
            tot += np.bincount(t.edge_labels[k][sel], weights=contrib, minlength=nlab)
            if itot is not None:
                itot += np.bincount(
                    t.edge_info[k][sel], weights=contrib, minlength=len(itot)
                )
        for tt in range(t.bps):
            pos = k * t.bps + tt
            one = tot[bitsel[tt]].sum()
            total = tot.sum()
            mass[pos] = total
            if total > 0:
                app[pos, 0] = (total - one) / total
                app[pos, 1] = one / total
            else:
                app[pos] = 0.5
                zero_mass.append(pos)
        if itot is not None:
            for tt in range(t.info_bits[k]):
                isel = ((np.arange(len(itot)) >> tt) & 1).astype(bool)
                one = itot[isel].sum()
                total = itot.sum()
                row = np.array([0.5, 0.5]) if total <= 0 else np.array(
                    [(total - one) / total, one / total]
                )
                info_rows.append(row)
    info_app = np.array(info_rows) if want_info else None
    return AppVector(app=app, mass=mass, zero_mass=zero_mass, info_app=info_app)


def exact_tb_map(wt: WeightedTrellis, want_info: bool = False) -> AppVector:
    """Exact symbol-wise MAP: every subtrellis fully opened both ways."""
    wt, gm = phase1_global(wt)
    t = wt.base
    memb = t.membership()
    sm = SubtrellisMetrics(t, list(t.start_states))
    for j in sm.candidates:
        sm.init_forward(j)
        sm.init_backward(j)
        for _ in range(t.n):
            sm.advance_forward(wt, memb, j)
            sm.advance_backward(wt, memb, j)
    app = marginalize(wt, sm, want_info=want_info)
    app.stats = RunStats(
        updates=gm.updates + sm.updates_fwd + sm.updates_bwd,
        subtrellises_examined=len(sm.candidates),
        phase1_updates=gm.updates,
        phase2_fwd_updates=sm.updates_fwd,
        phase2_bwd_updates=sm.updates_bwd,
    )
    app.subtrellis_weights = np.array([sm.weight(j) for j in sm.candidates])
    app.trace = sm
    return app


def brute_force_app(
    codebook: np.ndarray,
    received: np.ndarray,
    params: ChannelParams,
    start_states: np.ndarray | None = None,
) -> AppVector:
    """Literal a-posteriori sums over an enumerated codebook.

    APP[i][s] is proportional to the summed likelihoods of codewords with bit
    i equal to s.  When ``start_states`` gives the subcode partition, the
    normalized per-subcode likelihood masses are returned too.
    """
    cb = np.asarray(codebook, dtype=np.float64)
    if cb.ndim != 2:
        raise ValueError("codebook must be a 2-d bit matrix")
    if len(cb) > (1 << 20):
        raise ValueError("codebook too large to enumerate")
    r = np.asarray(received, dtype=np.float64)
    if r.shape != (cb.shape[1],):
        raise ValueError("received length does not match codeword length")
    x = params.amplitude * (1.0 - 2.0 * cb)
    ll = -((r[None, :] - x) ** 2).sum(axis=1) / (2.0 * params.sigma**2)
    wts = np.exp(ll - ll.max())
    total = wts.sum()
    one = wts @ cb
    app = np.stack([(total - one) / total, one / total], axis=1)
    out = AppVector(app=app, mass=np.full(cb.shape[1], total))
    if start_states is not None:
        sw = np.bincount(np.asarray(start_states), weights=wts)
        out.subtrellis_weights = sw / total
    return out


def ah_decode(wt: WeightedTrellis, wrap: int, want_info: bool = False) -> AppVector:
    """Wrap-around forward-backward decoder baseline.

    Sweeps n + wrap sections in each direction with circular section
    indexing, starting from metrics uniform over the start/final states.
    The readout for section k combines the alpha/beta vectors that were the
    inputs the last time section k was swept in each direction, so wrap=0
    coincides with the plain forward-backward pass.  Per-sweep normalization
    keeps the metrics in range and cancels in the per-position APPs.
    Updates counted: 2 * (n + wrap) * edges per section.
    """
    if wrap < 0:
        raise ValueError("wrap must be >= 0")
    t = wt.base
    n = t.n
    alpha_in: list[np.ndarray | None] = [None] * n
    beta_in: list[np.ndarray | None] = [None] * n
    updates_f = 0
    a = np.ones(t.state_counts[0])
    for step in range(n + wrap):
        k = step % n
        alpha_in[k] = a
        a = np.bincount(
            t.edges_to[k],
            weights=a[t.edges_from[k]] * wt.w[k],
            minlength=t.state_counts[k + 1],
        )
        updates_f += len(wt.w[k])
        s = a.sum()
        if not s > 0:
            raise FloatingPointError(f"section {k}: forward metrics underflowed")
        a = a / s
    updates_b = 0
    b = np.ones(t.state_counts[n])
    for step in range(n + wrap):
        k = (n - 1 - step) % n
        beta_in[k] = b
        b = np.bincount(
            t.edges_from[k],
            weights=b[t.edges_to[k]] * wt.w[k],
            minlength=t.state_counts[k],
        )
        updates_b += len(wt.w[k])
        s = b.sum()
        if not s > 0:
            raise FloatingPointError(f"section {k}: backward metrics underflowed")
        b = b / s

    nlab = 1 << t.bps
    bitsel = [((np.arange(nlab) >> tt) & 1).astype(bool) for tt in range(t.bps)]
    app = np.zeros((t.num_positions, 2))
    mass = np.zeros(t.num_positions)
    zero_mass: list[int] = []
    info_rows: list[np.ndarray] = []
    for k in range(n):
        contrib = alpha_in[k][t.edges_from[k]] * wt.w[k] * beta_in[k][t.edges_to[k]]
        tot = np.bincount(t.edge_labels[k], weights=contrib, minlength=nlab)
        for tt in range(t.bps):
            pos = k * t.bps + tt
            one = tot[bitsel[tt]].sum()
            total = tot.sum()
            mass[pos] = total
            if total > 0:
                app[pos, 0] = (total - one) / total
                app[pos, 1] = one / total
            else:
                app[pos] = 0.5
                zero_mass.append(pos)
        if want_info and t.info_bits[k] > 0:
            itot = np.bincount(
                t.edge_info[k], weights=contrib, minlength=1 << t.info_bits[k]
            )
            for tt in range(t.info_bits[k]):
                isel = ((np.arange(len(itot)) >> tt) & 1).astype(bool)
                one = itot[isel].sum()
                total = itot.sum()
                row = np.array([0.5, 0.5]) if total <= 0 else np.array(
                    [(total - one) / total, one / total]
                )
                info_rows.append(row)
    stats = RunStats(
        updates=updates_f + updates_b,
        phase2_fwd_updates=updates_f,
        phase2_bwd_updates=updates_b,
    )
    return AppVector(
        app=app,
        stats=stats,
        mass=mass,
        zero_mass=zero_mass,
        info_app=np.array(info_rows) if want_info else None,
    )
