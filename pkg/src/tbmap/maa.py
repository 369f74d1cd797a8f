"""Best-first approximate MAP decoding over the subtrellis decomposition.

The decoder runs in three phases: a global forward-backward pass, best-first
forward and backward passes that open per-subtrellis tables one section at a
time for whichever candidate currently looks most promising, and a final
marginalization restricted to what was actually computed.

A candidate subtrellis at working boundary k carries the heuristic value

    h_f(T_j, k) = sum over states u at boundary k of alpha_Tj(u) * beta_T(u)

which is the total weight of paths whose first k sections stay inside T_j.
It can only fall as k advances and ends exactly at the subtrellis's
path-weight total, so each pass may safely stop as soon as the current
maximum sits at the far boundary.  The backward pass mirrors this with
h_b(T_j, k) = sum of beta_Tj(u) * alpha_T(u).

Both h_f(T_j, 0) and h_b(T_j, n) overestimate the subtrellis weight, and
their minimum is the sharper bound.  Winner selection therefore ranks each
candidate by its current h capped at the opposite direction's initial value:
min(h_f(T_j, k), h_b(T_j, n)) forward, min(h_b(T_j, k), h_f(T_j, 0))
backward.  The cap prunes candidates whose standing comes entirely from
paths that cannot close the circle (large one-sided mass ending or starting
at the wrong state), which is what keeps moderate-to-high-SNR work on a
single subtrellis.  The capped rank is still an overestimate of the weight
and still converges to it, so the completion guarantees are unchanged.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .exact import GlobalMetrics, SubtrellisMetrics, marginalize, phase1_global
from .results import AppVector, RunStats
from .weights import WeightedTrellis


@dataclass(frozen=True)
class MaaConfig:
    """Decoder knobs.

    ``mu`` restricts phase 2 to the mu most promising candidates (None runs
    all subtrellises).  ``open_all`` forces both passes to open every
    candidate end to end, which makes the output exactly the MAP solution
    over the candidate set (a testing hook, not a performance mode).
    Ties in every selection rule break toward the lowest subtrellis index.
    """

    mu: int | None = None
    open_all: bool = False


def mu_select(gm: GlobalMetrics, wt: WeightedTrellis, mu: int) -> list[int]:
    """The mu subtrellises with the largest min(h_f(T_j,0), h_b(T_j,n)).

    Both initial heuristics overestimate the subtrellis weight, so their
    minimum is the sharper ranking.  Returns indices in ascending order.
    """
    t = wt.base
    nsub = t.num_subtrellises
    if not 1 <= mu <= nsub:
        raise ValueError(f"mu must be in 1..{nsub}")
    score = np.minimum(gm.beta[0], gm.alpha[t.n])
    order = sorted(range(nsub), key=lambda j: (-score[j], j))
    return sorted(order[:mu])


def phase2_pass(
    wt: WeightedTrellis,
    gm: GlobalMetrics,
    candidates,
    direction: str,
    into: SubtrellisMetrics | None = None,
    run_to_completion: bool = False,
) -> SubtrellisMetrics:
    """One best-first pass (forward or backward) over the candidate set.

    Repeatedly pops the candidate with the highest capped rank; if its
    working index is already at the far boundary the pass ends, otherwise the
    candidate advances one section, its heuristic is re-evaluated, and it is
    reinserted.  With ``run_to_completion`` completed candidates are dropped
    instead, so the pass opens every candidate fully.
    """
    if direction not in ("forward", "backward"):
        raise ValueError("direction must be 'forward' or 'backward'")
    t = wt.base
    memb = t.membership()
    sm = into if into is not None else SubtrellisMetrics(t, candidates)
    fwd = direction == "forward"
    n = t.n
    # rank cap: the opposite direction's initial heuristic
    cap = gm.alpha[n] if fwd else gm.beta[0]
    heap: list[tuple[float, int]] = []
    for j in sm.candidates:
        if fwd:
            sm.init_forward(j)
            h = float(gm.beta[0][j])  # h_f(T_j, 0) = beta_T(s_j)
        else:
            sm.init_backward(j)
            h = float(gm.alpha[n][j])  # h_b(T_j, n) = alpha_T(f_j)
        sm.log_h(direction, j, 0 if fwd else n, h)
        heapq.heappush(heap, (-min(h, float(cap[j])), j))
    while heap:
        _, j = heapq.heappop(heap)
        reached = sm.fwd_reached[j] if fwd else sm.bwd_reached[j]
        if reached == (n if fwd else 0):
            if run_to_completion:
                continue
            break
        if fwd:
            sm.advance_forward(wt, memb, j)
            k = sm.fwd_reached[j]
            h = float(sm.alpha[j][k] @ gm.beta[k])
        else:
            sm.advance_backward(wt, memb, j)
            k = sm.bwd_reached[j]
            h = float(sm.beta[j][k] @ gm.alpha[k])
        sm.log_h(direction, j, k, h)
        heapq.heappush(heap, (-min(h, float(cap[j])), j))
    return sm


def phase3_marginalize(
    wt: WeightedTrellis, sm: SubtrellisMetrics, want_info: bool = False
) -> AppVector:
    """Marginalize over the opened parts of the candidate tables."""
    return marginalize(wt, sm, want_info=want_info)


def maa_decode(
    wt: WeightedTrellis, cfg: MaaConfig | None = None, want_info: bool = False
) -> AppVector:
    """Approximate symbol-wise MAP decode of one received frame."""
    cfg = cfg or MaaConfig()
    wt, gm = phase1_global(wt)
    t = wt.base
    if cfg.mu is None:
        candidates = list(t.start_states)
    else:
        candidates = mu_select(gm, wt, cfg.mu)
    sm = SubtrellisMetrics(t, candidates)
    phase2_pass(wt, gm, candidates, "forward", into=sm, run_to_completion=cfg.open_all)
    phase2_pass(wt, gm, candidates, "backward", into=sm, run_to_completion=cfg.open_all)
    app = phase3_marginalize(wt, sm, want_info=want_info)
    app.stats = RunStats(
        updates=gm.updates + sm.updates_fwd + sm.updates_bwd,
        subtrellises_examined=len(sm.examined),
        phase1_updates=gm.updates,
        phase2_fwd_updates=sm.updates_fwd,
        phase2_bwd_updates=sm.updates_bwd,
    )
    app.trace = sm
    return app
