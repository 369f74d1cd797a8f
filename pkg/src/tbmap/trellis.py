"""Tail-biting trellis construction, storage, and subtrellis decomposition.

A tail-biting trellis lives on a circular time axis of ``n`` sections.
Boundaries are indexed 0..n with boundary n identified with boundary 0
(states at the two boundaries are the same list, and reported counts include
them once).  Section k (0-indexed) connects boundary k to boundary k+1 and
carries ``bps`` label bits, covering codeword positions k*bps .. (k+1)*bps-1.

Valid paths start and end at the same boundary-0 state; each start state
defines one subtrellis.  Edges are stored section-major in flat numpy arrays
so the decoding recursions are plain linear scans.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

MAX_SUBTRELLISES = 64  # membership masks are uint64 bitsets


class TrellisError(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    """One trellis edge: tail state -> head state with a bps-bit label.

    ``label`` packs the section's label bits with bit t (LSB first) holding
    codeword position offset t; ``info`` packs the encoder input bits chosen
    on this edge (0 bits for trellises without input semantics).
    """

    tail: int
    head: int
    label: int
    info: int = 0


def label_bits(label: int, bps: int) -> tuple[int, ...]:
    return tuple((label >> t) & 1 for t in range(bps))


class TailBitingTrellis:
    """Immutable sectioned edge/state graph with V_0 = V_n identification."""

    def __init__(
        self,
        n: int,
        bps: int,
        state_counts: Sequence[int],
        edges: Sequence[Sequence[tuple[int, int, int] | tuple[int, int, int, int]]],
        info_bits: Sequence[int] | None = None,
    ):
        if n < 1 or bps < 1:
            raise TrellisError("need n >= 1 sections and bps >= 1 label bits")
        if len(state_counts) not in (n, n + 1):
            raise TrellisError("state_counts must cover boundaries 0..n-1 (or 0..n)")
        counts = list(state_counts[:n]) + [state_counts[0]]
        if len(state_counts) == n + 1 and state_counts[n] != state_counts[0]:
            raise TrellisError("boundary n must alias boundary 0 (V_0 = V_n)")
        if len(edges) != n:
            raise TrellisError(f"expected {n} edge sections, got {len(edges)}")

        self.n = n
        self.bps = bps
        self.state_counts = counts
        self.info_bits = list(info_bits) if info_bits is not None else [0] * n
        self.edges_from: list[np.ndarray] = []
        self.edges_to: list[np.ndarray] = []
        self.edge_labels: list[np.ndarray] = []
        self.edge_info: list[np.ndarray] = []
        for k, sec in enumerate(edges):
            rows = [(e[0], e[1], e[2], e[3] if len(e) > 3 else 0) for e in sec]
            arr = np.asarray(rows, dtype=np.int64).reshape(len(rows), 4)
            if len(rows) == 0:
                raise TrellisError(f"section {k} has no edges")
            if arr[:, 0].min() < 0 or arr[:, 0].max() >= counts[k]:
                raise TrellisError(f"section {k}: tail state out of range")
            if arr[:, 1].min() < 0 or arr[:, 1].max() >= counts[k + 1]:
                raise TrellisError(f"section {k}: head state out of range")
            if arr[:, 2].min() < 0 or arr[:, 2].max() >= (1 << bps):
                raise TrellisError(f"section {k}: label out of range")
            self.edges_from.append(arr[:, 0].astype(np.int32))
            self.edges_to.append(arr[:, 1].astype(np.int32))
            self.edge_labels.append(arr[:, 2].astype(np.int32))
            self.edge_info.append(arr[:, 3].astype(np.int32))
        self._membership: Membership | None = None

    @property
    def num_states(self) -> int:
        """Distinct states, counting the aliased boundary once."""
        return sum(self.state_counts[:-1])

    @property
    def num_edges(self) -> int:
        return sum(len(f) for f in self.edges_from)

    @property
    def num_positions(self) -> int:
        return self.n * self.bps

    @property
    def start_states(self) -> range:
        return range(self.state_counts[0])

    @property
    def num_subtrellises(self) -> int:
        return self.state_counts[0]

    def edges(self, k: int) -> Iterator[Edge]:
        for f, t, l, i in zip(
            self.edges_from[k], self.edges_to[k], self.edge_labels[k], self.edge_info[k]
        ):
            yield Edge(int(f), int(t), int(l), int(i))

    def dump_edges(self) -> str:
        """Debug dump, one line per edge: ``k from to label`` (label as bits)."""
        lines = []
        for k in range(self.n):
            for e in self.edges(k):
                bits = "".join(str(b) for b in label_bits(e.label, self.bps))
                lines.append(f"{k} {e.tail} {e.head} {bits}")
        return "\n".join(lines) + "\n"

    def membership(self) -> "Membership":
        if self._membership is None:
            self._membership = compute_membership(self)
        return self._membership


# ---------------------------------------------------------------------------
# construction: tail-biting convolutional trellis
# ---------------------------------------------------------------------------

def conv_output_bits(polys: Sequence[int], m: int, state: int, u: int) -> list[int]:
    """Encoder outputs for input bit u in state ``state`` (last m inputs,
    newest in the MSB).  Polynomials use the convention that the MSB of the
    (m+1)-bit word taps the current input."""
    reg = (u << m) | state
    return [bin(p & reg).count("1") & 1 for p in polys]


def conv_next_state(m: int, state: int, u: int) -> int:
    return (u << (m - 1)) | (state >> 1) if m > 1 else u


def build_conv_tbt(gen_polys: Sequence[int], memory: int, circle_length: int) -> TailBitingTrellis:
    """Tail-biting trellis for a rate-1/len(gen_polys) feedforward encoder.

    ``gen_polys`` are integers (write them in octal, e.g. ``0o133``); the MSB
    of the (memory+1)-bit pattern taps the current input bit.  Every boundary
    has 2**memory states; the edge for input u leaves state s toward
    (u concatenated with the top memory-1 bits of s).
    """
    m, L = int(memory), int(circle_length)
    if m < 1:
        raise TrellisError("memory must be >= 1")
    if L <= m:
        raise TrellisError("circle length must exceed the encoder memory")
    for p in gen_polys:
        if p <= 0 or p >= (1 << (m + 1)):
            raise TrellisError(f"polynomial {p:#o} does not fit memory {m}")
    bps = len(gen_polys)
    ns = 1 << m
    section = []
    for s in range(ns):
        for u in (0, 1):
            out = conv_output_bits(gen_polys, m, s, u)
            lab = sum(b << t for t, b in enumerate(out))
            section.append((s, conv_next_state(m, s, u), lab, u))
    counts = [ns] * (L + 1)
    return TailBitingTrellis(L, bps, counts, [section] * L, info_bits=[1] * L)


# ---------------------------------------------------------------------------
# construction: span-generator (product) trellis for block codes
# ---------------------------------------------------------------------------

@dataclass
class SpanGeneratorSpec:
    """Generator rows with circular section spans.

    Row i may be nonzero only in sections start_i .. start_i+length_i-1
    (mod n); its coefficient is chosen while traversing section start_i and
    is part of the trellis state at the length_i - 1 boundaries strictly
    inside the span.
    """

    n: int
    bps: int
    rows: np.ndarray  # (k, n*bps) uint8
    spans: list[tuple[int, int]] = field(default_factory=list)  # (start, length)

    def __post_init__(self):
        self.rows = np.asarray(self.rows, dtype=np.uint8) % 2
        if self.rows.ndim != 2 or self.rows.shape[1] != self.n * self.bps:
            raise TrellisError("rows must be a (k, n*bps) bit matrix")
        if len(self.spans) != len(self.rows):
            raise TrellisError("need one span per row")
        for r, (a, ell) in zip(self.rows, self.spans):
            if not (0 <= a < self.n) or not (1 <= ell <= self.n):
                raise TrellisError(f"bad span ({a}, length {ell})")
            covered = {(a + d) % self.n for d in range(ell)}
            secs = set(np.nonzero(r.reshape(self.n, self.bps).sum(axis=1))[0])
            if not secs <= covered:
                raise TrellisError(f"row support {sorted(secs)} escapes span [{a}, {a + ell})")

    @property
    def k(self) -> int:
        return len(self.rows)


def parse_span_spec(text: str) -> SpanGeneratorSpec:
    """Parse the line-oriented span file format.

    Header ``tbt n=<n> bps=<b>``, then one ``row <hexbits> span <a> <b>`` line
    per generator.  ``<hexbits>`` holds the n*bps row bits MSB-first (position
    0 in the most significant bit); ``#`` starts a comment.
    """
    n = bps = None
    rows, spans = [], []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"tbt\s+n=(\d+)\s+bps=(\d+)", line)
        if m:
            n, bps = int(m.group(1)), int(m.group(2))
            continue
        m = re.fullmatch(r"row\s+([0-9a-fA-F]+)\s+span\s+(\d+)\s+(\d+)", line)
        if m:
            if n is None:
                raise TrellisError("row line before tbt header")
            width = n * bps
            val = int(m.group(1), 16)
            if val >= (1 << width):
                raise TrellisError(f"row value wider than {width} bits")
            bits = [(val >> (width - 1 - i)) & 1 for i in range(width)]
            a, b = int(m.group(2)), int(m.group(3))
            if not 0 <= a < n:
                raise TrellisError(f"span start {a} out of range")
            ell = (b - a - 1) % n + 1
            rows.append(bits)
            spans.append((a, ell))
            continue
        raise TrellisError(f"unrecognized span-spec line: {raw!r}")
    if n is None:
        raise TrellisError("missing tbt header")
    if not rows:
        raise TrellisError("no generator rows")
    return SpanGeneratorSpec(n, bps, np.array(rows, dtype=np.uint8), spans)


def format_span_spec(spec: SpanGeneratorSpec) -> str:
    width = spec.n * spec.bps
    lines = [f"tbt n={spec.n} bps={spec.bps}"]
    hexw = (width + 3) // 4
    for r, (a, ell) in zip(spec.rows, spec.spans):
        val = 0
        for i, b in enumerate(r):
            val |= int(b) << (width - 1 - i)
        lines.append(f"row {val:0{hexw}x} span {a} {a + ell}")
    return "\n".join(lines) + "\n"


def load_span_spec(path) -> SpanGeneratorSpec:
    with open(path, "r", encoding="utf-8") as f:
        return parse_span_spec(f.read())


def golay_span_spec() -> SpanGeneratorSpec:
    """The bundled 16-state span matrix for the (24,12,8) extended Golay code."""
    from importlib.resources import files

    return parse_span_spec(files("tbmap.data").joinpath("golay_tbt.txt").read_text())


def build_product_tbt(spec: SpanGeneratorSpec) -> TailBitingTrellis:
    """Product trellis of the elementary span trellises of ``spec.rows``.

    Boundary-k states are the coefficient assignments to rows whose span
    strictly contains boundary k (packed little-endian in row order).  Edges
    in section k choose a fresh coefficient for every row starting at k; the
    label is the coefficient-weighted sum of the rows' section-k bits.
    """
    n, bps = spec.n, spec.bps
    nrows = spec.k

    def active_at(b: int) -> list[int]:
        out = []
        for i, (a, ell) in enumerate(spec.spans):
            if (b - a) % n in range(1, ell):
                out.append(i)
        return out

    def covering(k: int) -> list[int]:
        return [i for i, (a, ell) in enumerate(spec.spans) if (k - a) % n < ell]

    def starting(k: int) -> list[int]:
        return [i for i, (a, _ell) in enumerate(spec.spans) if a == k]

    active = [active_at(b) for b in range(n)]
    if max(len(a) for a in active) > 30:
        raise TrellisError("state space 2^active too large")
    row_secs = spec.rows.reshape(nrows, n, bps)

    sections = []
    info_counts = []
    for k in range(n):
        act_prev, act_next = active[k], active[(k + 1) % n]
        starts = starting(k)
        cover = covering(k)
        info_counts.append(len(starts))
        sec = []
        for s_id in range(1 << len(act_prev)):
            coeff = {r: (s_id >> pos) & 1 for pos, r in enumerate(act_prev)}
            for fresh in range(1 << len(starts)):
                cf = dict(coeff)
                for pos, r in enumerate(starts):
                    cf[r] = (fresh >> pos) & 1
                lab_bits = np.zeros(bps, dtype=np.uint8)
                for r in cover:
                    if cf.get(r, 0):
                        lab_bits ^= row_secs[r, k]
                lab = sum(int(b) << t for t, b in enumerate(lab_bits))
                head = 0
                for pos, r in enumerate(act_next):
                    head |= cf[r] << pos
                sec.append((s_id, head, lab, fresh))
        sections.append(sec)
    counts = [1 << len(active[b]) for b in range(n)]
    return TailBitingTrellis(n, bps, counts, sections, info_bits=info_counts)


# ---------------------------------------------------------------------------
# subtrellis membership
# ---------------------------------------------------------------------------

class Membership:
    """Per-node and per-edge bitsets over subtrellis ids.

    Node u at boundary k carries bit j iff u is reachable from start state j
    and the final state j is reachable from u; an edge carries bit j iff both
    endpoints do along a consistent direction.  Member iteration arrays for
    subtrellis j are gathered lazily and cached.
    """

    def __init__(self, trellis: TailBitingTrellis):
        t = trellis
        nsub = t.num_subtrellises
        if nsub > MAX_SUBTRELLISES:
            raise TrellisError(f"more than {MAX_SUBTRELLISES} subtrellises")
        self.trellis = t
        start = np.zeros(t.state_counts[0], dtype=np.uint64)
        start |= np.uint64(1) << np.arange(t.state_counts[0], dtype=np.uint64)

        fwd = [np.zeros(c, dtype=np.uint64) for c in t.state_counts]
        fwd[0] = start.copy()
        for k in range(t.n):
            np.bitwise_or.at(fwd[k + 1], t.edges_to[k], fwd[k][t.edges_from[k]])
        bwd = [np.zeros(c, dtype=np.uint64) for c in t.state_counts]
        bwd[t.n] = start.copy()
        for k in range(t.n - 1, -1, -1):
            np.bitwise_or.at(bwd[k], t.edges_from[k], bwd[k + 1][t.edges_to[k]])

        self.node_masks = [fwd[k] & bwd[k] for k in range(t.n + 1)]
        self.edge_masks = [
            fwd[k][t.edges_from[k]] & bwd[k + 1][t.edges_to[k]] for k in range(t.n)
        ]
        self._iter_cache: dict[int, dict] = {}

    def arrays_for(self, j: int) -> dict:
        """Gathered member-edge arrays for subtrellis j, keyed per section."""
        got = self._iter_cache.get(j)
        if got is not None:
            return got
        t = self.trellis
        bit = np.uint64(1) << np.uint64(j)
        edges, tails, heads, labels = [], [], [], []
        for k in range(t.n):
            sel = (self.edge_masks[k] & bit) != 0
            idx = np.nonzero(sel)[0].astype(np.int32)
            if len(idx) == len(sel):
                idx = slice(None)  # whole section; skip the gather
                tails.append(t.edges_from[k])
                heads.append(t.edges_to[k])
            else:
                tails.append(t.edges_from[k][idx])
                heads.append(t.edges_to[k][idx])
            edges.append(idx)
        nodes = [np.nonzero((self.node_masks[k] & bit) != 0)[0] for k in range(t.n + 1)]
        got = {"edges": edges, "tails": tails, "heads": heads, "nodes": nodes}
        self._iter_cache[j] = got
        return got

    def member_edge_count(self, j: int) -> int:
        bit = np.uint64(1) << np.uint64(j)
        return int(sum(int(((m & bit) != 0).sum()) for m in self.edge_masks))


def compute_membership(t: TailBitingTrellis) -> Membership:
    return Membership(t)


@dataclass
class SubtrellisStats:
    state_count: int
    edge_count: int
    nodes_per_boundary: list[np.ndarray]


def subtrellis_stats(t: TailBitingTrellis, j: int) -> SubtrellisStats:
    """State/edge counts for subtrellis j (V_0 = V_n counted once)."""
    if not 0 <= j < t.num_subtrellises:
        raise TrellisError(f"no subtrellis {j}")
    memb = t.membership()
    arrs = memb.arrays_for(j)
    states = sum(len(arrs["nodes"][k]) for k in range(t.n))
    return SubtrellisStats(states, memb.member_edge_count(j), arrs["nodes"])


# ---------------------------------------------------------------------------
# desk-scale enumeration (tests and oracles)
# ---------------------------------------------------------------------------

def enumerate_tb_paths(t: TailBitingTrellis, max_paths: int = 1 << 20):
    """Yield (start_state, label_word_bits) for every tail-biting path.

    Intended for desk-scale trellises; raises once more than ``max_paths``
    paths would be produced.
    """
    adj: list[dict[int, list[tuple[int, int]]]] = []
    for k in range(t.n):
        d: dict[int, list[tuple[int, int]]] = {}
        for f, to, lab in zip(t.edges_from[k], t.edges_to[k], t.edge_labels[k]):
            d.setdefault(int(f), []).append((int(to), int(lab)))
        adj.append(d)
    count = 0
    for j in t.start_states:
        frontier: list[tuple[int, list[int]]] = [(j, [])]
        for k in range(t.n):
            nxt = []
            for state, labs in frontier:
                for to, lab in adj[k].get(state, ()):
                    nxt.append((to, labs + [lab]))
            frontier = nxt
            if len(frontier) > 4 * max_paths:
                raise TrellisError("too many partial paths to enumerate")
        for state, labs in frontier:
            if state == j:
                count += 1
                if count > max_paths:
                    raise TrellisError("too many tail-biting paths to enumerate")
                bits = np.zeros(t.num_positions, dtype=np.uint8)
                for k, lab in enumerate(labs):
                    for tt in range(t.bps):
                        bits[k * t.bps + tt] = (lab >> tt) & 1
                yield j, bits


def tb_codebook(t: TailBitingTrellis, max_paths: int = 1 << 20):
    """All tail-biting path labels as a bit matrix plus start-state index."""
    starts, words = [], []
    for j, bits in enumerate_tb_paths(t, max_paths):
        starts.append(j)
        words.append(bits)
    return np.array(words, dtype=np.uint8), np.array(starts, dtype=np.int32)
