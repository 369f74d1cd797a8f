#!/usr/bin/env python3
"""Derive the bundled 16-state tail-biting span matrix for the Golay code.

The target structure: 12 generator rows for the (24,12,8) extended Golay
code, one starting at each section boundary, each supported on 5 circularly
consecutive 2-bit sections.  With exactly one generator active-from each
boundary the product trellis has 4 stored coefficients everywhere, i.e. 16
states at every boundary and 32 edges per section.

Every row must then be a weight-8 codeword (weights are 0/8/12/16/24 and a
5-section window holds 10 bits), and rows whose windows are disjoint
(circular window distance 5, 6, or 7) must have disjoint supports.  The
search below:

  1. builds a standard Golay copy from a pure double-circulant generator
     (found by scanning all 4096 circulant first rows for the self-dual one
     with the Golay weight enumerator),
  2. backtracks over octads, assigning one to each of the 12 windows, with
     pruning by pairwise disjointness, per-point window-fit (a point's
     windows must fit 5 consecutive indices), a capacity-2 point-to-section
     matching, and GF(2) rank,
  3. reads the section layout off the solution and emits the span file.

The search is deterministic, so rerunning reproduces src/tbmap/data/
golay_tbt.txt exactly.
"""

from itertools import product

import numpy as np


def circulant(c):
    return np.array([np.roll(c, i) for i in range(12)], dtype=np.uint8)


def codewords(G):
    msgs = np.array(list(product([0, 1], repeat=G.shape[0])), dtype=np.uint8)
    return (msgs @ G) % 2


def weight_hist(cw):
    return np.bincount(cw.sum(axis=1), minlength=25)


def standard_golay():
    I12 = np.eye(12, dtype=np.uint8)
    for c_int in range(4096):
        c = np.array([(c_int >> i) & 1 for i in range(12)], dtype=np.uint8)
        if c.sum() < 7:  # generator rows need weight >= 8
            continue
        C = circulant(c)
        if not np.array_equal((C @ C.T) % 2, I12):  # self-dual filter
            continue
        G = np.hstack([I12, C])
        if weight_hist(codewords(G))[8] == 759:
            return G
    raise RuntimeError("no double-circulant Golay generator found")


WINDOW = 5
NSEC = 12


def window_fits(mask):
    """Can the 12-bit window-index set fit 5 consecutive indices?"""
    for t in range(NSEC):
        win = 0
        for d in range(WINDOW):
            win |= 1 << ((t + d) % NSEC)
        if mask & ~win == 0:
            return True
    return False


def allowed_sections(mask):
    out = 0
    for s in range(NSEC):
        if all((s - t) % NSEC <= WINDOW - 1 for t in range(NSEC) if (mask >> t) & 1):
            out |= 1 << s
    return out


def capacity_ok(point_masks):
    """Greedy augmenting matching: 24 points into 12 sections of capacity 2."""
    slots = [[] for _ in range(NSEC)]

    def place(p, seen):
        for s in range(NSEC):
            if not (point_masks[p] >> s) & 1 or s in seen:
                continue
            seen.add(s)
            if len(slots[s]) < 2:
                slots[s].append(p)
                return True
            for q in list(slots[s]):
                if place(q, seen):
                    slots[s].remove(q)
                    slots[s].append(p)
                    return True
        return False

    for p in range(24):
        if point_masks[p] == 0:
            return None
        if not place(p, set()):
            return None
    return slots


def search(octads):
    fit_cache = {}
    sect_cache = {}

    def fits(mask):
        if mask not in fit_cache:
            fit_cache[mask] = window_fits(mask)
        return fit_cache[mask]

    def sects(mask):
        if mask not in sect_cache:
            sect_cache[mask] = allowed_sections(mask)
        return sect_cache[mask]

    levels = [0, 5, 6, 7, 1, 8, 2, 9, 3, 10, 4, 11]
    constraints = {
        t: [u for u in levels[:i] if (t - u) % NSEC in (5, 6, 7)]
        for i, t in enumerate(levels)
    }
    chosen = {}
    solution = {}

    def reduce(v, pivots):
        for p in pivots:
            if (v ^ p) < v:
                v ^= p
        return v

    def bt(i, jmask, pivots):
        if i == len(levels):
            solution.update(chosen)
            return True
        t = levels[i]
        for o in octads:
            if any(o & chosen[u] for u in constraints[t]):
                continue
            if reduce(o, pivots) == 0:
                continue
            nj = list(jmask)
            ok = True
            for p in range(24):
                if (o >> (23 - p)) & 1:
                    m = nj[p] | (1 << t)
                    if not fits(m):
                        ok = False
                        break
                    nj[p] = m
            if not ok:
                continue
            if capacity_ok([sects(m) if m else (1 << NSEC) - 1 for m in nj]) is None:
                continue
            chosen[t] = o
            if bt(i + 1, nj, sorted(pivots + [reduce(o, pivots)], reverse=True)):
                return True
            del chosen[t]
        return False

    if not bt(0, [0] * 24, []):
        raise RuntimeError("no octad system found")
    return solution


def main():
    G = standard_golay()
    cw = codewords(G)
    octads = [int("".join(map(str, w)), 2) for w in cw[cw.sum(axis=1) == 8]]
    sol = search(octads)

    jmask = [0] * 24
    for t, o in sol.items():
        for p in range(24):
            if (o >> (23 - p)) & 1:
                jmask[p] |= 1 << t
    slots = capacity_ok(
        [allowed_sections(m) if m else (1 << NSEC) - 1 for m in jmask]
    )
    perm = [p for s in range(NSEC) for p in sorted(slots[s])]

    rows = []
    for t in range(NSEC):
        bits = [(sol[t] >> (23 - p)) & 1 for p in perm]
        rows.append(bits)
    rows = np.array(rows, dtype=np.uint8)

    # verify: rank 12 over GF(2) and the Golay weight enumerator
    hist = weight_hist(codewords(rows))
    assert hist[8] == 759 and hist[12] == 2576 and hist[16] == 759, hist

    print("# 16-state tail-biting span trellis for the (24,12,8) extended Golay code")
    print("# rows are weight-8 codewords; row t is supported on sections t..t+4 (mod 12)")
    print("tbt n=12 bps=2")
    for t in range(NSEC):
        val = int("".join(map(str, rows[t])), 2)
        print(f"row {val:06x} span {t} {t + WINDOW}")


if __name__ == "__main__":
    main()
