"""Tour of the two bundled tail-biting trellises.

Builds the 64-state convolutional trellis and the 16-state Golay trellis,
prints their structural numbers, and enumerates a toy trellis by brute force.
"""

import numpy as np

import tbmap as tb

# -- the rate-1/2 memory-6 convolutional code on a 48-section circle --------
conv = tb.build_conv_tbt((0o133, 0o171), 6, 48)
print("convolutional trellis")
print("  sections:", conv.n, " label bits/section:", conv.bps)
print("  states:", conv.num_states, " edges:", conv.num_edges)
print("  subtrellises (= start states):", conv.num_subtrellises)

s = tb.subtrellis_stats(conv, 0)
print("  one subtrellis:", s.state_count, "states,", s.edge_count, "edges")
sizes = [len(nodes) for nodes in s.nodes_per_boundary[:10]]
print("  subtrellis boundary sizes (first 10):", sizes)

# -- the (24,12) extended Golay code on a 12-section circle ------------------
spec = tb.golay_span_spec()
golay = tb.build_product_tbt(spec)
print("\nGolay trellis from the bundled span matrix")
print("  states per boundary:", set(golay.state_counts))
print("  edges per section:", {len(f) for f in golay.edges_from})

words, starts = tb.tb_codebook(golay)
hist = np.bincount(words.sum(axis=1), minlength=25)
print("  codewords:", len(words), " weight histogram at 0/8/12/16/24:",
      hist[[0, 8, 12, 16, 24]])
print("  codewords per subtrellis:", np.bincount(starts))

# -- a desk-scale toy: every tail-biting path visible ------------------------
sec = [(0, 0, 0b00), (0, 1, 0b01), (1, 0, 0b10), (1, 1, 0b11)]
toy = tb.TailBitingTrellis(3, 2, [2, 2, 2], [sec] * 3)
print("\ntoy trellis edge dump (k tail head label):")
print(toy.dump_edges())
print("tail-biting paths:")
for j, bits in tb.enumerate_tb_paths(toy):
    print(f"  start {j}: {''.join(map(str, bits))}")
