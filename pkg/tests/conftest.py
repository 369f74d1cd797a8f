import numpy as np
import pytest

from tbmap import TailBitingTrellis, WeightedTrellis, make_code


def build_toy() -> TailBitingTrellis:
    """3-section, 2-state trellis with complete bipartite sections.

    Labels are 2 bits chosen so each (tail, head) pair is distinct, which
    keeps the path -> label map one-to-one.
    """
    sec = [(0, 0, 0b00), (0, 1, 0b01), (1, 0, 0b10), (1, 1, 0b11)]
    return TailBitingTrellis(3, 2, [2, 2, 2], [sec] * 3)


def unit_weights(t: TailBitingTrellis) -> WeightedTrellis:
    """w = 1 on every edge, marked as already scaled (identity scale)."""
    w = [np.ones(len(f)) for f in t.edges_from]
    return WeightedTrellis(t, w, scale=np.ones(t.n))


@pytest.fixture(scope="session")
def toy():
    return build_toy()


@pytest.fixture(scope="session")
def conv_code():
    return make_code("conv")


@pytest.fixture(scope="session")
def golay_code():
    return make_code("golay")


@pytest.fixture(scope="session")
def small_conv():
    from tbmap import build_conv_tbt

    return build_conv_tbt((0o7, 0o5), 2, 4)
