import numpy as np
import pytest

from eccga.channel import modulate_bpsk, substream, transmit_awgn
from eccga.codes import encode


def make_block(code, seed: int, index: int, ebn0_db: float):
    """One simulated block: (transmitted codeword, received word, its stream).

    Draws information bits, then noise, from the block's substream, in the
    same order as the simulator, so the stream is positioned for decoding.
    """
    rng = substream(seed, index)
    info = rng.integers(0, 2, size=code.k, dtype=np.uint8)
    cw = encode(code, info)
    rw = transmit_awgn(modulate_bpsk(cw), ebn0_db, code.k / code.n, rng)
    return cw, rw, rng


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
