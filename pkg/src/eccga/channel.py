"""BPSK modulation and the AWGN channel front end.

Noise is parameterized by Eb/N0 in dB with the code rate folded in:
sigma^2 = 1 / (2 * rate * 10^(ebn0_db / 10)) per real dimension for
unit-energy antipodal symbols.  Gaussian variates come from numpy's
Generator.normal (ziggurat algorithm); reproducible parallel simulation
uses one independent substream per transmitted block, derived from a
master seed with SeedSequence spawn keys (see :func:`substream`).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ReceivedWord:
    """Channel output with derived hard decisions and reliabilities."""

    samples: np.ndarray
    hard_bits: np.ndarray
    reliabilities: np.ndarray
    noise_sigma: float

    def __post_init__(self):
        self.samples.setflags(write=False)
        self.hard_bits.setflags(write=False)
        self.reliabilities.setflags(write=False)

    @property
    def n(self) -> int:
        return self.samples.shape[0]


def modulate_bpsk(codeword) -> np.ndarray:
    """Map bit 1 to +1.0 and bit 0 to -1.0."""
    bits = np.asarray(codeword, dtype=np.float64)
    return 2.0 * bits - 1.0


def hard_decision(samples) -> np.ndarray:
    """Per-position sign threshold; a sample of exactly 0 maps to bit 1."""
    samples = np.asarray(samples, dtype=np.float64)
    return (samples >= 0.0).astype(np.uint8)


def received_from_samples(samples, noise_sigma: float) -> ReceivedWord:
    samples = np.ascontiguousarray(samples, dtype=np.float64)
    return ReceivedWord(
        samples=samples,
        hard_bits=hard_decision(samples),
        reliabilities=np.abs(samples),
        noise_sigma=float(noise_sigma),
    )


def awgn_sigma(ebn0_db: float, rate: float) -> float:
    """Per-dimension noise standard deviation for unit-energy BPSK."""
    if not 0.0 < rate <= 1.0:
        raise ValueError(f"code rate must be in (0, 1], got {rate}")
    return float(1.0 / np.sqrt(2.0 * rate * 10.0 ** (ebn0_db / 10.0)))


def transmit_awgn(symbols, ebn0_db: float, rate: float, rng: np.random.Generator) -> ReceivedWord:
    """Add white Gaussian noise at the given Eb/N0 and wrap the result.

    Args:
        symbols: unit-energy antipodal symbols (+/-1).
        ebn0_db: energy per information bit over noise density, in dB.
        rate: code rate k/n, folded into the noise variance.
        rng: random stream owned by the caller.
    """
    symbols = np.asarray(symbols, dtype=np.float64)
    sigma = awgn_sigma(ebn0_db, rate)
    samples = symbols + rng.normal(0.0, sigma, size=symbols.shape[0])
    return received_from_samples(samples, sigma)


def substream(seed: int, index: int) -> np.random.Generator:
    """Independent, reproducible random stream number *index* under *seed*.

    Streams for different (seed, index) pairs never collide, and the
    mapping is stable: it only depends on numpy's documented
    SeedSequence construction.
    """
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(index,)))
