"""Monte Carlo BER/FER simulation with reproducible per-block substreams.

Each transmitted block owns random stream ``substream(seed, block_index)``
used for its information bits, its channel noise, and its decoder, in
that order.  Block results therefore never depend on execution order,
batching or thread count; a point stops at the first block index where
the stopping rule is satisfied, so aggregated results are bit-identical
for any thread count (decode wall time aside).

A point stops when both minima are met (at least ``min_blocks`` blocks
and at least ``min_bit_errors`` erroneous bits) or at ``max_blocks``,
whichever comes first; the cap is flagged on the result.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from math import comb
from typing import Callable, Sequence

import numpy as np

from .baselines import build_syndrome_table, chase2_decode, mld_decode, shakeel_decode_batch
from .cgad import CgadParams, DecoderResult, decode_batch
from .channel import modulate_bpsk, substream, transmit_awgn
from .codes import LinearCode, encode, resolve_code
from .errors import ConfigError

DECODER_IDS = ("cgad", "ocgad", "chase2", "shakeel", "mld")

_WAVE_SIZE = 128
_MLD_DIM_LIMIT = 24
_TABLE_PATTERN_LIMIT = 10**6


@dataclass(frozen=True)
class StopRules:
    """Stopping rule for one simulated point (conjunction of both minima)."""

    min_blocks: int = 1000
    min_bit_errors: int = 200
    max_blocks: int = 10_000_000

    def satisfied(self, blocks: int, bit_errors: int) -> bool:
        return blocks >= self.min_blocks and bit_errors >= self.min_bit_errors

    def should_stop(self, blocks: int, bit_errors: int) -> bool:
        return self.satisfied(blocks, bit_errors) or blocks >= self.max_blocks


@dataclass
class DecoderSpec:
    """Decoder selection plus GA parameters where applicable."""

    id: str
    params: CgadParams | None = None

    def __post_init__(self):
        if self.id not in DECODER_IDS:
            raise ConfigError(f"unknown decoder id {self.id!r}; valid ids: {', '.join(DECODER_IDS)}")

    def effective_params(self) -> CgadParams:
        params = self.params if self.params is not None else CgadParams()
        if self.id in ("cgad", "ocgad"):
            return replace(params, variant=self.id)
        return params


@dataclass
class BerPoint:
    """Aggregated statistics for one (code, decoder, Eb/N0) point.

    ``avg_generations`` averages over non-shortcut decodes only (0.0
    when every block took the syndrome shortcut); ``avg_decode_seconds``
    averages decode wall time over all counted blocks.
    """

    ebn0_db: float
    blocks: int
    bit_errors: int
    frame_errors: int
    ber: float
    fer: float
    avg_generations: float
    avg_decode_seconds: float
    decoder_id: str
    code_name: str
    seed: int
    hit_max_blocks: bool
    nonshortcut_blocks: int = 0
    block_errors: np.ndarray | None = field(default=None, repr=False)
    block_generations: np.ndarray | None = field(default=None, repr=False)
    block_shortcut: np.ndarray | None = field(default=None, repr=False)


def check_compatible(code: LinearCode, spec: DecoderSpec) -> None:
    """Reject infeasible (decoder, code) pairs before any simulation."""
    if spec.id == "mld" and code.k > _MLD_DIM_LIMIT:
        raise ConfigError(f"mld needs k <= {_MLD_DIM_LIMIT}; {code.name} has k={code.k}")
    if spec.id == "chase2":
        patterns = sum(comb(code.n, w) for w in range(code.t + 1))
        if patterns > _TABLE_PATTERN_LIMIT:
            raise ConfigError(
                f"chase2 syndrome table for {code.name} needs {patterns} patterns "
                f"(limit {_TABLE_PATTERN_LIMIT})"
            )


def _make_wave_decoder(
    code: LinearCode, spec: DecoderSpec, threads: int
) -> Callable[[list], list[DecoderResult]]:
    """Build a function decoding a wave of (received, rng) pairs in order."""
    if spec.id in ("cgad", "ocgad"):
        params = spec.effective_params()

        def ga_wave(items):
            rws = [rw for rw, _ in items]
            rngs = [rng for _, rng in items]
            if threads > 1 and len(items) > 1:
                slices = _split_slices(len(items), threads)
                with ThreadPoolExecutor(max_workers=threads) as pool:
                    parts = pool.map(
                        lambda sl: decode_batch(code, rws[sl], params, rngs[sl]), slices
                    )
                    return [r for part in parts for r in part]
            return decode_batch(code, rws, params, rngs)

        return ga_wave

    if spec.id == "shakeel":
        params = spec.effective_params()

        def shakeel_wave(items):
            rws = [rw for rw, _ in items]
            rngs = [rng for _, rng in items]
            if threads > 1 and len(items) > 1:
                slices = _split_slices(len(items), threads)
                with ThreadPoolExecutor(max_workers=threads) as pool:
                    parts = pool.map(
                        lambda sl: shakeel_decode_batch(code, rws[sl], params, rngs[sl]), slices
                    )
                    return [r for part in parts for r in part]
            return shakeel_decode_batch(code, rws, params, rngs)

        return shakeel_wave

    if spec.id == "chase2":
        table = build_syndrome_table(code)
        return lambda items: [chase2_decode(code, table, rw) for rw, _ in items]

    if spec.id == "mld":
        return lambda items: [mld_decode(code, rw) for rw, _ in items]

    raise ConfigError(f"unknown decoder id {spec.id!r}")


def _split_slices(total: int, parts: int) -> list[slice]:
    bounds = np.linspace(0, total, min(parts, total) + 1).astype(int)
    return [slice(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]


def run_point(
    code: LinearCode,
    spec: DecoderSpec | Callable[[LinearCode, object], DecoderResult],
    ebn0_db: float,
    rules: StopRules | None = None,
    seed: int = 0,
    threads: int = 1,
    retain_blocks: bool = False,
) -> BerPoint:
    """Simulate one (code, decoder, Eb/N0) point under the stopping rule.

    Bit errors are counted over all n codeword bits against the
    transmitted codeword; a frame error is any block with at least one
    bit error.  Decode wall time is measured around the decode calls
    only (channel simulation excluded).

    ``spec`` may also be a plain callable ``(code, received) -> DecoderResult``
    (a testing hook for synthetic decoders); its id defaults to "custom".
    """
    if rules is None:
        rules = StopRules()
    if isinstance(spec, DecoderSpec):
        check_compatible(code, spec)
        wave_decode = _make_wave_decoder(code, spec, threads)
        decoder_id = spec.id
    else:
        custom = spec
        wave_decode = lambda items: [custom(code, rw) for rw, _ in items]
        decoder_id = getattr(spec, "decoder_id", "custom")
    rate = code.k / code.n

    blocks = bit_errors = frame_errors = 0
    nonshortcut = 0
    gen_sum = 0
    decode_seconds = 0.0
    b_errors: list[int] = []
    b_gens: list[int] = []
    b_short: list[bool] = []

    next_block = 0
    stopped = False
    while not stopped and not rules.should_stop(blocks, bit_errors):
        wave = min(_WAVE_SIZE, rules.max_blocks - next_block)
        if wave <= 0:
            break
        sent = []
        items = []
        for b in range(next_block, next_block + wave):
            rng = substream(seed, b)
            info = rng.integers(0, 2, size=code.k, dtype=np.uint8)
            cw = encode(code, info)
            rw = transmit_awgn(modulate_bpsk(cw), ebn0_db, rate, rng)
            sent.append(cw)
            items.append((rw, rng))
        next_block += wave

        t0 = time.perf_counter()
        results = wave_decode(items)
        decode_seconds += time.perf_counter() - t0

        for cw, res in zip(sent, results):
            errs = int(np.count_nonzero(res.codeword != cw))
            blocks += 1
            bit_errors += errs
            frame_errors += errs > 0
            if not res.syndrome_shortcut:
                nonshortcut += 1
                gen_sum += res.generations
            if retain_blocks:
                b_errors.append(errs)
                b_gens.append(res.generations)
                b_short.append(res.syndrome_shortcut)
            if rules.should_stop(blocks, bit_errors):
                stopped = True
                break

    return BerPoint(
        ebn0_db=float(ebn0_db),
        blocks=blocks,
        bit_errors=bit_errors,
        frame_errors=frame_errors,
        ber=bit_errors / (blocks * code.n) if blocks else 0.0,
        fer=frame_errors / blocks if blocks else 0.0,
        avg_generations=gen_sum / nonshortcut if nonshortcut else 0.0,
        avg_decode_seconds=decode_seconds / blocks if blocks else 0.0,
        decoder_id=decoder_id,
        code_name=code.name,
        seed=seed,
        hit_max_blocks=blocks >= rules.max_blocks and not rules.satisfied(blocks, bit_errors),
        nonshortcut_blocks=nonshortcut,
        block_errors=np.array(b_errors, dtype=np.int64) if retain_blocks else None,
        block_generations=np.array(b_gens, dtype=np.int64) if retain_blocks else None,
        block_shortcut=np.array(b_short, dtype=bool) if retain_blocks else None,
    )


@dataclass
class SweepConfig:
    """A sweep: every (code, decoder, Eb/N0) combination, in config order."""

    codes: list[str]
    decoders: list[DecoderSpec]
    ebn0_db: list[float]
    stop: StopRules = field(default_factory=StopRules)
    seed: int = 0
    threads: int = 1

    def __post_init__(self):
        if not self.codes:
            raise ConfigError("codes: need at least one code")
        if not self.decoders:
            raise ConfigError("decoders: need at least one decoder")
        # an empty ebn0 list is allowed and yields an empty sweep


def run_sweep(
    config: SweepConfig,
    on_point: Callable[[BerPoint], None] | None = None,
) -> list[BerPoint]:
    """Run every combination in the sweep, emitting points as they finish.

    All (code, decoder) pairs are validated before the first simulation;
    ``on_point`` (when given) is called with each finished point so
    callers can stream results.
    """
    codes = [resolve_code(name) for name in config.codes]
    for code in codes:
        for spec in config.decoders:
            check_compatible(code, spec)

    points: list[BerPoint] = []
    index = 0
    for code in codes:
        for spec in config.decoders:
            for ebn0 in config.ebn0_db:
                point = run_point(
                    code,
                    spec,
                    ebn0,
                    rules=config.stop,
                    seed=config.seed + index,
                    threads=config.threads,
                )
                points.append(point)
                if on_point is not None:
                    on_point(point)
                index += 1
    return points


def average_aligned_traces(traces: Sequence[Sequence[int]]) -> np.ndarray:
    """Generation-wise mean of Hamming-distance traces.

    Traces are right-padded with zeros to the longest length: once an
    instance has converged, sampling from its probability vector yields
    identical individuals, so its distance is 0 from then on.
    """
    traces = [t for t in traces if t is not None]
    if not traces:
        return np.zeros(0)
    length = max(len(t) for t in traces)
    acc = np.zeros(length)
    for t in traces:
        if len(t):
            acc[: len(t)] += np.asarray(t, dtype=np.float64)
    return acc / len(traces)
