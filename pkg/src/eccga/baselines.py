"""Comparison decoders: Chase-2, a generator-domain compact GA, and MLD.

Chase-2 perturbs the t least reliable positions with all 2^t test
patterns and hard-decodes each with a bounded-distance syndrome-table
decoder.  The generator-domain GA (after Shakeel's decoder) runs the
same compact-GA engine as the dual-domain decoder but re-encodes
candidate information words through G', so its evaluation cost scales
with k*n instead of k*(n-k).  MLD enumerates all 2^k codewords and is
the optimality oracle for small codes.
"""

from __future__ import annotations

from itertools import combinations
from math import comb
from typing import Sequence

import numpy as np

from .cga import ReencodingEvaluator, run_cga_batch
from .channel import ReceivedWord
from .cgad import CgadParams, DecoderResult, _shortcut_result
from .codes import LinearCode, syndrome
from .errors import UnsupportedSizeError
from .gf2 import invert_permutation, reduce_to_systematic

_TABLE_PATTERN_LIMIT = 10**6
_MLD_DIM_LIMIT = 24


def _analog_discrepancy(candidate, received: ReceivedWord) -> float:
    """Total reliability where the candidate disagrees with the hard decision."""
    disagree = candidate != received.hard_bits
    return float(received.reliabilities[disagree].sum())


# ---------------------------------------------------------------------------
# Bounded-distance decoding via a syndrome table


class SyndromeTable:
    """Coset-leader lookup for all error patterns of weight <= t.

    Keys are packed syndrome bytes; values are the error positions.
    With true distance >= 2t + 1 every stored syndrome is distinct.
    """

    def __init__(self, code: LinearCode, entries: dict[bytes, tuple[int, ...]]):
        self.code = code
        self.entries = entries

    def __len__(self) -> int:
        return len(self.entries)

    def lookup(self, syn: np.ndarray) -> tuple[int, ...] | None:
        key = np.packbits(syn).tobytes()
        return self.entries.get(key)


def build_syndrome_table(code: LinearCode) -> SyndromeTable:
    """Enumerate error patterns of weight 0..t keyed by syndrome.

    Raises:
        UnsupportedSizeError: more than 10^6 patterns would be needed.
    """
    total = sum(comb(code.n, w) for w in range(code.t + 1))
    if total > _TABLE_PATTERN_LIMIT:
        raise UnsupportedSizeError(
            f"syndrome table for {code.name} needs {total} patterns (limit {_TABLE_PATTERN_LIMIT})"
        )
    columns = code.parity_check.T  # row j = syndrome of a single error at j
    entries: dict[bytes, tuple[int, ...]] = {}
    zero = np.zeros(code.n - code.k, dtype=np.uint8)
    entries[np.packbits(zero).tobytes()] = ()
    for w in range(1, code.t + 1):
        combos = np.array(list(combinations(range(code.n), w)), dtype=np.intp)
        syns = columns[combos[:, 0]]
        for j in range(1, w):
            syns = syns ^ columns[combos[:, j]]
        packed = np.packbits(syns, axis=1)
        for row, positions in zip(packed, combos):
            key = row.tobytes()
            # lower weights were inserted first; keep the lightest pattern
            if key not in entries:
                entries[key] = tuple(int(x) for x in positions)
    return SyndromeTable(code, entries)


def bd_decode(table: SyndromeTable, word) -> np.ndarray | None:
    """Correct up to t errors, or None when the syndrome is not in the table."""
    word = np.asarray(word, dtype=np.uint8)
    syn = syndrome(table.code, word)
    positions = table.lookup(syn)
    if positions is None:
        return None
    out = word.copy()
    for j in positions:
        out[j] ^= 1
    return out


def chase2_decode(code: LinearCode, table: SyndromeTable, received: ReceivedWord) -> DecoderResult:
    """Chase-2: perturb the t least reliable positions, keep the best candidate.

    All 2^t test patterns over those positions are tried; successful
    bounded-distance decodes compete on analog discrepancy.  When no
    pattern decodes, the raw hard decision is returned flagged
    unconverged (callers score it as a frame error if it is wrong).
    """
    if table.code is not code:
        raise ValueError("syndrome table was built for a different code")
    hard = received.hard_bits
    t = code.t
    weak = np.argsort(received.reliabilities, kind="stable")[:t]
    best: np.ndarray | None = None
    best_disc = np.inf
    patterns_tried = 0
    for mask in range(1 << t):
        trial = hard.copy()
        for j in range(t):
            if (mask >> j) & 1:
                trial[weak[j]] ^= 1
        patterns_tried += 1
        cand = bd_decode(table, trial)
        if cand is None:
            continue
        disc = _analog_discrepancy(cand, received)
        if disc < best_disc:
            best, best_disc = cand, disc
    shortcut = not syndrome(code, hard).any()
    if best is None:
        result = DecoderResult(
            codeword=hard.copy(),
            generations=0,
            converged=False,
            syndrome_shortcut=shortcut,
            fitness=0.0,
            decoder_id="chase2",
        )
    else:
        result = DecoderResult(
            codeword=best,
            generations=0,
            converged=True,
            syndrome_shortcut=shortcut,
            fitness=best_disc,
            decoder_id="chase2",
        )
    result.patterns_tried = patterns_tried  # type: ignore[attr-defined]
    return result


# ---------------------------------------------------------------------------
# Generator-domain compact GA (Shakeel-style)


def _prepare_generator_context(code: LinearCode, received: ReceivedWord):
    """Systematize G on the k most reliable independent positions.

    Returns (g_prime, permutation, inverse), with g_prime = [I_k | P'] in
    permuted column order and the pivot (most reliable independent)
    columns first.
    """
    priority = np.argsort(-received.reliabilities, kind="stable")
    form = reduce_to_systematic(code.generator, priority)
    pivot_set = set(int(c) for c in form.pivot_columns)
    tail = [int(c) for c in priority if int(c) not in pivot_set]
    perm = np.concatenate([form.pivot_columns, np.array(tail, dtype=np.intp)])
    g_prime = np.ascontiguousarray(form.h_prime[:, perm])
    return g_prime, perm, invert_permutation(perm)


def shakeel_decode_batch(
    code: LinearCode,
    received: Sequence[ReceivedWord],
    params: CgadParams,
    streams: Sequence[np.random.Generator],
) -> list[DecoderResult]:
    """Batched generator-domain GA decoding (see :func:`shakeel_decode`)."""
    if len(streams) != len(received):
        raise ValueError("need one random stream per received word")
    results: list[DecoderResult | None] = [None] * len(received)
    items = []
    for i, rw in enumerate(received):
        if not syndrome(code, rw.hard_bits).any():
            results[i] = _shortcut_result(code, rw, "shakeel")
        else:
            g_prime, perm, inv = _prepare_generator_context(code, rw)
            items.append((i, rw, g_prime, perm, inv))

    if items:
        gps = np.stack([g for _, _, g, _, _ in items])
        hard = np.stack([rw.hard_bits[perm] for _, rw, _, perm, _ in items])
        rel = np.stack([rw.reliabilities[perm] for _, rw, _, perm, _ in items])
        evaluator = ReencodingEvaluator(gps, hard, rel)
        p0 = np.stack([_shakeel_init(code, rw, perm, params) for _, rw, _, perm, _ in items])
        outcomes = run_cga_batch(
            evaluator,
            p0,
            step=params.step,
            max_generations=params.generation_cap,
            leave_one=params.variant == "ocgad",
            streams=[streams[i] for i, *_ in items],
            record_trace=params.record_trace,
        )
        cost = code.k * code.n + code.n
        for (i, rw, g_prime, perm, inv), outcome in zip(items, outcomes):
            cand = (outcome.bits @ g_prime) & 1
            codeword = cand[inv]
            results[i] = DecoderResult(
                codeword=codeword,
                generations=outcome.generations,
                converged=outcome.converged,
                syndrome_shortcut=False,
                fitness=_analog_discrepancy(codeword, rw),
                hamming_trace=outcome.trace,
                bit_ops=outcome.generations * 2 * cost,
                decoder_id="shakeel",
            )
    return results  # type: ignore[return-value]


def _shakeel_init(code: LinearCode, received: ReceivedWord, perm, params: CgadParams) -> np.ndarray:
    # individuals are length-k information vectors over the pivot positions
    if params.init_mode == "soft":
        sigma = received.noise_sigma
        if sigma is not None and np.isfinite(sigma) and sigma > 0.0:
            # posterior probability that the transmitted bit is 1
            r = received.samples[perm[: code.k]]
            p = 1.0 / (1.0 + np.exp(-2.0 * r / (sigma * sigma)))
            return np.clip(p, params.soft_clamp_delta, 1.0 - params.soft_clamp_delta)
    return np.full(code.k, 0.5)


def shakeel_decode(
    code: LinearCode,
    received: ReceivedWord,
    params: CgadParams | None = None,
    rng: np.random.Generator | None = None,
) -> DecoderResult:
    """Generator-domain compact-GA decoder.

    Individuals are candidate information vectors re-encoded through
    G' = [I_k | P'] built on the k most reliable independent positions;
    fitness is the reliability-weighted disagreement with the hard
    decision.  Shares the engine, stopping rules and step-size semantics
    of the dual-domain decoder.
    """
    if params is None:
        params = CgadParams()
    if rng is None:
        rng = np.random.default_rng()
    return shakeel_decode_batch(code, [received], params, [rng])[0]


# ---------------------------------------------------------------------------
# Brute-force maximum likelihood


def mld_decode(code: LinearCode, received: ReceivedWord) -> DecoderResult:
    """Exhaustive correlation-maximizing decoder for k <= 24.

    Information words are enumerated as integers with bit j of the
    integer mapping to information position j; ties in correlation keep
    the lowest enumeration index.
    """
    if code.k > _MLD_DIM_LIMIT:
        raise UnsupportedSizeError(f"MLD needs k <= {_MLD_DIM_LIMIT}, got k={code.k}")
    if received.n != code.n:
        raise ValueError("received word length mismatch")
    gen = code.generator.astype(np.int64)
    r = received.samples
    offset = float(r.sum())
    best_corr = -np.inf
    best_info: int = 0
    chunk = 1 << 14
    for lo in range(0, 1 << code.k, chunk):
        hi = min(lo + chunk, 1 << code.k)
        ints = np.arange(lo, hi, dtype=np.int64)
        info = ((ints[:, None] >> np.arange(code.k)) & 1).astype(np.uint8)
        words = (info.astype(np.int64) @ gen) & 1
        corr = 2.0 * (words @ r) - offset
        idx = int(np.argmax(corr))
        if corr[idx] > best_corr:
            best_corr = float(corr[idx])
            best_info = lo + idx
    info = np.array([(best_info >> j) & 1 for j in range(code.k)], dtype=np.uint8)
    codeword = (info @ code.generator) & 1
    return DecoderResult(
        codeword=codeword,
        generations=0,
        converged=True,
        syndrome_shortcut=not syndrome(code, received.hard_bits).any(),
        fitness=_analog_discrepancy(codeword, received),
        decoder_id="mld",
    )
