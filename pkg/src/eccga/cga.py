"""Compact genetic algorithm engine shared by the soft decoders.

The engine evolves one probability vector per problem instance and can
run many instances in lockstep, which amortizes numpy call overhead
across a whole batch of received words.  Results are bit-identical to
running each instance alone: every instance owns its random stream and
consumes it in a fixed pattern (uniform variates are pre-drawn in
chunks of ``UNIFORM_CHUNK`` generations), and all floating-point
reductions use fixed-order summation independent of the batch layout.

One generation, per instance:
  1. sample two individuals, bit i set with probability p[i];
  2. evaluate both and pick the winner (lower objective, ties to the
     first individual);
  3. move p by +/-step where the pair disagrees, clamped to [0, 1].

An instance stops when its probability vector has converged to {0, 1}
at every position (``leave_one=False``), at all but at most one
position (``leave_one=True``), or at the generation cap, whichever
comes first.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

UNIFORM_CHUNK = 128


@dataclass
class CgaOutcome:
    """Terminal state of one engine instance."""

    bits: np.ndarray
    generations: int
    converged: bool
    trace: list[int] | None = None


class PairEvaluator:
    """Batch objective: maps sampled pairs to per-instance fitness pairs.

    Subclasses hold per-instance state stacked along axis 0 and must keep
    it aligned with the engine's compaction of finished instances.
    """

    def evaluate(self, pair_bits: np.ndarray) -> np.ndarray:
        """pair_bits: (B, 2, k) uint8 -> (B, 2) float64, lower is better."""
        raise NotImplementedError

    def compact(self, keep: np.ndarray) -> None:
        """Drop finished instances; *keep* indexes the survivors."""
        raise NotImplementedError


class ParityCompletionEvaluator(PairEvaluator):
    """Objective for dual-domain decoding through the parity-check matrix.

    An individual e (k bits) is completed to a full error pattern
    (e, s XOR A e^T); its cost is the total reliability on the pattern's
    support.  Work per evaluation is proportional to k * (n - k).
    """

    def __init__(self, a_blocks, syndromes, rel_info, rel_parity):
        self.a = np.ascontiguousarray(a_blocks, dtype=np.uint8)
        self.s = np.ascontiguousarray(syndromes, dtype=np.uint8)
        self.rel_info = np.ascontiguousarray(rel_info, dtype=np.float64)
        self.rel_parity = np.ascontiguousarray(rel_parity, dtype=np.float64)

    def evaluate(self, pair_bits):
        # (B, r, k) @ (B, k, 2) -> (B, r, 2); uint8 wraparound keeps parity
        s1 = np.matmul(self.a, pair_bits.transpose(0, 2, 1))
        s2 = (s1 ^ self.s[:, :, None]) & 1
        f = np.einsum("btk,bk->bt", pair_bits, self.rel_info, dtype=np.float64)
        f += np.einsum("brt,br->bt", s2, self.rel_parity, dtype=np.float64)
        return f

    def compact(self, keep):
        self.a = self.a[keep]
        self.s = self.s[keep]
        self.rel_info = self.rel_info[keep]
        self.rel_parity = self.rel_parity[keep]


class ReencodingEvaluator(PairEvaluator):
    """Objective for generator-domain decoding.

    An individual u (k bits) is re-encoded to u G'; its cost is the total
    reliability where the candidate codeword disagrees with the hard
    decision.  Work per evaluation is proportional to k * n.
    """

    def __init__(self, gprimes, hard_bits, reliabilities):
        self.g = np.ascontiguousarray(gprimes, dtype=np.uint8)
        self.hard = np.ascontiguousarray(hard_bits, dtype=np.uint8)
        self.rel = np.ascontiguousarray(reliabilities, dtype=np.float64)

    def evaluate(self, pair_bits):
        cand = np.matmul(pair_bits, self.g) & 1  # (B, 2, n)
        disagree = cand != self.hard[:, None, :]
        return np.einsum("btn,bn->bt", disagree, self.rel, dtype=np.float64)

    def compact(self, keep):
        self.g = self.g[keep]
        self.hard = self.hard[keep]
        self.rel = self.rel[keep]


def run_cga_batch(
    evaluator: PairEvaluator,
    p0: np.ndarray,
    step: float,
    max_generations: int,
    leave_one: bool,
    streams: list[np.random.Generator],
    record_trace: bool = False,
) -> list[CgaOutcome]:
    """Run the compact GA to termination for a batch of instances.

    Args:
        evaluator: batch objective, state aligned with ``p0`` rows.
        p0: (B, k) initial probability vectors.
        step: update magnitude per disagreeing position (1/lambda).
        max_generations: hard cap; instances still open at the cap are
            rounded (p > 0.5) and flagged unconverged.
        leave_one: stop when at most one position is unconverged and
            round it by threshold 0.5, instead of requiring all of them.
        streams: one random stream per instance, consumed in chunks of
            ``UNIFORM_CHUNK`` generations regardless of batch layout.
        record_trace: record the Hamming distance between the two
            sampled individuals at every generation.

    Returns:
        One :class:`CgaOutcome` per instance, in input order.
    """
    p = np.array(p0, dtype=np.float64, copy=True)
    if p.ndim != 2:
        raise ValueError("p0 must be (batch, k)")
    b0, k = p.shape
    if len(streams) != b0:
        raise ValueError("need exactly one random stream per instance")

    out: list[CgaOutcome | None] = [None] * b0
    ids = np.arange(b0, dtype=np.intp)
    alive = np.ones(b0, dtype=bool)
    traces: list[list[int]] | None = [[] for _ in range(b0)] if record_trace else None

    ubuf = np.empty((b0, UNIFORM_CHUNK, 2, k), dtype=np.float64)
    target = 1 if leave_one else 0

    def finalize(row: int, gens: int, converged: bool) -> None:
        bid = int(ids[row])
        bits = (p[row] > 0.5).astype(np.uint8)
        trace = traces[row] if traces is not None else None
        out[bid] = CgaOutcome(bits=bits, generations=gens, converged=converged, trace=trace)

    g = 0
    while g < max_generations and alive.any():
        slot = g % UNIFORM_CHUNK
        if slot == 0:
            for i in np.nonzero(alive)[0]:
                ubuf[i] = streams[ids[i]].random((UNIFORM_CHUNK, 2, k))
        cur = ubuf[:, slot]  # (B, 2, k) view

        pair = (cur < p[:, None, :]).view(np.uint8)
        f = evaluator.evaluate(pair)
        wsel = (f[:, 1] < f[:, 0]).astype(np.intp)  # ties go to individual 0
        rows = np.arange(p.shape[0])
        w = pair[rows, wsel]
        lose = pair[rows, 1 - wsel]
        diff = w != lose
        p += np.where(diff, (w.astype(np.float64) * 2.0 - 1.0) * step, 0.0)
        np.clip(p, 0.0, 1.0, out=p)

        if traces is not None:
            dist = np.count_nonzero(diff, axis=1)
            for i in np.nonzero(alive)[0]:
                traces[i].append(int(dist[i]))

        settled = (p == 0.0) | (p == 1.0)
        open_counts = k - settled.sum(axis=1)
        done = alive & (open_counts <= target)
        g += 1
        if done.any():
            for i in np.nonzero(done)[0]:
                finalize(int(i), g, True)
            alive &= ~done
            # compact once enough rows retired; lockstep work on retired
            # rows is wasted but their state is frozen and ignored
            dead = p.shape[0] - int(alive.sum())
            if dead >= max(8, p.shape[0] // 8) or not alive.any():
                keep = np.nonzero(alive)[0]
                p = p[keep]
                ids = ids[keep]
                ubuf = ubuf[keep]
                if traces is not None:
                    traces = [traces[int(i)] for i in keep]
                evaluator.compact(keep)
                alive = np.ones(p.shape[0], dtype=bool)

    for i in np.nonzero(alive)[0]:
        finalize(int(i), max_generations, False)
    return out  # type: ignore[return-value]
