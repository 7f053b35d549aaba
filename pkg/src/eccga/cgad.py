"""Dual-domain soft-decision decoding with a compact genetic algorithm.

The decoder searches error patterns constrained by the parity-check
matrix rather than re-encoding information words, so each candidate
evaluation costs O(k(n-k)) bit operations instead of O(kn).

Decoding a received word r:
  * if the hard decision of r is already a codeword, accept it;
  * otherwise pick the n-k least reliable linearly independent positions
    as parity positions, reduce H so they carry an identity, and search
    over the k remaining (most reliable) positions for the error bits
    e that minimize the soft discrepancy of the completed pattern
    (e, S XOR A e^T);
  * the search is a compact GA over {0,1}^k driven by a length-k
    probability vector; on convergence the pattern is applied to the
    quantized word and the column permutation is undone.

Two stopping rules are provided: ``cgad`` waits for every probability
to reach 0 or 1; ``ocgad`` stops when at most one position is still
open and rounds it by threshold 0.5, trading a tail of slow final-bit
convergence for a large cut in generations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .cga import CgaOutcome, ParityCompletionEvaluator, run_cga_batch
from .channel import ReceivedWord
from .codes import LinearCode, syndrome
from .errors import CodeConstructionError, DecodingError
from .gf2 import invert_permutation, reduce_to_systematic

VARIANTS = ("cgad", "ocgad")
INIT_MODES = ("center", "soft")


@dataclass
class CgadParams:
    """Tuning knobs for the compact-GA decoders.

    step_inv is the virtual population size lambda; every tournament
    moves disagreeing probability coordinates by 1/lambda.
    max_generations defaults to 50 * step_inv when left unset.
    """

    step_inv: int = 500
    variant: str = "cgad"
    init_mode: str = "center"
    soft_clamp_delta: float = 0.1
    max_generations: int | None = None
    record_trace: bool = False

    def __post_init__(self):
        if self.step_inv < 2:
            raise ValueError("step_inv must be >= 2 so the step 1/lambda is <= 0.5")
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}")
        if self.init_mode not in INIT_MODES:
            raise ValueError(f"init_mode must be one of {INIT_MODES}")
        if not 0.0 < self.soft_clamp_delta < 0.5:
            raise ValueError("soft_clamp_delta must be in (0, 0.5)")

    @property
    def step(self) -> float:
        return 1.0 / self.step_inv

    @property
    def generation_cap(self) -> int:
        return self.max_generations if self.max_generations is not None else 50 * self.step_inv


@dataclass
class DecodingContext:
    """Frozen per-word state for the dual-domain search."""

    code: LinearCode
    permutation: np.ndarray
    inverse_permutation: np.ndarray
    h_prime: np.ndarray  # [A | I], permuted column order
    a_block: np.ndarray  # first k columns of h_prime
    r_permuted: np.ndarray
    reliab_permuted: np.ndarray
    z: np.ndarray  # hard decision of r_permuted
    s: np.ndarray  # syndrome of z under h_prime
    noise_sigma: float


@dataclass
class ProbabilityVector:
    """Marginal bit probabilities driving the search, with its step size."""

    p: np.ndarray
    step: float
    fallback_to_center: bool = False

    @property
    def converged_mask(self) -> np.ndarray:
        return (self.p == 0.0) | (self.p == 1.0)


@dataclass
class DecoderResult:
    """Decode outcome in original (unpermuted) coordinates."""

    codeword: np.ndarray
    generations: int
    converged: bool
    syndrome_shortcut: bool
    fitness: float
    hamming_trace: list[int] | None = None
    bit_ops: int = 0
    decoder_id: str = ""


def prepare_context(code: LinearCode, received: ReceivedWord) -> DecodingContext:
    """Build the permuted systematic view of H for one received word.

    Columns are prioritized by ascending reliability (ties broken by
    ascending original index), so the greedy elimination selects the
    n-k least reliable independent positions as parity positions; the
    remaining k positions end up first, in descending reliability.
    """
    if received.n != code.n:
        raise ValueError(f"received word length {received.n} != n={code.n}")
    priority = np.argsort(received.reliabilities, kind="stable")
    try:
        form = reduce_to_systematic(code.parity_check, priority)
    except CodeConstructionError as exc:
        raise DecodingError(f"parity-check reduction failed: {exc}") from exc
    perm = form.permutation
    h_perm = np.ascontiguousarray(form.h_prime[:, perm])
    r_perm = received.samples[perm]
    z = (r_perm >= 0.0).astype(np.uint8)
    s = (h_perm @ z) & 1
    return DecodingContext(
        code=code,
        permutation=perm,
        inverse_permutation=invert_permutation(perm),
        h_prime=h_perm,
        a_block=np.ascontiguousarray(h_perm[:, : code.k]),
        r_permuted=r_perm,
        reliab_permuted=np.abs(r_perm),
        z=z,
        s=s,
        noise_sigma=received.noise_sigma,
    )


def extend_error(ctx: DecodingContext, e_info) -> np.ndarray:
    """Complete k information-position error bits to a full pattern.

    The parity part is S XOR A e^T, the unique completion with
    H' E^T = S; consequently z XOR E is always a codeword of the
    permuted code.
    """
    e_info = np.asarray(e_info, dtype=np.uint8)
    if e_info.shape[0] != ctx.code.k:
        raise ValueError(f"e_info must have length k={ctx.code.k}")
    s1 = (ctx.a_block @ e_info) & 1
    return np.concatenate([e_info, s1 ^ ctx.s])


def fitness(ctx: DecodingContext, e_info) -> float:
    """Soft discrepancy of the completed error pattern (lower is better).

    Sum of |r'_j| over the support of the pattern; zero exactly when the
    pattern is empty, i.e. the quantized word itself is a codeword.
    """
    e = extend_error(ctx, e_info)
    return float(ctx.reliab_permuted @ e)


def _posterior_error_probability(reliab, sigma, delta):
    p = 1.0 / (1.0 + np.exp(2.0 * reliab / (sigma * sigma)))
    return np.clip(p, delta, 1.0 - delta)


def init_probability(ctx: DecodingContext, params: CgadParams) -> ProbabilityVector:
    """Starting probability vector for the search over e_info.

    ``center`` starts at 0.5 everywhere.  ``soft`` starts each position
    at the posterior probability that its hard decision is wrong,
    clamped away from {0, 1} by soft_clamp_delta; with an unknown or
    non-positive noise sigma it falls back to center and flags that.
    """
    k = ctx.code.k
    if params.init_mode == "soft":
        sigma = ctx.noise_sigma
        if sigma is None or not np.isfinite(sigma) or sigma <= 0.0:
            return ProbabilityVector(np.full(k, 0.5), params.step, fallback_to_center=True)
        p = _posterior_error_probability(ctx.reliab_permuted[:k], sigma, params.soft_clamp_delta)
        return ProbabilityVector(p, params.step)
    return ProbabilityVector(np.full(k, 0.5), params.step)


def sample_pair(pv: ProbabilityVector, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Two independent individuals; bit i is 1 with probability p[i]."""
    u = rng.random((2, pv.p.shape[0]))
    pair = (u < pv.p).astype(np.uint8)
    return pair[0], pair[1]


def update_probability(pv: ProbabilityVector, winner, loser) -> None:
    """Move p toward the winner where the pair disagrees, clamped to [0, 1]."""
    winner = np.asarray(winner, dtype=np.uint8)
    loser = np.asarray(loser, dtype=np.uint8)
    if winner.shape != pv.p.shape or loser.shape != pv.p.shape:
        raise ValueError("winner/loser length must match the probability vector")
    diff = winner != loser
    pv.p += np.where(diff, (winner.astype(np.float64) * 2.0 - 1.0) * pv.step, 0.0)
    np.clip(pv.p, 0.0, 1.0, out=pv.p)


def _shortcut_result(code: LinearCode, received: ReceivedWord, decoder_id: str) -> DecoderResult:
    return DecoderResult(
        codeword=received.hard_bits.copy(),
        generations=0,
        converged=True,
        syndrome_shortcut=True,
        fitness=0.0,
        decoder_id=decoder_id,
    )


def _eval_cost(code: LinearCode) -> int:
    # per-individual bit operations: the A matvec plus the discrepancy sum
    return code.k * (code.n - code.k) + code.n


def decode_batch(
    code: LinearCode,
    received: Sequence[ReceivedWord],
    params: CgadParams,
    streams: Sequence[np.random.Generator],
) -> list[DecoderResult]:
    """Decode many received words, sharing one lockstep GA run.

    Per-word results are bit-identical to calling :func:`decode` on each
    word with its own stream; batching only amortizes numpy overhead.
    """
    if len(streams) != len(received):
        raise ValueError("need one random stream per received word")
    decoder_id = params.variant
    results: list[DecoderResult | None] = [None] * len(received)
    ga_items: list[tuple[int, DecodingContext]] = []
    for i, rw in enumerate(received):
        if not syndrome(code, rw.hard_bits).any():
            results[i] = _shortcut_result(code, rw, decoder_id)
        else:
            ga_items.append((i, prepare_context(code, rw)))

    if ga_items:
        ctxs = [c for _, c in ga_items]
        evaluator = ParityCompletionEvaluator(
            a_blocks=np.stack([c.a_block for c in ctxs]),
            syndromes=np.stack([c.s for c in ctxs]),
            rel_info=np.stack([c.reliab_permuted[: code.k] for c in ctxs]),
            rel_parity=np.stack([c.reliab_permuted[code.k :] for c in ctxs]),
        )
        p0 = np.stack([init_probability(c, params).p for c in ctxs])
        outcomes = run_cga_batch(
            evaluator,
            p0,
            step=params.step,
            max_generations=params.generation_cap,
            leave_one=params.variant == "ocgad",
            streams=[streams[i] for i, _ in ga_items],
            record_trace=params.record_trace,
        )
        cost = _eval_cost(code)
        for (i, ctx), outcome in zip(ga_items, outcomes):
            results[i] = _finish(ctx, outcome, cost, decoder_id)
    return results  # type: ignore[return-value]


def _finish(ctx: DecodingContext, outcome: CgaOutcome, eval_cost: int, decoder_id: str) -> DecoderResult:
    e = extend_error(ctx, outcome.bits)
    chat = ctx.z ^ e
    codeword = chat[ctx.inverse_permutation]
    return DecoderResult(
        codeword=codeword,
        generations=outcome.generations,
        converged=outcome.converged,
        syndrome_shortcut=False,
        fitness=float(ctx.reliab_permuted @ e),
        hamming_trace=outcome.trace,
        bit_ops=outcome.generations * 2 * eval_cost,
        decoder_id=decoder_id,
    )


def decode(
    code: LinearCode,
    received: ReceivedWord,
    params: CgadParams | None = None,
    rng: np.random.Generator | None = None,
) -> DecoderResult:
    """Decode one received word; see the module docstring for the procedure.

    The returned codeword always has zero syndrome: either the hard
    decision already was a codeword, or the completed error pattern
    forces one by construction (also when the generation cap rounds an
    unconverged probability vector).
    """
    if params is None:
        params = CgadParams()
    if rng is None:
        rng = np.random.default_rng()
    return decode_batch(code, [received], params, [rng])[0]
