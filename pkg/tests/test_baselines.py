import time

import numpy as np
import pytest

from eccga.baselines import (
    bd_decode,
    build_syndrome_table,
    chase2_decode,
    mld_decode,
    shakeel_decode,
    shakeel_decode_batch,
    _prepare_generator_context,
)
from eccga.cga import ParityCompletionEvaluator, ReencodingEvaluator
from eccga.cgad import CgadParams, prepare_context
from eccga.channel import modulate_bpsk, received_from_samples
from eccga.codes import encode, get_code, syndrome
from eccga.errors import UnsupportedSizeError

from conftest import make_block


class TestSyndromeTable:
    def test_hamming_has_eight_entries(self):
        table = build_syndrome_table(get_code("hamming7_4"))
        assert len(table) == 8  # zero plus seven singles

    def test_bch15_has_121_entries(self):
        table = build_syndrome_table(get_code("bch15_7"))
        assert len(table) == 121  # 1 + 15 + 105, all distinct

    def test_bch127_has_8129_entries(self):
        table = build_syndrome_table(get_code("bch127_113"))
        assert len(table) == 8129  # 1 + 127 + 8001

    def test_entries_verify(self):
        code = get_code("bch15_7")
        table = build_syndrome_table(code)
        for key, positions in table.entries.items():
            assert len(positions) <= code.t
            e = np.zeros(code.n, dtype=np.uint8)
            for j in positions:
                e[j] = 1
            assert np.packbits(syndrome(code, e)).tobytes() == key

    def test_infeasible_refused(self):
        with pytest.raises(UnsupportedSizeError):
            build_syndrome_table(get_code("qr71_36"))  # C(71,5) alone is 13M


class TestBoundedDistance:
    def test_codeword_fixed_point(self, table, rng):
        code = table.code
        cw = encode(code, rng.integers(0, 2, size=code.k, dtype=np.uint8))
        assert np.array_equal(bd_decode(table, cw), cw)

    def test_all_single_and_double_errors_corrected(self, table, rng):
        code = table.code
        cw = encode(code, rng.integers(0, 2, size=code.k, dtype=np.uint8))
        for i in range(code.n):
            for j in range(i, code.n):
                e = np.zeros(code.n, dtype=np.uint8)
                e[i] = 1
                e[j] = 1
                assert np.array_equal(bd_decode(table, cw ^ e), cw)

    def test_uncorrectable_weight_three_fails(self, table):
        code = table.code
        found = None
        for a in range(code.n):
            for b in range(a + 1, code.n):
                for c in range(b + 1, code.n):
                    e = np.zeros(code.n, dtype=np.uint8)
                    e[[a, b, c]] = 1
                    if table.lookup(syndrome(code, e)) is None:
                        found = e
                        break
                if found is not None:
                    break
            if found is not None:
                break
        assert found is not None, "every weight-3 pattern decoded; table too permissive"
        assert bd_decode(table, found) is None


@pytest.fixture(scope="module")
def code():
    return get_code("bch15_7")


@pytest.fixture(scope="module")
def table(code):
    return build_syndrome_table(code)


class TestChase2:
    def test_noiseless(self, code, table, rng):
        cw = encode(code, rng.integers(0, 2, size=code.k, dtype=np.uint8))
        res = chase2_decode(code, table, received_from_samples(modulate_bpsk(cw), 0.5))
        assert res.converged
        assert np.array_equal(res.codeword, cw)

    def test_pattern_count_is_two_to_the_t(self, code, table, rng):
        _, rw, _ = make_block(code, 60, 0, 3.0)
        res = chase2_decode(code, table, rw)
        assert res.patterns_tried == 4

    def test_single_flip_always_corrected(self, code, table, rng):
        cw = encode(code, rng.integers(0, 2, size=code.k, dtype=np.uint8))
        for j in range(code.n):
            samples = modulate_bpsk(cw)
            samples[j] = -samples[j]
            res = chase2_decode(code, table, received_from_samples(samples, 0.5))
            assert res.converged
            assert np.array_equal(res.codeword, cw)

    def test_candidate_set_contains_plain_bd(self, code, table):
        # whenever the unperturbed hard decision decodes, the chase result
        # is at least as good in analog discrepancy
        hits = 0
        for i in range(200):
            _, rw, _ = make_block(code, 61, i, 2.0)
            plain = bd_decode(table, rw.hard_bits)
            if plain is None:
                continue
            hits += 1
            res = chase2_decode(code, table, rw)
            assert res.converged
            plain_disc = float(rw.reliabilities[plain != rw.hard_bits].sum())
            assert res.fitness <= plain_disc + 1e-12
        assert hits > 50

    def test_failure_returns_flagged_hard_decision(self, code, table):
        found = False
        for i in range(500):
            _, rw, _ = make_block(code, 62, i, 0.0)
            res = chase2_decode(code, table, rw)
            if not res.converged:
                assert np.array_equal(res.codeword, rw.hard_bits)
                found = True
                break
        assert found, "no chase failure in 500 low-SNR blocks"


class TestMld:
    def test_noiseless(self, rng):
        code = get_code("bch15_7")
        cw = encode(code, rng.integers(0, 2, size=code.k, dtype=np.uint8))
        res = mld_decode(code, received_from_samples(modulate_bpsk(cw), 0.5))
        assert np.array_equal(res.codeword, cw)

    def test_repetition_code_correlation(self):
        code = get_code("rep3_1")
        rw = received_from_samples(np.array([0.9, -0.2, 0.3]), 0.5)
        res = mld_decode(code, rw)
        assert np.array_equal(res.codeword, [1, 1, 1])

    def test_refuses_large_dimension(self):
        code = get_code("qr71_36")
        with pytest.raises(UnsupportedSizeError):
            mld_decode(code, received_from_samples(np.zeros(code.n), 0.5))

    def test_correlation_optimal_among_decoders(self):
        # no decoder output ever has higher correlation than the MLD output
        code = get_code("bch15_7")
        table = build_syndrome_table(code)
        params = CgadParams(step_inv=50)
        from eccga.cgad import decode

        for i in range(1000):
            _, rw, rng = make_block(code, 63, i, 2.0)
            m = mld_decode(code, rw)
            corr_mld = float(rw.samples @ (2.0 * m.codeword - 1.0))
            others = [decode(code, rw, params, rng)]
            chase = chase2_decode(code, table, rw)
            if chase.converged:  # failures carry a non-codeword hard decision
                others.append(chase)
            for other in others:
                corr = float(rw.samples @ (2.0 * np.asarray(other.codeword, dtype=float) - 1.0))
                assert corr <= corr_mld + 1e-9


class TestShakeel:
    def test_noiseless_takes_shortcut(self, rng):
        code = get_code("bch63_51")
        cw = encode(code, rng.integers(0, 2, size=code.k, dtype=np.uint8))
        res = shakeel_decode(code, received_from_samples(modulate_bpsk(cw), 0.5))
        assert res.syndrome_shortcut
        assert np.array_equal(res.codeword, cw)

    def test_generator_context_structure(self):
        code = get_code("bch15_7")
        _, rw, _ = make_block(code, 64, 0, 2.0)
        g_prime, perm, inv = _prepare_generator_context(code, rw)
        assert np.array_equal(g_prime[:, : code.k], np.eye(code.k, dtype=np.uint8))
        # pivot positions lead and are the most reliable independent set
        assert np.argsort(perm).shape == (code.n,)
        assert np.allclose(rw.samples[perm][inv], rw.samples)

    def test_outputs_are_codewords(self):
        code = get_code("bch15_7")
        params = CgadParams(step_inv=20, max_generations=400)
        blocks = [make_block(code, 65, i, 1.0) for i in range(64)]
        res = shakeel_decode_batch(
            code, [rw for _, rw, _ in blocks], params, [r for *_, r in blocks]
        )
        for r in res:
            assert not syndrome(code, r.codeword).any()

    def test_agrees_with_mld_on_most_blocks(self):
        # generator-domain search quality oracle: brute force over 2^7 words
        code = get_code("bch15_7")
        params = CgadParams(step_inv=500)
        agree = total = 0
        b = 0
        while total < 2000:
            wave = [make_block(code, 66, b + i, 4.0) for i in range(256)]
            b += 256
            res = shakeel_decode_batch(
                code, [rw for _, rw, _ in wave], params, [r for *_, r in wave]
            )
            for (cw, rw, _), r in zip(wave, res):
                if total >= 2000:
                    break
                total += 1
                m = mld_decode(code, rw)
                agree += np.array_equal(r.codeword, m.codeword)
        assert agree / total >= 0.90

    def test_per_generation_evaluation_cost_ratio(self):
        # on a high-rate code the generator-domain evaluation does n/(n-k)
        # times the work of the parity-domain one; wall time should show it
        code = get_code("bch127_113")
        _, rw, _ = make_block(code, 67, 0, 4.0)
        ctx = prepare_context(code, rw)
        par = ParityCompletionEvaluator(
            ctx.a_block[None], ctx.s[None],
            ctx.reliab_permuted[None, : code.k], ctx.reliab_permuted[None, code.k :],
        )
        g_prime, perm, _ = _prepare_generator_context(code, rw)
        gen = ReencodingEvaluator(g_prime[None], rw.hard_bits[perm][None], rw.reliabilities[perm][None])
        pair = np.random.default_rng(0).integers(0, 2, size=(1, 2, code.k)).astype(np.uint8)

        def best_time(evaluator):
            best = np.inf
            for _ in range(3):
                t0 = time.perf_counter()
                for _ in range(2000):
                    evaluator.evaluate(pair)
                best = min(best, time.perf_counter() - t0)
            return best

        ratio = best_time(gen) / best_time(par)
        assert ratio >= 2.0
