import json
import math

import numpy as np
import pytest

from macjam import (
    BudgetViolationError,
    DeterministicModulator,
    JammerBudget,
    adder,
    bsc,
    deterministic_correlation,
    effective_kernel,
    epr_correlation,
    exact_output_distribution,
    greedy_jammer,
    pr_box,
    sample_iid,
    transmit_block,
    weight,
)
from macjam.info import FLIP, UNIFORM, unpack_bits_hex
from macjam.rng import stream

EPR_FLIP = (2.0 - math.sqrt(2.0)) / 4.0
DET_ID_CONST0 = deterministic_correlation(DeterministicModulator("id", "const0"))


def random_words(n, rng):
    return sample_iid(UNIFORM, n, rng), sample_iid(UNIFORM, n, rng)


class TestTransmitBlock:
    def test_trace_identity_holds_on_sampled_blocks(self):
        rng = stream(301)
        corrs = [pr_box(0.2), epr_correlation(), DET_ID_CONST0]
        for i, corr in enumerate(corrs):
            for lam in (0.0, 0.3):
                n = 64
                a, b = random_words(n, rng)
                jam = greedy_jammer(JammerBudget(lam=lam, n=n)) if lam else None
                tr = transmit_block(corr, a, b, jam, lam, rng)
                assert np.array_equal(tr.c, a ^ b ^ tr.e ^ tr.s)
                assert np.array_equal(tr.e, (tr.x & tr.y) ^ tr.alpha ^ tr.beta)
                assert weight(tr.s) <= math.floor(n * lam)

    def test_maximal_box_is_noiseless(self):
        rng = stream(302)
        n = 257
        a, b = random_words(n, rng)
        tr = transmit_block(pr_box(0.25), a, b, None, 0.0, rng)
        assert weight(tr.e) == 0
        assert np.array_equal(tr.c, a ^ b)

    def test_quantum_noise_rate_four_sigma(self):
        n = 10**5
        rng = stream(303)
        a = np.zeros(n, dtype=np.uint8)
        tr = transmit_block(epr_correlation(), a, a, None, 0.0, rng)
        sigma = math.sqrt(EPR_FLIP * (1 - EPR_FLIP) / n)
        assert abs(weight(tr.e) / n - EPR_FLIP) <= 4 * sigma

    def test_greedy_jammer_lifts_flip_rate(self):
        # base noise 1/4 plus a full 0.3 budget on clean positions
        n = 10**5
        rng = stream(304)
        a = np.zeros(n, dtype=np.uint8)
        jam = greedy_jammer(JammerBudget(lam=0.3, n=n))
        tr = transmit_block(DET_ID_CONST0, a, a, jam, 0.3, rng)
        assert abs(weight(tr.e ^ tr.s) / n - 0.55) <= 0.01

    def test_mismatched_lengths_rejected(self):
        rng = stream(305)
        with pytest.raises(ValueError):
            transmit_block(pr_box(0.0), np.zeros(4, dtype=np.uint8),
                           np.zeros(5, dtype=np.uint8), None, 0.0, rng)

    def test_inadmissible_strategy_is_a_hard_failure(self):
        class Cheater:
            def respond(self, e, rng):
                return np.ones_like(e)

        rng = stream(306)
        a = np.zeros(10, dtype=np.uint8)
        with pytest.raises(BudgetViolationError):
            transmit_block(pr_box(0.0), a, a, Cheater(), 0.3, rng)

    def test_trace_json_round_trip(self):
        rng = stream(307)
        n = 11
        a, b = random_words(n, rng)
        tr = transmit_block(epr_correlation(), a, b, None, 0.0, rng, seed=42)
        obj = json.loads(tr.to_json())
        assert obj["n"] == n and obj["seed"] == 42
        for field in ("x", "y", "alpha", "beta", "e", "s", "c"):
            assert np.array_equal(unpack_bits_hex(obj[field], n), getattr(tr, field))


class TestEffectiveKernel:
    def test_classical_pair_gives_quarter_noise(self):
        got = effective_kernel(DET_ID_CONST0, 0)
        want = adder().then(bsc(0.25))
        assert got.isclose(want, 1e-12)

    def test_quantum_resource_kernel(self):
        got = effective_kernel(epr_correlation(), 0)
        want = adder().then(bsc(EPR_FLIP))
        assert got.isclose(want, 1e-12)

    def test_state_one_flips_state_zero(self):
        for corr in (DET_ID_CONST0, epr_correlation(), pr_box(0.13)):
            k0 = effective_kernel(corr, 0)
            k1 = effective_kernel(corr, 1)
            assert k1.isclose(k0.then(FLIP), 1e-12)

    def test_bad_state_bit(self):
        with pytest.raises(ValueError):
            effective_kernel(pr_box(0.0), 2)


class TestExactOutputDistribution:
    def test_single_use_noiseless(self):
        dist = exact_output_distribution(pr_box(0.25), np.zeros(1, dtype=np.uint8),
                                         np.zeros(1, dtype=np.uint8))
        assert np.allclose(dist, [1.0, 0.0])

    def test_single_use_classical(self):
        dist = exact_output_distribution(DET_ID_CONST0, np.ones(1, dtype=np.uint8),
                                         np.zeros(1, dtype=np.uint8))
        # input 1 XOR 0 = 1 flipped with probability 1/4
        assert abs(dist[1] - 0.75) < 1e-12 and abs(dist[0] - 0.25) < 1e-12

    def test_three_uses_factorize(self):
        a = np.zeros(3, dtype=np.uint8)
        dist = exact_output_distribution(epr_correlation(), a, a)
        f = EPR_FLIP
        for mask in range(8):
            ones = bin(mask).count("1")
            assert abs(dist[mask] - f**ones * (1 - f) ** (3 - ones)) < 1e-12

    @pytest.mark.parametrize("corr", [pr_box(0.1), epr_correlation(), DET_ID_CONST0])
    def test_matches_product_of_effective_kernels(self, corr):
        rng = stream(308)
        n = 4
        a, b = random_words(n, rng)
        dist = exact_output_distribution(corr, a, b)
        assert abs(dist.sum() - 1.0) < 1e-12
        kernel = effective_kernel(corr, 0)
        for mask in range(1 << n):
            want = 1.0
            for i in range(n):
                c_bit = (mask >> (n - 1 - i)) & 1
                want *= kernel.w[a[i], b[i], c_bit]
            assert abs(dist[mask] - want) < 1e-12

    def test_jammer_randomness_is_enumerated(self):
        n = 3
        a = np.zeros(n, dtype=np.uint8)
        jam = greedy_jammer(JammerBudget(lam=1.0, n=n))
        dist = exact_output_distribution(pr_box(0.25), a, a, jam)
        # no base noise, then the greedy strategy flips every clean position
        assert abs(dist[0b111] - 1.0) < 1e-12

    def test_length_cap(self):
        a = np.zeros(7, dtype=np.uint8)
        with pytest.raises(ValueError):
            exact_output_distribution(pr_box(0.0), a, a)
