import math
from fractions import Fraction

import numpy as np
import pytest

from macjam import (
    BitDistribution,
    JammerBudget,
    SizingError,
    TypicalJammerParams,
    check_admissible,
    chi,
    greedy_jammer,
    induced_state_distribution,
    lambda_weights,
    noise_profile,
    sample_iid,
    type_class,
    type_mixture,
    typical_jammer,
    typical_params_from_rates,
    weight,
)
from macjam.jamming import budget_count, strategy_from_config, strategy_to_config
from macjam.rng import stream


def uniform_weights(k):
    return tuple(Fraction(1, k + 1) for _ in range(k + 1))


# parameter sets at n = 12 used for the exact enumeration checks
PARAM_GRID = [
    dict(n=12, lam=5.5 / 12, t1=2, t2=3, K=2, weights=uniform_weights(2)),
    dict(n=12, lam=4.5 / 12, t1=3, t2=3, K=0, weights=(Fraction(1),)),
    dict(n=12, lam=6.5 / 12, t1=1, t2=2, K=3,
         weights=(Fraction(1, 2), Fraction(1, 4), Fraction(1, 8), Fraction(1, 8))),
    dict(n=12, lam=6.5 / 12, t1=4, t2=5, K=1, weights=(Fraction(1, 3), Fraction(2, 3))),
    dict(n=12, lam=7.5 / 12, t1=0, t2=2, K=4, weights=uniform_weights(4)),
    dict(n=12, lam=3.5 / 12, t1=2, t2=2, K=3, weights=uniform_weights(3)),
]


class TestChi:
    def test_worked_example(self):
        # budget 30, K = 10: chi = 5 - (25 - 20) + 20
        assert chi(K=10, t=25, k=5, t1=20, budget=30) == 20

    def test_full_budget_at_window_bottom(self):
        assert chi(K=10, t=20, k=10, t1=20, budget=30) == 30

    def test_minimum_at_window_top(self):
        assert chi(K=2, t=3, k=0, t1=2, budget=5) == 5 - 2 - 1

    def test_bad_k_rejected(self):
        with pytest.raises(ValueError):
            chi(K=2, t=2, k=3, t1=2, budget=5)

    def test_negative_count_rejected(self):
        with pytest.raises(ValueError):
            chi(K=0, t=9, k=0, t1=0, budget=5)


class TestBudget:
    def test_budget_count(self):
        assert budget_count(1001, 0.3) == 300
        assert budget_count(10, 0.0) == 0
        assert budget_count(4, 1.0) == 4

    def test_admissibility_boundary(self):
        budget = JammerBudget(lam=0.3, n=10)  # 3 flips allowed
        s = np.zeros(10, dtype=np.uint8)
        assert check_admissible(s, budget)
        s[:3] = 1
        assert check_admissible(s, budget)  # equality allowed
        s[3] = 1
        assert not check_admissible(s, budget)

    def test_validation(self):
        with pytest.raises(ValueError):
            JammerBudget(lam=1.2, n=5)
        with pytest.raises(ValueError):
            JammerBudget(lam=0.2, n=0)


class TestGreedyJammer:
    def test_silent_when_nothing_is_clean(self):
        jam = greedy_jammer(JammerBudget(lam=0.5, n=8))
        s = jam.respond(np.ones(8, dtype=np.uint8), stream(401))
        assert weight(s) == 0

    def test_silent_on_zero_budget(self):
        jam = greedy_jammer(JammerBudget(lam=0.0, n=8))
        s = jam.respond(np.zeros(8, dtype=np.uint8), stream(402))
        assert weight(s) == 0

    def test_flips_only_clean_positions(self):
        rng = stream(403)
        jam = greedy_jammer(JammerBudget(lam=0.25, n=40))
        for _ in range(20):
            e = sample_iid(BitDistribution(0.4), 40, rng)
            s = jam.respond(e, rng)
            assert np.all(e[s == 1] == 0)
            assert weight(s) == min(10, int(np.sum(e == 0)))

    def test_large_block_post_jamming_rate(self):
        n = 10**5
        rng = stream(404)
        e = sample_iid(BitDistribution(0.25), n, rng)
        jam = greedy_jammer(JammerBudget(lam=0.3, n=n))
        s = jam.respond(e, rng)
        assert abs(weight(e ^ s) / n - 0.55) <= 0.005

    def test_exact_distribution_support(self):
        jam = greedy_jammer(JammerBudget(lam=0.5, n=4))
        e = np.array([1, 0, 0, 0], dtype=np.uint8)
        support = jam.response_distribution(e)
        assert len(support) == math.comb(3, 2)
        assert sum(p for _, p in support) == 1


class TestLambdaWeights:
    def test_degenerate_span(self):
        assert np.allclose(lambda_weights(10, 5, 0, 0.4), [1.0])

    def test_frozen_binomial_example(self):
        got = lambda_weights(12, 6, 2, 0.5)
        want = np.array([15 / 67, 24 / 67, 28 / 67])
        assert np.max(np.abs(got - want)) < 1e-12

    def test_normalized_for_random_parameters(self):
        rng = stream(405)
        for _ in range(50):
            n = int(rng.integers(5, 200))
            t_top = int(rng.integers(1, n + 1))
            k = int(rng.integers(0, t_top + 1))
            p = float(rng.uniform(0.05, 0.95))
            w = lambda_weights(n, t_top, k, p)
            assert abs(w.sum() - 1.0) < 1e-12
            assert np.all(w >= 0.0)

    def test_window_leaving_range_rejected(self):
        with pytest.raises(ValueError):
            lambda_weights(10, 4, 5, 0.5)
        with pytest.raises(ValueError):
            lambda_weights(10, 11, 0, 0.5)

    def test_bad_target_rejected(self):
        with pytest.raises(ValueError):
            lambda_weights(10, 5, 1, 0.0)


class TestTypicalJammerParams:
    def test_window_invariants_enforced(self):
        with pytest.raises(ValueError):
            TypicalJammerParams(n=12, lam=0.25, t1=2, t2=5, K=2, weights=uniform_weights(2))
        with pytest.raises(ValueError):
            TypicalJammerParams(n=12, lam=1.0, t1=4, t2=4, K=0, weights=(Fraction(1),))
        with pytest.raises(ValueError):
            TypicalJammerParams(n=12, lam=0.4, t1=3, t2=2, K=0, weights=(Fraction(1),))

    def test_weight_count_and_normalization(self):
        with pytest.raises(ValueError):
            TypicalJammerParams(n=12, lam=5.5 / 12, t1=2, t2=3, K=2,
                                weights=(Fraction(1, 2), Fraction(1, 2)))
        with pytest.raises(ValueError):
            TypicalJammerParams(n=12, lam=5.5 / 12, t1=2, t2=3, K=2,
                                weights=(Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)))

    def test_reachable_types(self):
        p = TypicalJammerParams(**PARAM_GRID[0])
        assert list(p.reachable_types()) == [5, 6, 7]


class TestTypicalJammer:
    def test_silent_outside_window(self):
        params = TypicalJammerParams(**PARAM_GRID[0])
        jam = typical_jammer(params)
        e = np.zeros(12, dtype=np.uint8)
        e[:1] = 1  # weight t1 - 1
        assert weight(jam.respond(e, stream(406))) == 0
        e[:5] = 1  # weight t2 + 2
        assert weight(jam.respond(e, stream(406))) == 0

    def test_flip_counts_inside_window(self):
        params = TypicalJammerParams(**PARAM_GRID[0])
        jam = typical_jammer(params)
        rng = stream(407)
        e = np.zeros(12, dtype=np.uint8)
        e[:2] = 1  # weight t1 = 2: chi ranges over {3, 4, 5}
        seen = set()
        for _ in range(100):
            s = jam.respond(e, rng)
            assert np.all(e[s == 1] == 0)
            seen.add(weight(s))
        assert seen == {3, 4, 5}

    def test_admissibility_never_violated(self):
        rng = stream(408)
        for cfg in PARAM_GRID:
            params = TypicalJammerParams(**cfg)
            jam = typical_jammer(params)
            budget = JammerBudget(lam=cfg["lam"], n=cfg["n"])
            for _ in range(200):
                e = sample_iid(BitDistribution(float(rng.uniform(0, 0.6))), cfg["n"], rng)
                assert check_admissible(jam.respond(e, rng), budget)


class TestInducedDistribution:
    def test_degenerate_span_gives_one_type_class(self):
        params = TypicalJammerParams(**PARAM_GRID[1])  # K = 0, t1 = t2 = 3, budget 4
        got = induced_state_distribution(params, 3)
        tc = type_class(12, 7)
        want = {}
        for member in tc.members():
            m = 0
            for bit in member.tolist():
                m = (m << 1) | bit
            want[m] = Fraction(1, tc.size)
        assert got == want

    @pytest.mark.parametrize("cfg", PARAM_GRID)
    def test_exact_mixture_identity_and_type_independence(self, cfg):
        params = TypicalJammerParams(**cfg)
        target = type_mixture(params)
        for t in range(params.t1, params.t2 + 1):
            got = induced_state_distribution(params, t)
            assert got == target  # zero total-variation distance, exact rationals

    def test_support_and_constancy_on_types(self):
        params = TypicalJammerParams(**PARAM_GRID[0])
        dist = induced_state_distribution(params, 2)
        by_weight = {}
        for mask, prob in dist.items():
            by_weight.setdefault(bin(mask).count("1"), set()).add(prob)
        assert set(by_weight) == set(params.reachable_types())
        for probs in by_weight.values():
            assert len(probs) == 1  # uniform within each type class

    def test_total_mass_is_one(self):
        params = TypicalJammerParams(**PARAM_GRID[2])
        assert sum(induced_state_distribution(params, 1).values()) == 1

    def test_window_enforced(self):
        params = TypicalJammerParams(**PARAM_GRID[0])
        with pytest.raises(ValueError):
            induced_state_distribution(params, 5)

    def test_size_cap(self):
        params = TypicalJammerParams(n=14, lam=0.3, t1=2, t2=2, K=0, weights=(Fraction(1),))
        with pytest.raises(ValueError):
            induced_state_distribution(params, 2)


class TestRateSizing:
    def test_reasonable_block_length_succeeds(self):
        params = typical_params_from_rates(n=200, lam=0.3, eta=0.25, eps=0.05)
        assert params.t1 == 40 and params.t2 == 60 and params.K == 20
        assert params.budget == 60
        assert abs(sum(params.weights) - 1.0) < 1e-9

    def test_small_block_reports_minimal_feasible_n(self):
        with pytest.raises(SizingError, match=r"minimal feasible block length.*n = 4"):
            typical_params_from_rates(n=3, lam=0.25, eta=0.25, eps=0.05)

    def test_impossible_rates_reported(self):
        # t1 + budget outgrows n at every block length
        with pytest.raises(SizingError, match="no feasible block length"):
            typical_params_from_rates(n=10, lam=0.5, eta=0.9, eps=0.05)

    def test_profile_slack_is_nonnegative_and_converges(self):
        eta, eps, lam = 0.25, 0.05, 0.3
        for n in (50, 100, 500, 1000, 5000, 20000):
            prof = noise_profile(eta, eps, lam, n)
            assert prof.eps_n >= 0.0
            assert abs(prof.eps_n - eps) <= 2.0 / n
            assert abs(prof.p_target - (lam + eta - eps)) <= 2.0 / n


class TestStrategyConfig:
    def test_round_trips(self):
        assert strategy_from_config({"kind": "none"}, 100, 0.25) is None
        greedy = strategy_from_config({"kind": "greedy", "lambda": 0.3}, 100, 0.25)
        assert strategy_to_config(greedy) == {"kind": "greedy", "lambda": 0.3}
        typical = strategy_from_config(
            {"kind": "typical", "lambda": 0.3, "eps": 0.05}, 200, 0.25
        )
        assert strategy_to_config(typical)["kind"] == "typical"

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            strategy_from_config({"kind": "psychic"}, 10, 0.2)
