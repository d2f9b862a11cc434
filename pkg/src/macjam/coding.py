"""Codes and success-probability estimation against fixed jammer strategies.

The separation experiment runs a one-bit repetition code through the
simulated channel: against the greedy state-aware jammer with budget
Lambda in (1/4, sqrt(2)/4), the quantum resource keeps majority decoding
reliable while every deterministic classical resource fails.
"""

from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .channel import exact_output_distribution, transmit_block
from .correlations import Correlation
from .info import weight
from .jamming import budget_count
from .rng import stream

Z_95 = 1.959963984540054


@dataclass(frozen=True)
class Code:
    """Codebooks for the two senders plus a deterministic decoder.

    The decoder maps a received block to a message pair (u, v), or to None
    for an erasure; being a function, its decoding sets are disjoint.
    """

    codewords_a: np.ndarray  # (U, n)
    codewords_b: np.ndarray  # (V, n)
    decoder: Callable[[np.ndarray], tuple[int, int] | None]

    def __post_init__(self) -> None:
        a = np.asarray(self.codewords_a, dtype=np.uint8)
        b = np.asarray(self.codewords_b, dtype=np.uint8)
        if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[1]:
            raise ValueError("codebooks must be 2-d with one common block length")
        object.__setattr__(self, "codewords_a", a)
        object.__setattr__(self, "codewords_b", b)

    @property
    def num_messages_a(self) -> int:
        return self.codewords_a.shape[0]

    @property
    def num_messages_b(self) -> int:
        return self.codewords_b.shape[0]

    @property
    def n(self) -> int:
        return self.codewords_a.shape[1]


def _majority_pair_decode(c: np.ndarray) -> tuple[int, int]:
    n = len(c)
    return (1 if 2 * int(np.sum(c)) > n else 0), 0


def repetition_code(n: int) -> Code:
    """Two messages for the first sender (all-zeros / all-ones), majority decoding.

    The second sender contributes the all-zero word. Odd n only, so
    majority votes cannot tie.
    """
    if n < 1 or n % 2 == 0:
        raise ValueError(f"block length must be odd, got {n}")
    a = np.stack([np.zeros(n, dtype=np.uint8), np.ones(n, dtype=np.uint8)])
    b = np.zeros((1, n), dtype=np.uint8)
    return Code(codewords_a=a, codewords_b=b, decoder=_majority_pair_decode)


@dataclass(frozen=True)
class SuccessEstimate:
    trials: int
    successes: int
    rate: float
    ci_low: float
    ci_high: float
    empirical_flip_rate: float

    def to_json_dict(self) -> dict:
        return {
            "trials": self.trials,
            "successes": self.successes,
            "rate": self.rate,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
            "empirical_flip_rate": self.empirical_flip_rate,
        }


def wilson_interval(successes: int, trials: int, z: float = Z_95) -> tuple[float, float]:
    """Wilson score interval; well-behaved at small success counts."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    phat = successes / trials
    denom = 1.0 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1.0 - phat) / trials + z * z / (4 * trials * trials)) / denom
    # the score bounds are exactly 0 and 1 at degenerate counts
    low = 0.0 if successes == 0 else max(0.0, center - half)
    high = 1.0 if successes == trials else min(1.0, center + half)
    return low, high


def _run_trial_range(
    code: Code,
    corr: Correlation,
    jammer,
    lam: float,
    seed: int,
    start: int,
    stop: int,
) -> tuple[int, int]:
    """Successes and total post-jamming flips over trial indices [start, stop)."""
    successes = 0
    flips = 0
    for i in range(start, stop):
        rng = stream(seed, i)
        u = int(rng.integers(code.num_messages_a))
        v = int(rng.integers(code.num_messages_b))
        trace = transmit_block(
            corr, code.codewords_a[u], code.codewords_b[v], jammer, lam, rng
        )
        if code.decoder(trace.c) == (u, v):
            successes += 1
        flips += weight(trace.e ^ trace.s)
    return successes, flips


def estimate_success(
    code: Code,
    corr: Correlation,
    jammer,
    lam: float,
    trials: int,
    seed: int,
    workers: int = 1,
) -> SuccessEstimate:
    """Monte Carlo success rate over uniform message pairs.

    Each trial consumes its own stream derived from (seed, trial index), so
    the result is bit-identical no matter how trials are scheduled; with
    workers > 1 the trial range is split across processes.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if workers <= 1:
        successes, flips = _run_trial_range(code, corr, jammer, lam, seed, 0, trials)
    else:
        bounds = np.linspace(0, trials, workers + 1, dtype=int)
        successes = flips = 0
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_run_trial_range, code, corr, jammer, lam, seed, int(lo), int(hi))
                for lo, hi in zip(bounds[:-1], bounds[1:])
                if hi > lo
            ]
            for fut in futures:
                s, f = fut.result()
                successes += s
                flips += f
    low, high = wilson_interval(successes, trials)
    return SuccessEstimate(
        trials=trials,
        successes=successes,
        rate=successes / trials,
        ci_low=low,
        ci_high=high,
        empirical_flip_rate=flips / (trials * code.n),
    )


def analytic_majority_success(n: int, base_flip: float, lam: float) -> float:
    """Closed-form success of the repetition code against the greedy jammer.

    The jammer adds min(budget, n - b) flips on top of b base-noise flips,
    so majority decoding succeeds iff b + min(budget, n - b) < n/2. Sums
    the binomial mass of that event with compensated summation; the pmf is
    evaluated in log space.
    """
    if n < 1 or n % 2 == 0:
        raise ValueError(f"block length must be odd, got {n}")
    if not 0.0 <= base_flip <= 1.0:
        raise ValueError("base_flip must lie in [0, 1]")
    if not 0.0 <= lam <= 1.0:
        raise ValueError("lambda must lie in [0, 1]")
    budget = budget_count(n, lam)

    if base_flip == 0.0:
        return 1.0 if 2 * min(budget, n) < n else 0.0
    if base_flip == 1.0:
        return 0.0  # all positions already flipped: majority always wrong

    log_p = math.log(base_flip)
    log_q = math.log1p(-base_flip)
    lg_n = math.lgamma(n + 1)
    terms = []
    for b in range(n + 1):
        if 2 * (b + min(budget, n - b)) >= n:
            continue
        log_pmf = lg_n - math.lgamma(b + 1) - math.lgamma(n - b + 1) + b * log_p + (n - b) * log_q
        terms.append(math.exp(log_pmf))
    return min(1.0, math.fsum(terms))


def exact_success(code: Code, corr: Correlation, jammer) -> float:
    """Exact success probability by output enumeration (n <= 6)."""
    n = code.n
    total = 0.0
    pairs = code.num_messages_a * code.num_messages_b
    for u in range(code.num_messages_a):
        for v in range(code.num_messages_b):
            dist = exact_output_distribution(
                corr, code.codewords_a[u], code.codewords_b[v], jammer
            )
            for c_mask, prob in enumerate(dist):
                if prob == 0.0:
                    continue
                c = np.array([(c_mask >> (n - 1 - i)) & 1 for i in range(n)], dtype=np.uint8)
                if code.decoder(c) == (u, v):
                    total += float(prob)
    return min(1.0, max(0.0, total / pairs))


CSV_HEADER = [
    "n",
    "trials",
    "modulation",
    "jammer",
    "lambda",
    "rate",
    "ci_low",
    "ci_high",
    "empirical_flip_rate",
    "seed",
]


def append_result_csv(
    path: str,
    *,
    n: int,
    trials: int,
    modulation: str,
    jammer: str,
    lam: float,
    estimate: SuccessEstimate,
    seed: int,
) -> None:
    """Append one experiment row, writing the header when the file is new."""
    fresh = not os.path.exists(path) or os.path.getsize(path) == 0
    with open(path, "a", newline="") as fh:
        writer = csv.writer(fh)
        if fresh:
            writer.writerow(CSV_HEADER)
        writer.writerow(
            [
                n,
                trials,
                modulation,
                jammer,
                f"{lam:.12g}",
                f"{estimate.rate:.12g}",
                f"{estimate.ci_low:.12g}",
                f"{estimate.ci_high:.12g}",
                f"{estimate.empirical_flip_rate:.12g}",
                seed,
            ]
        )
