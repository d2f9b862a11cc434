"""Block-level simulation of the jammed two-sender channel.

Per position i the environment draws uniform bits (x_i, y_i), the
modulators answer (alpha_i, beta_i) from the shared resource, and the
pre-jamming noise bit is e_i = x_i*y_i XOR alpha_i XOR beta_i. The jammer
sees the whole e^n, answers with an admissible s^n, and Charlie receives

    c_i = a_i XOR b_i XOR e_i XOR s_i.

Admissibility of s^n is enforced here, not trusted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .correlations import Correlation, effective_flip_prob
from .info import MacKernel, adder, bsc, pack_bits_hex, weight
from .jamming import BudgetViolationError, budget_count

EXACT_OUTPUT_MAX_N = 6


@dataclass(frozen=True)
class BlockTrace:
    """One simulated block; all vectors have length n."""

    n: int
    x: np.ndarray
    y: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    e: np.ndarray
    s: np.ndarray
    c: np.ndarray
    seed: int | None = None

    def to_json(self) -> str:
        """One JSON object with hex-packed bitstrings (MSB-first, zero-padded)."""
        return json.dumps(
            {
                "n": self.n,
                "x": pack_bits_hex(self.x),
                "y": pack_bits_hex(self.y),
                "alpha": pack_bits_hex(self.alpha),
                "beta": pack_bits_hex(self.beta),
                "e": pack_bits_hex(self.e),
                "s": pack_bits_hex(self.s),
                "c": pack_bits_hex(self.c),
                "seed": self.seed,
            }
        )


def _sample_modulator_outputs(
    corr: Correlation, x: np.ndarray, y: np.ndarray, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Draw (alpha_i, beta_i) ~ q(.|x_i, y_i) independently per position."""
    flat = corr.table.reshape(2, 2, 4)
    probs = flat[x, y]  # (n, 4)
    cdf = np.cumsum(probs, axis=1)
    u = rng.random(len(x))
    idx = np.minimum((u[:, None] >= cdf).sum(axis=1), 3)
    return (idx >> 1).astype(np.uint8), (idx & 1).astype(np.uint8)


def transmit_block(
    corr: Correlation,
    a: np.ndarray,
    b: np.ndarray,
    jammer,
    lam: float,
    rng: np.random.Generator,
    seed: int | None = None,
) -> BlockTrace:
    """Simulate one block; ``jammer`` may be None for a silent adversary.

    Raises BudgetViolationError if the strategy returns a vector with more
    than floor(n * lam) ones.
    """
    a = np.asarray(a, dtype=np.uint8)
    b = np.asarray(b, dtype=np.uint8)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError("codewords must be 1-d arrays of equal length")
    n = len(a)
    if n < 1:
        raise ValueError("block length must be >= 1")
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda must lie in [0, 1], got {lam}")

    x = rng.integers(0, 2, size=n, dtype=np.uint8)
    y = rng.integers(0, 2, size=n, dtype=np.uint8)
    alpha, beta = _sample_modulator_outputs(corr, x, y, rng)
    e = (x & y) ^ alpha ^ beta

    if jammer is None:
        s = np.zeros(n, dtype=np.uint8)
    else:
        s = np.asarray(jammer.respond(e, rng), dtype=np.uint8)
        if s.shape != e.shape:
            raise BudgetViolationError("strategy returned a vector of wrong length")
        if weight(s) > budget_count(n, lam):
            raise BudgetViolationError(
                f"strategy used {weight(s)} flips, budget is {budget_count(n, lam)}"
            )

    c = a ^ b ^ e ^ s
    return BlockTrace(n=n, x=x, y=y, alpha=alpha, beta=beta, e=e, s=s, c=c, seed=seed)


def effective_kernel(corr: Correlation, s: int) -> MacKernel:
    """Average the channel over environment and modulators for a fixed jammer bit.

    The result is the adder followed by a symmetric channel whose flip
    probability is f for s = 0 and 1 - f for s = 1, with f the resource's
    effective flip probability.
    """
    if s not in (0, 1):
        raise ValueError("s must be 0 or 1")
    f = effective_flip_prob(corr)
    return adder().then(bsc(f if s == 0 else 1.0 - f))


def _residual_bit_probability(corr: Correlation) -> float:
    """P(e = 1) by direct summation over the sixteen (x, y, alpha, beta) cells."""
    total = 0.0
    for x in range(2):
        for y in range(2):
            for al in range(2):
                for be in range(2):
                    if (x & y) ^ al ^ be:
                        total += corr.table[x, y, al, be] / 4.0
    return total


def exact_output_distribution(
    corr: Correlation,
    a: np.ndarray,
    b: np.ndarray,
    jammer=None,
) -> np.ndarray:
    """Exact law of c^n, indexed by bitmask with position 0 most significant.

    Sums over the environment, the modulator outputs and the strategy's
    internal randomness; positions are independent by construction, which
    organizes the sum as a product over positions followed by the exact
    response distribution of the strategy. Enumeration only, so n <= 6.
    """
    a = np.asarray(a, dtype=np.uint8)
    b = np.asarray(b, dtype=np.uint8)
    n = len(a)
    if len(b) != n:
        raise ValueError("codewords must have equal length")
    if n > EXACT_OUTPUT_MAX_N:
        raise ValueError(f"exact enumeration supports n <= {EXACT_OUTPUT_MAX_N}")

    p1 = _residual_bit_probability(corr)
    ab_mask = 0
    for bit in (a ^ b).tolist():
        ab_mask = (ab_mask << 1) | bit

    out = np.zeros(1 << n)
    for e_mask in range(1 << n):
        pe = 1.0
        for i in range(n):
            pe *= p1 if (e_mask >> i) & 1 else 1.0 - p1
        if jammer is None:
            responses = [(None, 1.0)]
        else:
            e = np.array([(e_mask >> (n - 1 - i)) & 1 for i in range(n)], dtype=np.uint8)
            responses = jammer.response_distribution(e)
        for s, ps in responses:
            if s is None:
                s_mask = 0
            else:
                s_mask = 0
                for bit in np.asarray(s, dtype=np.uint8).tolist():
                    s_mask = (s_mask << 1) | bit
            c_mask = ab_mask ^ e_mask ^ s_mask
            out[c_mask] += pe * (float(ps) if isinstance(ps, Fraction) else ps)
    return out
