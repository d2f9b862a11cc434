"""Closed-form capacity of the state-aware jammed binary channel.

For environmental flip probability omega and jammer power budget Lambda,
the single-sender capacity is

    C(Lambda, omega) = 1 - max h(omega + tau)  over |tau| <= Lambda,
                                               omega + tau in [0, 1].

The inner maximum sits at the admissible point closest to 1/2, so the
whole formula reduces to a clamp followed by one binary-entropy call; no
numeric optimization is ever needed. The capacity vanishes exactly on
{|omega - 1/2| <= Lambda}.

Plugging in the effective flip probabilities of the modulation resources
gives the communication thresholds: classical resources (omega = 1/4) die
at Lambda = 1/4, the quantum resource (omega = (2 - sqrt(2))/4) at
Lambda = sqrt(2)/4, and the maximal non-signalling box (omega = 0) at
Lambda = 1/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .info import BinaryChannel, BitDistribution, binary_entropy

CLASSICAL_BASE_FLIP = 0.25
EPR_BASE_FLIP = (2.0 - math.sqrt(2.0)) / 4.0
PR_BASE_FLIP = 0.0

MODULATION_BASE_FLIPS = {
    "classical": CLASSICAL_BASE_FLIP,
    "epr": EPR_BASE_FLIP,
    "pr": PR_BASE_FLIP,
}


@dataclass(frozen=True)
class CapacityQuery:
    """A (power budget, environmental flip probability) pair."""

    lam: float
    omega: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError(f"lambda must lie in [0, 1], got {self.lam}")
        if not 0.0 <= self.omega <= 1.0:
            raise ValueError(f"omega must lie in [0, 1], got {self.omega}")


@dataclass(frozen=True)
class CompoundClassQuery:
    """First-stage mix nu and the lower bound Lambda on both stage parameters."""

    nu: float
    lam: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.nu <= 1.0:
            raise ValueError(f"nu must lie in [0, 1], got {self.nu}")
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError(f"lambda must lie in [0, 1], got {self.lam}")


def _clamp_toward_half(lo: float, hi: float) -> float:
    return min(max(0.5, lo), hi)


def _capacity_gap(p: float) -> float:
    """1 - h(p), stable near p = 1/2.

    Direct evaluation of 1 - h(p) underflows to zero for |p - 1/2| below
    about 1e-8 because h rounds to 1.0; the series

        1 - h(1/2 + d) = (1/ln 2) * sum_{k>=1} (2d)^(2k) / (2k(2k-1))

    keeps the value exact to working precision there, so the zero set of
    the capacity stays sharp.
    """
    d = p - 0.5
    if abs(d) >= 0.1:
        return 1.0 - binary_entropy(p)
    if d == 0.0:
        return 0.0
    x = (2.0 * d) ** 2
    total = 0.0
    term = x
    k = 1
    while True:
        contribution = term / (2 * k * (2 * k - 1))
        total += contribution
        if contribution < total * 1e-18:
            break
        term *= x
        k += 1
    return total / math.log(2.0)


def avcei_capacity(lam: float, omega: float) -> float:
    """Capacity in bits per use; zero iff |omega - 1/2| <= lam."""
    CapacityQuery(lam, omega)  # range validation
    lo = max(0.0, omega - lam)
    hi = min(1.0, omega + lam)
    return _capacity_gap(_clamp_toward_half(lo, hi))


def symmetrizability_cost(p: BitDistribution) -> float:
    """Cheapest average flip cost over the symmetrizing channels: min{p0, p1}.

    Maximized at the uniform input, value 1/2, which is why budgets below
    1/2 leave the unjammed adder channel usable.
    """
    return min(p.p0, p.p1)


def effective_noise_level(lam: float, omega: float) -> float:
    """Flip rate the jammer can simulate: min(1/2, omega + lam)."""
    if not 0.0 <= lam <= 1.0 or not 0.0 <= omega <= 1.0:
        raise ValueError("lambda and omega must lie in [0, 1]")
    return min(0.5, omega + lam)


def rate_endpoint(modulation: str, lam: float) -> float:
    """Best single-sender rate for a named modulation resource.

    The achievable region contains (R, 0) and (0, R) for every R up to the
    returned value.
    """
    if modulation not in MODULATION_BASE_FLIPS:
        raise ValueError(
            f"modulation must be one of {sorted(MODULATION_BASE_FLIPS)}, got {modulation!r}"
        )
    return avcei_capacity(lam, MODULATION_BASE_FLIPS[modulation])


def compound_capacity(query: CompoundClassQuery | float, lam: float | None = None) -> float:
    """Capacity of the two-stage compound family with parameters >= Lambda.

    Every member is a symmetric channel whose parameter ranges over
    [nu*Lambda, 1 - (1-nu)*Lambda]; the worst case is the admissible
    parameter closest to 1/2, so the capacity is zero iff that interval
    contains 1/2.
    """
    if not isinstance(query, CompoundClassQuery):
        if lam is None:
            raise TypeError("compound_capacity needs a CompoundClassQuery or (nu, lam)")
        query = CompoundClassQuery(nu=query, lam=lam)
    lo = query.nu * query.lam
    hi = 1.0 - (1.0 - query.nu) * query.lam
    return _capacity_gap(_clamp_toward_half(lo, hi))


@dataclass(frozen=True)
class SweepRow:
    lam: float
    classical: float
    epr: float
    pr: float


def separation_sweep(lambda_grid: Iterable[float]) -> list[SweepRow]:
    """Rate endpoints of the three resources across a budget grid."""
    return [
        SweepRow(
            lam=lam,
            classical=rate_endpoint("classical", lam),
            epr=rate_endpoint("epr", lam),
            pr=rate_endpoint("pr", lam),
        )
        for lam in lambda_grid
    ]


def capacity_monotonicity_check(
    lambda1: float, lambda2: float, omega: float, tol: float = 1e-12
) -> bool:
    """Trading environment noise for budget never helps the sender:

    C(lambda1, omega) >= C(lambda1 + lambda2 + omega, 0).

    ``lambda2`` is extra slack folded into the right-hand budget; the grid
    checks use lambda2 = 0.
    """
    lhs = avcei_capacity(lambda1, omega)
    rhs = avcei_capacity(min(1.0, lambda1 + lambda2 + omega), 0.0)
    return lhs >= rhs - tol


@dataclass(frozen=True)
class SymmetrizerFamily:
    """Symmetric channels U(s|x) with stay weight theta.

    Every member symmetrizes the two-state family (W, flip-then-W): feeding
    the state through U makes the swapped input/state pairs statistically
    identical, which is what forces the capacity to zero once the budget
    covers the cost min{p0, p1}.
    """

    theta: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.theta <= 1.0:
            raise ValueError(f"theta must lie in [0, 1], got {self.theta}")

    def channel(self) -> BinaryChannel:
        t = self.theta
        return BinaryChannel([[t, 1.0 - t], [1.0 - t, t]])


def is_symmetrizer(
    u: BinaryChannel, w0: BinaryChannel, w1: BinaryChannel, tol: float = 1e-12
) -> bool:
    """Check sum_s u(s|x') w_s(y|x) = sum_s u(s|x) w_s(y|x') for all x, x', y."""
    w = (w0.w, w1.w)
    for x in range(2):
        for xp in range(2):
            for y in range(2):
                lhs = sum(u.w[xp, s] * w[s][x, y] for s in range(2))
                rhs = sum(u.w[x, s] * w[s][xp, y] for s in range(2))
                if abs(lhs - rhs) > tol:
                    return False
    return True
