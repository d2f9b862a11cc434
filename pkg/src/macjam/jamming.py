"""Admissible jammer strategies and their induced noise distributions.

A strategy sees the whole pre-jamming noise vector e^n before answering
(non-causal) and must return s^n with at most floor(n * Lambda) ones.
Two strategies are provided:

* a greedy baseline that flips as many noise-free positions as the budget
  allows, pushing the effective flip rate from f up to f + Lambda;
* a typed strategy that reacts only to noise vectors whose weight t falls
  in a window [t1, t2]. It draws k from weights lambda_0..lambda_K and
  flips chi(K, t, k) = k - (t - t1) + (budget - K) clean positions chosen
  uniformly. The count chi is rigged so that the weight of e^n XOR s^n is
  t1 + budget - K + k regardless of t, which makes the law of the jammed
  noise an explicit mixture of uniform constant-weight distributions,
  identical for every t in the window.

The mixture identity is checked here by exact rational enumeration for
small n; `induced_state_distribution` is that oracle.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .info import weight

EXACT_ENUM_MAX_N = 12


class BudgetViolationError(RuntimeError):
    """A strategy emitted more flips than its power constraint allows."""


class SizingError(ValueError):
    """Window parameters cannot be realized at the requested block length."""


def budget_count(n: int, lam: float) -> int:
    """Power budget floor(n * Lambda)."""
    return int(math.floor(n * lam))


@dataclass(frozen=True)
class JammerBudget:
    """Power constraint Lambda at block length n; the count is floor(n*Lambda)."""

    lam: float
    n: int

    def __post_init__(self) -> None:
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError(f"lambda must lie in [0, 1], got {self.lam}")
        if self.n < 1:
            raise ValueError("n must be >= 1")

    @property
    def budget(self) -> int:
        return budget_count(self.n, self.lam)


def check_admissible(s: np.ndarray, budget: JammerBudget) -> bool:
    """True iff the flip count does not exceed the budget (equality allowed)."""
    return weight(s) <= budget.budget


# ---------------------------------------------------------------------------
# greedy baseline

@dataclass(frozen=True)
class GreedyJammer:
    """Flip min(budget, #clean) uniformly chosen positions where e_i = 0."""

    budget: JammerBudget

    def respond(self, e: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        n = len(e)
        if n != self.budget.n:
            raise ValueError("noise vector length does not match the configured n")
        s = np.zeros(n, dtype=np.uint8)
        clean = np.flatnonzero(e == 0)
        k = min(self.budget.budget, len(clean))
        if k:
            s[rng.choice(clean, size=k, replace=False)] = 1
        return s

    def response_distribution(self, e: np.ndarray) -> list[tuple[np.ndarray, Fraction]]:
        """Exact law of s^n given e^n; support is all k-subsets of the clean set."""
        n = len(e)
        clean = np.flatnonzero(e == 0)
        k = min(self.budget.budget, len(clean))
        total = math.comb(len(clean), k)
        out = []
        for subset in itertools.combinations(clean.tolist(), k):
            s = np.zeros(n, dtype=np.uint8)
            s[list(subset)] = 1
            out.append((s, Fraction(1, total)))
        return out


def greedy_jammer(budget: JammerBudget) -> GreedyJammer:
    return GreedyJammer(budget)


# ---------------------------------------------------------------------------
# typed strategy

def chi(K: int, t: int, k: int, t1: int, budget: int) -> int:
    """Number of clean positions to flip: k - (t - t1) + (budget - K).

    Decreasing in t and increasing in k; the window invariants keep it in
    [0, budget].
    """
    if not 0 <= k <= K:
        raise ValueError(f"k must lie in [0, {K}], got {k}")
    if t < t1:
        raise ValueError(f"t must be at least t1 = {t1}, got {t}")
    value = k - (t - t1) + (budget - K)
    if not 0 <= value <= budget:
        raise ValueError(f"flip count {value} falls outside [0, {budget}]")
    return value


def lambda_weights(n: int, t_top: int, K: int, p_star: float) -> np.ndarray:
    """Mixture weights over k = 0..K, proportional to i.i.d.(p_star) type masses.

    Weight k targets the type class of weight t_top - K + k; the k-th weight
    is proportional to binomial(n, t_top-K+k) * p^(t_top-K+k) * (1-p)^(n-...).
    Computed in log space so large n stays finite.
    """
    if K < 0:
        raise ValueError("K must be non-negative")
    if t_top - K < 0 or t_top > n:
        raise ValueError(f"window [{t_top - K}, {t_top}] leaves [0, {n}]")
    if not 0.0 < p_star < 1.0:
        raise ValueError(f"p_star must lie in (0, 1), got {p_star}")
    ks = np.arange(K + 1)
    w = t_top - K + ks
    log_comb = np.array(
        [math.lgamma(n + 1) - math.lgamma(x + 1) - math.lgamma(n - x + 1) for x in w]
    )
    logs = log_comb + w * math.log(p_star) + (n - w) * math.log1p(-p_star)
    logs -= logs.max()
    raw = np.exp(logs)
    return raw / raw.sum()


@dataclass(frozen=True)
class TypicalJammerParams:
    """Window bounds, randomization span and mixture weights of the typed strategy.

    Feasibility requires budget - K - t2 + t1 >= 0 (so the flip count never
    goes negative), t1 + budget <= n (room for the flips) and K <= t1 + budget
    (the lowest reachable weight is non-negative).
    """

    n: int
    lam: float
    t1: int
    t2: int
    K: int
    weights: tuple

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError("lambda must lie in [0, 1]")
        b = self.budget
        if not 0 <= self.t1 <= self.t2 <= self.n:
            raise ValueError(f"window [{self.t1}, {self.t2}] is invalid for n = {self.n}")
        if b - self.K - self.t2 + self.t1 < 0:
            raise ValueError("budget - K - t2 + t1 must be non-negative")
        if self.t1 + b > self.n:
            raise ValueError("t1 + budget must not exceed n")
        if self.K < 0 or self.K > self.t1 + b:
            raise ValueError("K must lie in [0, t1 + budget]")
        if len(self.weights) != self.K + 1:
            raise ValueError(f"need exactly K+1 = {self.K + 1} weights")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be non-negative")
        total = sum(self.weights)
        if isinstance(total, Fraction):
            if total != 1:
                raise ValueError("weights must sum to 1")
        elif abs(float(total) - 1.0) > 1e-9:
            raise ValueError("weights must sum to 1")

    @property
    def budget(self) -> int:
        return budget_count(self.n, self.lam)

    def reachable_types(self) -> range:
        """Weights of e^n XOR s^n the strategy can produce inside the window."""
        top = self.t1 + self.budget
        return range(top - self.K, top + 1)


def _window_counts(n: int, lam: float, eta: float, eps: float) -> tuple[int, int, int]:
    t1 = max(0, math.ceil((eta - eps) * n))
    t2 = min(n, math.floor((eta + eps) * n))
    K = math.floor(2 * eps * n)
    return t1, t2, K


def _window_infeasibility(n: int, lam: float, eta: float, eps: float) -> str | None:
    """Reason the rounded window fails at this n, or None if it is fine."""
    t1, t2, K = _window_counts(n, lam, eta, eps)
    b = budget_count(n, lam)
    if t1 > t2:
        return f"rounding gives an empty window [{t1}, {t2}]"
    if b - K - t2 + t1 < 0:
        return f"budget {b} cannot cover K = {K} plus the window span {t2 - t1}"
    if t1 + b > n:
        return f"t1 + budget = {t1 + b} exceeds n = {n}"
    if K > t1 + b:
        return f"K = {K} exceeds t1 + budget = {t1 + b}"
    return None


def typical_params_from_rates(
    n: int,
    lam: float,
    eta: float,
    eps: float = 0.05,
    p_star: float | None = None,
) -> TypicalJammerParams:
    """Size the window from rates: t1 = ceil((eta-eps)n), t2 = floor((eta+eps)n), K = floor(2*eps*n).

    ``eta`` is the base flip probability of the noise the jammer expects;
    ``p_star`` is the i.i.d. parameter targeted by the mixture weights and
    defaults to the midpoint (t1 + budget - K/2)/n of the reachable window.

    Raises SizingError naming the minimal feasible block length when the
    rounded window cannot be realized at this n.
    """
    if not 0.0 <= eta <= 1.0:
        raise ValueError("eta must lie in [0, 1]")
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    try:
        return _build_typical_params(n, lam, eta, eps, p_star)
    except ValueError as err:
        minimal = _minimal_feasible_n(lam, eta, eps)
        if minimal is None:
            raise SizingError(
                f"window sizing failed at n = {n} ({err}); no feasible block "
                f"length up to {SIZING_SCAN_MAX_N} exists for lambda = {lam}, "
                f"eta = {eta}, eps = {eps}"
            ) from err
        raise SizingError(
            f"window sizing failed at n = {n} ({err}); the minimal feasible "
            f"block length for these rates is n = {minimal}"
        ) from err


def _build_typical_params(
    n: int, lam: float, eta: float, eps: float, p_star: float | None
) -> TypicalJammerParams:
    reason = _window_infeasibility(n, lam, eta, eps)
    if reason is not None:
        raise ValueError(reason)
    t1, t2, K = _window_counts(n, lam, eta, eps)
    b = budget_count(n, lam)
    if p_star is None:
        p_star = (t1 + b - K / 2.0) / n
        p_star = min(max(p_star, 0.5 / n), 1.0 - 0.5 / n)
    weights = lambda_weights(n, t1 + b, K, p_star)
    return TypicalJammerParams(n=n, lam=lam, t1=t1, t2=t2, K=K, weights=tuple(weights))


SIZING_SCAN_MAX_N = 50_000


def _minimal_feasible_n(lam: float, eta: float, eps: float) -> int | None:
    for n in range(1, SIZING_SCAN_MAX_N + 1):
        if _window_infeasibility(n, lam, eta, eps) is None:
            return n
    return None


@dataclass(frozen=True)
class TypicalJammer:
    """The typed strategy; outside the weight window it stays silent."""

    params: TypicalJammerParams

    def respond(self, e: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        p = self.params
        n = len(e)
        if n != p.n:
            raise ValueError("noise vector length does not match the configured n")
        s = np.zeros(n, dtype=np.uint8)
        t = weight(e)
        if not p.t1 <= t <= p.t2:
            return s
        k = int(rng.choice(p.K + 1, p=np.asarray(p.weights, dtype=float)))
        flips = chi(p.K, t, k, p.t1, p.budget)
        if flips:
            clean = np.flatnonzero(e == 0)
            s[rng.choice(clean, size=flips, replace=False)] = 1
        return s

    def response_distribution(self, e: np.ndarray) -> list[tuple[np.ndarray, Fraction]]:
        p = self.params
        n = len(e)
        t = weight(e)
        if not p.t1 <= t <= p.t2:
            return [(np.zeros(n, dtype=np.uint8), Fraction(1))]
        clean = np.flatnonzero(e == 0).tolist()
        out = []
        for k, lam_k in enumerate(p.weights):
            lam_k = Fraction(lam_k) if not isinstance(lam_k, Fraction) else lam_k
            if lam_k == 0:
                continue
            flips = chi(p.K, t, k, p.t1, p.budget)
            share = lam_k / math.comb(len(clean), flips)
            for subset in itertools.combinations(clean, flips):
                s = np.zeros(n, dtype=np.uint8)
                s[list(subset)] = 1
                out.append((s, share))
        return out


def typical_jammer(params: TypicalJammerParams) -> TypicalJammer:
    return TypicalJammer(params)


# ---------------------------------------------------------------------------
# exact small-n verification

def _mask(bits: tuple[int, ...] | np.ndarray) -> int:
    m = 0
    for b in bits:
        m = (m << 1) | int(b)
    return m


def induced_state_distribution(params: TypicalJammerParams, t: int) -> dict[int, Fraction]:
    """Exact law of e^n XOR s^n for e^n uniform on the weight-t type class.

    Full enumeration over the type class, the mixture index k and the flip
    placements, in rational arithmetic (weights should be Fractions for a
    zero-tolerance result). Keys are bitmasks with position 0 as the most
    significant bit. Requires n <= 12.
    """
    p = params
    if p.n > EXACT_ENUM_MAX_N:
        raise ValueError(f"exact enumeration supports n <= {EXACT_ENUM_MAX_N}")
    if not p.t1 <= t <= p.t2:
        raise ValueError(f"t must lie in the window [{p.t1}, {p.t2}]")
    n = p.n
    class_size = math.comb(n, t)
    dist: dict[int, Fraction] = {}
    for ones in itertools.combinations(range(n), t):
        e_mask = 0
        for i in ones:
            e_mask |= 1 << (n - 1 - i)
        clean = [i for i in range(n) if i not in ones]
        for k, lam_k in enumerate(p.weights):
            lam_k = Fraction(lam_k) if not isinstance(lam_k, Fraction) else lam_k
            if lam_k == 0:
                continue
            flips = chi(p.K, t, k, p.t1, p.budget)
            share = lam_k / (class_size * math.comb(len(clean), flips))
            for subset in itertools.combinations(clean, flips):
                out = e_mask
                for i in subset:
                    out |= 1 << (n - 1 - i)
                dist[out] = dist.get(out, Fraction(0)) + share
    return dist


def type_mixture(params: TypicalJammerParams) -> dict[int, Fraction]:
    """The target mixture: sum_k lambda_k * uniform(weight t1 + budget - K + k)."""
    p = params
    if p.n > EXACT_ENUM_MAX_N:
        raise ValueError(f"exact enumeration supports n <= {EXACT_ENUM_MAX_N}")
    n = p.n
    dist: dict[int, Fraction] = {}
    for k, lam_k in enumerate(p.weights):
        lam_k = Fraction(lam_k) if not isinstance(lam_k, Fraction) else lam_k
        if lam_k == 0:
            continue
        w = p.t1 + p.budget - p.K + k
        share = lam_k / math.comb(n, w)
        for ones in itertools.combinations(range(n), w):
            m = 0
            for i in ones:
                m |= 1 << (n - 1 - i)
            dist[m] = dist.get(m, Fraction(0)) + share
    return dist


# ---------------------------------------------------------------------------
# asymptotic bookkeeping

@dataclass(frozen=True)
class NoiseProfile:
    """Rates describing what the typed strategy simulates at block length n.

    ``p_target`` is the i.i.d. parameter whose typical weight equals the top
    of the reachable window, (t1 + budget)/n; ``eps_n`` = lam + eta - p_target
    is non-negative and approaches eps as n grows.
    """

    eta: float
    eps: float
    p_target: float
    eps_n: float


def noise_profile(eta: float, eps: float, lam: float, n: int) -> NoiseProfile:
    t1, _, _ = _window_counts(n, lam, eta, eps)
    p_target = (budget_count(n, lam) + t1) / n
    return NoiseProfile(eta=eta, eps=eps, p_target=p_target, eps_n=lam + eta - p_target)


# ---------------------------------------------------------------------------
# configuration

def strategy_from_config(cfg: dict, n: int, eta: float):
    """Build a strategy from {kind, lambda, eps?, p_star?}; kind 'none' gives None."""
    kind = cfg.get("kind", "none")
    if kind == "none":
        return None
    if kind not in ("greedy", "typical"):
        raise ValueError(f"unknown strategy kind {kind!r}")
    lam = float(cfg["lambda"])
    if kind == "greedy":
        return greedy_jammer(JammerBudget(lam=lam, n=n))
    params = typical_params_from_rates(
        n=n,
        lam=lam,
        eta=eta,
        eps=float(cfg.get("eps", 0.05)),
        p_star=cfg.get("p_star"),
    )
    return typical_jammer(params)


def strategy_to_config(strategy) -> dict:
    if strategy is None:
        return {"kind": "none"}
    if isinstance(strategy, GreedyJammer):
        return {"kind": "greedy", "lambda": strategy.budget.lam}
    if isinstance(strategy, TypicalJammer):
        return {"kind": "typical", "lambda": strategy.params.lam}
    raise TypeError(f"unknown strategy type {type(strategy)!r}")
