"""Named verification suites behind the ``verify`` CLI subcommand.

Each check re-derives one structural claim of the model (exact rational
enumeration where possible, tight float tolerances elsewhere) and reports
a single pass/fail line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import capacity as cap
from . import correlations as corr
from . import jamming
from .info import BitDistribution, bsc, compose, sample_iid
from .rng import stream

TOL = 1e-12


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _bisect_root(fn, lo: float, hi: float, tol: float = 1e-12) -> float:
    """Boundary of {x: fn(x) > 0} on [lo, hi], assuming fn > 0 at lo and = 0 at hi."""
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if fn(mid) > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol:
            break
    return 0.5 * (lo + hi)


def _random_local_spec(rng: np.random.Generator, max_shared: int = 6) -> corr.LocalCorrelationSpec:
    e = int(rng.integers(1, max_shared + 1))
    p = rng.random(e)
    p /= p.sum()
    qa = rng.random((e, 2, 2))
    qa /= qa.sum(axis=2, keepdims=True)
    qb = rng.random((e, 2, 2))
    qb /= qb.sum(axis=2, keepdims=True)
    return corr.LocalCorrelationSpec(p_shared=p, alice_table=qa, bob_table=qb)


# ---------------------------------------------------------------------------
# suites

def suite_classical() -> list[CheckResult]:
    results = []

    values = {
        corr.deterministic_flip_fraction(m) for m in corr.all_deterministic_modulators()
    }
    results.append(
        CheckResult(
            "extremal modulator pairs flip in {1/4, 3/4} (exact)",
            values == {Fraction(1, 4), Fraction(3, 4)},
            f"values: {sorted(values)}",
        )
    )

    rng = stream(20_240_001)
    ok = True
    worst = ""
    for _ in range(100):
        c = corr.local_correlation(_random_local_spec(rng))
        f = corr.effective_flip_prob(c)
        if not (0.25 - TOL <= f <= 0.75 + TOL) or not corr.is_nonsignalling(c, TOL):
            ok = False
            worst = f"offending flip probability {f}"
            break
    results.append(
        CheckResult("100 random shared-randomness tables flip in [1/4, 3/4]", ok, worst)
    )
    return results


def suite_epr() -> list[CheckResult]:
    results = []
    t = 1.0 / (4.0 * math.sqrt(2.0))
    table = corr.epr_correlation()

    expected_same = np.array([0.25 + t, 0.25 - t, 0.25 - t, 0.25 + t])
    expected_diff = np.array([0.25 - t, 0.25 + t, 0.25 + t, 0.25 - t])
    err = 0.0
    for x in range(2):
        for y in range(2):
            want = expected_diff if x & y else expected_same
            err = max(err, float(np.max(np.abs(table.conditional(x, y).ravel() - want))))
    results.append(
        CheckResult("measurement table equals 1/4 +- 1/(4*sqrt(2))", err <= TOL, f"max err {err:.2e}")
    )

    win = corr.chsh_win_probability(table)
    target = math.cos(math.pi / 8.0) ** 2
    results.append(
        CheckResult(
            "CHSH win probability equals cos^2(pi/8)",
            abs(win - target) <= TOL,
            f"win = {win!r}",
        )
    )

    box = corr.pr_box(t)
    gap = float(np.max(np.abs(table.table - box.table)))
    results.append(
        CheckResult("quantum table equals the strength-1/(4*sqrt(2)) box", gap <= TOL, f"gap {gap:.2e}")
    )

    results.append(
        CheckResult("quantum table is non-signalling", corr.is_nonsignalling(table, TOL))
    )
    return results


def _jammer_grid() -> list[jamming.TypicalJammerParams]:
    u = lambda k: tuple(Fraction(1, k + 1) for _ in range(k + 1))
    grid = [
        dict(n=12, lam=5.5 / 12, t1=2, t2=3, K=2, weights=u(2)),
        dict(n=12, lam=4.5 / 12, t1=3, t2=3, K=0, weights=(Fraction(1),)),
        dict(n=12, lam=6.5 / 12, t1=1, t2=2, K=3,
             weights=(Fraction(1, 2), Fraction(1, 4), Fraction(1, 8), Fraction(1, 8))),
        dict(n=12, lam=6.5 / 12, t1=4, t2=5, K=1, weights=(Fraction(1, 3), Fraction(2, 3))),
        dict(n=12, lam=7.5 / 12, t1=0, t2=2, K=4, weights=u(4)),
        dict(n=12, lam=3.5 / 12, t1=2, t2=2, K=3, weights=u(3)),
    ]
    return [jamming.TypicalJammerParams(**g) for g in grid]


def suite_jammer() -> list[CheckResult]:
    results = []

    ok = True
    detail = ""
    for params in _jammer_grid():
        target = jamming.type_mixture(params)
        for t in range(params.t1, params.t2 + 1):
            got = jamming.induced_state_distribution(params, t)
            if got != target:
                ok = False
                detail = f"mixture identity fails at n={params.n}, t={t}"
                break
        if not ok:
            break
    results.append(CheckResult("jammed-noise law is the exact type mixture (n = 12)", ok, detail))

    rng = stream(20_240_002)
    violations = 0
    blocks = 0
    for _ in range(200):
        n = int(rng.integers(8, 65))
        lam = float(rng.uniform(0.0, 0.6))
        budget = jamming.JammerBudget(lam=lam, n=n)
        strategies = [jamming.greedy_jammer(budget)]
        try:
            strategies.append(
                jamming.typical_jammer(
                    jamming.typical_params_from_rates(n, lam, eta=float(rng.uniform(0.1, 0.4)))
                )
            )
        except jamming.SizingError:
            pass
        for strat in strategies:
            for _ in range(25):
                e = sample_iid(BitDistribution(float(rng.uniform(0.0, 0.8))), n, rng)
                s = strat.respond(e, rng)
                blocks += 1
                if not jamming.check_admissible(s, budget):
                    violations += 1
    results.append(
        CheckResult(
            "sampled strategies never exceed the budget",
            violations == 0,
            f"{blocks} blocks, {violations} violations",
        )
    )
    return results


def suite_capacity() -> list[CheckResult]:
    results = []

    v1 = cap.avcei_capacity(0.25, 0.25)
    v2 = cap.avcei_capacity(0.25, cap.EPR_BASE_FLIP)
    target = 0.03116599428984558  # 1 - h((1 + sqrt(2))/4), high-precision evaluation
    results.append(
        CheckResult(
            "capacity special values at budget 1/4",
            v1 == 0.0 and abs(v2 - target) <= 1e-9,
            f"C(1/4, 1/4) = {v1!r}, C(1/4, (2-sqrt2)/4) = {v2!r}",
        )
    )

    thresholds = {"classical": 0.25, "epr": math.sqrt(2.0) / 4.0, "pr": 0.5}
    ok = True
    detail = ""
    for name, expected in thresholds.items():
        root = _bisect_root(lambda lam: cap.rate_endpoint(name, lam), 0.0, 1.0)
        if abs(root - expected) > 1e-9:
            ok = False
            detail = f"{name} crossing at {root}, expected {expected}"
            break
    results.append(CheckResult("rate endpoints vanish at 1/4, sqrt(2)/4, 1/2", ok, detail))

    c_zero = cap.compound_capacity(0.75, 2.0 / 3.0)
    nu_q = 0.5 * (1.0 + 1.0 / math.sqrt(2.0))
    c_pos = cap.compound_capacity(nu_q, 2.0 / 3.0)
    results.append(
        CheckResult(
            "compound family: zero classically, positive with the quantum mix",
            c_zero == 0.0 and c_pos > 0.0,
            f"{c_zero!r} vs {c_pos!r}",
        )
    )

    rng = stream(20_240_003)
    ok = all(
        cap.capacity_monotonicity_check(float(rng.random()), 0.0, float(rng.random()))
        for _ in range(1000)
    )
    results.append(CheckResult("budget/noise trade inequality on 1000 random points", ok))

    rng = stream(20_240_004)
    ok = True
    for _ in range(100):
        theta = float(rng.random())
        stay = float(rng.random())
        u = cap.SymmetrizerFamily(theta).channel()
        w0 = bsc(1.0 - stay)
        w1 = compose(w0, bsc(1.0))
        if not cap.is_symmetrizer(u, w0, w1, TOL):
            ok = False
            break
    results.append(CheckResult("symmetric channels symmetrize the state pair (100 random)", ok))
    return results


SUITES = {
    "classical": suite_classical,
    "epr": suite_epr,
    "jammer": suite_jammer,
    "capacity": suite_capacity,
}


def run_suite(name: str) -> list[CheckResult]:
    if name == "all":
        out: list[CheckResult] = []
        for fn in SUITES.values():
            out.extend(fn())
        return out
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    return SUITES[name]()
