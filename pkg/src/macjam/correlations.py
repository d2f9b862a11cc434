"""Modulation resources shared by the two senders.

A modulation resource is a conditional table q(alpha, beta | x, y) on bits:
each sender's device reads one environment bit and emits one output bit.
Four families are covered:

* deterministic strategies (each side applies one of identity, flip,
  constant-0, constant-1);
* local correlations (shared classical randomness between the sides);
* quantum statistics from measuring a maximally entangled qubit pair with
  rotated bases, which win the CHSH game with probability cos^2(pi/8);
* the stronger non-signalling box family parameterized by a correlation
  strength t, whose extreme point t = 1/4 wins CHSH with certainty.

The single scalar summarizing a resource is its effective flip
probability: the chance that the residual noise bit x*y XOR alpha XOR beta
equals 1 under uniformly random (x, y). Classical resources cannot push
this below 1/4; the quantum table reaches (2 - sqrt(2))/4; the t = 1/4 box
reaches 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .info import ATOL

KINDS = ("deterministic", "local", "quantum", "box")

# parity[x, y, a, b] = x*y XOR a XOR b, the noise bit left after modulation
_IDX = np.indices((2, 2, 2, 2))
PARITY = (_IDX[0] & _IDX[1]) ^ _IDX[2] ^ _IDX[3]


class Correlation:
    """Conditional table ``q[x, y, alpha, beta]`` with a kind tag."""

    __slots__ = ("table", "kind")

    def __init__(self, table: np.ndarray, kind: str) -> None:
        if kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
        t = np.asarray(table, dtype=float)
        if t.shape != (2, 2, 2, 2):
            raise ValueError("table must have shape (2, 2, 2, 2)")
        if np.any(t < -ATOL):
            raise ValueError("table entries must be non-negative")
        if np.any(np.abs(t.sum(axis=(2, 3)) - 1.0) > ATOL):
            raise ValueError("each conditional q(.,.|x,y) must sum to 1")
        t = t.copy()
        t.setflags(write=False)
        self.table = t
        self.kind = kind

    def conditional(self, x: int, y: int) -> np.ndarray:
        """2x2 distribution over (alpha, beta) for fixed inputs."""
        return self.table[x, y]

    def to_json(self) -> str:
        """Serialize as a kind tag plus the 16 entries, row-major in (x, y, alpha, beta)."""
        return json.dumps({"kind": self.kind, "table": self.table.ravel().tolist()})

    @classmethod
    def from_json(cls, payload: str) -> "Correlation":
        obj = json.loads(payload)
        table = np.asarray(obj["table"], dtype=float)
        if table.shape != (16,):
            raise ValueError("table must contain exactly 16 numbers")
        return cls(table.reshape(2, 2, 2, 2), obj["kind"])

    def __repr__(self) -> str:
        return f"Correlation(kind={self.kind!r})"


# ---------------------------------------------------------------------------
# deterministic strategies

MODULATOR_NAMES = ("id", "flip", "const0", "const1")
_MODULATOR_MAPS = {
    "id": (0, 1),
    "flip": (1, 0),
    "const0": (0, 0),
    "const1": (1, 1),
}


@dataclass(frozen=True)
class DeterministicModulator:
    """One extremal map per side: identity, flip, constant-0 or constant-1."""

    alice: str
    bob: str

    def __post_init__(self) -> None:
        for name in (self.alice, self.bob):
            if name not in _MODULATOR_MAPS:
                raise ValueError(f"unknown modulator {name!r}; use one of {MODULATOR_NAMES}")

    def apply(self, x: int, y: int) -> tuple[int, int]:
        return _MODULATOR_MAPS[self.alice][x], _MODULATOR_MAPS[self.bob][y]


def all_deterministic_modulators() -> list[DeterministicModulator]:
    return [DeterministicModulator(a, b) for a in MODULATOR_NAMES for b in MODULATOR_NAMES]


def deterministic_correlation(m: DeterministicModulator) -> Correlation:
    """Point-mass table: q(alpha, beta | x, y) = 1 iff alpha = A(x), beta = B(y)."""
    t = np.zeros((2, 2, 2, 2))
    for x in range(2):
        for y in range(2):
            a, b = m.apply(x, y)
            t[x, y, a, b] = 1.0
    return Correlation(t, "deterministic")


def deterministic_flip_fraction(m: DeterministicModulator) -> Fraction:
    """Exact residual-noise probability of an extremal pair.

    Counts the inputs (x, y) with x*y XOR A(x) XOR B(y) = 1 over the four
    equally likely inputs; always 1/4 or 3/4.
    """
    bad = 0
    for x in range(2):
        for y in range(2):
            a, b = m.apply(x, y)
            bad += (x & y) ^ a ^ b
    return Fraction(bad, 4)


# ---------------------------------------------------------------------------
# local correlations (shared randomness)

MAX_SHARED_ALPHABET = 1 << 16


@dataclass(frozen=True)
class LocalCorrelationSpec:
    """Shared-randomness strategy: p(e), q1(alpha | e, x), q2(beta | e, y)."""

    p_shared: np.ndarray
    alice_table: np.ndarray  # shape (E, 2, 2): [e, x, alpha]
    bob_table: np.ndarray  # shape (E, 2, 2): [e, y, beta]

    def __post_init__(self) -> None:
        p = np.asarray(self.p_shared, dtype=float)
        qa = np.asarray(self.alice_table, dtype=float)
        qb = np.asarray(self.bob_table, dtype=float)
        e = len(p)
        if e < 1 or e > MAX_SHARED_ALPHABET:
            raise ValueError(f"shared alphabet size must lie in [1, {MAX_SHARED_ALPHABET}]")
        if qa.shape != (e, 2, 2) or qb.shape != (e, 2, 2):
            raise ValueError("side tables must have shape (E, 2, 2)")
        if np.any(p < -ATOL) or abs(p.sum() - 1.0) > ATOL:
            raise ValueError("p_shared must be a probability vector")
        for q in (qa, qb):
            if np.any(q < -ATOL) or np.any(np.abs(q.sum(axis=2) - 1.0) > ATOL):
                raise ValueError("side conditionals must be row-stochastic")
        object.__setattr__(self, "p_shared", p)
        object.__setattr__(self, "alice_table", qa)
        object.__setattr__(self, "bob_table", qb)


def local_correlation(spec: LocalCorrelationSpec) -> Correlation:
    """Average the product strategies over the shared randomness."""
    t = np.einsum("e,exa,eyb->xyab", spec.p_shared, spec.alice_table, spec.bob_table)
    return Correlation(t, "local")


# ---------------------------------------------------------------------------
# quantum statistics

_MAX_ENTANGLED = np.array([1.0, 0.0, 0.0, 1.0], dtype=complex) / np.sqrt(2.0)


def _rotation(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, s], [-s, c]])


@dataclass(frozen=True)
class QuantumModulation:
    """Measurement scheme on a shared maximally entangled qubit pair.

    Alice measures in the basis rotated by theta[x], Bob in the basis
    rotated by tau[y]. For the maximally entangled state and real rotation
    matrices the outcome law reduces to
    P(i, j | x, y) = |(U(theta_x) U(tau_y)^-1)_{i,j}|^2 / 2,
    so no general 4x4 state machinery is needed.
    """

    state: np.ndarray = field(default_factory=lambda: _MAX_ENTANGLED.copy())
    theta: tuple[float, float] = (0.0, np.pi / 4)
    tau: tuple[float, float] = (np.pi / 8, -np.pi / 8)

    def __post_init__(self) -> None:
        psi = np.asarray(self.state, dtype=complex)
        if psi.shape != (4,):
            raise ValueError("state must be a 4-amplitude vector")
        norm = float(np.vdot(psi, psi).real)
        if abs(norm - 1.0) > ATOL:
            raise ValueError(f"state must be normalized, got norm^2 = {norm}")
        fidelity = abs(np.vdot(_MAX_ENTANGLED, psi)) ** 2
        if fidelity < 1.0 - 1e-9:
            raise ValueError(
                "the rotation reduction is valid only for the maximally "
                "entangled state (|00> + |11>)/sqrt(2)"
            )
        object.__setattr__(self, "state", psi)


def epr_modulation() -> QuantumModulation:
    """The CHSH-optimal angle choice on the maximally entangled pair."""
    return QuantumModulation()


def measurement_probability(qm: QuantumModulation, x: int, y: int) -> np.ndarray:
    """4-entry outcome distribution over (alpha, beta), lexicographic."""
    u = _rotation(qm.theta[x]) @ _rotation(qm.tau[y]).T
    return (u**2 / 2.0).ravel()


def epr_correlation() -> Correlation:
    """The table realized by the CHSH-optimal measurements."""
    qm = epr_modulation()
    t = np.empty((2, 2, 2, 2))
    for x in range(2):
        for y in range(2):
            t[x, y] = measurement_probability(qm, x, y).reshape(2, 2)
    return Correlation(t, "quantum")


# ---------------------------------------------------------------------------
# non-signalling boxes

@dataclass(frozen=True)
class BoxStrength:
    """Correlation strength of a box table; entries stay in [0,1] iff |t| <= 1/4."""

    t: float

    def __post_init__(self) -> None:
        if abs(self.t) > 0.25:
            raise ValueError(f"|t| must not exceed 1/4, got {self.t}")


def pr_box(strength: BoxStrength | float) -> Correlation:
    """Box with q = 1/4 +- t, the sign correlated with the CHSH predicate.

    t = 1/4 wins the game with certainty and cancels the environment noise
    entirely; t = 1/(4*sqrt(2)) reproduces the quantum table.
    """
    t = strength.t if isinstance(strength, BoxStrength) else BoxStrength(strength).t
    tab = np.empty((2, 2, 2, 2))
    for x in range(2):
        for y in range(2):
            win = 0.25 + t  # outcomes with alpha XOR beta = x*y
            lose = 0.25 - t
            for a in range(2):
                for b in range(2):
                    tab[x, y, a, b] = win if (a ^ b) == (x & y) else lose
    return Correlation(tab, "box")


# ---------------------------------------------------------------------------
# analysis

def is_nonsignalling(c: Correlation, tol: float = ATOL) -> bool:
    """True iff each side's output marginal ignores the other side's input."""
    alice = c.table.sum(axis=3)  # [x, y, alpha]
    bob = c.table.sum(axis=2)  # [x, y, beta]
    alice_ok = np.all(np.abs(alice[:, 0, :] - alice[:, 1, :]) <= tol)
    bob_ok = np.all(np.abs(bob[0, :, :] - bob[1, :, :]) <= tol)
    return bool(alice_ok and bob_ok)


def effective_flip_prob(c: Correlation) -> float:
    """P(x*y XOR alpha XOR beta = 1) under uniform (x, y)."""
    return float(np.sum(c.table[PARITY == 1]) / 4.0)


def chsh_win_probability(c: Correlation) -> float:
    """Probability of alpha XOR beta = x*y under uniform inputs."""
    return 1.0 - effective_flip_prob(c)
