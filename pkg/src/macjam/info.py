"""Binary information-theoretic primitives.

Distributions on {0,1}, 2x2 stochastic channels, the binary adder kernel,
entropy and mutual information in bits, constant-weight type classes and
delta-typical sets, and i.i.d. bit sampling.

Conventions used throughout the package:

* a distribution on {0,1} is identified with its probability of outcome 1;
* every binary symmetric channel is parameterized by its FLIP probability;
* bitstrings are numpy uint8 arrays with values in {0,1}.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

ATOL = 1e-12


def entropy_bits(probs: np.ndarray) -> float:
    """Shannon entropy of a probability vector in bits, with 0*log(0) = 0."""
    p = np.asarray(probs, dtype=float)
    nz = p[p > 0.0]
    return float(-np.sum(nz * np.log2(nz)))


def binary_entropy(p: float) -> float:
    """h(p) = -p*log2(p) - (1-p)*log2(1-p); symmetric under p <-> 1-p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability must lie in [0, 1], got {p}")
    if p == 0.0 or p == 1.0:
        return 0.0
    return float(-p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p))


@dataclass(frozen=True)
class BitDistribution:
    """Distribution on {0,1}, stored as the probability of outcome 1."""

    p1: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.p1 <= 1.0:
            raise ValueError(f"p1 must lie in [0, 1], got {self.p1}")

    @property
    def p0(self) -> float:
        return 1.0 - self.p1

    def as_vector(self) -> np.ndarray:
        return np.array([self.p0, self.p1])


UNIFORM = BitDistribution(0.5)


class BinaryChannel:
    """A 2x2 row-stochastic channel; ``w[x, y]`` is P(output y | input x)."""

    __slots__ = ("w",)

    def __init__(self, w: np.ndarray) -> None:
        w = np.asarray(w, dtype=float)
        if w.shape != (2, 2):
            raise ValueError("channel matrix must be 2x2")
        if np.any(w < -ATOL):
            raise ValueError("channel entries must be non-negative")
        if np.any(np.abs(w.sum(axis=1) - 1.0) > ATOL):
            raise ValueError("channel rows must sum to 1")
        w = w.copy()
        w.setflags(write=False)
        self.w = w

    def apply(self, p: BitDistribution) -> BitDistribution:
        """Output distribution on input distribution ``p``."""
        out = p.as_vector() @ self.w
        return BitDistribution(float(out[1]))

    def row(self, x: int) -> np.ndarray:
        return self.w[x]

    def isclose(self, other: "BinaryChannel", tol: float = ATOL) -> bool:
        return bool(np.all(np.abs(self.w - other.w) <= tol))

    def __repr__(self) -> str:
        return f"BinaryChannel({self.w.tolist()})"


def bsc(flip: float) -> BinaryChannel:
    """Binary symmetric channel that flips its input with probability ``flip``."""
    if not 0.0 <= flip <= 1.0:
        raise ValueError(f"flip probability must lie in [0, 1], got {flip}")
    return BinaryChannel(np.array([[1.0 - flip, flip], [flip, 1.0 - flip]]))


IDENTITY = bsc(0.0)
FLIP = bsc(1.0)


def compose(first: BinaryChannel, second: BinaryChannel) -> BinaryChannel:
    """Channel equal to applying ``first`` and then ``second``.

    For symmetric channels the flip probabilities combine as
    f1*(1-f2) + (1-f1)*f2.
    """
    return BinaryChannel(first.w @ second.w)


class MacKernel:
    """Two-sender kernel; ``w[a, b, c]`` is P(output c | inputs a, b)."""

    __slots__ = ("w",)

    def __init__(self, w: np.ndarray) -> None:
        w = np.asarray(w, dtype=float)
        if w.shape != (2, 2, 2):
            raise ValueError("kernel must have shape (2, 2, 2)")
        if np.any(w < -ATOL):
            raise ValueError("kernel entries must be non-negative")
        if np.any(np.abs(w.sum(axis=2) - 1.0) > ATOL):
            raise ValueError("each conditional must sum to 1")
        w = w.copy()
        w.setflags(write=False)
        self.w = w

    def then(self, channel: BinaryChannel) -> "MacKernel":
        """Post-compose with a single-bit channel."""
        return MacKernel(np.einsum("abz,zc->abc", self.w, channel.w))

    def conditional(self, a: int, b: int) -> BitDistribution:
        return BitDistribution(float(self.w[a, b, 1]))

    def isclose(self, other: "MacKernel", tol: float = ATOL) -> bool:
        return bool(np.all(np.abs(self.w - other.w) <= tol))

    def __repr__(self) -> str:
        return f"MacKernel({self.w.tolist()})"


def adder() -> MacKernel:
    """The deterministic kernel mapping (a, b) to a XOR b."""
    w = np.zeros((2, 2, 2))
    for a in range(2):
        for b in range(2):
            w[a, b, a ^ b] = 1.0
    return MacKernel(w)


def mutual_information(p: BitDistribution, w: BinaryChannel) -> float:
    """I(p; W) = H(p) + H(Wp) - H(joint), in bits.

    For the uniform input and a symmetric channel with flip probability f
    this equals 1 - h(f).
    """
    pv = p.as_vector()
    out = pv @ w.w
    joint = pv[:, None] * w.w
    return entropy_bits(pv) + entropy_bits(out) - entropy_bits(joint.ravel())


def sample_iid(p: BitDistribution, n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``n`` independent bits with P(1) = p.p1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return (rng.random(n) < p.p1).astype(np.uint8)


def weight(bits: np.ndarray) -> int:
    """Number of ones in a bitstring."""
    return int(np.asarray(bits).sum())


@dataclass(frozen=True)
class TypeClass:
    """All length-``n`` bitstrings of weight ``t``."""

    n: int
    t: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not 0 <= self.t <= self.n:
            raise ValueError(f"weight must lie in [0, {self.n}], got {self.t}")

    @property
    def size(self) -> int:
        """Exact cardinality binomial(n, t)."""
        return math.comb(self.n, self.t)

    @property
    def log2_size(self) -> float:
        """log2 of the cardinality, safe for large n."""
        n, t = self.n, self.t
        return (math.lgamma(n + 1) - math.lgamma(t + 1) - math.lgamma(n - t + 1)) / math.log(2)

    def contains(self, bits: np.ndarray) -> bool:
        x = np.asarray(bits)
        return len(x) == self.n and weight(x) == self.t

    def sample(self, rng: np.random.Generator) -> np.ndarray:
        """Uniform member: place ``t`` ones at positions chosen without replacement."""
        x = np.zeros(self.n, dtype=np.uint8)
        if self.t:
            x[rng.choice(self.n, size=self.t, replace=False)] = 1
        return x

    def members(self):
        """Iterate over all members (exponential; intended for small n)."""
        for ones in itertools.combinations(range(self.n), self.t):
            x = np.zeros(self.n, dtype=np.uint8)
            x[list(ones)] = 1
            yield x


def type_class(n: int, t: int) -> TypeClass:
    return TypeClass(n, t)


@dataclass(frozen=True)
class DeltaTypicalSet:
    """Strings whose ones-count deviates from n*p1 by at most n*delta."""

    n: int
    p: BitDistribution
    delta: float

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.delta < 0.0:
            raise ValueError("delta must be non-negative")

    def contains(self, bits: np.ndarray) -> bool:
        x = np.asarray(bits)
        if len(x) != self.n:
            return False
        return abs(weight(x) - self.n * self.p.p1) <= self.n * self.delta


def pack_bits_hex(bits: np.ndarray) -> str:
    """Hex-pack a bitstring, most significant bit first, zero-padded."""
    return np.packbits(np.asarray(bits, dtype=np.uint8)).tobytes().hex()


def unpack_bits_hex(hexstr: str, n: int) -> np.ndarray:
    raw = np.frombuffer(bytes.fromhex(hexstr), dtype=np.uint8)
    bits = np.unpackbits(raw)
    if len(bits) < n or np.any(bits[n:]):
        raise ValueError("hex payload does not match the stated length")
    return bits[:n].astype(np.uint8)
