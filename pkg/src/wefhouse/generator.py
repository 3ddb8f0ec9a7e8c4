"""Deterministic random instance generation.

Uses a self-contained splitmix64 stream so that a config is a pure
function from seed to instance, independent of the Python version.
Distribution specs are integer ranges written as ``uniform:<lo>:<hi>``;
integers keep every generated value exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .model import Instance, make_instance

PRNG_ID = "splitmix64"

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """The splitmix64 generator: one 64-bit state, fixed mixing constants."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform draw from [0, bound), without modulo bias."""
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        limit = ((1 << 64) // bound) * bound
        while True:
            x = self.next64()
            if x < limit:
                return x % bound

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi], inclusive."""
        return lo + self.below(hi - lo + 1)


STRUCTURES = ("general", "identical", "two-type", "bivalued", "normalized")


@dataclass(frozen=True)
class GeneratorConfig:
    """Everything that determines a generated instance."""

    n: int
    m: int
    seed: int
    weights: str = "uniform:1:5"
    utilities: str = "uniform:0:10"
    structure: str = "general"
    epsilon: Fraction = Fraction(0)


def parse_uniform_spec(spec: str) -> tuple[int, int]:
    parts = spec.split(":")
    if len(parts) != 3 or parts[0] != "uniform":
        raise ValueError(f"distribution spec must be uniform:<lo>:<hi>, got {spec!r}")
    try:
        lo, hi = int(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ValueError(f"non-integer bounds in {spec!r}") from exc
    if lo > hi:
        raise ValueError(f"empty range in {spec!r}")
    return lo, hi


_MAX_RETRIES = 1000


def generate_instance(config: GeneratorConfig) -> Instance:
    """Build the instance determined by the config; same seed, same bytes."""
    if config.structure not in STRUCTURES:
        raise ValueError(f"unknown structure {config.structure!r}")
    if config.n < 1:
        raise ValueError("need at least one agent")
    if config.m < config.n:
        raise ValueError(f"need m >= n, got n={config.n}, m={config.m}")
    w_lo, w_hi = parse_uniform_spec(config.weights)
    if w_lo < 1:
        raise ValueError("weights must be positive; use a range starting at 1 or more")
    u_lo, u_hi = parse_uniform_spec(config.utilities)
    if u_lo < 0:
        raise ValueError("utilities must be non-negative")
    rng = SplitMix64(config.seed)
    n, m = config.n, config.m

    if config.structure == "general":
        weights = [rng.randint(w_lo, w_hi) for _ in range(n)]
        utilities = [[rng.randint(u_lo, u_hi) for _ in range(m)] for _ in range(n)]
        return make_instance(weights, utilities)

    if config.structure == "identical":
        weights = [rng.randint(w_lo, w_hi) for _ in range(n)]
        row = [rng.randint(u_lo, u_hi) for _ in range(m)]
        return make_instance(weights, [list(row) for _ in range(n)])

    if config.structure == "two-type":
        if n < 2:
            raise ValueError("two-type structure needs at least two agents")
        for _ in range(_MAX_RETRIES):
            w_a, w_b = rng.randint(w_lo, w_hi), rng.randint(w_lo, w_hi)
            row_a = [rng.randint(u_lo, u_hi) for _ in range(m)]
            row_b = [rng.randint(u_lo, u_hi) for _ in range(m)]
            if (w_a, row_a) == (w_b, row_b):
                continue
            bits = [rng.below(2) for _ in range(n)]
            if all(bits) or not any(bits):
                continue
            weights = [w_b if bit else w_a for bit in bits]
            utilities = [list(row_b) if bit else list(row_a) for bit in bits]
            return make_instance(weights, utilities)
        raise ValueError("distributions too narrow to produce two distinct agent types")

    if config.structure == "bivalued":
        if m != n:
            raise ValueError("bivalued structure requires m == n")
        if not 0 <= config.epsilon < 1:
            raise ValueError(f"epsilon must lie in [0, 1), got {config.epsilon}")
        weights = [rng.randint(w_lo, w_hi) for _ in range(n)]
        utilities = [
            [Fraction(1) if rng.below(2) else config.epsilon for _ in range(m)]
            for _ in range(n)
        ]
        return make_instance(weights, utilities)

    # normalized: each agent's utilities sum to exactly one
    weights = [rng.randint(w_lo, w_hi) for _ in range(n)]
    utilities = []
    for _ in range(n):
        for _ in range(_MAX_RETRIES):
            row = [rng.randint(u_lo, u_hi) for _ in range(m)]
            total = sum(row)
            if total > 0:
                utilities.append([Fraction(v, total) for v in row])
                break
        else:
            raise ValueError("utility distribution cannot produce a positive row sum")
    return make_instance(weights, utilities)
