"""Rotation-parameter sets for fingerprinting and their goodness checks.

A parameter set K = {k_1, ..., k_t} over Z_m is good for a residue b != 0 when
the squared normalized cosine sum (1/t^2) (sum_i cos(2 pi k_i b / m))^2 stays
below the error rate.  Sets are drawn uniformly at random; an Azuma-type
bound makes a random set good for every b with positive probability once
t >= ceil((2/eps) ln 2m).  t is then padded to the next power of two so the
compiled branch register supports an exact Hadamard layer.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    InvalidErrorRateError,
    NonPowerOfTwoError,
    TooLargeError,
    ZeroResidueError,
)

DEFAULT_VERIFY_LIMIT = 2**20


def _check_error_rate(epsilon: float) -> None:
    if not (0.0 < epsilon < 1.0):
        raise InvalidErrorRateError(f"error rate must be in (0, 1), got {epsilon}")


def required_size_raw(epsilon: float, modulus: int) -> int:
    """ceil((2/eps) ln 2m), the random-set size the Azuma bound asks for."""
    _check_error_rate(epsilon)
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    return math.ceil((2.0 / epsilon) * math.log(2 * modulus))


def required_size(epsilon: float, modulus: int) -> int:
    """Smallest power of two >= the raw Azuma size (the bound only improves)."""
    raw = required_size_raw(epsilon, modulus)
    return 1 << (raw - 1).bit_length()


def azuma_failure_bound(epsilon: float, t: int) -> float:
    """2 exp(-eps t / 2): probability a random size-t set fails for one residue."""
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    return 2.0 * math.exp(-epsilon * t / 2.0)


@dataclass(frozen=True)
class GoodSet:
    """Parameters k_1..k_t in [0, m) with their target error rate.

    t must be a power of two (the compiler's Hadamard layer needs it).  The
    sampler guarantees t >= required_size(eps, m); hand-built sets for
    analysis may be smaller.
    """

    modulus: int
    error_rate: float
    parameters: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_error_rate(self.error_rate)
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        t = len(self.parameters)
        if t < 1 or t & (t - 1):
            raise NonPowerOfTwoError(f"parameter count must be a power of two, got {t}")
        if any(not (0 <= k < self.modulus) for k in self.parameters):
            raise ValueError("parameters must lie in [0, modulus)")

    @property
    def size(self) -> int:
        return len(self.parameters)


def cosine_sum(good_set: GoodSet, b: int) -> float:
    """(1/t^2) (sum_i cos(2 pi (k_i b mod m) / m))^2 for b != 0 mod m.

    The product k_i * b is reduced mod m exactly before the angle is formed,
    so the cosine argument never loses precision to a large product.
    """
    m = good_set.modulus
    if b % m == 0:
        raise ZeroResidueError("goodness is undefined for b == 0 (mod m)")
    total = 0.0
    for k in good_set.parameters:
        # exact big-int ratio first, then one rounding into double
        total += math.cos(2.0 * math.pi * (((k * b) % m) / m))
    t = good_set.size
    return (total / t) ** 2


def is_good_for(good_set: GoodSet, b: int) -> bool:
    return cosine_sum(good_set, b) < good_set.error_rate


def is_good_for_all(good_set: GoodSet, residues: Iterable[int]) -> bool:
    """True when the set is good for every residue in the collection."""
    return all(is_good_for(good_set, b) for b in residues)


def verify_exhaustive(good_set: GoodSet, limit: int = DEFAULT_VERIFY_LIMIT) -> bool:
    """Check goodness for every b in [1, m-1].

    Periodicity of the cosine in b (period m) means this range covers all
    integers b != 0 mod m.  Guarded by a caller-supplied tractability limit.
    """
    m = good_set.modulus
    if m > limit:
        raise TooLargeError(f"modulus {m} exceeds exhaustive limit {limit}")
    return is_good_for_all(good_set, range(1, m))


def sample(epsilon: float, modulus: int, seed: int) -> GoodSet:
    """Draw t = required_size(eps, m) parameters uniformly from [0, m).

    Deterministic in the seed.  The result is NOT verified; pair with
    verify_exhaustive (small m) or goodness checks on realized residues.
    """
    t = required_size(epsilon, modulus)
    rng = random.Random(seed)
    parameters = tuple(rng.randrange(modulus) for _ in range(t))
    return GoodSet(modulus=modulus, error_rate=epsilon, parameters=parameters)


def sample_good(
    epsilon: float,
    modulus: int,
    seed: int,
    residues: Sequence[int] | None = None,
    verify_limit: int = DEFAULT_VERIFY_LIMIT,
    max_attempts: int = 64,
) -> tuple[GoodSet, int]:
    """Sample sets at seed, seed+1, ... until one passes the goodness check.

    With residues given, goodness is checked on exactly those values
    (spot verification); otherwise the whole range [1, m-1] is swept, which
    requires m <= verify_limit.  Returns the set and the seed that produced
    it.  Raises RuntimeError if max_attempts seeds all fail, which the Azuma
    bound makes overwhelmingly unlikely at the sampled size.
    """
    for attempt in range(max_attempts):
        candidate = sample(epsilon, modulus, seed + attempt)
        if residues is not None:
            if is_good_for_all(candidate, residues):
                return candidate, seed + attempt
        elif verify_exhaustive(candidate, limit=verify_limit):
            return candidate, seed + attempt
    raise RuntimeError(
        f"no good set found in {max_attempts} attempts from seed {seed} "
        f"(epsilon={epsilon}, modulus={modulus})"
    )
