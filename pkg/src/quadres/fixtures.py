"""The rings used throughout the test-suite and the CLI defaults."""

from __future__ import annotations

from .ring import RingSpec, normalize_spec


def two_generator_ring() -> RingSpec:
    """k[x1,x2,x3]/(x1x2, x1x3): Fibonacci ranks."""
    return normalize_spec([(1, 2), (1, 3)], 3)


def all_quadrics_ring() -> RingSpec:
    """k[x1,x2]/(x1^2, x1x2, x2^2): ranks double."""
    return normalize_spec([(1, 1), (1, 2), (2, 2)], 2)


def o_family_ring(n: int) -> RingSpec:
    """k[x1..xn]/(x1^2, x_i x_j for all i != j)."""
    if n < 2:
        raise ValueError("the O(n) family needs n >= 2")
    pairs = [(1, 1)] + [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    return normalize_spec(pairs, n)


def named_fixtures() -> dict[str, RingSpec]:
    return {
        "ex31": two_generator_ring(),
        "ex32": all_quadrics_ring(),
        "o2": o_family_ring(2),
        "o3": o_family_ring(3),
        "o4": o_family_ring(4),
    }
