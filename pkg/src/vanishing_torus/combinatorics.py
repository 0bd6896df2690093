"""Multi-indices, monomials k^alpha and multi-index factorials."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

MultiIndex = tuple[int, ...]


@dataclass(frozen=True)
class MultiIndexSet:
    """All alpha in N_0^d with |alpha|_1 <= order_bound, in graded lex order."""

    dimension: int
    order_bound: int
    indices: tuple[MultiIndex, ...]

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self) -> Iterator[MultiIndex]:
        return iter(self.indices)

    def __contains__(self, alpha) -> bool:
        alpha = tuple(alpha)
        return len(alpha) == self.dimension and min(alpha, default=0) >= 0 and sum(alpha) <= self.order_bound


def count_multiindices(d: int, N: int) -> int:
    """C(N) = binomial(N + d, d); zero when N < 0."""
    return math.comb(N + d, d) if N >= 0 else 0


def _compositions(d: int, total: int) -> Iterator[MultiIndex]:
    # descending lex: (total, 0, ...) first
    if d == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(d - 1, total - first):
            yield (first,) + rest


def enumerate_multiindices(d: int, N: int) -> MultiIndexSet:
    """Every alpha with |alpha|_1 <= N.

    Ordered by degree; within a degree, larger leading entries come first,
    so for d = 2, N = 1 the order is (0, 0), (1, 0), (0, 1).
    """
    if d < 1:
        raise ValueError(f"dimension must be positive, got {d}")
    if N < 0:
        raise ValueError(f"order bound must be nonnegative, got {N}")
    indices = tuple(alpha for n in range(N + 1) for alpha in _compositions(d, n))
    return MultiIndexSet(d, N, indices)


def monomial_power(k: Sequence[int], alpha: Sequence[int]) -> int:
    """Exact k^alpha = k_1^alpha_1 * ... * k_d^alpha_d, with 0^0 = 1."""
    if len(k) != len(alpha):
        raise ValueError(f"length mismatch: k has {len(k)} entries, alpha has {len(alpha)}")
    result = 1
    for ki, ai in zip(k, alpha):
        if ai:
            result *= int(ki) ** int(ai)
    return result


def multiindex_factorial(alpha: Sequence[int]) -> int:
    return math.prod(math.factorial(a) for a in alpha)
