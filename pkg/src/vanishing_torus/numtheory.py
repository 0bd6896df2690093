"""Lattice shells, the two-squares counting formula and eigenvalue selection."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

# Candidate vectors a brute-force scan may touch before refusing.
DEFAULT_BOX_BUDGET = 10**8
# Largest eigenvalue the `minimal` policy scans up to.
DEFAULT_LAMBDA_LIMIT = 10**7

POLICIES = ("paper", "minimal")


class BudgetExceededError(RuntimeError):
    """Raised when an exhaustive search would exceed its resource budget."""


@dataclass(frozen=True)
class Factorization:
    """Prime factorization of a positive integer, split by residue mod 4.

    ``ones`` holds primes p = 1 (mod 4), ``threes`` primes q = 3 (mod 4);
    both are lists of ``(prime, exponent)`` in increasing prime order.
    """

    two: int = 0
    ones: tuple[tuple[int, int], ...] = ()
    threes: tuple[tuple[int, int], ...] = ()

    def value(self) -> int:
        n = 2**self.two
        for p, a in self.ones + self.threes:
            n *= p**a
        return n


@dataclass(frozen=True)
class LatticeShell:
    """All integer vectors of length ``dimension`` with squared norm ``lam``."""

    dimension: int
    lam: int
    points: tuple[tuple[int, ...], ...] = field(repr=False)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def index(self, k) -> int:
        return self.points.index(tuple(k))


def _check_int(name: str, value, minimum: int) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise TypeError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return value


def factorize(n: int) -> Factorization:
    """Factor ``n`` by trial division up to its square root."""
    n = _check_int("n", n, 1)
    two = 0
    while n % 2 == 0:
        n //= 2
        two += 1
    ones: list[tuple[int, int]] = []
    threes: list[tuple[int, int]] = []
    p = 3
    while p * p <= n:
        if n % p == 0:
            a = 0
            while n % p == 0:
                n //= p
                a += 1
            (ones if p % 4 == 1 else threes).append((p, a))
        p += 2
    if n > 1:
        (ones if n % 4 == 1 else threes).append((n, 1))
    return Factorization(two, tuple(ones), tuple(threes))


def r2_formula(n: int) -> int:
    """Number of pairs (x, y) in Z^2 with x^2 + y^2 = n, via Gauss's formula.

    ``n = 0`` returns 1 (only the origin), by convention.
    """
    n = _check_int("n", n, 0)
    if n == 0:
        return 1
    fac = factorize(n)
    if any(b % 2 for _, b in fac.threes):
        return 0
    count = 4
    for _, a in fac.ones:
        count *= 1 + a
    return count


def _box_size(d: int, lam: int) -> int:
    return (2 * math.isqrt(lam) + 1) ** d


def count_shell_bruteforce(d: int, lam: int, budget: int = DEFAULT_BOX_BUDGET) -> int:
    """Count k in Z^d with |k|^2 = lam by scanning the whole box |k_i| <= sqrt(lam)."""
    d = _check_int("d", d, 1)
    lam = _check_int("lam", lam, 0)
    if _box_size(d, lam) > budget:
        raise BudgetExceededError(
            f"search box for d={d}, lambda={lam} has {_box_size(d, lam)} "
            f"candidates, budget is {budget}"
        )
    r = math.isqrt(lam)
    sq = np.arange(-r, r + 1, dtype=np.int64) ** 2
    if d == 1:
        return int(np.count_nonzero(sq == lam))
    plane = np.add.outer(sq, sq)
    total = 0
    for prefix in itertools.product(sq.tolist(), repeat=d - 2):
        total += int(np.count_nonzero(plane == lam - sum(prefix)))
    return total


def shell_count_table(d: int, limit: int, budget: int = DEFAULT_BOX_BUDGET) -> np.ndarray:
    """Shell sizes for every lam in ``0..limit`` at once.

    Runs over every coordinate value in the box |k_i| <= sqrt(limit), adding
    one axis at a time; entry ``m`` of the result is the number of k in Z^d
    with |k|^2 = m.
    """
    d = _check_int("d", d, 1)
    limit = _check_int("limit", limit, 0)
    if _box_size(d, limit) > budget:
        raise BudgetExceededError(
            f"search box for d={d}, limit={limit} has {_box_size(d, limit)} "
            f"candidates, budget is {budget}"
        )
    r = math.isqrt(limit)
    counts = np.zeros(limit + 1, dtype=np.int64)
    counts[0] = 1
    for _ in range(d):
        nxt = np.zeros_like(counts)
        for x in range(-r, r + 1):
            s = x * x
            nxt[s:] += counts[: limit + 1 - s]
        counts = nxt
    return counts


def enumerate_shell(d: int, lam: int, budget: int = DEFAULT_BOX_BUDGET) -> LatticeShell:
    """List the shell I_lam in lexicographic order.

    The first ``d - 1`` coordinates range over the box with pruning on the
    remaining norm; the last coordinate is recovered with an integer square
    root. ``budget`` caps the size of that (d - 1)-dimensional prefix box.
    """
    d = _check_int("d", d, 1)
    lam = _check_int("lam", lam, 0)
    prefix_box = _box_size(d - 1, lam)
    if prefix_box > budget:
        raise BudgetExceededError(
            f"prefix box for d={d}, lambda={lam} has {prefix_box} candidates, budget is {budget}"
        )
    points: list[tuple[int, ...]] = []

    def extend(prefix: tuple[int, ...], rest: int) -> None:
        if len(prefix) == d - 1:
            t = math.isqrt(rest)
            if t * t == rest:
                if t == 0:
                    points.append(prefix + (0,))
                else:
                    points.append(prefix + (-t,))
                    points.append(prefix + (t,))
            return
        r = math.isqrt(rest)
        for x in range(-r, r + 1):
            extend(prefix + (x,), rest - x * x)

    extend((), lam)
    return LatticeShell(d, lam, tuple(points))


def choose_lambda(
    d: int,
    required: int,
    policy: str = "paper",
    limit: int = DEFAULT_LAMBDA_LIMIT,
) -> int:
    """Pick an eigenvalue whose shell in Z^d has at least ``required`` points.

    ``paper`` returns 5**C for the least C with 4 * (1 + C) >= required; the
    planar points of that shell embed into any d >= 2 by zero padding.
    ``minimal`` scans lam = 1, 2, ... and returns the first that suffices.
    """
    d = _check_int("d", d, 1)
    required = _check_int("required", required, 1)
    if policy == "paper":
        if d < 2:
            raise ValueError("the 5**C choice needs d >= 2")
        c = max(0, -(-required // 4) - 1)
        return 5**c
    if policy == "minimal":
        for lam in range(1, limit + 1):
            size = r2_formula(lam) if d == 2 else count_shell_bruteforce(d, lam)
            if size >= required:
                return lam
        raise BudgetExceededError(f"no lambda <= {limit} has {required} points in Z^{d}")
    raise ValueError(f"unknown policy {policy!r}, expected one of {POLICIES}")
