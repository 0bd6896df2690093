"""Eigenfunctions f = sum_k mu_k exp(i k.x) with exact rational coefficients.

A function built from modes k on a single shell |k|^2 = lam satisfies
-Laplace f = lam f by construction; vanishing at 0 is certified by checking
the moments sum_k mu_k k^alpha in exact arithmetic.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .combinatorics import (
    MultiIndex,
    count_multiindices,
    enumerate_multiindices,
    monomial_power,
    multiindex_factorial,
)
from .exactlinalg import NullspaceBasis, build_vanishing_system, integer_nullspace
from .numtheory import DEFAULT_BOX_BUDGET, choose_lambda, enumerate_shell

MODES = ("rational", "real")
# Eigenvalues scanned before declaring dimension 1 hopeless.
DIMENSION_ONE_SEARCH = 10**4


class DimensionOneError(ValueError):
    """No eigenfunction on the circle vanishes to order above 1."""


class NoSolutionError(RuntimeError):
    """The moment system on the chosen shell has only the trivial solution."""


@dataclass(frozen=True)
class QComplex:
    """Complex number with exact rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __add__(self, other: QComplex) -> QComplex:
        return QComplex(self.re + other.re, self.im + other.im)

    def __mul__(self, other) -> QComplex:
        if isinstance(other, QComplex):
            return QComplex(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        return QComplex(self.re * other, self.im * other)

    __rmul__ = __mul__

    def __neg__(self) -> QComplex:
        return QComplex(-self.re, -self.im)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def conjugate(self) -> QComplex:
        return QComplex(self.re, -self.im)

    def times_i_power(self, n: int) -> QComplex:
        n %= 4
        if n == 0:
            return self
        if n == 1:
            return QComplex(-self.im, self.re)
        if n == 2:
            return -self
        return QComplex(self.im, -self.re)

    def abs_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))


ZERO = QComplex()


@dataclass(frozen=True)
class Eigenfunction:
    """Trigonometric polynomial sum_k mu_k exp(i k.x) on the torus [-pi, pi)^d.

    ``modes`` are the frequencies k (the full shell for constructed
    functions) and ``coefficients`` the matching mu_k. ``claimed_order`` is
    the N for which every moment with |alpha|_1 <= N should vanish, or None
    when no vanishing is claimed.
    """

    dimension: int
    lam: int
    modes: tuple[tuple[int, ...], ...]
    coefficients: tuple[QComplex, ...]
    claimed_order: int | None = None
    mode: str = "rational"
    nullspace: NullspaceBasis | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if len(self.modes) != len(self.coefficients):
            raise ValueError("modes and coefficients differ in length")
        if any(len(k) != self.dimension for k in self.modes):
            raise ValueError(f"every mode must have {self.dimension} entries")

    @property
    def support(self) -> list[tuple[int, ...]]:
        return [k for k, mu in zip(self.modes, self.coefficients) if mu]

    def complex_coefficients(self) -> np.ndarray:
        return np.array([complex(mu) for mu in self.coefficients], dtype=complex)

    def frequencies(self) -> np.ndarray:
        return np.array(self.modes, dtype=float).reshape(len(self.modes), self.dimension)


@dataclass(frozen=True)
class VanishingCertificate:
    """Exact moments sum_k mu_k k^alpha for every |alpha|_1 <= order_bound."""

    order_bound: int | None
    moments: dict[MultiIndex, QComplex]
    verified: bool
    bad_modes: tuple[tuple[int, ...], ...] = ()
    nonzero: bool = True

    @property
    def first_failure(self) -> MultiIndex | None:
        return next((alpha for alpha, value in self.moments.items() if value), None)

    @property
    def ok(self) -> bool:
        return self.verified and not self.bad_modes and self.nonzero


def raw_moment(f: Eigenfunction, alpha: Sequence[int]) -> QComplex:
    """sum_k mu_k k^alpha, exactly."""
    re = Fraction(0)
    im = Fraction(0)
    for k, mu in zip(f.modes, f.coefficients):
        if mu:
            p = monomial_power(k, alpha)
            re += mu.re * p
            im += mu.im * p
    return QComplex(re, im)


def taylor_moment(f: Eigenfunction, alpha: Sequence[int]) -> QComplex:
    """Exact coefficient of x^alpha in the Taylor series of f at 0.

    Equal to i^{|alpha|} / alpha! * sum_k mu_k k^alpha.
    """
    s = raw_moment(f, alpha).times_i_power(sum(alpha))
    return s * Fraction(1, multiindex_factorial(alpha))


def certify(f: Eigenfunction) -> VanishingCertificate:
    """Recompute every certificate of ``f`` from its coefficients alone."""
    bad = tuple(k for k in f.support if sum(x * x for x in k) != f.lam)
    nonzero = any(f.coefficients)
    if f.claimed_order is None:
        return VanishingCertificate(None, {}, True, bad, nonzero)
    moments = {
        alpha: raw_moment(f, alpha)
        for alpha in enumerate_multiindices(f.dimension, f.claimed_order)
    }
    verified = not any(moments.values())
    return VanishingCertificate(f.claimed_order, moments, verified, bad, nonzero)


def _flip(modes, values):
    where = {k: i for i, k in enumerate(modes)}
    return [values[where[tuple(-x for x in k)]] for k in modes]


def _realify(modes, v: Sequence[int]) -> list[QComplex]:
    # mu_{-k} = conj(mu_k) makes f real; the kernel is closed under k -> -k.
    flipped = _flip(modes, v)
    even = [Fraction(a + b, 2) for a, b in zip(v, flipped)]
    if any(even):
        return [QComplex(x) for x in even]
    odd = [Fraction(a - b, 2) for a, b in zip(v, flipped)]
    return [QComplex(Fraction(0), x) for x in odd]


def _dimension_one_error(N: int, search: int) -> DimensionOneError:
    largest = max(len(enumerate_shell(1, lam)) for lam in range(1, search + 1))
    return DimensionOneError(
        f"impossible in dimension 1: nonzero eigenfunctions on the circle vanish to "
        f"order at most 1 at any point (largest shell for 1 <= lambda <= {search} has "
        f"{largest} points, constraints for N={N}: {count_multiindices(1, N)})"
    )


def construct(
    d: int,
    N: int,
    policy: str = "paper",
    mode: str = "rational",
    lam: int | None = None,
    budget: int = DEFAULT_BOX_BUDGET,
) -> Eigenfunction:
    """Eigenfunction on T^d whose Taylor coefficients at 0 vanish up to degree N.

    The eigenvalue is ``choose_lambda(d, C(N) + 1, policy)`` unless ``lam`` is
    given. The first vector of the normalized nullspace basis supplies the
    coefficients; with ``mode="real"`` it is symmetrized so that
    mu_{-k} = conj(mu_k).
    """
    if d == 1:
        raise _dimension_one_error(N, DIMENSION_ONE_SEARCH)
    if d < 1:
        raise ValueError(f"dimension must be positive, got {d}")
    if N < 0:
        raise ValueError(f"vanishing order must be nonnegative, got {N}")
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}, expected one of {MODES}")

    indices = enumerate_multiindices(d, N)
    if lam is None:
        lam = choose_lambda(d, len(indices) + 1, policy)
    shell = enumerate_shell(d, lam, budget=budget)
    if not shell.points:
        raise NoSolutionError(f"lambda={lam} has an empty shell in Z^{d}")
    basis = integer_nullspace(build_vanishing_system(shell, indices))
    if not basis.vectors:
        if len(shell) > len(indices):
            raise AssertionError("more unknowns than equations but trivial kernel")
        raise NoSolutionError(
            f"shell of lambda={lam} has {len(shell)} points and the {len(indices)} "
            f"moment equations have rank {basis.rank}; no nonzero solution"
        )

    v = basis.vectors[0]
    if mode == "real":
        coefficients = _realify(shell.points, v)
    else:
        coefficients = [QComplex(Fraction(x)) for x in v]
    f = Eigenfunction(d, lam, shell.points, tuple(coefficients), N, mode, basis)
    cert = certify(f)
    if not cert.ok:
        raise AssertionError(f"constructed function fails its certificate at {cert.first_failure}")
    return f


def evaluate_many(f: Eigenfunction, points) -> np.ndarray:
    """f at each row of ``points`` (shape (n, d)), in double precision."""
    X = np.asarray(points, dtype=float)
    if X.ndim != 2 or X.shape[1] != f.dimension:
        raise ValueError(f"points must have shape (n, {f.dimension})")
    if not f.modes:
        return np.zeros(X.shape[0], dtype=complex)
    return np.exp(1j * (X @ f.frequencies().T)) @ f.complex_coefficients()


def evaluate(f: Eigenfunction, x: Sequence[float]) -> complex:
    if len(x) != f.dimension:
        raise ValueError(f"point has {len(x)} coordinates, expected {f.dimension}")
    total = 0j
    for k, mu in zip(f.modes, f.coefficients):
        if mu:
            total += complex(mu) * cmath.exp(1j * sum(ki * xi for ki, xi in zip(k, x)))
    return total


class ParsevalNorm(NamedTuple):
    """Squared L2 norm as ``rational * pi**pi_power`` and as a float."""

    rational: Fraction
    pi_power: int
    value: float


def parseval_norm_sq(f: Eigenfunction) -> ParsevalNorm:
    """(2 pi)^d sum_k |mu_k|^2, exactly up to the factor pi^d."""
    rational = 2**f.dimension * sum((mu.abs_sq() for mu in f.coefficients), Fraction(0))
    return ParsevalNorm(rational, f.dimension, float(rational) * math.pi**f.dimension)


def laplacian_residual(f: Eigenfunction, x: Sequence[float], h: float) -> float:
    """|(-Laplace_h f)(x) - lam f(x)| for the central second-difference Laplacian."""
    if h <= 0:
        raise ValueError(f"step must be positive, got {h}")
    x = np.asarray(x, dtype=float)
    d = f.dimension
    shifts = np.concatenate([np.zeros((1, d)), h * np.eye(d), -h * np.eye(d)])
    values = evaluate_many(f, x + shifts)
    center = values[0]
    second = (values[1 : d + 1].sum() + values[d + 1 :].sum() - 2 * d * center) / (h * h)
    return abs(-second - f.lam * center)
