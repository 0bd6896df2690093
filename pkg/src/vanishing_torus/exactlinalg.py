"""The moment system A[alpha][k] = k^alpha and its exact integer nullspace."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .combinatorics import MultiIndexSet, monomial_power
from .numtheory import LatticeShell

DEFAULT_MAX_BITS = 1_000_000


class EntryGrowthError(ArithmeticError):
    """An intermediate integer of the elimination outgrew the bit-length guard."""


@dataclass(frozen=True)
class IntegerMatrix:
    """Moment matrix with one row per multi-index and one column per shell point."""

    entries: tuple[tuple[int, ...], ...]
    row_labels: MultiIndexSet
    col_labels: LatticeShell

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.col_labels)


@dataclass(frozen=True)
class NullspaceBasis:
    vectors: tuple[tuple[int, ...], ...]
    rank: int
    dimension: int
    pivot_columns: tuple[int, ...] = ()


def build_vanishing_system(shell: LatticeShell, indices: MultiIndexSet) -> IntegerMatrix:
    """Rows alpha, columns k, entries k^alpha: the constraints sum_k mu_k k^alpha = 0."""
    if shell.dimension != indices.dimension:
        raise ValueError(
            f"shell lives in dimension {shell.dimension}, multi-indices in {indices.dimension}"
        )
    entries = tuple(tuple(monomial_power(k, alpha) for k in shell.points) for alpha in indices)
    return IntegerMatrix(entries, indices, shell)


def _as_rows(A) -> tuple[list[list[int]], int]:
    if isinstance(A, IntegerMatrix):
        return [list(r) for r in A.entries], A.cols
    rows = [[int(x) for x in r] for r in A]
    n = len(rows[0]) if rows else 0
    if any(len(r) != n for r in rows):
        raise ValueError("ragged matrix")
    return rows, n


def bareiss_echelon(
    rows: list[list[int]], ncols: int, max_bits: int = DEFAULT_MAX_BITS
) -> list[int]:
    """Fraction-free forward elimination, in place; returns the pivot columns.

    Pivot is the entry of largest absolute value in the column, ties going to
    the lowest row index. After the call ``rows[:rank]`` is in row echelon
    form with integer entries.
    """
    m = len(rows)
    prev = 1
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        best = max(range(r, m), key=lambda i: (abs(rows[i][c]), -i))
        p = rows[best][c]
        if p == 0:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        pivot_row = rows[r]
        for i in range(r + 1, m):
            row = rows[i]
            f = row[c]
            for j in range(c + 1, ncols):
                q, rem = divmod(p * row[j] - f * pivot_row[j], prev)
                if rem:
                    raise ArithmeticError("inexact Bareiss division")
                if q.bit_length() > max_bits:
                    raise EntryGrowthError(
                        f"entry at ({i}, {j}) reached {q.bit_length()} bits "
                        f"(limit {max_bits})"
                    )
                row[j] = q
            row[c] = 0
        prev = p
        pivots.append(c)
        r += 1
    return pivots


def _primitive(vec: Sequence[Fraction]) -> tuple[int, ...]:
    scale = math.lcm(*(x.denominator for x in vec))
    ints = [int(x * scale) for x in vec]
    g = math.gcd(*ints)
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def integer_nullspace(A, max_bits: int = DEFAULT_MAX_BITS) -> NullspaceBasis:
    """Exact basis of {v : A v = 0} as primitive integer vectors.

    One vector per free column, in increasing column order: the free entry is
    set, the other free entries are zero and pivot entries come from back
    substitution. Each vector has entry gcd 1 and a positive first nonzero
    entry. ``A`` may be an :class:`IntegerMatrix` or a list of integer rows.
    """
    original, ncols = _as_rows(A)
    rows = [list(r) for r in original]
    pivots = bareiss_echelon(rows, ncols, max_bits=max_bits)
    rank = len(pivots)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]

    vectors = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r in range(rank - 1, -1, -1):
            c = pivots[r]
            row = rows[r]
            s = sum((row[j] * x[j] for j in range(c + 1, ncols) if row[j] and x[j]), Fraction(0))
            x[c] = -s / row[c]
        vectors.append(_primitive(x))

    for v in vectors:
        if any(sum(a * b for a, b in zip(row, v)) for row in original):
            raise ArithmeticError("nullspace vector fails A v = 0")
    return NullspaceBasis(tuple(vectors), rank, ncols - rank, tuple(pivots))
