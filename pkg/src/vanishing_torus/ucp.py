"""Local L2 mass on balls B_delta(0) and tables of the ratio against delta^M.

For f vanishing to order N at 0 the inequality

    int_{B_delta} |f|^2 >= delta^M int_{T^d} |f|^2,   0 < delta <= pi

fails for M = 2N: the ratio int_{B_delta} |f|^2 / (delta^{2N} ||f||^2)
tends to 0 with delta. The tables here make that decay visible.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .combinatorics import count_multiindices
from .eigenfunction import Eigenfunction, certify, construct, evaluate_many, parseval_norm_sq
from .fileformat import FORMAT_VERSION, eigenfunction_to_dict

DEFAULT_DELTAS = (0.2, 0.1, 0.05, 0.025)
_CHUNK = 1 << 16


def default_resolution(d: int) -> int:
    """Midpoint-grid points per axis: 512 in the plane, 128 in 3D, 32 above."""
    return {1: 4096, 2: 512, 3: 128}.get(d, 32)


def _grid_sum(f: Eigenfunction, axis: np.ndarray, radius: float | None) -> float:
    # Sum |f|^2 over the tensor grid axis^d, optionally restricted to |x| <= radius.
    d = f.dimension
    n = axis.size
    total = 0.0
    flat = np.arange(n**d)
    for start in range(0, n**d, _CHUNK):
        idx = np.unravel_index(flat[start : start + _CHUNK], (n,) * d)
        pts = np.stack([axis[i] for i in idx], axis=1)
        if radius is not None:
            pts = pts[np.einsum("ij,ij->i", pts, pts) <= radius * radius]
            if not len(pts):
                continue
        total += float(np.sum(np.abs(evaluate_many(f, pts)) ** 2))
    return total


def ball_l2(f: Eigenfunction, delta: float, resolution: int | None = None) -> float:
    """Midpoint-rule approximation of the integral of |f|^2 over B_delta(0).

    The box [-delta, delta]^d is split into ``resolution`` cells per axis and
    cells whose midpoint lies in the ball are kept. For smooth f the error is
    dominated by the cells cut by the sphere and is O(1 / resolution)
    relative to the ball integral.
    """
    if not 0 < delta <= math.pi:
        raise ValueError(f"delta must lie in (0, pi], got {delta}")
    n = resolution or default_resolution(f.dimension)
    if n < 1:
        raise ValueError("resolution must be positive")
    h = 2 * delta / n
    axis = -delta + h * (np.arange(n) + 0.5)
    return _grid_sum(f, axis, delta) * h**f.dimension


def torus_l2(f: Eigenfunction, resolution: int | None = None) -> float:
    """Midpoint-rule integral of |f|^2 over the whole torus [-pi, pi)^d.

    Exact up to rounding once the resolution exceeds twice the largest
    frequency component, since |f|^2 is then resolved by the periodic grid.
    """
    n = resolution or default_resolution(f.dimension)
    h = 2 * math.pi / n
    axis = -math.pi + h * (np.arange(n) + 0.5)
    return _grid_sum(f, axis, None) * h**f.dimension


class UcpRow(NamedTuple):
    delta: float
    local_mass: float
    total_mass: float
    ratio: float


@dataclass
class UcpReport:
    dimension: int
    lam: int
    order: int | None
    M: float
    rows: list[UcpRow]
    resolution: int
    window: tuple[float, float] | None = None
    notes: dict = field(default_factory=dict)

    def ratios(self) -> list[float]:
        return [row.ratio for row in self.rows]

    def strictly_decreasing(self) -> bool:
        """True when the ratio drops at every step to a smaller delta."""
        r = self.ratios()
        return all(b < a for a, b in zip(r, r[1:]))

    def to_dict(self) -> dict:
        return {
            "format_version": FORMAT_VERSION,
            "d": self.dimension,
            "lambda": self.lam,
            "N": self.order,
            "M": self.M,
            "resolution": self.resolution,
            "window": list(self.window) if self.window else None,
            "rows": [row._asdict() for row in self.rows],
            "ratio_strictly_decreasing": self.strictly_decreasing(),
            **self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1) + "\n"

    def to_csv(self) -> str:
        out = io.StringIO()
        out.write("delta,local_mass,total_mass,M,ratio\n")
        for row in self.rows:
            fields = (row.delta, row.local_mass, row.total_mass, self.M, row.ratio)
            out.write(",".join(f"{x:.17g}" for x in fields) + "\n")
        return out.getvalue()


def ucp_ratio_table(
    f: Eigenfunction,
    M: float,
    deltas: Sequence[float] = DEFAULT_DELTAS,
    resolution: int | None = None,
    window: tuple[float, float] | None = None,
) -> UcpReport:
    """Rows (delta, local mass, total mass, local / (delta^M * total)).

    Rows are sorted by decreasing delta. The total mass is the exact
    Parseval value. ``f`` must pass its own vanishing certificate.
    """
    cert = certify(f)
    if not cert.ok:
        raise ValueError("eigenfunction fails its certificate; refusing to tabulate")
    n = resolution or default_resolution(f.dimension)
    total = parseval_norm_sq(f).value
    rows = []
    for delta in sorted((float(x) for x in deltas), reverse=True):
        local = ball_l2(f, delta, n)
        rows.append(UcpRow(delta, local, total, local / (delta**M * total)))
    return UcpReport(f.dimension, f.lam, f.claimed_order, M, rows, n, window)


def counterexample_report(
    d: int,
    N_list: Sequence[int],
    w: float,
    policy: str = "paper",
    deltas: Sequence[float] = DEFAULT_DELTAS,
    resolution: int | None = None,
) -> dict:
    """Bundle showing that no uniform exponent M works for spectral windows of width w.

    For each N an eigenfunction f of the free Laplacian (potential zero)
    vanishing to order N is built. With E0 = lambda it lies in the range of
    the spectral projector onto [E0 - w, E0], and its table with M = 2N
    shows the ratio collapsing as delta shrinks.
    """
    if w <= 0:
        raise ValueError(f"window width must be positive, got {w}")
    entries = []
    for N in N_list:
        f = construct(d, N, policy=policy, mode="rational")
        cert = certify(f)
        E0 = float(f.lam)
        report = ucp_ratio_table(f, 2 * N, deltas, resolution, window=(E0 - w, E0))
        entries.append(
            {
                "N": N,
                "M": 2 * N,
                "lambda": f.lam,
                "E0": E0,
                "window": [E0 - w, E0],
                "eigenvalue_in_window": E0 - w <= f.lam <= E0,
                "shell_size": len(f.modes),
                "constraints": count_multiindices(d, N),
                "rank": f.nullspace.rank,
                "nullity": f.nullspace.dimension,
                "certificate": {
                    "verified": cert.verified,
                    "mode_discipline": not cert.bad_modes,
                    "nonzero": cert.nonzero,
                    "moments_checked": len(cert.moments),
                },
                "ratio_strictly_decreasing": report.strictly_decreasing(),
                "rows": [row._asdict() for row in report.rows],
                "resolution": report.resolution,
                "eigenfunction": eigenfunction_to_dict(f),
            }
        )
    return {
        "format_version": FORMAT_VERSION,
        "kind": "ucp_counterexample",
        "d": d,
        "w": w,
        "potential": "zero",
        "policy": policy,
        "entries": entries,
    }
