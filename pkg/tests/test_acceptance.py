"""Exit criteria for the whole package, one test per criterion.

Each test prints a PASS/FAIL line (also collected into the pytest terminal
summary) together with its wall-clock time and time limit.
"""

import contextlib
import json
import math
import random
import subprocess
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from test_exactlinalg import gauss_jordan_nullity

from vanishing_torus import (
    DimensionOneError,
    build_vanishing_system,
    construct,
    count_multiindices,
    count_shell_bruteforce,
    enumerate_multiindices,
    enumerate_shell,
    integer_nullspace,
    laplacian_residual,
    parseval_norm_sq,
    r2_formula,
)
from vanishing_torus.numtheory import shell_count_table
from vanishing_torus.ucp import torus_l2, ucp_ratio_table


@contextlib.contextmanager
def criterion(number, title, limit):
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        elapsed = time.perf_counter() - start
        assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        line = f"[{status}] {number}. {title} ({elapsed:.2f}s / {limit}s)"
        ACCEPTANCE_LINES.append(line)
        print(line)


def test_1_two_squares_formula_up_to_1e5():
    with criterion(1, "r2 formula equals brute-force count for 1 <= n <= 10^5", 30):
        limit = 10**5
        counts = shell_count_table(2, limit)
        mismatches = [n for n in range(1, limit + 1) if r2_formula(n) != counts[n]]
        assert mismatches == []
        # spot-check the tally against the per-lambda box scan
        for n in (1, 2, 25, 325, 65, 3125, 99_997, 100_000):
            assert counts[n] == count_shell_bruteforce(2, n)


def test_2_powers_of_five():
    with criterion(2, "r2(5^C) = 4(C + 1) for C = 0..10", 1):
        assert [r2_formula(5**c) for c in range(11)] == [4 * (c + 1) for c in range(11)]


def test_3_theorem_instance_end_to_end():
    with criterion(3, "construct(2, 5): lambda 3125, 24 modes, 21x24 system, all moments zero", 60):
        f = construct(2, 5, policy="paper")
        assert f.lam == 3125
        assert len(f.modes) == 24
        shell = enumerate_shell(2, f.lam)
        assert shell.points == f.modes
        A = build_vanishing_system(shell, enumerate_multiindices(2, 5))
        assert (A.rows, A.cols) == (21, 24)
        assert any(f.coefficients)
        for alpha in enumerate_multiindices(2, 5):
            powers = [math.prod(k_i**a_i for k_i, a_i in zip(k, alpha)) for k in f.modes]
            re = sum(mu.re * p for mu, p in zip(f.coefficients, powers))
            im = sum(mu.im * p for mu, p in zip(f.coefficients, powers))
            assert re == 0 and im == 0, alpha


def test_4_dimension_one_impossible():
    with criterion(4, "d = 1 refused for N >= 2; every shell with lambda <= 10^4 has <= 2 < C(N) points", 10):
        sizes = [count_shell_bruteforce(1, lam) for lam in range(1, 10**4 + 1)]
        assert max(sizes) == 2
        for N in range(2, 8):
            assert max(sizes) < count_multiindices(1, N)
            with pytest.raises(DimensionOneError, match="impossible in dimension 1"):
                construct(1, N)


def test_5_lemma_decay_witness(f25):
    with criterion(5, "ratio local/(delta^10 total) strictly decreasing, >= 4x per halving", 120):
        report = ucp_ratio_table(f25, 10, [0.2, 0.1, 0.05, 0.025])
        ratios = report.ratios()
        print("ratios:", ratios)
        assert report.strictly_decreasing()
        for a, b in zip(ratios, ratios[1:]):
            assert a / b >= 4


def test_6_parseval_consistency(f25):
    with criterion(6, "torus quadrature of |f|^2 within 1e-6 of (2 pi)^d sum |mu|^2", 60):
        exact = parseval_norm_sq(f25).value
        assert abs(torus_l2(f25) - exact) <= 1e-6 * exact


def test_7_laplacian_second_order(f25):
    with criterion(7, "finite-difference residual ratio h=1e-3 vs 5e-4 in [3.5, 4.5] at 20 points", 10):
        rng = np.random.default_rng(2017)
        for x in rng.uniform(-np.pi, np.pi, (20, 2)):
            ratio = laplacian_residual(f25, x, 1e-3) / laplacian_residual(f25, x, 5e-4)
            assert 3.5 <= ratio <= 4.5, (x, ratio)


def test_8_nullspace_oracle_equivalence():
    with criterion(8, "Bareiss nullity equals Gauss-Jordan on 200 random matrices; A v = 0 exactly", 10):
        rng = random.Random(8)
        for _ in range(200):
            m, n = rng.randint(1, 6), rng.randint(1, 8)
            rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
            basis = integer_nullspace(rows)
            assert basis.dimension == gauss_jordan_nullity(rows)
            for v in basis.vectors:
                assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)


def _cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "vanishing_torus", *map(str, args)], capture_output=True, text=True
    )


def test_9_determinism_and_roundtrip(tmp_path):
    with criterion(9, "two construct runs byte-identical; verify accepts, rejects every mutation", 120):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert _cli("construct", "--d", 2, "--N", 5, "--out", a).returncode == 0
        assert _cli("construct", "--d", 2, "--N", 5, "--out", b).returncode == 0
        assert a.read_bytes() == b.read_bytes()
        assert a.with_suffix(".cert.json").read_bytes() == b.with_suffix(".cert.json").read_bytes()
        assert _cli("verify", a).returncode == 0
        original = json.loads(a.read_text())
        for i in range(len(original["modes"])):
            for part in ("re", "im"):
                mutated = json.loads(a.read_text())
                mu = mutated["modes"][i]["mu"][part]
                value = Fraction(mu["num"], mu["den"]) + Fraction(1, 7)
                mu["num"], mu["den"] = value.numerator, value.denominator
                path = tmp_path / f"m{i}{part}.json"
                path.write_text(json.dumps(mutated))
                proc = _cli("verify", path)
                assert proc.returncode == 1, (i, part)
                assert "FAIL moment alpha=" in proc.stdout
