"""Command-line interface.

Exit codes: 0 success, 1 certificate or verification failure, 2 invalid input
or an impossible request.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .combinatorics import count_multiindices
from .eigenfunction import (
    DimensionOneError,
    NoSolutionError,
    certify,
    construct,
    parseval_norm_sq,
)
from .fileformat import FormatError, dumps_certificate, dumps_eigenfunction, loads_eigenfunction
from .numtheory import (
    POLICIES,
    BudgetExceededError,
    choose_lambda,
    count_shell_bruteforce,
    enumerate_shell,
    r2_formula,
)
from .ucp import DEFAULT_DELTAS, counterexample_report, ucp_ratio_table

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def _delta(text: str) -> float:
    value = float(text)
    if not 0 < value <= math.pi:
        raise argparse.ArgumentTypeError(f"delta must lie in (0, pi], got {text}")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0 or not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def _write(path: str, text: str) -> None:
    Path(path).write_text(text)


def cmd_shell(args) -> int:
    shell = enumerate_shell(args.d, args.lam)
    for k in shell:
        print(" ".join(str(x) for x in k))
    print(f"count: {len(shell)}")
    if args.d == 2:
        formula = r2_formula(args.lam)
        print(f"r2 formula: {formula}")
        if formula != len(shell):
            print("mismatch between enumeration and the two-squares formula", file=sys.stderr)
            return EXIT_FAIL
    return EXIT_OK


def cmd_lambda(args) -> int:
    required = args.required
    if required is None:
        if args.N is None:
            raise UsageError("give --required or --N")
        required = count_multiindices(args.d, args.N) + 1
    if args.d < 2 and args.policy == "paper":
        raise UsageError("the paper policy needs d >= 2")
    lam = choose_lambda(args.d, required, args.policy)
    size = r2_formula(lam) if args.d == 2 else count_shell_bruteforce(args.d, lam)
    print(f"lambda: {lam}")
    print(f"shell size: {size} (required {required})")
    return EXIT_OK


def cmd_construct(args) -> int:
    f = construct(args.d, args.N, policy=args.policy, mode=args.mode, lam=args.lam)
    cert = certify(f)
    out = args.out or f"eigenfunction_d{args.d}_N{args.N}.json"
    cert_path = args.cert or str(Path(out).with_suffix(".cert.json"))
    _write(out, dumps_eigenfunction(f))
    _write(cert_path, dumps_certificate(f, cert))
    print(f"lambda: {f.lam}")
    print(f"shell size: {len(f.modes)}")
    print(f"constraints: {count_multiindices(f.dimension, args.N)}")
    print(f"rank: {f.nullspace.rank}  nullity: {f.nullspace.dimension}")
    print(f"certificate verified: {str(cert.verified).lower()}")
    print(f"wrote {out} and {cert_path}")
    return EXIT_OK if cert.ok else EXIT_FAIL


def cmd_verify(args) -> int:
    f = loads_eigenfunction(Path(args.file).read_text())
    cert = certify(f)
    if cert.bad_modes:
        k = cert.bad_modes[0]
        print(
            f"FAIL mode discipline: k={list(k)} has |k|^2={sum(x * x for x in k)} "
            f"but lambda={f.lam}"
        )
        return EXIT_FAIL
    if not cert.nonzero:
        print("FAIL all coefficients are zero")
        return EXIT_FAIL
    if not cert.verified:
        alpha = cert.first_failure
        value = cert.moments[alpha]
        print(f"FAIL moment alpha={list(alpha)} is nonzero: {value.re} + {value.im}i")
        return EXIT_FAIL
    norm = parseval_norm_sq(f)
    print(f"OK d={f.dimension} lambda={f.lam} N={f.claimed_order}")
    print(f"modes on shell: {len(f.modes)}  moments checked: {len(cert.moments)}")
    print(f"squared L2 norm: {norm.rational} * pi^{norm.pi_power} = {norm.value:.17g}")
    return EXIT_OK


def cmd_ucp(args) -> int:
    f = loads_eigenfunction(Path(args.file).read_text())
    M = args.M if args.M is not None else 2 * (f.claimed_order or 0)
    try:
        report = ucp_ratio_table(f, M, args.deltas, args.resolution)
    except ValueError as exc:
        print(f"FAIL {exc}", file=sys.stderr)
        return EXIT_FAIL
    csv = report.to_csv()
    if args.out:
        _write(args.out, csv)
    else:
        sys.stdout.write(csv)
    if args.json:
        _write(args.json, report.to_json())
    return EXIT_OK


def cmd_counterexample(args) -> int:
    bundle = counterexample_report(
        args.d, args.N_list, args.w, args.policy, args.deltas, args.resolution
    )
    text = json.dumps(bundle, indent=1) + "\n"
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    ok = all(e["certificate"]["verified"] for e in bundle["entries"])
    for e in bundle["entries"]:
        print(
            f"N={e['N']} lambda={e['lambda']} M={e['M']} verified={e['certificate']['verified']} "
            f"ratio decreasing={e['ratio_strictly_decreasing']}",
            file=sys.stderr,
        )
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vanishing-torus",
        description="Torus Laplace eigenfunctions with high vanishing order at 0.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("shell", help="list the lattice shell |k|^2 = lambda")
    p.add_argument("--d", type=_positive_int, required=True)
    p.add_argument("--lambda", dest="lam", type=_nonnegative_int, required=True)
    p.set_defaults(func=cmd_shell)

    p = sub.add_parser("lambda", help="choose an eigenvalue with a large enough shell")
    p.add_argument("--d", type=_positive_int, required=True)
    p.add_argument("--required", type=_positive_int)
    p.add_argument("--N", type=_nonnegative_int, help="use C(N) + 1 as the requirement")
    p.add_argument("--policy", choices=POLICIES, default="paper")
    p.set_defaults(func=cmd_lambda)

    p = sub.add_parser("construct", help="build and certify an eigenfunction")
    p.add_argument("--d", type=_positive_int, required=True)
    p.add_argument("--N", type=_nonnegative_int, required=True)
    p.add_argument("--lambda", dest="lam", type=_positive_int, default=None)
    p.add_argument("--policy", choices=POLICIES, default="paper")
    p.add_argument("--mode", choices=("rational", "real"), default="rational")
    p.add_argument("--out", help="eigenfunction file (default eigenfunction_d<d>_N<N>.json)")
    p.add_argument("--cert", help="certificate file (default <out>.cert.json)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="recheck every certificate from an eigenfunction file")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("ucp", help="tabulate local mass against delta^M as CSV")
    p.add_argument("file")
    p.add_argument("--M", type=float, default=None, help="exponent (default 2N)")
    p.add_argument("--deltas", type=_delta, nargs="+", default=list(DEFAULT_DELTAS))
    p.add_argument("--resolution", type=_positive_int, default=None)
    p.add_argument("--out", help="CSV path (default stdout)")
    p.add_argument("--json", help="also write the report as JSON")
    p.set_defaults(func=cmd_ucp)

    p = sub.add_parser("counterexample", help="bundle eigenfunctions and tables for several N")
    p.add_argument("--d", type=_positive_int, required=True)
    p.add_argument("--N-list", dest="N_list", type=_nonnegative_int, nargs="+", required=True)
    p.add_argument("--w", type=_positive_float, default=1.0)
    p.add_argument("--policy", choices=POLICIES, default="paper")
    p.add_argument("--deltas", type=_delta, nargs="+", default=list(DEFAULT_DELTAS))
    p.add_argument("--resolution", type=_positive_int, default=None)
    p.add_argument("--out", help="JSON path (default stdout)")
    p.set_defaults(func=cmd_counterexample)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DimensionOneError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, FormatError, BudgetExceededError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NoSolutionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
