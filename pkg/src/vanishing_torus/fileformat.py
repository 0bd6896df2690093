"""Versioned JSON files for eigenfunctions and their certificates.

Rationals are stored as ``{"num": ..., "den": ...}`` with arbitrary-size
integers, so files carry the coefficients exactly. Serializing a parsed file
reproduces it byte for byte.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .eigenfunction import MODES, Eigenfunction, QComplex, VanishingCertificate

FORMAT_VERSION = 1


class FormatError(ValueError):
    """A file does not follow the eigenfunction or certificate schema."""


def _rational(q: Fraction) -> dict:
    return {"num": q.numerator, "den": q.denominator}


def _complex(z: QComplex) -> dict:
    return {"re": _rational(z.re), "im": _rational(z.im)}


def _int(obj, what: str) -> int:
    if isinstance(obj, bool) or not isinstance(obj, int):
        raise FormatError(f"{what} must be an integer, got {obj!r}")
    return obj


def _parse_rational(obj, what: str) -> Fraction:
    if not isinstance(obj, dict) or set(obj) != {"num", "den"}:
        raise FormatError(f"{what} must be {{num, den}}, got {obj!r}")
    den = _int(obj["den"], f"{what}.den")
    if den <= 0:
        raise FormatError(f"{what}.den must be positive")
    return Fraction(_int(obj["num"], f"{what}.num"), den)


def _parse_complex(obj, what: str) -> QComplex:
    if not isinstance(obj, dict) or set(obj) != {"re", "im"}:
        raise FormatError(f"{what} must be {{re, im}}, got {obj!r}")
    return QComplex(_parse_rational(obj["re"], f"{what}.re"), _parse_rational(obj["im"], f"{what}.im"))


def _dump(obj) -> str:
    # One line per scalar field and per list element.
    lines = []
    for key, value in obj.items():
        if isinstance(value, list) and value and isinstance(value[0], dict):
            items = ",\n".join("  " + json.dumps(v) for v in value)
            lines.append(f"{json.dumps(key)}: [\n{items}\n ]")
        else:
            lines.append(f"{json.dumps(key)}: {json.dumps(value)}")
    return "{\n " + ",\n ".join(lines) + "\n}\n"


def eigenfunction_to_dict(f: Eigenfunction) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "d": f.dimension,
        "lambda": f.lam,
        "N": f.claimed_order,
        "mode": f.mode,
        "modes": [{"k": list(k), "mu": _complex(mu)} for k, mu in zip(f.modes, f.coefficients)],
    }


def dumps_eigenfunction(f: Eigenfunction) -> str:
    return _dump(eigenfunction_to_dict(f))


def loads_eigenfunction(text: str) -> Eigenfunction:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise FormatError("top level must be an object")
    missing = {"format_version", "d", "lambda", "N", "mode", "modes"} - set(obj)
    if missing:
        raise FormatError(f"missing fields: {sorted(missing)}")
    if obj["format_version"] != FORMAT_VERSION:
        raise FormatError(f"unsupported format_version {obj['format_version']!r}")
    d = _int(obj["d"], "d")
    lam = _int(obj["lambda"], "lambda")
    if d < 1 or lam < 0:
        raise FormatError("need d >= 1 and lambda >= 0")
    N = obj["N"]
    if N is not None and (_int(N, "N") < 0):
        raise FormatError("N must be null or nonnegative")
    if obj["mode"] not in MODES:
        raise FormatError(f"mode must be one of {MODES}")
    if not isinstance(obj["modes"], list):
        raise FormatError("modes must be a list")
    modes = []
    coefficients = []
    for i, entry in enumerate(obj["modes"]):
        if not isinstance(entry, dict) or set(entry) != {"k", "mu"}:
            raise FormatError(f"modes[{i}] must be {{k, mu}}")
        k = entry["k"]
        if not isinstance(k, list) or len(k) != d:
            raise FormatError(f"modes[{i}].k must list {d} integers")
        modes.append(tuple(_int(x, f"modes[{i}].k") for x in k))
        coefficients.append(_parse_complex(entry["mu"], f"modes[{i}].mu"))
    if len(set(modes)) != len(modes):
        raise FormatError("duplicate modes")
    return Eigenfunction(d, lam, tuple(modes), tuple(coefficients), N, obj["mode"])


def dumps_certificate(f: Eigenfunction, cert: VanishingCertificate) -> str:
    failure = cert.first_failure
    return _dump(
        {
            "format_version": FORMAT_VERSION,
            "d": f.dimension,
            "lambda": f.lam,
            "N": cert.order_bound,
            "verified": cert.verified,
            "mode_discipline": not cert.bad_modes,
            "nonzero": cert.nonzero,
            "first_failing_alpha": list(failure) if failure is not None else None,
            "moments": [
                {"alpha": list(alpha), "value": _complex(value)}
                for alpha, value in cert.moments.items()
            ],
        }
    )
