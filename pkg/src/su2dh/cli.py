"""Command-line front end.

Three subcommands:

* ``eval``    - densities and reduced volumes over a point or grid, by the
                residue path, the Fourier path, or both side by side;
* ``central`` - density and volume at the central elements +e / -e;
* ``lemma``   - check the exponential-sum/residue identity for a given
                rational pole function and phase.

Output is a deterministic CSV or JSON table (15 significant digits, '.'
decimal separator, LF line endings).  Exit codes: 0 success, 2 input or
validation error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Any

from .expsum import (
    GammaRangeError,
    RationalPoleFunction,
    _check_gamma,
    exp_sum_extrapolated,
    exp_sum_residue,
)
from .fourier import QuadratureError, SummationError, SummationMethod, reconstruct_density
from .model import AlcoveRangeError, SpaceFormatError, load_space, require_interior_alcove
from .residue import (
    CentralElement,
    EvalOptions,
    NonRealDensityError,
    WallError,
    WallPolicy,
    central_density,
    density,
    reduced_volume,
    scan,
)
from .spaces import builtin_space

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3

_WALL_POLICIES = {
    "error": WallPolicy.ERROR,
    "left": WallPolicy.LEFT_LIMIT,
    "right": WallPolicy.RIGHT_LIMIT,
}

_NUMERIC_ERRORS = (WallError, NonRealDensityError, SummationError, QuadratureError)
_USAGE_ERRORS = (SpaceFormatError, AlcoveRangeError, GammaRangeError)


def _fmt(x: float) -> str:
    x = float(x)
    if x == 0.0:
        x = 0.0  # avoid emitting the sign of a negative zero
    return format(x, ".15g")


def _json_number(x: float) -> float:
    return float(_fmt(x))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="su2dh",
        description=(
            "Duistermaat-Heckman densities and reduced-space volumes for "
            "quasi-Hamiltonian SU(2)-spaces."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_space_args(p: argparse.ArgumentParser) -> None:
        source = p.add_mutually_exclusive_group(required=True)
        source.add_argument(
            "--builtin", help="builtin space selector: s4, double, or product:N"
        )
        source.add_argument("--space", help="path of a JSON space file")

    def add_output_args(p: argparse.ArgumentParser) -> None:
        p.add_argument("--out", help="output path (default: standard output)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p_eval = sub.add_parser("eval", help="evaluate density and volume on a point or grid")
    add_space_args(p_eval)
    where = p_eval.add_mutually_exclusive_group(required=True)
    where.add_argument("--t", type=float, help="single alcove point in (0, 1)")
    where.add_argument("--grid", help="grid START:END:STEP of alcove points")
    p_eval.add_argument("--mode", choices=("residue", "fourier", "both"), default="residue")
    p_eval.add_argument("--method", choices=("partial", "abel", "cesaro"), default="abel")
    p_eval.add_argument("--terms", type=int, default=10_000, help="character series length")
    p_eval.add_argument("--abel", type=float, default=0.999, help="Abel damping radius")
    p_eval.add_argument(
        "--richardson", type=int, default=2, help="Richardson levels for Abel summation"
    )
    p_eval.add_argument("--imag-tol", type=float, default=1e-9)
    p_eval.add_argument("--wall-policy", choices=tuple(_WALL_POLICIES), default="error")
    add_output_args(p_eval)

    p_central = sub.add_parser("central", help="density and volume at a central element")
    add_space_args(p_central)
    p_central.add_argument("--at", choices=("e", "-e"), required=True)
    p_central.add_argument("--imag-tol", type=float, default=1e-9)
    add_output_args(p_central)

    p_lemma = sub.add_parser(
        "lemma", help="check the exponential-sum/residue identity"
    )
    p_lemma.add_argument(
        "--coeff",
        action="append",
        default=[],
        metavar="K:RE[:IM]",
        help="pole coefficient a_K (repeatable)",
    )
    p_lemma.add_argument("--gamma", type=float, required=True)
    p_lemma.add_argument("--M", type=int, default=100_000, help="partial-sum length")
    p_lemma.add_argument("--r", type=float, default=0.9999, help="Abel damping radius")
    p_lemma.add_argument("--tol", type=float, default=1e-5, help="PASS threshold")
    add_output_args(p_lemma)

    return parser


def _load_selected_space(args: argparse.Namespace):
    if args.builtin is not None:
        try:
            return builtin_space(args.builtin)
        except ValueError as exc:
            raise SpaceFormatError(str(exc)) from exc
    try:
        with open(args.space, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise SpaceFormatError(f"cannot read space file {args.space!r}: {exc}") from exc
    return load_space(text)


def _parse_grid(spec: str) -> list[float]:
    parts = spec.split(":")
    if len(parts) != 3:
        raise SpaceFormatError(f"grid must be START:END:STEP, got {spec!r}")
    try:
        start, end, step = (float(p) for p in parts)
    except ValueError:
        raise SpaceFormatError(f"grid must be numeric START:END:STEP, got {spec!r}") from None
    if step <= 0:
        raise SpaceFormatError("grid step must be positive")
    if not start < end:
        raise SpaceFormatError("grid start must be below grid end")
    count = int(math.floor((end - start) / step + 1e-9))
    points = [start + i * step for i in range(count + 1)]
    return [t for t in points if t <= end + 1e-12]


def _emit(lines_csv: str, payload_json: dict[str, Any], args: argparse.Namespace) -> None:
    if args.format == "csv":
        text = lines_csv
    else:
        text = json.dumps(payload_json, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _cmd_eval(args: argparse.Namespace) -> int:
    space = _load_selected_space(args)
    options = EvalOptions(
        imag_tolerance=args.imag_tol, wall_policy=_WALL_POLICIES[args.wall_policy]
    )
    method = SummationMethod(
        kind=args.method,
        terms=args.terms,
        abel_r=args.abel,
        richardson_levels=args.richardson,
    )
    labels = sorted(c.label for c in space.components)

    if args.mode == "fourier":
        header = ["t", "density", "volume"]
    else:
        header = ["t", "density", "volume"] + [f"component_{label}" for label in labels]
        if args.mode == "both":
            header += ["fourier_density", "abs_diff"]

    grid = [args.t] if args.t is not None else _parse_grid(args.grid)
    for t in grid:
        require_interior_alcove(t)

    rows: list[dict[str, Any]] = []
    if args.mode == "fourier":
        for t in grid:
            value = reconstruct_density(space, t, method)
            rows.append(
                {
                    "t": t,
                    "density": value,
                    "volume": _interior_volume(space, t, value),
                }
            )
    elif args.t is not None:
        result = density(space, args.t, options)
        volume = _interior_volume(space, result.t, result.total)
        rows.append(_eval_row(args, space, method, result, volume, labels))
    else:
        for point in scan(space, grid, options):
            if point.error is not None:
                print(f"warning: skipping t = {_fmt(point.t)}: {point.error}", file=sys.stderr)
                rows.append({"t": point.t, "error": point.error})
                continue
            rows.append(_eval_row(args, space, method, point.result, point.volume, labels))

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        if "error" in row:
            writer.writerow([_fmt(row["t"])] + [""] * (len(header) - 1))
            continue
        record = [_fmt(row["t"]), _fmt(row["density"]), _fmt(row["volume"])]
        if args.mode != "fourier":
            record += [_fmt(row["components"][label]) for label in labels]
        if args.mode == "both":
            record += [_fmt(row["fourier_density"]), _fmt(row["abs_diff"])]
        writer.writerow(record)

    payload = {
        "command": "eval",
        "space": space.name,
        "mode": args.mode,
        "rows": [_round_row(row) for row in rows],
    }
    _emit(buffer.getvalue(), payload, args)
    return EXIT_OK


def _interior_volume(space, t: float, density_value: float) -> float:
    return (
        space.stabilizer_order
        * (2.0 * math.sin(math.pi * t) / math.sqrt(2.0))
        * density_value
    )


def _eval_row(args, space, method, result, volume, labels) -> dict[str, Any]:
    row: dict[str, Any] = {"t": result.t}
    row["density"] = result.total
    row["volume"] = volume
    row["components"] = {label: result.per_component[label] for label in labels}
    if args.mode == "both":
        fourier_value = reconstruct_density(space, result.t, method)
        row["fourier_density"] = fourier_value
        row["abs_diff"] = abs(result.total - fourier_value)
    return row


def _round_row(row: dict[str, Any]) -> dict[str, Any]:
    out: dict[str, Any] = {}
    for key, value in row.items():
        if isinstance(value, float):
            out[key] = _json_number(value)
        elif isinstance(value, dict):
            out[key] = {k: _json_number(v) for k, v in value.items()}
        else:
            out[key] = value
    return out


def _cmd_central(args: argparse.Namespace) -> int:
    space = _load_selected_space(args)
    which = CentralElement.IDENTITY if args.at == "e" else CentralElement.MINUS_IDENTITY
    options = EvalOptions(imag_tolerance=args.imag_tol)
    print(
        "warning: central value assumes the evaluation point is a regular value "
        "of the moment map; this cannot be verified from fixed-point data",
        file=sys.stderr,
    )
    value = central_density(space, which, options)
    volume = reduced_volume(space, which, options)

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["at", "density", "volume"])
    writer.writerow([args.at, _fmt(value), _fmt(volume)])
    payload = {
        "command": "central",
        "space": space.name,
        "at": args.at,
        "density": _json_number(value),
        "volume": _json_number(volume),
    }
    _emit(buffer.getvalue(), payload, args)
    return EXIT_OK


def _parse_pole_coefficients(entries: list[str]) -> RationalPoleFunction:
    coeffs: dict[int, complex] = {}
    for entry in entries:
        parts = entry.split(":")
        if len(parts) not in (2, 3):
            raise SpaceFormatError(f"--coeff must be K:RE or K:RE:IM, got {entry!r}")
        try:
            k = int(parts[0])
            re = float(parts[1])
            im = float(parts[2]) if len(parts) == 3 else 0.0
        except ValueError:
            raise SpaceFormatError(f"cannot parse --coeff {entry!r}") from None
        if k < 1:
            raise SpaceFormatError(f"--coeff pole order must be >= 1, got {k}")
        if k in coeffs:
            raise SpaceFormatError(f"duplicate --coeff pole order {k}")
        coeffs[k] = complex(re, im)
    if not coeffs:
        raise SpaceFormatError("at least one --coeff K:RE[:IM] is required")
    return RationalPoleFunction(coeffs)


def _cmd_lemma(args: argparse.Namespace) -> int:
    # gamma is validated first so an out-of-range phase is reported even
    # without coefficients
    _check_gamma(args.gamma)
    f = _parse_pole_coefficients(args.coeff)
    if args.M < 1:
        raise SpaceFormatError("--M must be >= 1")
    if not (0.0 < args.r < 1.0):
        raise SpaceFormatError("--r must lie in (0, 1)")

    residue_value = exp_sum_residue(f, args.gamma)
    oracle_value = exp_sum_extrapolated(f, args.gamma, M=args.M, damping_r=args.r)
    diff = abs(residue_value - oracle_value)
    passed = diff <= args.tol * (1.0 + abs(residue_value))
    status = "PASS" if passed else "FAIL"

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(
        ["gamma", "residue_re", "residue_im", "partial_re", "partial_im", "abs_diff", "status"]
    )
    writer.writerow(
        [
            _fmt(args.gamma),
            _fmt(residue_value.real),
            _fmt(residue_value.imag),
            _fmt(oracle_value.real),
            _fmt(oracle_value.imag),
            _fmt(diff),
            status,
        ]
    )
    payload = {
        "command": "lemma",
        "gamma": _json_number(args.gamma),
        "residue": [_json_number(residue_value.real), _json_number(residue_value.imag)],
        "partial_sum": [_json_number(oracle_value.real), _json_number(oracle_value.imag)],
        "abs_diff": _json_number(diff),
        "status": status,
    }
    _emit(buffer.getvalue(), payload, args)
    return EXIT_OK if passed else EXIT_NUMERIC


def _normalize_argv(argv: list[str]) -> list[str]:
    """Join ``--at -e`` into ``--at=-e`` so the value is not read as a flag."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        if argv[i] == "--at" and i + 1 < len(argv):
            out.append(f"--at={argv[i + 1]}")
            i += 2
            continue
        out.append(argv[i])
        i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_normalize_argv(list(argv)))
    try:
        if args.command == "eval":
            return _cmd_eval(args)
        if args.command == "central":
            return _cmd_central(args)
        return _cmd_lemma(args)
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _NUMERIC_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
