"""Command line interface: ``grd <command> ...``.

Every command prints JSON on stdout, except ``grd sample`` which writes
CSV (header ``y1,...,yd``) or JSON lines.  Errors go to stderr as a JSON
object ``{"error": CODE, "message": ...}``.

Exit statuses:

    0  success
    1  tail-sum violation, or a failed ``grd check``
    2  malformed input (unparseable JSON, wrong lengths, bad flags)
    3  request not valid for the parameter case (e.g. exact sampling
       with a non-integer sum, moment order above M)
    4  numerical limits (enumeration cap, quadrature tolerance,
       negative truncated weights under ``--strict``)
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
import warnings
from pathlib import Path

import numpy as np

from . import errors
from .checks import check_samples, run_suite
from .compositions import DEFAULT_CAP
from .core import validate_params
from .mixture import loggap_law_zero_sum, loggap_mgf, loggap_moments, mixture_weights
from .moments import (
    calibrate_first_moment,
    mean_vector_m1,
    negative_moment_y1,
    positive_moments,
    ratio_moment_zero_sum,
)
from .samplers import METHODS, make_rng, make_sampler
from .series import (
    DEFAULT_K,
    DEFAULT_MAX_K,
    DEFAULT_TOL,
    expected_power_y1_series,
    loggap_mgf_series,
    loggap_moments_series,
    signed_series_weights,
)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_CASE = 3
EXIT_NUMERIC = 4

_EXIT_FOR = [
    (errors.TailSumViolation, EXIT_VIOLATION),
    (errors.InvalidInput, EXIT_INPUT),
    (errors.CapExceeded, EXIT_NUMERIC),
    (errors.ToleranceNotReached, EXIT_NUMERIC),
    (errors.NegativeTruncatedWeight, EXIT_NUMERIC),
    (errors.GrdError, EXIT_CASE),
]


def _load_json(text: str, what: str):
    """Parse ``text`` as JSON, or read it from a file when it names one."""
    path = Path(text)
    try:
        if not text.lstrip().startswith(("[", "{")) and path.is_file():
            text = path.read_text()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise errors.InvalidInput(f"could not parse {what}: {exc}") from None


def _vector(text: str, what: str) -> list:
    value = _load_json(text, what)
    if not isinstance(value, list) or not all(
        isinstance(x, (int, float)) and not isinstance(x, bool) for x in value
    ):
        raise errors.InvalidInput(f"{what} must be a JSON array of numbers, got {text!r}")
    return value


def _params(args):
    return validate_params(_vector(args.params, "--params"))


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, default=_json_default)
    sys.stdout.write("\n")


def _json_default(x):
    if isinstance(x, np.generic):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    raise TypeError(type(x).__name__)


def _case_info(p) -> dict:
    info = {"case": p.case, "abar1": p.abar1}
    if p.case == "negative-integer-sum":
        info["M"] = p.negative_integer_sum
    elif p.case == "general":
        info["r"] = p.r
    return info


def cmd_validate(args) -> int:
    raw = _vector(args.params, "--params")
    try:
        p = validate_params(raw)
    except errors.TailSumViolation as exc:
        _emit({"valid": False, "a": raw, **exc.to_dict()})
        return EXIT_VIOLATION
    _emit({"valid": True, "a": p.to_list(), "tail": p.tail.tolist(), **_case_info(p)})
    return EXIT_OK


def _write_samples(y: np.ndarray, fmt: str, stream) -> None:
    d = y.shape[1]
    if fmt == "csv":
        stream.write(",".join(f"y{k}" for k in range(1, d + 1)) + "\n")
        buf = io.StringIO()
        np.savetxt(buf, y, fmt="%.17g", delimiter=",")
        stream.write(buf.getvalue())
    else:
        for row in y:
            stream.write(json.dumps([float(x) for x in row]) + "\n")


def cmd_sample(args) -> int:
    p = _params(args)
    if args.n < 1:
        raise errors.InvalidInput(f"--n must be >= 1, got {args.n}")
    with warnings.catch_warnings():
        # clipping is reported in the diagnostics line below
        warnings.simplefilter("ignore", errors.TruncationWarning)
        draw = make_sampler(p, args.method, args.K, args.cap)
    if args.method == "approx" or (args.method == "auto" and p.case == "general"):
        table = signed_series_weights(p, args.K, args.cap, on_negative="ignore")
        if args.strict and table.n_negative:
            raise errors.NegativeTruncatedWeight(
                f"clipped mass {table.clipped_mass:.3g} with K={args.K}"
            )
        diag = {"K": args.K, "clipped_mass": table.clipped_mass, "n_negative": table.n_negative}
        print(json.dumps({"diagnostics": diag}), file=sys.stderr)
        if args.dump_table:
            Path(args.dump_table).write_text(table.to_json())
    elif args.dump_table and p.negative_integer_sum is not None:
        Path(args.dump_table).write_text(mixture_weights(p, args.cap).to_json())
    y = draw(args.n, make_rng(args.seed))
    if args.out and args.out != "-":
        with open(args.out, "w", newline="") as fh:
            _write_samples(y, args.format, fh)
    else:
        _write_samples(y, args.format, sys.stdout)
    return EXIT_OK


def cmd_moments(args) -> int:
    p = _params(args)
    out = {"a": p.to_list(), **_case_info(p)}
    if args.power is not None:
        value, diag = expected_power_y1_series(p, args.power, args.tol, args.max_k)
        out.update(quantity=f"E[Y1^-{args.power}]", value=value, formula="series",
                   diagnostics=diag.to_dict())
    elif args.mean:
        out.update(quantity="E[Y]", value=mean_vector_m1(p).tolist(), formula="exact")
    elif args.inverse_y1 is not None:
        out.update(quantity=f"E[Y1^-{args.inverse_y1}]",
                   value=negative_moment_y1(p, args.inverse_y1, args.cap), formula="exact")
    elif args.n is None:
        raise errors.InvalidInput("give --n, --mean, --inverse-y1 or --power")
    elif args.ratio_M is not None:
        n = _vector(args.n, "--n")
        out.update(quantity=f"E[prod Y^n / Y1^{args.ratio_M}]", n=n,
                   value=ratio_moment_zero_sum(p, n, args.ratio_M, args.cap), formula="exact")
    else:
        n = _vector(args.n, "--n")
        out.update(quantity="E[prod Y^n]", n=n, value=positive_moments(p, n, args.cap),
                   formula="exact")
    _emit(out)
    return EXIT_OK


def cmd_loggap(args) -> int:
    p = _params(args)
    out = {"a": p.to_list(), **_case_info(p)}
    if (args.moment is None) == (args.mgf is None):
        raise errors.InvalidInput("give exactly one of --moment or --mgf")
    if args.moment is not None:
        n = np.asarray(_vector(args.moment, "--moment"), dtype=float)
        out["n"] = n.tolist()
        if n.shape != (p.d - 1,):
            raise errors.InvalidInput(f"--moment needs {p.d - 1} entries")
        if p.is_zero_sum:
            rates = loggap_law_zero_sum(p)
            value = math.prod(math.gamma(k + 1) / r**k for k, r in zip(n, rates))
            formula = "zero-sum exponential"
        elif p.negative_integer_sum is not None:
            value, formula = loggap_moments(p, n, args.cap), "exact"
        else:
            value, formula = loggap_moments_series(p, n, args.K, args.cap), "series"
        out.update(quantity="E[prod Z^n]", value=value)
    else:
        t = np.asarray(_vector(args.mgf, "--mgf"), dtype=float)
        out["t"] = t.tolist()
        if p.negative_integer_sum is not None:
            value, formula = loggap_mgf(p, t, args.cap), "exact"
        else:
            value = loggap_mgf_series(p, t, 0 if p.is_zero_sum else args.K, args.cap)
            formula = "zero-sum exponential" if p.is_zero_sum else "series"
        out.update(quantity="E[exp(t.Z)]", value=value)
    out["formula"] = formula
    if formula == "series":
        table = signed_series_weights(p, args.K, args.cap, on_negative="ignore")
        out["diagnostics"] = {"K": args.K, "clipped_mass": table.clipped_mass,
                              "n_negative": table.n_negative}
    _emit(out)
    return EXIT_OK


def cmd_calibrate(args) -> int:
    p = calibrate_first_moment(_vector(args.target, "--target"))
    _emit({"a": p.to_list(), "tail": p.tail.tolist()})
    return EXIT_OK


def _read_samples(source: str) -> np.ndarray:
    text = sys.stdin.read() if source == "-" else Path(source).read_text()
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise errors.EmptyInput("no samples read")
    try:
        if lines[0].lstrip().startswith("["):
            return np.array([json.loads(ln) for ln in lines], dtype=float)
        return np.loadtxt(lines[1:], delimiter=",", ndmin=2)
    except ValueError as exc:
        raise errors.InvalidInput(f"could not parse samples: {exc}") from None


def cmd_check(args) -> int:
    if args.samples is None:
        report = run_suite()
    else:
        if args.params is None:
            raise errors.InvalidInput("--samples needs --params")
        p = _params(args)
        y = _read_samples(args.samples)
        if y.shape[1] != p.d:
            raise errors.InvalidInput(f"samples have {y.shape[1]} columns, parameters d={p.d}")
        report = {"a": p.to_list(), **_case_info(p), **check_samples(p, y, args.K)}
    _emit(report)
    return EXIT_OK if report["passed"] else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with defaults for K, tol, max_k, cap")
    common.add_argument("--K", type=int, default=None,
                        help=f"series truncation (default {DEFAULT_K})")
    common.add_argument("--tol", type=float, default=None,
                        help=f"series tolerance (default {DEFAULT_TOL})")
    common.add_argument("--max-k", dest="max_k", type=int, default=None,
                        help=f"series term limit (default {DEFAULT_MAX_K})")
    common.add_argument("--cap", type=int, default=None,
                        help=f"enumeration size cap (default {DEFAULT_CAP})")

    parser = argparse.ArgumentParser(prog="grd", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common],
                       help="check parameters, report tail sums and case")
    p.add_argument("--params", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("sample", parents=[common], help="draw samples")
    p.add_argument("--params", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--method", choices=("auto",) + METHODS, default="auto")
    p.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--dump-table", dest="dump_table", default=None,
                   help="write the mixture table as JSON to this path")
    p.add_argument("--strict", action="store_true",
                   help="fail instead of clipping negative truncated weights")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("moments", parents=[common], help="moments of Y")
    p.add_argument("--params", required=True)
    p.add_argument("--n", default=None, help="JSON exponent vector")
    p.add_argument("--ratio-M", dest="ratio_M", type=int, default=None,
                   help="with --n: E[prod Y^n / Y1^M] (zero-sum)")
    p.add_argument("--mean", action="store_true", help="mean vector (sum of a equal to -1)")
    p.add_argument("--inverse-y1", dest="inverse_y1", type=int, default=None,
                   help="E[Y1^-M] (zero-sum)")
    p.add_argument("--power", type=float, default=None, help="E[Y1^-r] by series (zero-sum)")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("loggap", parents=[common], help="log-gap moments or MGF")
    p.add_argument("--params", required=True)
    p.add_argument("--moment", default=None, help="JSON order vector (n_2..n_d)")
    p.add_argument("--mgf", default=None, help="JSON argument vector (t_2..t_d)")
    p.set_defaults(func=cmd_loggap)

    p = sub.add_parser("calibrate", parents=[common], help="first-moment matching")
    p.add_argument("--target", required=True)
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("check", parents=[common], help="verification suite or sample check")
    p.add_argument("--params", default=None)
    p.add_argument("--samples", default=None, help="CSV/JSONL sample file, or - for stdin")
    p.set_defaults(func=cmd_check)
    return parser


def _apply_config(args) -> None:
    defaults = {"K": DEFAULT_K, "tol": DEFAULT_TOL, "max_k": DEFAULT_MAX_K, "cap": DEFAULT_CAP}
    if args.config:
        cfg = _load_json(args.config, "--config")
        if not isinstance(cfg, dict):
            raise errors.InvalidInput("--config must hold a JSON object")
        unknown = set(cfg) - set(defaults)
        if unknown:
            raise errors.InvalidInput(f"unknown config keys: {sorted(unknown)}")
        defaults.update(cfg)
    for key, value in defaults.items():
        if getattr(args, key) is None:
            setattr(args, key, value)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _apply_config(args)
        return args.func(args)
    except errors.GrdError as exc:
        print(json.dumps(exc.to_dict()), file=sys.stderr)
        for cls, status in _EXIT_FOR:
            if isinstance(exc, cls):
                return status
        return EXIT_CASE


if __name__ == "__main__":
    sys.exit(main())
