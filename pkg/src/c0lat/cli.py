"""Batch command line: compute objects, run verification suites, emit
deterministic reports.

Exit codes: 0 success / suite passed, 1 a property violation was found,
2 input or usage error.  JSON output is byte-stable for fixed inputs and
seed; reports embed the full suite configuration.
"""

import argparse
import sys

import numpy as np

from . import blaschke
from .calculus import apply_blaschke, apply_polynomial, classify_c0, minimal_function
from .jordan import VerificationReport, are_quasisimilar, intertwiner_space, jordan_model
from .modelspace import compressed_shift, divisor_subspace, enumerate_lattice
from .serialize import (
    decode_blaschke_file,
    decode_matrix_file,
    encode_matrix,
    load_json,
    stable_json_bytes,
)
from .suites import SUITE_SUMMARIES, SUITES, SuiteConfig, run_suite

__all__ = ["main", "entrypoint", "report_render"]


class UsageError(ValueError):
    """Bad command line or malformed input file."""


def _parse_tolerances(pairs) -> dict:
    out = {}
    for pair in pairs or ():
        if "=" not in pair:
            raise UsageError(f"--tol expects NAME=VALUE, got {pair!r}")
        name, _, value = pair.partition("=")
        try:
            out[name.strip()] = float(value)
        except ValueError as exc:
            raise UsageError(f"--tol {pair!r}: {exc}") from exc
    return out


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="c0lat",
        description="Finite Blaschke products, model spaces, compressed shifts, "
        "and invariant-subspace lattice verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    inner = sub.add_parser("inner", help="finite Blaschke product arithmetic")
    inner_sub = inner.add_subparsers(dest="action", required=True)
    for action, helptext in [
        ("gcd", "greatest common inner divisor of two product files"),
        ("lcm", "least common inner multiple of two product files"),
        ("divides", "does the first product divide the second?"),
    ]:
        p = inner_sub.add_parser(action, help=helptext)
        p.add_argument("first")
        p.add_argument("second")
        _output_flags(p)
    p = inner_sub.add_parser("eval", help="evaluate a product at a point of the closed disk")
    p.add_argument("product")
    p.add_argument("point", help="complex literal, e.g. 0.5+0.3j")
    _output_flags(p)

    model = sub.add_parser("model", help="model spaces and the compressed shift")
    model_sub = model.add_subparsers(dest="action", required=True)
    p = model_sub.add_parser("shift", help="matrix of the compressed shift")
    p.add_argument("--theta", required=True)
    _output_flags(p)
    p = model_sub.add_parser("lat-enum", help="enumerate the invariant-subspace lattice")
    p.add_argument("--theta", required=True)
    _output_flags(p)
    p = model_sub.add_parser("divisor-subspace", help="coordinates of one divisor subspace")
    p.add_argument("--theta", required=True)
    p.add_argument("--phi", required=True)
    _output_flags(p)

    calc = sub.add_parser("calc", help="functional calculus on matrices")
    calc_sub = calc.add_subparsers(dest="action", required=True)
    p = calc_sub.add_parser("minfun", help="minimal function of a C0 matrix")
    p.add_argument("matrix")
    _output_flags(p)
    p = calc_sub.add_parser("apply", help="apply a Blaschke product or polynomial")
    p.add_argument("matrix")
    p.add_argument("--blaschke", help="Blaschke product file")
    p.add_argument("--poly", help="comma-separated ascending coefficients")
    _output_flags(p)
    p = calc_sub.add_parser("classify", help="C0 certificate of a matrix")
    p.add_argument("matrix")
    _output_flags(p)

    jordan = sub.add_parser("jordan", help="Jordan models and intertwiners")
    jordan_sub = jordan.add_subparsers(dest="action", required=True)
    p = jordan_sub.add_parser("model", help="Jordan model of a C0 matrix")
    p.add_argument("matrix")
    p.add_argument("--seed", type=int, default=0)
    _output_flags(p)
    p = jordan_sub.add_parser("quasisim", help="are two matrices quasisimilar?")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--seed", type=int, default=0)
    _output_flags(p)
    p = jordan_sub.add_parser("intertwine", help="dimension and max rank of the intertwiner space")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--seed", type=int, default=0)
    _output_flags(p)

    verify = sub.add_parser(
        "verify",
        help="run a verification suite",
        description="Suites:\n"
        + "\n".join(f"  {name}: {SUITE_SUMMARIES[name]}" for name in sorted(SUITES)),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    verify.add_argument("suite", choices=sorted(SUITES))
    verify.add_argument(
        "inputs",
        nargs="*",
        help="optional input files; matrices fix the operator under test, "
        "Blaschke files fix theta",
    )
    verify.add_argument("--seed", type=int, default=0, help="64-bit seed (default 0)")
    verify.add_argument("--trials", type=int, default=100, help="trial count (default 100)")
    verify.add_argument(
        "--tol",
        action="append",
        metavar="NAME=VALUE",
        help="override a suite tolerance (repeatable)",
    )
    _output_flags(verify)
    return parser


def _output_flags(p):
    p.add_argument("--json", action="store_true", help="emit byte-stable JSON")
    p.add_argument("--out", help="write output to this path instead of stdout")


def report_render(report: VerificationReport, mode: str = "text", config=None) -> bytes:
    """Render a suite report; JSON bytes are stable for a fixed report."""
    if mode == "json":
        payload = report.to_json_dict()
        if config is not None:
            payload["config"] = config.to_json_dict()
        return stable_json_bytes(payload)
    lines = [f"suite: {report.suite}"]
    if config is not None:
        lines.append(
            f"config: seed={config.seed} trials={config.trials} "
            f"tolerances={dict(sorted(config.tolerances.items()))} inputs={list(config.input_paths)}"
        )
    if report.passed:
        lines.append(
            f"PASSED ({report.trials} trials, max residual {report.max_residual:.6g})"
        )
    else:
        lines.append(
            f"FAILED ({len(report.violations)} violations in {report.trials} trials, "
            f"max residual {report.max_residual:.6g})"
        )
        for v in report.violations[:20]:
            lines.append(f"  trial {v.trial}: {v.kind} residual {v.residual:.6g} {v.witness}")
        if len(report.violations) > 20:
            lines.append(f"  ... {len(report.violations) - 20} more")
    return ("\n".join(lines) + "\n").encode("utf-8")


def _emit(payload_bytes: bytes, out_path):
    if out_path:
        with open(out_path, "wb") as handle:
            handle.write(payload_bytes)
    else:
        sys.stdout.write(payload_bytes.decode("utf-8"))


def _blaschke_text(b) -> str:
    return str(b)


def _matrix_text(matrix) -> str:
    matrix = np.asarray(matrix)
    rows = []
    for row in matrix:
        rows.append("  [" + ", ".join(f"{x.real:+.6g}{x.imag:+.6g}j" for x in row) + "]")
    return "\n".join(rows)


def _cmd_inner(args) -> int:
    if args.action in ("gcd", "lcm", "divides"):
        b1 = decode_blaschke_file(args.first)
        b2 = decode_blaschke_file(args.second)
        if args.action == "divides":
            result = blaschke.divides(b1, b2)
            payload = stable_json_bytes({"divides": result}) if args.json else (
                ("true" if result else "false") + "\n"
            ).encode()
            _emit(payload, args.out)
            return 0
        out = blaschke.gcd(b1, b2) if args.action == "gcd" else blaschke.lcm(b1, b2)
        payload = stable_json_bytes(out.to_json_dict()) if args.json else (
            _blaschke_text(out) + "\n"
        ).encode()
        _emit(payload, args.out)
        return 0
    b = decode_blaschke_file(args.product)
    try:
        z = complex(args.point)
    except ValueError as exc:
        raise UsageError(f"cannot parse complex point {args.point!r}") from exc
    value = blaschke.evaluate(b, z)
    payload = stable_json_bytes({"re": value.real, "im": value.imag}) if args.json else (
        f"{value:.12g}\n"
    ).encode()
    _emit(payload, args.out)
    return 0


def _cmd_model(args) -> int:
    theta = decode_blaschke_file(args.theta)
    if args.action == "shift":
        op = compressed_shift(theta)
        payload = stable_json_bytes(op.to_json_dict()) if args.json else (
            _matrix_text(op.matrix) + "\n"
        ).encode()
        _emit(payload, args.out)
        return 0
    if args.action == "lat-enum":
        entries = enumerate_lattice(theta)
        if args.json:
            payload = stable_json_bytes(
                [
                    {"divisor": phi.to_json_dict(), "subspace": s.to_json_dict()}
                    for phi, s in entries
                ]
            )
        else:
            lines = [
                f"{str(phi):40s} dim {s.dim}" for phi, s in entries
            ]
            payload = ("\n".join(lines) + "\n").encode()
        _emit(payload, args.out)
        return 0
    phi = decode_blaschke_file(args.phi)
    s = divisor_subspace(theta, phi)
    payload = stable_json_bytes(s.to_json_dict()) if args.json else (
        f"dim {s.dim} in ambient {s.ambient_dim}\n" + _matrix_text(s.basis) + "\n"
    ).encode()
    _emit(payload, args.out)
    return 0


def _cmd_calc(args) -> int:
    t = decode_matrix_file(args.matrix)
    if args.action == "minfun":
        mf = minimal_function(t)
        payload = stable_json_bytes(mf.to_json_dict()) if args.json else (
            _blaschke_text(mf) + "\n"
        ).encode()
        _emit(payload, args.out)
        return 0
    if args.action == "classify":
        cert = classify_c0(t)
        if args.json:
            payload = stable_json_bytes(cert.to_json_dict())
        else:
            mf = _blaschke_text(cert.minimal_function) if cert.minimal_function else "-"
            payload = (
                f"is_c0 {str(cert.is_c0).lower()}  spectral_radius {cert.spectral_radius:.12g}  "
                f"minimal_function {mf}  annihilation_residual {cert.annihilation_residual:.6g}\n"
            ).encode()
        _emit(payload, args.out)
        return 0
    if (args.blaschke is None) == (args.poly is None):
        raise UsageError("calc apply needs exactly one of --blaschke or --poly")
    if args.blaschke:
        symbol = decode_blaschke_file(args.blaschke)
        result = apply_blaschke(t, symbol)
    else:
        try:
            coeffs = [complex(c) for c in args.poly.split(",") if c.strip()]
        except ValueError as exc:
            raise UsageError(f"cannot parse --poly {args.poly!r}") from exc
        result = apply_polynomial(t, coeffs)
    payload = stable_json_bytes(encode_matrix(result)) if args.json else (
        _matrix_text(result) + "\n"
    ).encode()
    _emit(payload, args.out)
    return 0


def _cmd_jordan(args) -> int:
    if args.action == "model":
        t = decode_matrix_file(args.matrix)
        model = jordan_model(t, seed=args.seed)
        payload = stable_json_bytes(model.to_json_dict()) if args.json else (
            "\n".join(_blaschke_text(th) for th in model.thetas) + "\n"
        ).encode()
        _emit(payload, args.out)
        return 0
    t1 = decode_matrix_file(args.first)
    t2 = decode_matrix_file(args.second)
    if args.action == "quasisim":
        result = are_quasisimilar(t1, t2, seed=args.seed)
        payload = stable_json_bytes({"quasisimilar": result}) if args.json else (
            ("true" if result else "false") + "\n"
        ).encode()
        _emit(payload, args.out)
        return 0
    space = intertwiner_space(t1, t2, seed=args.seed)
    if args.json:
        payload = stable_json_bytes(
            {"dimension": space.dimension, "max_rank": space.max_rank}
        )
    else:
        payload = (f"dimension {space.dimension}  max_rank {space.max_rank}\n").encode()
    _emit(payload, args.out)
    return 0


def _decode_suite_inputs(suite: str, paths):
    decoded = []
    for path in paths:
        data = load_json(path)
        if isinstance(data, dict) and "zeros" in data:
            decoded.append(blaschke.BlaschkeProduct.from_json_dict(data))
        elif isinstance(data, dict) and "entries" in data:
            decoded.append(decode_matrix_file(path))
        else:
            raise UsageError(f"{path}: not a Blaschke product or matrix payload")
    return decoded


def _cmd_verify(args) -> int:
    config = SuiteConfig(
        suite=args.suite,
        seed=args.seed,
        trials=args.trials,
        tolerances=_parse_tolerances(args.tol),
        output="json" if args.json else "text",
        input_paths=tuple(args.inputs),
    )
    inputs = _decode_suite_inputs(args.suite, args.inputs)
    report = run_suite(config, inputs=inputs)
    _emit(report_render(report, config.output, config), args.out)
    return 0 if report.passed else 1


def main(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help
        return int(exc.code or 0)
    try:
        if args.command == "inner":
            return _cmd_inner(args)
        if args.command == "model":
            return _cmd_model(args)
        if args.command == "calc":
            return _cmd_calc(args)
        if args.command == "jordan":
            return _cmd_jordan(args)
        if args.command == "verify":
            return _cmd_verify(args)
        raise UsageError(f"unknown command {args.command!r}")
    except (UsageError, ValueError, OSError, KeyError) as exc:
        print(f"c0lat: error: {exc}", file=sys.stderr)
        return 2


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
