"""Command-line front end.

Exit codes: 0 success (or the relation holds), 1 a well-posed negative
answer (relation fails, residual too large), 2 bad input or numerical failure.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import fileio
from .errors import ConstraintError, NumericalError, SymhornError
from .linalg_core import half_dimension
from .sampling import make_generator, random_pd_with_symplectic_spectrum
from .schurhorn import (
    DIAGONAL_KINDS,
    check_forward,
    construct_arithmetic,
    construct_geometric,
    verify_construction,
)
from .vecmaj import (
    as_positive_vector,
    default_slack,
    is_majorized,
    is_weakly_submajorized,
    is_weakly_supermajorized,
)
from .williamson import DECOMP_TOL, symplectic_eigenvalues, williamson_decomposition

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2

_RELATIONS = {
    "sub": is_weakly_submajorized,
    "super": is_weakly_supermajorized,
    "exact": is_majorized,
}


class UsageError(Exception):
    pass


def _emit(key, value):
    if isinstance(value, (list, tuple, np.ndarray)):
        value = fileio.format_vector(value)
    elif isinstance(value, float):
        value = fileio.format_number(value)
    print(f"{key}: {value}")


def _write_or_print(path, A, fmt):
    if path:
        fileio.write_matrix(path, A, fmt)
    else:
        sys.stdout.write(fileio.dump_matrix(A, fmt))


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name} is required")


def cmd_eigs(args):
    _need(args, "input")
    A = fileio.read_matrix(args.input)
    print(fileio.format_vector(symplectic_eigenvalues(A)))
    return EXIT_OK


def cmd_williamson(args):
    _need(args, "input")
    A = fileio.read_matrix(args.input)
    half_dimension(A)
    try:
        wd = williamson_decomposition(A)
    except NumericalError as exc:
        details = exc.details if isinstance(exc.details, dict) else {}
        if "form_residual" not in details or "M" not in details:
            raise
        _emit("d", details["d"])
        _emit("form_residual", details["form_residual"])
        _emit("symplectic_residual", details["symplectic_residual"])
        print(f"residual check failed: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    _emit("d", wd.d)
    _emit("form_residual", wd.form_residual)
    _emit("symplectic_residual", wd.symplectic_residual)
    if wd.warning:
        print(f"warning: {wd.warning}", file=sys.stderr)
    if args.out:
        fileio.write_matrix(args.out, wd.M, args.format)
        fileio.write_vector(args.out + ".d", wd.d, args.format)
    scale_a = np.linalg.norm(A)
    scale_m = 1.0 + np.linalg.norm(wd.M) ** 2
    ok = wd.form_residual <= DECOMP_TOL * scale_a and wd.symplectic_residual <= DECOMP_TOL * scale_m
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_majorize(args):
    _need(args, "x", "y")
    x = fileio.parse_values(args.x)
    y = fileio.parse_values(args.y)
    slack = default_slack(y) if args.slack is None else args.slack
    verdict = _RELATIONS[args.relation](x, y, slack)
    _emit("relation", args.relation)
    _emit("holds", str(verdict.holds).lower())
    if not verdict.holds:
        _emit("first_violation_index", verdict.first_violation_index)
        _emit("lhs_partial_sum", verdict.lhs_partial_sum)
        _emit("rhs_partial_sum", verdict.rhs_partial_sum)
    return EXIT_OK if verdict.holds else EXIT_NEGATIVE


def cmd_construct(args):
    _need(args, "x", "y")
    x = as_positive_vector(fileio.parse_values(args.x), "x")
    y = as_positive_vector(fileio.parse_values(args.y), "y")
    build = construct_geometric if args.mean == "geometric" else construct_arithmetic
    tol = 1e-7 if args.tol is None else args.tol
    try:
        report = build(x, y, tol=tol)
    except ConstraintError as exc:
        _emit("error", "x is not weakly supermajorised by y")
        _emit("first_violation_index", exc.index)
        return EXIT_NEGATIVE
    _emit("mean", report.mean)
    _emit("z", report.intermediate_z)
    _emit("spectrum", report.achieved_spectrum)
    _emit("diagonal", report.achieved_diagonal)
    _emit("spectrum_residual", report.spectrum_residual)
    _emit("diagonal_residual", report.diagonal_residual)
    _write_or_print(args.out, report.A, args.format)
    return EXIT_OK


def cmd_sample(args):
    if args.values is not None:
        d = fileio.parse_values(args.values)
    elif args.input is not None:
        d = fileio.read_vector(args.input)
    else:
        raise UsageError("--values or --input is required")
    g = make_generator(args.seed)
    A = random_pd_with_symplectic_spectrum(d, args.spread, g)
    _emit("spectrum", symplectic_eigenvalues(A))
    _write_or_print(args.out, A, args.format)
    return EXIT_OK


def cmd_verify(args):
    _need(args, "input", "x", "y")
    A = fileio.read_matrix(args.input)
    x = fileio.parse_values(args.x)
    y = fileio.parse_values(args.y)
    report = verify_construction(A, x, y, args.mean)
    tol = 1e-6 if args.tol is None else args.tol
    _emit("mean", report.mean)
    _emit("spectrum", report.achieved_spectrum)
    _emit("diagonal", report.achieved_diagonal)
    _emit("spectrum_residual", report.spectrum_residual)
    _emit("diagonal_residual", report.diagonal_residual)
    for kind in DIAGONAL_KINDS:
        verdict = check_forward(A, kind, spectrum=report.achieved_spectrum)
        _emit(f"forward_{kind}", str(verdict.holds).lower())
    return EXIT_OK if report.ok(tol) else EXIT_NEGATIVE


def build_parser():
    parser = argparse.ArgumentParser(
        prog="symhorn",
        description="Symplectic eigenvalues, Williamson form and symplectic Schur-Horn constructions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        p.add_argument("--format", choices=("text", "structured"), default="text",
                       help="encoding of files written by this command")
        return p

    p = add("eigs", cmd_eigs, "print the symplectic spectrum of a matrix file")
    p.add_argument("--input")

    p = add("williamson", cmd_williamson, "Williamson decomposition of a matrix file")
    p.add_argument("--input")
    p.add_argument("--out", help="write M here and d to <out>.d")

    p = add("majorize", cmd_majorize, "decide a majorisation relation between two vectors")
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--relation", choices=tuple(_RELATIONS), default="super")
    p.add_argument("--slack", type=float, default=None)

    p = add("construct", cmd_construct, "build A with d_s(A)=y and mean diagonal x")
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--mean", choices=("geometric", "arithmetic"), default="geometric")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--out")

    p = add("sample", cmd_sample, "random matrix with a given symplectic spectrum")
    p.add_argument("--values")
    p.add_argument("--input")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--spread", type=float, default=1.0)
    p.add_argument("--out")

    p = add("verify", cmd_verify, "check a matrix against target spectrum and diagonal")
    p.add_argument("--input")
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--mean", choices=("geometric", "arithmetic"), default="geometric")
    p.add_argument("--tol", type=float, default=None)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, fileio.FileFormatError, SymhornError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
