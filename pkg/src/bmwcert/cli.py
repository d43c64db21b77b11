"""Command-line front end.

    bmwcert verify --family so --dim 4 --report json
    bmwcert verify --input R.json --detect-nu
    bmwcert verify --family sp --dim 2 --twist d.json --at-s 3/2
    bmwcert export --family so --dim 3 --out so3.json

Exit codes: 0 when every check passes, 1 when a check fails or the pipeline
aborts on a structural error, 2 on input or configuration errors.

Numeric mode (--at-s) evaluates every matrix entry at the given rational
value of s before any operator is composed, then runs the same residual
checks in exact rational arithmetic; it is a fast smoke-test, not the source
of truth.
"""

from __future__ import annotations

import argparse
import sys as _sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import (
    Outcome,
    RMatrixSystem,
    VerificationResult,
    detect_nu,
    factor_pairings,
    full_verification,
    kappa_of,
    _build_xy,
)
from .errors import BmwError, InvalidTwistParameters
from .families import (
    SP_NU_NOTE,
    TwistSpec,
    build_F,
    check_twist_compat,
    pairings_match_up_to_gauge,
    standard_matrix,
    twisted_expected,
    validate_twist,
)
from .report import (
    build_report,
    export_rmatrix,
    import_rmatrix,
    import_twist,
    render_json,
    render_text,
)
from .scalars import RationalField, SYMBOLIC, parse as parse_scalar
from .tensors import TensorOperator, compose, inverse, permutation_op


@dataclass
class JobConfig:
    """One verification job: where the operator comes from and how to run."""

    source: tuple  # ("family", series, dim) | ("file", path)
    twist: Optional[str] = None  # path of a twist parameter file
    nu: Optional[str] = None  # grammar text, or "detect"
    at_s: Optional[Fraction] = None  # numeric mode when set
    report_format: str = "text"
    out: Optional[str] = None

    def echo(self):
        if self.source[0] == "family":
            src = f"family:{self.source[1]}:{self.source[2]}"
        else:
            src = f"file:{self.source[1]}"
        return {
            "source": src,
            "twist": self.twist,
            "nu": self.nu,
            "mode": "symbolic" if self.at_s is None else f"numeric(s={self.at_s})",
            "report": self.report_format,
        }


def _numeric_op(op, field):
    return op.map_entries(lambda v: v.evaluate(field.at_s), field)


def _twist_d(path, field):
    d = import_twist(path)
    if field is not SYMBOLIC:
        d = tuple(tuple(v.evaluate(field.at_s) for v in row) for row in d)
    return TwistSpec(d)


def _evaluated_pair(pair, field):
    from .core import PairingPair

    return PairingPair(
        N=pair.N,
        g={k: v.evaluate(field.at_s) for k, v in pair.g.items()},
        gbar={k: v.evaluate(field.at_s) for k, v in pair.gbar.items()},
        pivot=pair.pivot,
    )


def _generic_twist_matrix(r_op, f_op, field):
    n = r_op.N
    p = permutation_op(n, 2, 1, 2, field)
    pf = compose(p, f_op)
    f_inv_p = compose(TensorOperator(n, 2, inverse(f_op.mat)), p)
    return compose(compose(pf, r_op), f_inv_p)


def _multiparametric_matrix(series, n, d, field):
    """Closed-form twisted entries in the requested field."""
    from .families import family_spec

    fam = family_spec(series, n)
    lam = field.lam
    q = field.q

    def lift(x):
        return x if field is SYMBOLIC else x.evaluate(field.at_s)

    entries = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            jp = n + 1 - j
            e = (1 if i == j else 0) - (1 if i == jp else 0)
            entries.append(((i, j), (j, i), q**e * d[i - 1][j - 1] / d[j - 1][i - 1]))
    for i in range(2, n + 1):
        for j in range(1, i):
            entries.append(((j, i), (j, i), lam))
    for i in range(2, n + 1):
        for j in range(1, i):
            ip = n + 1 - i
            jp = n + 1 - j
            coeff = (
                lam
                * (lift(fam.rho[i - 1]) / lift(fam.rho[j - 1]))
                * (d[ip - 1][i - 1] / d[j - 1][jp - 1])
            )
            if fam.signs[i - 1] * fam.signs[j - 1] == 1:
                coeff = field.zero - coeff
            entries.append(((ip, i), (j, jp), coeff))
    return TensorOperator.from_entries(n, 2, field, entries)


def _resolve_nu(config, r_op, field, file_nu, series):
    """The eigenvalue to verify against, honoring --nu / --detect-nu."""
    if config.nu == "detect":
        return detect_nu(r_op)
    if config.nu is not None:
        nu = parse_scalar(config.nu)
        return nu if field is SYMBOLIC else nu.evaluate(field.at_s)
    if series is not None:
        if series == "so":
            n = r_op.N
            return field.q ** (1 - n)
        return detect_nu(r_op)
    if file_nu is not None:
        return file_nu if field is SYMBOLIC else file_nu.evaluate(field.at_s)
    return detect_nu(r_op)


def run_job(config):
    """Execute one job; returns (Report, exit_code 0|1).

    Input and configuration problems raise (BmwError subclasses, ValueError,
    OSError); the CLI maps those onto exit code 2.
    """
    field = SYMBOLIC if config.at_s is None else RationalField(config.at_s)
    notes = []
    pre_outcomes = []
    series = None
    expected_x = None
    expected_pair = None

    if config.source[0] == "family":
        series, dim = config.source[1], config.source[2]
        base = standard_matrix(series, dim)
        if field is not SYMBOLIC:
            base = _numeric_op(base, field)
        if series == "sp":
            notes.append(SP_NU_NOTE)
    else:
        base, file_nu_sym = import_rmatrix(config.source[1])
        if field is not SYMBOLIC:
            base = _numeric_op(base, field)

    file_nu = None
    if config.source[0] == "file":
        file_nu = file_nu_sym

    r_op = base
    if config.twist is not None:
        d_sym = _twist_d(config.twist, SYMBOLIC)
        if d_sym.N != base.N:
            raise InvalidTwistParameters(
                f"twist is {d_sym.N} x {d_sym.N}, operator needs {base.N} x {base.N}"
            )
        d_spec = (
            d_sym
            if field is SYMBOLIC
            else TwistSpec(tuple(tuple(v.evaluate(field.at_s) for v in row) for row in d_sym.d))
        )
        validate_twist(d_spec)
        pre_outcomes.append(
            Outcome("twist-valid", "d_ij d_i'j = u_j, d_ij d_ij' = w_i, u_i u_i' = w_i w_i' = const", True)
        )
        f_op = build_F(d_spec, field)
        compat = check_twist_compat(base, f_op)
        pre_outcomes.append(compat)
        generic = _generic_twist_matrix(base, f_op, field)
        if series is not None:
            closed = _multiparametric_matrix(series, r_op.N, d_spec.d, field)
            match = closed == generic
            pre_outcomes.append(
                Outcome(
                    "twist-closed-form",
                    "closed-form multiparametric matrix equals the generic twist",
                    match,
                )
            )
            r_op = closed if match else generic
            pair_sym, x_sym = twisted_expected(series, r_op.N, d_sym)
            if field is SYMBOLIC:
                expected_x, expected_pair = x_sym, pair_sym
            else:
                expected_x = x_sym.map_entries(lambda v: v.evaluate(field.at_s), field)
                expected_pair = _evaluated_pair(pair_sym, field)
        else:
            r_op = generic

    nu = _resolve_nu(config, r_op, field, file_nu, series)
    sys = RMatrixSystem(r_op, nu)
    result = full_verification(sys)
    outcomes = pre_outcomes + result.outcomes

    if expected_x is not None and result.aborted is None:
        try:
            pair = factor_pairings(kappa_of(sys))
            x_found, _ = _build_xy(pair, field)
            outcomes.append(
                Outcome(
                    "twisted-x-match",
                    "pipeline X equals diag(d_i'i / d_ii') and pairings match up to gauge",
                    x_found == expected_x and pairings_match_up_to_gauge(pair, expected_pair),
                )
            )
        except BmwError:
            outcomes.append(
                Outcome(
                    "twisted-x-match",
                    "pipeline X equals diag(d_i'i / d_ii') and pairings match up to gauge",
                    False,
                )
            )

    merged = VerificationResult(outcomes, result.derived, result.aborted)
    report = build_report(merged, config.echo(), field, notes)
    return report, (0 if report.status == "pass" else 1)


def export_family(series, dim, twist_path, out_path):
    """Write a family (twisted if requested) in the file format."""
    if twist_path is not None:
        d = _twist_d(twist_path, SYMBOLIC)
        if all(v == SYMBOLIC.one for row in d.d for v in row):
            d = None
    else:
        d = None
    if d is None:
        from .families import build_standard

        sys = build_standard(series, dim)
        provenance = {"source": "standard-family", "series": series, "dim": dim}
    else:
        from .families import build_multiparametric

        sys = build_multiparametric(series, dim, d)
        provenance = {
            "source": "multiparametric-family",
            "series": series,
            "dim": dim,
            "d": [[SYMBOLIC.to_text(v) for v in row] for row in d.d],
        }
    export_rmatrix(
        sys.R,
        sys.nu,
        out_path,
        comment=f"{series}_{dim} BMW-type R-matrix",
        provenance=provenance,
    )


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="bmwcert",
        description="Exact certification of BMW-type R-matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run the verification pipeline")
    verify.add_argument("--family", choices=("so", "sp"))
    verify.add_argument("--dim", type=int)
    verify.add_argument("--input", metavar="FILE", help="R-matrix file to verify")
    verify.add_argument("--twist", metavar="FILE", help="twist parameter file")
    verify.add_argument("--nu", metavar="TEXT", help="contraction eigenvalue")
    verify.add_argument("--detect-nu", action="store_true", help="detect nu from the operator")
    verify.add_argument("--at-s", metavar="RATIONAL", help="numeric mode at s (e.g. 3/2)")
    verify.add_argument("--report", choices=("text", "json"), default="text")
    verify.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")

    export = sub.add_parser("export", help="write a family R-matrix file")
    export.add_argument("--family", choices=("so", "sp"), required=True)
    export.add_argument("--dim", type=int, required=True)
    export.add_argument("--twist", metavar="FILE")
    export.add_argument("--out", metavar="PATH", required=True)
    return parser


def _config_from_args(args):
    if args.input is not None:
        if args.family is not None or args.dim is not None:
            raise ValueError("--input excludes --family/--dim")
        source = ("file", args.input)
    else:
        if args.family is None or args.dim is None:
            raise ValueError("need --family and --dim, or --input FILE")
        source = ("family", args.family, args.dim)
    if args.nu is not None and args.detect_nu:
        raise ValueError("--nu and --detect-nu are mutually exclusive")
    nu = "detect" if args.detect_nu else args.nu
    at_s = None
    if args.at_s is not None:
        try:
            at_s = Fraction(args.at_s)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad --at-s value {args.at_s!r}: {exc}") from exc
    return JobConfig(
        source=source,
        twist=args.twist,
        nu=nu,
        at_s=at_s,
        report_format=args.report,
        out=args.out,
    )


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "export":
            export_family(args.family, args.dim, args.twist, args.out)
            return 0
        config = _config_from_args(args)
        report, code = run_job(config)
    except (BmwError, ValueError, OSError) as exc:
        print(f"bmwcert: error: {exc}", file=_sys.stderr)
        return 2
    text = render_json(report) if config.report_format == "json" else render_text(report)
    if config.out:
        with open(config.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        _sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
