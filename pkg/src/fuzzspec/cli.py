"""Command-line front end.

Subcommands: spectrum, nonlinear, classify, defuzz, sweep, verify,
periodize, poisson-check.  Exit codes: 0 success, 1 validation error,
2 numeric failure, 64 usage error.  FUZZSPEC_TOL overrides the default
quadrature tolerance.  --emit-plot-data writes sample/residual tables and
renders the corresponding figures next to them.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import io as fio
from .errors import FuzzspecError, NumericError, ValidationError
from .nonlinear import c_to_s
from .periodize import periodize, poisson_check
from .reconstruct import (ReconstructionConfig, approximation_sequence,
                          defuzz, verify_match)
from .spectra import (COEFFICIENT_BOUND, TWO_PI, QuadratureConfig,
                      fourier_coefficients, validate_fuzzy_spectrum)
from .toeplitz import determinant_sequence, unit_root_decompose

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERIC = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    """argparse defaults to exit code 2 on usage errors; this CLI reserves 2
    for numeric failures and uses 64 instead."""

    def error(self, message):
        raise UsageError(message)


def _quadrature_config(args) -> QuadratureConfig:
    tol = getattr(args, "tol", None)
    if tol is None:
        tol = float(os.environ.get("FUZZSPEC_TOL", 1e-8))
    return QuadratureConfig(tolerance=tol)


def _recon_config(args) -> ReconstructionConfig:
    cfg = ReconstructionConfig(quadrature=_quadrature_config(args))
    zero_tol = getattr(args, "zero_tol", None)
    if zero_tol is not None:
        cfg.zero_tol = zero_tol
    return cfg


def _out_path(args, default_name: str) -> Path:
    if args.output:
        return Path(args.output)
    return Path(default_name)


def _emit_membership_data(stem: Path, f, arcs=None, points: int = 1024):
    from . import plotting
    t = np.linspace(0.0, TWO_PI, points, endpoint=False)
    fv = f.periodic_values(t)
    cols = {"f": fv}
    chi = None
    if arcs is not None:
        chi = arcs.indicator(t)
        cols["chi"] = chi
    fio.write_samples_table(stem.with_suffix(".samples.csv"), t, cols)
    plotting.save_membership_plot(stem.with_suffix(".membership.png"),
                                  t, fv, chi)


def _cmd_spectrum(args) -> int:
    f = fio.load_membership(args.input)
    spec = fourier_coefficients(f, args.max_k, _quadrature_config(args))
    out = _out_path(args, "spectrum.csv")
    if args.format == "structured":
        import json
        payload = {"convention": "e^{+ikt}/(2*pi)",
                   "coefficients": [[k, spec.coeffs[k].real, spec.coeffs[k].imag]
                                    for k in range(spec.max_k + 1)]}
        out.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    else:
        fio.write_spectrum(spec, out)
    report = validate_fuzzy_spectrum(spec, tol=1e-9)
    status = "pass" if report.passed else "FAIL"
    print(f"wrote {out} (max_k={spec.max_k}, c0={spec.c0:.6g}, bounds {status})")
    if args.emit_plot_data:
        from . import plotting
        stem = out.with_suffix("")
        _emit_membership_data(stem, f)
        plotting.save_magnitude_plot(
            stem.with_suffix(".magnitudes.png"),
            np.arange(spec.max_k + 1), np.abs(spec.coeffs),
            bound=COEFFICIENT_BOUND)
    return EXIT_OK


def _cmd_nonlinear(args) -> int:
    if args.coeffs:
        spec = fio.read_spectrum(args.coeffs)
    elif args.input:
        f = fio.load_membership(args.input)
        max_k = args.max_k if args.max_k is not None else 16
        spec = fourier_coefficients(f, max_k, _quadrature_config(args))
    else:
        raise UsageError("nonlinear needs --coeffs or --input")
    max_k = args.max_k if args.max_k is not None else spec.max_k
    ns = c_to_s(spec, max_k)
    out = _out_path(args, "nonlinear.csv")
    fio.write_nonlinear(ns, out)
    print(f"wrote {out} (max_k={ns.max_k}, c0={ns.c0:.6g}, "
          f"s0={ns.s[0].real:.6g})")
    return EXIT_OK


def _cmd_classify(args) -> int:
    from .toeplitz import classify_order
    ns = fio.read_nonlinear(args.coeffs)
    zero_tol = args.zero_tol if args.zero_tol is not None else 1e-10
    ta = determinant_sequence(ns, ns.max_k, zero_tol)
    verdict = classify_order(ta, zero_tol)  # raises on negative determinants
    print(str(verdict))
    rel = ta.ratios()
    print("k, D_k, |F_k|, arg F_k, D_k/scale_k")
    for k in range(ta.max_k + 1):
        print(f"{k}, {ta.D[k]:.10e}, {abs(ta.F[k]):.10e}, "
              f"{np.angle(ta.F[k]):+.10f}, {rel[k]:.3e}")
    if verdict.finite and verdict.n and verdict.n <= ns.max_k:
        dec = unit_root_decompose(ns, verdict.n, zero_tol=zero_tol)
        print("r, xi_r, mu_r")
        for r, (ang, mu) in enumerate(zip(dec.angles, dec.mu), start=1):
            print(f"{r}, {ang:.10f}, {mu:.10e}")
    if verdict.violations:
        print(f"tail violations at k = {verdict.violations}")
    if args.output:
        fio.write_residual_table(args.output, np.arange(ta.max_k + 1), rel)
    if args.emit_plot_data:
        from . import plotting
        stem = _out_path(args, "classify.csv").with_suffix("")
        plotting.save_determinant_plot(stem.with_suffix(".determinants.png"),
                                       rel)
    return EXIT_OK


def _cmd_defuzz(args) -> int:
    f = fio.load_membership(args.input)
    result = defuzz(f, args.order, args.lam, _recon_config(args))
    out = _out_path(args, "defuzz.json")
    fio.write_result(result, out)
    print(f"wrote {out} (order_used={result.diagnostics.order_used}, "
          f"lambda={result.lam:.6g}, max residual={result.max_residual:.3e})")
    for w in result.diagnostics.warnings:
        print(f"warning: {w}")
    if args.emit_plot_data:
        from . import plotting
        stem = out.with_suffix("")
        _emit_membership_data(stem, f, result.arcs)
        ks = np.arange(result.match_window)
        fio.write_residual_table(stem.with_suffix(".residuals.csv"),
                                 ks, result.residuals)
        plotting.save_residual_plot(stem.with_suffix(".residuals.png"),
                                    ks, result.residuals, tol=1e-6)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    f = fio.load_membership(args.input)
    entries = approximation_sequence(f, args.max_order, _recon_config(args))
    out = _out_path(args, "sweep.json")
    fio.write_sweep(entries, out)
    for e in entries:
        if e.ok:
            print(f"n={e.n}: max residual {e.result.max_residual:.3e} "
                  f"(order_used={e.result.diagnostics.order_used})")
        else:
            print(f"n={e.n}: FAILED: {e.error}")
    print(f"wrote {out}")
    if args.emit_plot_data:
        from . import plotting
        stem = out.with_suffix("")
        last_ok = next((e for e in reversed(entries) if e.ok), None)
        if last_ok is not None:
            _emit_membership_data(stem, f, last_ok.result.arcs)
            ks = np.arange(last_ok.result.match_window)
            fio.write_residual_table(stem.with_suffix(".residuals.csv"),
                                     ks, last_ok.result.residuals)
            plotting.save_residual_plot(stem.with_suffix(".residuals.png"),
                                        ks, last_ok.result.residuals, tol=1e-6)
    return EXIT_OK


def _cmd_verify(args) -> int:
    f = fio.load_membership(args.input)
    arcs, rotation = fio.load_arc_system(args.arcs, canonicalize=False)
    report = verify_match(f, arcs, args.order, _quadrature_config(args))
    ks = np.arange(args.order)
    for k, r in zip(ks, report.residuals):
        print(f"k={k}: |c_k(f) - c_k(chi)| = {r:.6e}")
    print(f"max residual: {report.max_residual:.6e}")
    if args.output:
        fio.write_residual_table(args.output, ks, report.residuals)
    if args.emit_plot_data:
        from . import plotting
        stem = _out_path(args, "verify.csv").with_suffix("")
        _emit_membership_data(stem, f, arcs)
        plotting.save_residual_plot(stem.with_suffix(".residuals.png"),
                                    ks, report.residuals)
    return EXIT_OK


def _cmd_periodize(args) -> int:
    line = fio.load_schwartz(args.input) if args.input else None
    if line is None:
        if args.sigma is None:
            raise UsageError("periodize needs --input or --sigma")
        from .periodize import GaussianLine
        line = GaussianLine(amplitude=1.0, sigma=args.sigma)
    sampled = periodize(line, args.terms, grid_points=args.grid_points)
    out = _out_path(args, "periodized.json")
    fio.save_membership(sampled, out)
    print(f"wrote {out} (terms={args.terms}, "
          f"truncation bound={sampled.truncation_bound:.3e})")
    if args.emit_plot_data:
        stem = out.with_suffix("")
        _emit_membership_data(stem, sampled)
    return EXIT_OK


def _cmd_poisson_check(args) -> int:
    line = fio.load_schwartz(args.input) if args.input else None
    if line is None:
        if args.sigma is None:
            raise UsageError("poisson-check needs --input or --sigma")
        from .periodize import GaussianLine
        line = GaussianLine(amplitude=1.0, sigma=args.sigma)
    q = QuadratureConfig(tolerance=args.tol if args.tol else 1e-12)
    report = poisson_check(line, args.max_k, args.terms, q)
    print(f"max residual over |k| <= {args.max_k}: {report.max_residual:.6e} "
          f"(truncation bound {report.truncation_bound:.3e})")
    if args.output:
        fio.write_residual_table(args.output, report.ks, report.residuals)
    if args.emit_plot_data:
        from . import plotting
        stem = _out_path(args, "poisson.csv").with_suffix("")
        plotting.save_residual_plot(stem.with_suffix(".residuals.png"),
                                    report.ks, report.residuals,
                                    title="summation-formula residuals")
    return EXIT_OK


def build_parser() -> Parser:
    p = Parser(prog="fuzzspec",
               description="Fourier and nonlinear-Fourier spectra of fuzzy "
                           "circle subsets; crisp spectral defuzzification.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, output=True):
        if output:
            sp.add_argument("--output", help="output file path")
        sp.add_argument("--tol", type=float, default=None,
                        help="quadrature tolerance (default 1e-8 or "
                             "FUZZSPEC_TOL)")
        sp.add_argument("--format", choices=("tabular", "structured"),
                        default="tabular")
        sp.add_argument("--emit-plot-data", action="store_true",
                        help="write sample/residual tables and render "
                             "figures next to the output")

    sp = sub.add_parser("spectrum", help="Fourier coefficient window")
    sp.add_argument("--input", required=True, help="membership JSON file")
    sp.add_argument("--max-k", type=int, required=True)
    common(sp)
    sp.set_defaults(fn=_cmd_spectrum)

    sp = sub.add_parser("nonlinear", help="nonlinear coefficient window")
    sp.add_argument("--input", help="membership JSON file")
    sp.add_argument("--coeffs", help="Fourier coefficient table")
    sp.add_argument("--max-k", type=int, default=None)
    common(sp)
    sp.set_defaults(fn=_cmd_nonlinear)

    sp = sub.add_parser("classify", help="order of a nonlinear window")
    sp.add_argument("--coeffs", required=True,
                    help="nonlinear coefficient table")
    sp.add_argument("--zero-tol", type=float, default=None)
    common(sp)
    sp.set_defaults(fn=_cmd_classify)

    sp = sub.add_parser("defuzz", help="crisp set matching the first n "
                                       "coefficients")
    sp.add_argument("--input", required=True, help="membership JSON file")
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--lambda", dest="lam", type=float, default=0.0)
    sp.add_argument("--zero-tol", type=float, default=None)
    common(sp)
    sp.set_defaults(fn=_cmd_defuzz)

    sp = sub.add_parser("sweep", help="defuzz for n = 1..max-order")
    sp.add_argument("--input", required=True)
    sp.add_argument("--max-order", type=int, required=True)
    sp.add_argument("--zero-tol", type=float, default=None)
    common(sp)
    sp.set_defaults(fn=_cmd_sweep)

    sp = sub.add_parser("verify", help="residuals between a membership and "
                                       "an arc system")
    sp.add_argument("--input", required=True)
    sp.add_argument("--arcs", required=True, help="arc-system JSON file")
    sp.add_argument("--order", type=int, required=True)
    common(sp)
    sp.set_defaults(fn=_cmd_verify)

    sp = sub.add_parser("periodize", help="wrap a line function onto the "
                                          "circle")
    sp.add_argument("--input", help="schwartz JSON file")
    sp.add_argument("--sigma", type=float, default=None,
                    help="shortcut: unit-amplitude gaussian")
    sp.add_argument("--terms", type=int, default=16)
    sp.add_argument("--grid-points", type=int, default=4096)
    common(sp)
    sp.set_defaults(fn=_cmd_periodize)

    sp = sub.add_parser("poisson-check", help="summation-formula residuals")
    sp.add_argument("--input", help="schwartz JSON file")
    sp.add_argument("--sigma", type=float, default=None)
    sp.add_argument("--terms", type=int, default=16)
    sp.add_argument("--max-k", type=int, default=16)
    common(sp)
    sp.set_defaults(fn=_cmd_poisson_check)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except FuzzspecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
