"""Command-line front end.

Subcommands dispatch to the solvers and emit deterministic CSV or JSON
tables (metadata in a sidecar), optionally rendering a matplotlib figure
next to the data.  Exit codes: 0 success, 1 numerical failure, 2 parameter
validation failure, 64 usage error.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np

from . import emit, figures
from .boundstates import bound_states, pitchfork_scan
from .errors import DegenerateEigenproblemError, DomainError, RealAxisPoleError
from .kronig import (
    DiracConeParams,
    LatticeParams,
    band_sweep,
    dirac_cone_bands,
    summarize_regime,
)
from .params import (
    ContactParams,
    SymmetryClass,
    hermitian,
    pt_from_alpha_beta,
    pt_symmetric,
    to_record,
    validate,
)
from .scattering import s_eigenvalues, scatter

EXIT_OK = 0
EXIT_NUMERICAL = 1
EXIT_VALIDATION = 2
EXIT_USAGE = 64


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse defaults to exit(2)
        raise _UsageError(message)


def parse_grid(expr: str) -> np.ndarray:
    """start:stop:count grid, inclusive of both endpoints."""
    parts = expr.split(":")
    if len(parts) != 3:
        raise DomainError(f"grid must be start:stop:count, got {expr!r}")
    start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    if count < 2:
        raise DomainError("grid needs at least two points")
    return np.linspace(start, stop, count)


def _add_param_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--class", dest="cls", required=True,
                     choices=("hermitian", "pt"), help="symmetry class")
    sub.add_argument("--alpha", type=float, help="alpha (hermitian)")
    sub.add_argument("--beta", type=float, default=0.0)
    sub.add_argument("--gamma", type=float, default=None)
    sub.add_argument("--delta", type=float, help="delta (hermitian)")
    sub.add_argument("--alpha-r", type=float, help="Re alpha (pt)")
    sub.add_argument("--alpha-i", type=float, help="Im alpha (pt)")
    sub.add_argument("--theta", type=float, default=0.0)


def _add_output_flags(sub: argparse.ArgumentParser, default_name: str) -> None:
    sub.add_argument("-o", "--output", default=default_name, help="output path")
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--plot", action="store_true",
                     help="also render a PNG next to the output")


def _params_from_args(args: argparse.Namespace) -> ContactParams:
    if args.cls == "hermitian":
        missing = [n for n in ("alpha", "delta") if getattr(args, n) is None]
        if missing:
            raise DomainError(f"hermitian class requires --alpha and --delta (missing {missing})")
        gamma = args.gamma if args.gamma is not None else 0.0
        return hermitian(args.alpha, args.beta, gamma, args.delta, args.theta)
    missing = [n for n in ("alpha_r", "alpha_i") if getattr(args, n) is None]
    if missing:
        raise DomainError("pt class requires --alpha-r and --alpha-i")
    alpha = complex(args.alpha_r, args.alpha_i)
    if args.gamma is None:
        return pt_from_alpha_beta(alpha, args.beta, args.theta)
    return pt_symmetric(alpha, args.beta, args.gamma, args.theta)


def _validated_params(args: argparse.Namespace) -> ContactParams:
    p = _params_from_args(args)
    report = validate(p)
    if not report.ok:
        raise _ValidationFailure(str(report))
    return p


class _ValidationFailure(Exception):
    pass


def build_parser() -> _Parser:
    parser = _Parser(prog="contactbands",
                     description="Generalized contact interactions and their "
                                 "Kronig-Penney band structures")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("bound-states", help="bound spectrum of one interaction")
    _add_param_flags(sp)
    _add_output_flags(sp, "bound_states.csv")

    sp = sub.add_parser("scatter", help="transmission/reflection over a k grid")
    _add_param_flags(sp)
    sp.add_argument("--k", required=True, help="wavenumber grid start:stop:count")
    _add_output_flags(sp, "scatter.csv")

    sp = sub.add_parser("smatrix-eigen", help="S-matrix eigenvalues over a k grid")
    _add_param_flags(sp)
    sp.add_argument("--k", required=True, help="wavenumber grid start:stop:count")
    _add_output_flags(sp, "smatrix_eigen.csv")

    sp = sub.add_parser("pitchfork", help="bound-state pitchfork scan over Im alpha")
    sp.add_argument("--alpha-r", type=float, required=True)
    sp.add_argument("--beta", type=float, required=True)
    sp.add_argument("--alpha-i", required=True, help="Im alpha grid start:stop:count")
    _add_output_flags(sp, "pitchfork.csv")

    sp = sub.add_parser("bands", help="exact Bloch band sweep")
    _add_param_flags(sp)
    sp.add_argument("--ell", type=float, required=True, help="lattice period")
    sp.add_argument("--nk", type=int, default=201, help="grid points in the zone")
    _add_output_flags(sp, "bands.csv")

    sp = sub.add_parser("dirac-scan", help="nearly-degenerate band-pair dispersion")
    sp.add_argument("--kappa-bar", type=float, required=True)
    sp.add_argument("--varepsilon", type=float, required=True,
                    help="rescaled root half-gap (1 = touching)")
    sp.add_argument("--f", type=float, required=True, help="1/(beta*epsilon), |f| <= 1")
    sp.add_argument("--ell", type=float, required=True)
    sp.add_argument("--nk", type=int, default=201)
    _add_output_flags(sp, "dirac_scan.csv")

    sp = sub.add_parser("regimes", help="classify the PT band regime of a lattice")
    _add_param_flags(sp)
    sp.add_argument("--ell", type=float, required=True)
    sp.add_argument("--nk", type=int, default=201)
    sp.add_argument("-o", "--output", default="regime.json")
    sp.add_argument("--bands-output", default=None,
                    help="optionally also write the swept bands table")

    sp = sub.add_parser("figures", help="reproduce the reference figures")
    sp.add_argument("--which", default="all",
                    choices=("all",) + figures.FIGURE_KEYS)
    sp.add_argument("--outdir", default="figures")
    sp.add_argument("--no-plot", action="store_true", help="data files only")
    return parser


def _cmd_bound_states(args) -> int:
    p = _validated_params(args)
    bs = bound_states(p)
    meta = {"params": to_record(p), "classification": bs.classification.value,
            "note": bs.note}
    emit.write_table(args.output, emit.BOUND_HEADER, emit.bound_state_rows(bs),
                     meta, args.format)
    print(f"wrote {args.output} ({len(bs.roots)} bound states, "
          f"{bs.classification.value})")
    if not bs.roots and bs.note:
        print(f"note: {bs.note}")
    return EXIT_OK


def _cmd_scatter(args) -> int:
    p = _validated_params(args)
    grid = parse_grid(args.k)
    sols = []
    skipped = []
    for k in grid:
        try:
            sols.append(scatter(p, float(k)))
        except RealAxisPoleError:
            skipped.append(float(k))
    if not sols:
        print("error: every grid point sits on a real-axis pole", file=sys.stderr)
        return EXIT_NUMERICAL
    meta = {"params": to_record(p), "skipped_poles": skipped}
    emit.write_table(args.output, emit.SCATTER_HEADER, emit.scatter_rows(sols),
                     meta, args.format)
    print(f"wrote {args.output} ({len(sols)} points"
          + (f", {len(skipped)} pole points skipped" if skipped else "") + ")")
    return EXIT_OK


def _cmd_smatrix_eigen(args) -> int:
    p = _validated_params(args)
    grid = parse_grid(args.k)
    probs = []
    skipped = []
    for k in grid:
        try:
            probs.append(s_eigenvalues(p, float(k)))
        except DegenerateEigenproblemError:
            skipped.append(float(k))
    if not probs:
        print("error: eigenproblem degenerate on the whole grid", file=sys.stderr)
        return EXIT_NUMERICAL
    meta = {"params": to_record(p), "skipped_degenerate": skipped}
    emit.write_table(args.output, emit.EIGEN_HEADER, emit.eigen_rows(probs),
                     meta, args.format)
    print(f"wrote {args.output} ({len(probs)} points)")
    return EXIT_OK


def _cmd_pitchfork(args) -> int:
    grid = parse_grid(args.alpha_i)
    points = pitchfork_scan(args.alpha_r, args.beta, grid)
    meta = {"alpha_r": args.alpha_r, "beta": args.beta,
            "alpha_i": args.alpha_i}
    out = emit.write_table(args.output, emit.PITCHFORK_HEADER,
                           emit.pitchfork_rows(points), meta, args.format)
    print(f"wrote {args.output} ({len(points)} points)")
    if args.plot and args.format == "csv":
        png = Path(out).with_suffix(".png")
        figures._render_pitchfork(Path(out), png)
        print(f"wrote {png}")
    return EXIT_OK


def _cmd_bands(args) -> int:
    p = _validated_params(args)
    lat = LatticeParams(p, args.ell)
    bands = band_sweep(lat, n_k=args.nk)
    if not bands:
        print("error: no bound-state bands for these parameters", file=sys.stderr)
        return EXIT_NUMERICAL
    summary = summarize_regime(lat, bands)
    max_resid = max(bp.residual for b in bands for bp in b.points)
    meta = {"params": to_record(p), "ell": lat.ell, "n_k": args.nk,
            "regime": emit.regime_record(summary), "max_residual": max_resid,
            "exceptional_ks": sorted({k for b in bands for k in b.exceptional_ks})}
    out = emit.write_table(args.output, emit.BAND_HEADER, emit.band_rows(bands),
                           meta, args.format)
    print(f"wrote {args.output} ({len(bands)} bands, regime "
          f"{summary.regime.value}, max residual {max_resid:.2e})")
    if args.plot and args.format == "csv":
        png = Path(out).with_suffix(".png")
        figures.render_band_structure(out, png)
        print(f"wrote {png}")
    return EXIT_OK


def _cmd_dirac_scan(args) -> int:
    try:
        cone = DiracConeParams(args.kappa_bar,
                               2.0 * args.kappa_bar
                               * math.exp(-args.kappa_bar * args.ell)
                               * args.varepsilon,
                               args.f, args.varepsilon)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    edge = math.pi / args.ell
    rows = []
    for k in np.linspace(-edge, edge, args.nk):
        ep, em, gap = dirac_cone_bands(cone, args.ell, float(k))
        rows.append((float(k), ep, em, gap))
    meta = {"kappa_bar": cone.kappa_bar, "epsilon": cone.epsilon, "f": cone.f,
            "varepsilon": cone.varepsilon, "ell": args.ell, "n_k": args.nk}
    emit.write_table(args.output, emit.DIRAC_HEADER, rows, meta, args.format)
    gaps = [r[3] for r in rows]
    print(f"wrote {args.output} (min gap {min(gaps):.3e})")
    return EXIT_OK


def _cmd_regimes(args) -> int:
    p = _validated_params(args)
    if p.cls is not SymmetryClass.PT_SYMMETRIC:
        print("error: regimes is a PT-class diagnostic", file=sys.stderr)
        return EXIT_VALIDATION
    lat = LatticeParams(p, args.ell)
    bands = band_sweep(lat, n_k=args.nk)
    if not bands:
        print("error: no bound-state bands for these parameters", file=sys.stderr)
        return EXIT_NUMERICAL
    summary = summarize_regime(lat, bands)
    record = emit.regime_record(summary)
    record["params"] = to_record(p)
    record["ell"] = lat.ell
    emit.write_record(args.output, record)
    print(f"wrote {args.output} (regime {summary.regime.value}, "
          f"real fraction {summary.real_fraction:.4f})")
    if args.bands_output:
        emit.write_table(args.bands_output, emit.BAND_HEADER,
                         emit.band_rows(bands),
                         {"params": to_record(p), "ell": lat.ell}, "csv")
        print(f"wrote {args.bands_output}")
    return EXIT_OK


def _cmd_figures(args) -> int:
    render = not args.no_plot
    keys = figures.FIGURE_KEYS if args.which == "all" else (args.which,)
    for key in keys:
        written = figures.emit_figure_data(key, args.outdir, render=render)
        print("wrote " + ", ".join(str(p) for p in written.values()))
    return EXIT_OK


_DISPATCH = {
    "bound-states": _cmd_bound_states,
    "scatter": _cmd_scatter,
    "smatrix-eigen": _cmd_smatrix_eigen,
    "pitchfork": _cmd_pitchfork,
    "bands": _cmd_bands,
    "dirac-scan": _cmd_dirac_scan,
    "regimes": _cmd_regimes,
    "figures": _cmd_figures,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return _DISPATCH[args.command](args)
    except _ValidationFailure as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (RealAxisPoleError, DegenerateEigenproblemError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
