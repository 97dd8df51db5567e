"""Command-line interface emitting machine-readable tables.

Subcommands
-----------
cumulants    exact critical cumulants vs their asymptotic growth constants
collapse     finite-size scaling curves L^2*K~0 next to the limit curve h
oracle-check closed-form CGF vs exact diagonalization and finite differences
simulate     kinetic Monte Carlo summary with z-scores against theory
phi-table    trigonometric sums: exact closed form vs large-N asymptotics

Model parameters are given either as --nu (with w = 1/2, mu = (1-nu)/2) or as
the explicit pair --w/--mu; mixing both styles is rejected.  Tables go to
stdout or --out as CSV (one header row, '.' decimal, 17 significant digits)
or as JSON {"meta": ..., "rows": ...}.  Exit status: 0 success, 1 validation
failure (oracle residual above tolerance), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .asymptotics import (
    CUMULANT_SERIES_CALIBRATION,
    cumulant_report,
    h_scaling,
    k0_tilde,
    sound_velocity,
)
from .cgf import cgf, mean_activity
from .combinatorics import phi_asymptotic, phi_exact
from .mc import simulate
from .model import ModelParams, Sector, critical_point, stationary_density
from .oracles import cgf_from_ed, build_hamiltonian, fd_cumulants

SCHEMA_VERSION = 1

COLUMNS = {
    "cumulants": ("L", "n", "kappa_c", "kappa_star", "ratio"),
    "collapse": ("L", "u", "l2k0_tilde", "h_limit"),
    "oracle-check": (
        "nu",
        "L",
        "s",
        "sector",
        "k_closed",
        "k_ed",
        "resid_ed",
        "a_closed",
        "a_fd",
        "resid_fd",
    ),
    "phi-table": ("m", "N", "phi_exact", "phi_asymptotic", "diff_times_n4"),
}


def _fmt_cell(value) -> str:
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _emit(args, command: str, rows: list[tuple], meta: dict) -> None:
    columns = COLUMNS[command]
    meta = {
        "command": command,
        "version": __version__,
        "schema": f"dlpad.{command}/{SCHEMA_VERSION}",
        **meta,
    }
    if args.format == "json":
        payload = {"meta": meta, "rows": [dict(zip(columns, row)) for row in rows]}
        text = json.dumps(payload, indent=2, allow_nan=True) + "\n"
    else:
        lines = [",".join(columns)]
        lines.extend(",".join(_fmt_cell(v) for v in row) for row in rows)
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _float_list(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated floats, got {text!r}") from exc


def _model_params(parser: argparse.ArgumentParser, args) -> ModelParams:
    explicit = args.w is not None or args.mu is not None
    if args.nu is not None and explicit:
        parser.error("give either --nu or --w/--mu, not both")
    if explicit:
        if args.w is None or args.mu is None:
            parser.error("--w and --mu must be given together")
        try:
            return ModelParams(w=args.w, mu=args.mu)
        except ValueError as exc:
            parser.error(str(exc))
    nu = 0.5 if args.nu is None else args.nu
    try:
        return ModelParams.from_nu(nu)
    except ValueError as exc:
        parser.error(str(exc))


def _u_grid(args) -> list[float]:
    if args.u_steps < 2 or args.u_max <= args.u_min:
        raise ValueError("need u_max > u_min and at least 2 steps")
    span = args.u_max - args.u_min
    grid = [args.u_min + i * span / (args.u_steps - 1) for i in range(args.u_steps)]
    return [0.0 if abs(u) < 1e-12 else u for u in grid]


def cmd_cumulants(parser, args) -> int:
    p = _model_params(parser, args)
    for L in args.L:
        if L % 2 or L < 2:
            parser.error(f"L must be even and >= 2, got {L}")
    for n in args.orders:
        if n < 1:
            parser.error(f"orders must be >= 1, got {n}")
    rows = []
    for L in args.L:
        for n in args.orders:
            rep = cumulant_report(p.nu, L, n)
            rows.append((L, n, rep.kappa_c, rep.kappa_star, rep.ratio))
    meta = {
        "nu": p.nu,
        "w": p.w,
        "mu": p.mu,
        "L": args.L,
        "orders": args.orders,
        "cumulant_series_calibration": CUMULANT_SERIES_CALIBRATION,
        "ratio_definition": "kappa_c (n=1); kappa_c/log L (n=2,3); kappa_c/L^(n-2) (n>=4)",
    }
    _emit(args, "cumulants", rows, meta)
    return 0


def cmd_collapse(parser, args) -> int:
    p = _model_params(parser, args)
    for L in args.L:
        if L % 2 or L < 2:
            parser.error(f"L must be even and >= 2, got {L}")
    if p.nu <= 0.0:
        parser.error("collapse requires nu > 0 (a finite critical point)")
    try:
        us = _u_grid(args)
    except ValueError as exc:
        parser.error(str(exc))
    theta = math.sqrt(sound_velocity(p.nu) ** 2 - 1.0)
    limit = {u: h_scaling(theta * u, 1e-13) for u in us}
    rows = []
    for L in args.L:
        for u in us:
            rows.append((L, u, k0_tilde(p.nu, L, u, symmetrized=not args.one_sided), limit[u]))
    meta = {
        "nu": p.nu,
        "w": p.w,
        "mu": p.mu,
        "L": args.L,
        "u_min": args.u_min,
        "u_max": args.u_max,
        "u_steps": args.u_steps,
        "theta": theta,
        "symmetrized": not args.one_sided,
    }
    _emit(args, "collapse", rows, meta)
    return 0


def cmd_oracle_check(parser, args) -> int:
    nus = [args.nu] if args.nu is not None else [0.3, 0.5, 0.9]
    if args.w is not None or args.mu is not None:
        nus = [_model_params(parser, args).nu]
    sizes = args.L if args.L is not None else [4, 6, 8, 10]
    for L in sizes:
        if L % 2 or L < 2:
            parser.error(f"L must be even and >= 2, got {L}")
    sectors = [Sector.EVEN, Sector.ODD]
    if args.sector is not None:
        sectors = [Sector.parse(args.sector)]

    rows = []
    failures = 0
    for nu in nus:
        p = ModelParams.from_nu(nu)
        sc = critical_point(p)
        tilts = [0.0, sc, sc + 0.2, sc - 0.2]
        if args.s is not None:
            tilts.extend(args.s)
        for L in sizes:
            for s in tilts:
                for sector in sectors:
                    k_closed = cgf(p, s, L, sector)
                    if args.perturb:
                        problem = build_hamiltonian(p, s, L, sector)
                        matrix = problem.matrix.copy()
                        matrix[0, 0] += args.perturb
                        k_ed = -float(np.linalg.eigvalsh(matrix)[0]) / L
                    else:
                        k_ed = cgf_from_ed(p, s, L, sector)
                    resid_ed = abs(k_closed - k_ed)
                    if resid_ed > args.tol:
                        failures += 1
                    if sector is Sector.EVEN:
                        a_closed = mean_activity(p, s, L)
                        fd = fd_cumulants(p, L, s, 1)
                        a_fd = fd.value
                        resid_fd = abs(a_closed - a_fd)
                        if resid_fd > max(args.tol, fd.error):
                            failures += 1
                    else:
                        a_closed = a_fd = resid_fd = float("nan")
                    rows.append(
                        (nu, L, s, sector.value, k_closed, k_ed, resid_ed, a_closed, a_fd, resid_fd)
                    )
    meta = {
        "nu_grid": nus,
        "L": sizes,
        "tolerance": args.tol,
        "perturb": args.perturb,
        "failures": failures,
    }
    _emit(args, "oracle-check", rows, meta)
    return 1 if failures else 0


def cmd_simulate(parser, args) -> int:
    p = _model_params(parser, args)
    if args.format == "csv":
        parser.error("simulate emits a JSON summary; use --format json")
    if args.L % 2 or args.L < 2:
        parser.error(f"L must be even and >= 2, got {args.L}")
    try:
        result = simulate(
            p,
            args.L,
            args.t_max,
            seed=args.seed,
            replicas=args.replicas,
            burn_in=args.burn_in,
            snapshot_interval=args.snapshot_interval,
        )
    except ValueError as exc:
        parser.error(str(exc))

    rho = stationary_density(p)
    activity_theory = mean_activity(p, 0.0, args.L)
    d_mean, d_err = result.density_estimate
    a_mean, a_err = result.activity_rate_estimate
    counts = result.pair_totals
    total_pairs = sum(counts)
    expected = ((1 - rho) ** 2, 2 * rho * (1 - rho), rho**2)
    chi2 = sum(
        (c - total_pairs * q) ** 2 / (total_pairs * q) for c, q in zip(counts, expected)
    )
    payload = {
        "meta": {
            "command": "simulate",
            "version": __version__,
            "schema": f"dlpad.simulate/{SCHEMA_VERSION}",
            "nu": p.nu,
            "w": p.w,
            "mu": p.mu,
            "L": args.L,
            "t_max": args.t_max,
            "burn_in": result.burn_in,
            "snapshot_interval": result.snapshot_interval,
            "seed": args.seed,
            "replicas": args.replicas,
            "rng": "PCG64(SeedSequence(seed).spawn(replicas)[i])",
        },
        "density": {
            "empirical": d_mean,
            "stderr": d_err,
            "theory": rho,
            "z": (d_mean - rho) / d_err,
        },
        "activity_rate": {
            "empirical": a_mean,
            "stderr": a_err,
            "theory": activity_theory,
            "z": (a_mean - activity_theory) / a_err,
        },
        "events": {
            "activity": sum(s.activity for s in result.stats),
            "depositions": sum(s.depositions for s in result.stats),
            "annihilations": sum(s.annihilations for s in result.stats),
            "jumps": sum(s.jumps for s in result.stats),
        },
        "pair_pattern_chi2": {
            "counts": list(counts),
            "expected_fractions": list(expected),
            "chi2": chi2,
            "dof": 2,
        },
    }
    text = json.dumps(payload, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_phi_table(parser, args) -> int:
    for m in args.orders:
        if m < 0:
            parser.error(f"orders must be >= 0, got {m}")
    for N in args.sizes:
        if N < 1:
            parser.error(f"sizes must be >= 1, got {N}")
    rows = []
    for m in args.orders:
        for N in args.sizes:
            exact = phi_exact(m, N)
            asym = phi_asymptotic(m, N)
            rows.append((m, N, exact, asym, (exact - asym) * N**4))
    _emit(args, "phi-table", rows, {"orders": args.orders, "sizes": args.sizes})
    return 0


def _add_model_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--nu", type=float, default=None, help="deposition parameter nu = 1 - mu/w (default 0.5; w = 1/2, mu = (1-nu)/2)")
    sub.add_argument("--w", type=float, default=None, help="jump rate (use together with --mu)")
    sub.add_argument("--mu", type=float, default=None, help="deposition rate (use together with --w)")


def _add_output_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=("csv", "json"), default="csv", help="output format (default csv)")
    sub.add_argument("--out", default=None, help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dlpad", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"dlpad {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    cum = subs.add_parser("cumulants", help="critical cumulants vs asymptotic constants")
    _add_model_flags(cum)
    cum.add_argument("--L", type=_int_list, default=[256, 1024, 4096], help="comma list of ring sizes (default 256,1024,4096)")
    cum.add_argument("--orders", type=_int_list, default=[1, 2, 4, 6], help="comma list of cumulant orders (default 1,2,4,6)")
    _add_output_flags(cum)
    cum.set_defaults(func=cmd_cumulants)

    col = subs.add_parser("collapse", help="scaling collapse table for the near-critical CGF")
    _add_model_flags(col)
    col.add_argument("--L", type=_int_list, default=[64, 128, 256], help="comma list of ring sizes (default 64,128,256)")
    col.add_argument("--u-min", type=float, default=-3.0, help="grid start (default -3)")
    col.add_argument("--u-max", type=float, default=3.0, help="grid end (default 3)")
    col.add_argument("--u-steps", type=int, default=61, help="grid points (default 61)")
    col.add_argument("--one-sided", action="store_true", help="report the raw one-sided value instead of the default even part in u")
    _add_output_flags(col)
    col.set_defaults(func=cmd_collapse)

    orc = subs.add_parser("oracle-check", help="closed form vs diagonalization / finite differences")
    _add_model_flags(orc)
    orc.add_argument("--L", type=_int_list, default=None, help="comma list of ring sizes (default 4,6,8,10)")
    orc.add_argument("--s", type=_float_list, default=None, help="extra tilt values beyond 0, s_c, s_c +- 0.2")
    orc.add_argument("--sector", choices=("even", "odd"), default=None, help="restrict to one parity sector (default both)")
    orc.add_argument("--tol", type=float, default=1e-10, help="residual tolerance (default 1e-10)")
    orc.add_argument("--perturb", type=float, default=0.0, help="test mode: shift one diagonal matrix element by this amount (negative control)")
    _add_output_flags(orc)
    orc.set_defaults(func=cmd_oracle_check)

    sim = subs.add_parser("simulate", help="kinetic Monte Carlo summary (JSON)")
    _add_model_flags(sim)
    sim.add_argument("--L", type=int, default=64, help="ring size (default 64)")
    sim.add_argument("--t-max", type=float, default=1e4, help="trajectory length per replica (default 1e4)")
    sim.add_argument("--seed", type=int, default=0, help="root RNG seed (default 0)")
    sim.add_argument("--replicas", type=int, default=16, help="independent replicas (default 16)")
    sim.add_argument("--burn-in", type=float, default=None, help="discard t < burn_in (default t_max/10)")
    sim.add_argument("--snapshot-interval", type=float, default=None, help="pair-pattern snapshot spacing (default ~(t_max-burn_in)/1024)")
    sim.add_argument("--format", choices=("csv", "json"), default="json", help="simulate supports json only")
    sim.add_argument("--out", default=None, help="output path (default stdout)")
    sim.set_defaults(func=cmd_simulate)

    phi = subs.add_parser("phi-table", help="trigonometric sums: exact vs asymptotic")
    phi.add_argument("--orders", type=_int_list, default=[0, 1, 2, 3, 4], help="comma list of m values (default 0..4)")
    phi.add_argument("--sizes", type=_int_list, default=[1, 2, 4, 8, 16, 32, 64], help="comma list of N values (default powers of two)")
    _add_output_flags(phi)
    phi.set_defaults(func=cmd_phi_table)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(parser, args)


if __name__ == "__main__":
    sys.exit(main())
