"""Command-line front end: kernel evaluation, transforms, verification suites, limit sweeps.

Standard output carries only the JSON or CSV payload; everything else goes to
standard error.  Exit codes: 0 success, 1 failed check or numerical failure,
2 bad arguments or malformed input file, 3 domain error, 4 file I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

import numpy as np

from .asymptotics import DEFAULT_RADII, LimitSweep, run_sweep, sweep_csv
from .bergman import (
    KernelParams,
    _slice_factor,
    kernel_alpha1,
    kernel_closed,
    kernel_series_terms,
    kernel_via_representation,
)
from .errors import ConvergenceError, DomainError, TruncationError
from .quadrature import build_disk, build_halfline
from .quaternion import Quaternion, slice_pow
from .slicefun import SeriesFunction
from .special import i_series_terms
from .transform import LaguerreCoefficients, forward, inverse, inverse_rule
from .verify import SUITES, RunConfig, run_suite

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_DOMAIN, EXIT_IO = 0, 1, 2, 3, 4

DEFAULT_PROBE_Q = "0.5,0.3,-0.2,0.1"
DEFAULT_PROBE_P = "0.4,-0.1,0.3,0.2"


class UsageError(Exception):
    """Bad flag value or malformed input file (exit 2)."""


def _quaternion(text: str) -> Quaternion:
    try:
        return Quaternion.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _radii(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(s) for s in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse radii from {text!r}") from None


def _config_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("configuration")
    g.add_argument("--alpha", type=float, default=1.0, help="weight parameter alpha (default 1)")
    g.add_argument("--radius", type=float, default=1.0, help="ball radius R (default 1)")
    g.add_argument("--nu", type=float, default=1.0, help="Fock parameter nu (default 1)")
    g.add_argument("--nodes", type=int, default=128, help="half-line quadrature nodes (default 128)")
    g.add_argument("--radial", type=int, default=64, help="radial disk nodes (default 64)")
    g.add_argument("--angular", type=int, default=128, help="angular disk nodes (default 128)")
    g.add_argument("--rel-tol", type=float, default=1e-14, help="series stopping tolerance")
    g.add_argument("--max-terms", type=int, default=512, help="series term cap")
    g.add_argument("--seed", type=int, default=0, help="seed for randomized checks (default 0)")
    return p


def _config(args) -> RunConfig:
    try:
        return RunConfig(
            alpha=args.alpha,
            R=args.radius,
            nu=args.nu,
            halfline_nodes=args.nodes,
            radial_nodes=args.radial,
            angular_nodes=args.angular,
            rel_tol=args.rel_tol,
            max_terms=args.max_terms,
            seed=args.seed,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(payload) -> None:
    sys.stdout.write(json.dumps(payload) + "\n")


def _read_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise FileNotFoundError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc.msg})") from None


# -- subcommands -------------------------------------------------------------


def cmd_kernel(args) -> int:
    cfg = _config(args)
    params, trunc = cfg.params, cfg.trunc
    q, p = args.q, args.p
    series, n_series = kernel_series_terms(q, p, params, trunc)
    if args.form == "series":
        value, terms = series, n_series
        other = kernel_closed(q, p, params, trunc)
    else:
        if args.form == "closed":
            R = params.R
            left, terms = i_series_terms(-params.alpha - 1.0, q.conj() / R, p.conj() / R, trunc)
            value = left * slice_pow(_slice_factor(q, p, R), -params.alpha - 1.0)
        elif args.form == "alpha1":
            if params.alpha != 1.0:
                raise DomainError("the alpha1 form needs --alpha 1")
            value, terms = kernel_alpha1(q, p, params.R), 0
        else:
            value, terms = kernel_via_representation(q, p, params), 0
        other = series
    scale = max(float(other.norm()), np.finfo(float).tiny)
    _emit(
        {
            "form": args.form,
            "value": value.to_list(),
            "terms_used": int(terms),
            "cross_residual": float((value - other).norm()) / scale,
        }
    )
    return EXIT_OK


def cmd_forward(args) -> int:
    cfg = _config(args)
    data = _read_json(args.phi)
    try:
        phi = LaguerreCoefficients.from_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{args.phi}: not a Laguerre coefficient file ({exc})") from None
    params = KernelParams(phi.alpha, cfg.R)
    rule = build_halfline(phi.alpha, cfg.halfline_nodes)
    value = forward(phi, args.q, params, rule)
    _emit(
        {
            "transform": "forward",
            "alpha": phi.alpha,
            "radius": cfg.R,
            "q": args.q.to_list(),
            "value": value.to_list(),
            "resolution": {"halfline_nodes": len(rule)},
        }
    )
    return EXIT_OK


def cmd_inverse(args) -> int:
    cfg = _config(args)
    data = _read_json(args.f)
    try:
        f = SeriesFunction.from_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{args.f}: not a series function file ({exc})") from None
    if args.t < 0:
        raise DomainError("t must be nonnegative")
    params = KernelParams(cfg.alpha, f.radius)
    rule = build_disk(cfg.alpha, f.radius, n_radial=cfg.radial_nodes, n_angular=cfg.angular_nodes)
    value = inverse(f, args.t, params, rule)
    used = inverse_rule(f, rule)
    _emit(
        {
            "transform": "inverse",
            "alpha": cfg.alpha,
            "radius": f.radius,
            "t": args.t,
            "value": value.to_list(),
            "resolution": {
                "radial_nodes": len(used.radial_nodes),
                "angular_nodes": cfg.angular_nodes,
                "max_ring_points": max(used.counts()),
                "points": used.size,
            },
        }
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = _config(args)
    checks = run_suite(args.suite, cfg)
    ok = all(c.passed for c in checks)
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        print(f"{status}  {c.name:<40} residual {c.residual:.3e}  tol {c.tolerance:.1e}  n={c.samples}", file=sys.stderr)
    print(f"{sum(c.passed for c in checks)}/{len(checks)} checks passed", file=sys.stderr)
    _emit({"suite": args.suite, "config": asdict(cfg), "passed": ok, "checks": [c.to_dict() for c in checks]})
    return EXIT_OK if ok else EXIT_FAILED


def cmd_sweep(args) -> int:
    cfg = _config(args)
    try:
        sweep = LimitSweep(cfg.nu, args.q, args.p, args.radii)
    except ValueError as exc:
        if isinstance(exc, DomainError):
            raise
        raise UsageError(str(exc)) from None
    sys.stdout.write(sweep_csv(run_sweep(sweep, cfg.trunc)))
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def _add_forward(sub, config, name: str):
    p = sub.add_parser(name, parents=[config], help="forward transform of a Laguerre coefficient file")
    p.add_argument("--phi", required=True, help='JSON file {"alpha":A,"coeffs":[[w,x,y,z],...]}')
    p.add_argument("--q", required=True, type=_quaternion, help="evaluation point w,x,y,z")
    p.set_defaults(func=cmd_forward)


def _add_inverse(sub, config, name: str):
    p = sub.add_parser(name, parents=[config], help="inverse transform of a series function file")
    p.add_argument("--f", required=True, help='JSON file {"radius":R,"coeffs":[[w,x,y,z],...]}')
    p.add_argument("--t", required=True, type=float, help="half-line point t >= 0")
    p.set_defaults(func=cmd_inverse)


def build_parser() -> argparse.ArgumentParser:
    config = _config_parser()
    parser = argparse.ArgumentParser(prog="slicebergman", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kernel", parents=[config], help="evaluate the reproducing kernel K(q, p)")
    p.add_argument("--q", required=True, type=_quaternion)
    p.add_argument("--p", required=True, type=_quaternion)
    p.add_argument("--form", choices=("series", "closed", "alpha1", "repr"), default="series")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("transform", help="second Bargmann transform and its inverse")
    tsub = p.add_subparsers(dest="direction", required=True)
    _add_forward(tsub, config, "forward")
    _add_inverse(tsub, config, "inverse")
    _add_forward(sub, config, "forward")
    _add_inverse(sub, config, "inverse")

    p = sub.add_parser("verify", parents=[config], help="run a verification suite")
    p.add_argument("--suite", required=True, choices=(*SUITES, "all"))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", parents=[config], help="large-radius limit errors as CSV")
    p.add_argument("--radii", type=_radii, default=DEFAULT_RADII, help="comma-separated radii (default 5,10,20,40,80)")
    p.add_argument("--q", type=_quaternion, default=_quaternion(DEFAULT_PROBE_Q))
    p.add_argument("--p", type=_quaternion, default=_quaternion(DEFAULT_PROBE_P))
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (TruncationError, ConvergenceError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
