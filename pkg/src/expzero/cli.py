"""Command-line front end.

Subcommands: classify, solve, winding, laurent, elliptic-verify and
verify-paper.  Every command prints one JSON document (sorted keys) on
stdout.

Exit codes: 0 decided or success; 1 a check failed or nothing was isolated;
2 malformed input, or a region touching excluded points; 3 unsupported
surface; 4 the classification needed a heuristic (numeric) decision.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field, fields
from pathlib import Path

from . import catalog
from .analytic import (AnalyticConfig, Contour, ContourError, NonIntegerWinding, ZeroOnContour, count_zeros_in,
                       isolate_zeros, laurent_profile, phi_from_json, winding_details)
from .analytic.functions import ExcludedPointError, phi_to_json
from .analytic.isolate import BudgetExceeded
from .analytic.laurent import BranchTrackingError, ZerosInAnnulus
from .checks import CHECKS, run_checks
from .classifier import SurfaceSpec, classify_surface
from .elliptic import DegenerateLattice, elliptic_verify
from .exactpoly import NumericValuation

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_UNSUPPORTED, EXIT_HEURISTIC = 0, 1, 2, 3, 4

EXAMPLE_PHIS = {"a": catalog.phi_a, "b": catalog.phi_b, "exx": catalog.phi_exx, "exp_minus_z": catalog.exp_minus_z}


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class JobConfig:
    command: str
    input: str | None = None
    example: str | None = None
    region: tuple | None = None
    tol: float | None = None
    max_zeros: int | None = None
    seed: int = 0x5EED
    emit_svg: str | None = None
    output: str | None = None
    only: tuple = ()
    K: int = 8
    lattice: tuple = (2.0, 2j)
    depth: int = 40
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.tol is not None and not self.tol > 0:
            raise InputError("--tol must be positive")
        if self.max_zeros is not None and self.max_zeros < 1:
            raise InputError("--max-zeros must be at least 1")
        if self.region is not None:
            parse_region(self.region)
        for key, value in self.extra.items():
            if key not in ANALYTIC_FIELDS:
                raise InputError(f"unknown setting {key!r}; choose from {sorted(ANALYTIC_FIELDS)}")
            if key != "threads" and not value > 0:
                raise InputError(f"setting {key} must be positive")

    def analytic(self, **overrides) -> AnalyticConfig:
        return AnalyticConfig(**{"seed": self.seed, **self.extra, **overrides})


ANALYTIC_FIELDS = {f.name: f.type for f in fields(AnalyticConfig) if f.name != "seed"}


def parse_setting(text: str) -> tuple[str, float | int]:
    """KEY=VALUE for one AnalyticConfig field, e.g. cell_cap=20000."""
    key, sep, value = text.partition("=")
    key = key.strip().replace("-", "_")
    if not sep or key not in ANALYTIC_FIELDS:
        raise argparse.ArgumentTypeError(f"expected KEY=VALUE with KEY in {sorted(ANALYTIC_FIELDS)}, got {text!r}")
    try:
        return key, int(value) if ANALYTIC_FIELDS[key] in (int, "int") else float(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad value for {key}: {value!r}") from exc


def parse_region(tokens) -> Contour:
    """disc cx cy r | annulus cx cy r1 r2 | rect x1 y1 x2 y2."""
    if not tokens:
        raise InputError("empty region")
    kind, *vals = tokens
    try:
        nums = [float(v) for v in vals]
    except ValueError as exc:
        raise InputError(f"region values must be numbers: {vals}") from exc
    try:
        if kind == "disc" and len(nums) == 3:
            return Contour.circle(complex(nums[0], nums[1]), nums[2])
        if kind == "annulus" and len(nums) == 4:
            return Contour.annulus(complex(nums[0], nums[1]), nums[2], nums[3])
        if kind == "rect" and len(nums) == 4:
            return Contour.rectangle(*nums)
    except ContourError as exc:
        raise InputError(str(exc)) from exc
    raise InputError("region must be 'disc cx cy r', 'annulus cx cy r1 r2' or 'rect x1 y1 x2 y2'")


def parse_seed(text: str) -> int:
    try:
        return int(text, 16)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"seed must be hexadecimal, got {text!r}") from exc


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError as exc:
        raise InputError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not valid JSON ({exc})") from exc


def _emit(doc, cfg: JobConfig) -> None:
    text = json.dumps(doc, sort_keys=True, indent=2)
    print(text)
    if cfg.output:
        Path(cfg.output).write_text(text + "\n")


def _load_phi(cfg: JobConfig):
    if cfg.example:
        if cfg.example not in EXAMPLE_PHIS:
            raise InputError(f"unknown example {cfg.example!r}; choose from {sorted(EXAMPLE_PHIS)}")
        return EXAMPLE_PHIS[cfg.example]()
    if not cfg.input:
        raise InputError("--input or --example is required")
    try:
        return phi_from_json(_load_json(cfg.input))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed solve input: {exc}") from exc


# commands ------------------------------------------------------------------------

def cmd_classify(cfg: JobConfig) -> int:
    if cfg.example:
        if cfg.example not in catalog.SURFACES:
            raise InputError(f"unknown example {cfg.example!r}; choose from {sorted(catalog.SURFACES)}")
        spec, valuation = catalog.surface(cfg.example), None
    else:
        if not cfg.input:
            raise InputError("--input or --example is required")
        data = _load_json(cfg.input)
        try:
            spec = SurfaceSpec.from_json(data)
            nv = data.get("numeric_valuation")
            valuation = NumericValuation({k: complex(*v) if isinstance(v, list) else complex(v)
                                          for k, v in nv.items()}) if nv else None
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed surface input: {exc}") from exc
    kwargs = {"numeric_tol": cfg.tol} if cfg.tol else {}
    result = classify_surface(spec, valuation, **kwargs)
    _emit(result.to_json(), cfg)
    if result.case_label == "unsupported":
        return EXIT_UNSUPPORTED
    return EXIT_HEURISTIC if result.heuristic_flags else EXIT_OK


def cmd_solve(cfg: JobConfig) -> int:
    phi = _load_phi(cfg)
    if cfg.region is None:
        raise InputError("--region is required")
    region = parse_region(cfg.region)
    acfg = cfg.analytic(**({"residual_tol": cfg.tol} if cfg.tol else {}))
    count, used = count_zeros_in(phi, region, acfg)
    note = None
    try:
        certs = isolate_zeros(phi, used, cfg.max_zeros, acfg)
    except BudgetExceeded as exc:
        certs, note = exc.certificates, str(exc)
    isolated = sum(c.status == "isolated" for c in certs)
    doc = {"input": phi_to_json(phi), "region": region.to_json(), "region_used": used.to_json(),
           "count": count, "isolated": isolated, "certificates": [c.to_json() for c in certs]}
    if note:
        doc["budget_exceeded"] = note
    _emit(doc, cfg)
    if cfg.emit_svg:
        from .svg import render_svg
        Path(cfg.emit_svg).write_text(render_svg(used, certs, phi.excluded_points, f"{isolated} isolated of {count}"))
    return EXIT_OK if isolated >= 1 else EXIT_FAIL


def cmd_winding(cfg: JobConfig) -> int:
    phi = _load_phi(cfg)
    if cfg.region is None:
        raise InputError("--region is required")
    region = parse_region(cfg.region)
    acfg = cfg.analytic(**({"integer_tol": cfg.tol} if cfg.tol else {}))
    try:
        res = winding_details(phi, region, acfg)
    except (ZeroOnContour, NonIntegerWinding) as exc:
        _emit({"region": region.to_json(), "error": type(exc).__name__, "message": str(exc)}, cfg)
        return EXIT_FAIL
    _emit({"region": region.to_json(), "winding": res.winding, "raw": res.raw, "min_abs": res.min_abs,
           "points": res.points}, cfg)
    if cfg.emit_svg:
        from .svg import render_svg
        Path(cfg.emit_svg).write_text(render_svg(region, (), phi.excluded_points, f"winding {res.winding}"))
    return EXIT_OK


def cmd_laurent(cfg: JobConfig) -> int:
    phi = _load_phi(cfg)
    if cfg.region is None or cfg.region[0] != "disc":
        raise InputError("laurent needs --region disc cx cy r (the sampling circle)")
    circle = parse_region(cfg.region)
    try:
        prof = laurent_profile(phi, circle.center, circle.radius, cfg.K, cfg.analytic())
    except (ZerosInAnnulus, BranchTrackingError, ZeroOnContour) as exc:
        _emit({"region": circle.to_json(), "error": type(exc).__name__, "message": str(exc)}, cfg)
        return EXIT_FAIL
    _emit(prof.to_json(), cfg)
    return EXIT_OK


def cmd_elliptic_verify(cfg: JobConfig) -> int:
    w1, w2 = cfg.lattice
    try:
        report = elliptic_verify(w1, w2, cfg.depth, seed=cfg.seed)
    except DegenerateLattice as exc:
        raise InputError(str(exc)) from exc
    tol = cfg.tol or 1e-8
    fd_tol = max(tol, 1e-6)  # finite-difference identities carry O(h^2) error
    checks = {
        "legendre": report["legendre"]["residual"] <= tol,
        "ode": report["ode_relative"] <= tol,
        "zeta_prime_vs_wp": report["zeta_prime_vs_wp"] <= fd_tol,
        "sigma_log_derivative_vs_zeta": report["sigma_log_derivative_vs_zeta"] <= fd_tol,
        "psi_log_derivative": report["psi_log_derivative"] <= fd_tol,
        "phi_double_periodicity": max(report["phi_double_periodicity"].values()) <= tol,
        "half_period_identity": report["half_period_identity"] <= tol,
        "zeta_addition": report["zeta_addition"] <= tol,
        "wp_prime_half_period": report["wp_prime_half_period"] <= tol,
    }
    report["passed"] = checks
    report["all_passed"] = all(checks.values())
    _emit(report, cfg)
    return EXIT_OK if report["all_passed"] else EXIT_FAIL


def cmd_verify_paper(cfg: JobConfig) -> int:
    results = run_checks(list(cfg.only) or None, cfg.tol)
    doc = {"criteria": [r.to_json() for r in results], "all_passed": all(r.passed for r in results)}
    _emit(doc, cfg)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.name} ({r.seconds:.2f}s)", file=sys.stderr)
    return EXIT_OK if doc["all_passed"] else EXIT_FAIL


COMMANDS = {
    "classify": cmd_classify,
    "solve": cmd_solve,
    "winding": cmd_winding,
    "laurent": cmd_laurent,
    "elliptic-verify": cmd_elliptic_verify,
    "verify-paper": cmd_verify_paper,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="expzero", description="Polynomial-exponential systems: classification and zero finding.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, region=True):
        sp.add_argument("--input", help="JSON input file")
        sp.add_argument("--example", help="use a built-in example instead of --input")
        if region:
            sp.add_argument("--region", nargs="+", metavar="TOKEN",
                            help="disc cx cy r | annulus cx cy r1 r2 | rect x1 y1 x2 y2")
        sp.add_argument("--tol", type=float)
        sp.add_argument("--seed", type=parse_seed, default=0x5EED, help="jitter seed, hexadecimal (default 5EED)")
        sp.add_argument("--output", help="also write the JSON document here")
        sp.add_argument("--set", type=parse_setting, action="append", default=[], metavar="KEY=VALUE",
                        help="override an analytic default, e.g. --set cell_cap=20000 --set sampling=2048")

    common(sub.add_parser("classify", help="projection case (a, b, c, d1, d2, d31, d32) of a surface"), region=False)
    sp = sub.add_parser("solve", help="count and isolate zeros of Phi in a region")
    common(sp)
    sp.add_argument("--max-zeros", type=int)
    sp.add_argument("--emit-svg")
    sp = sub.add_parser("winding", help="winding number of Phi along a region boundary")
    common(sp)
    sp.add_argument("--emit-svg")
    sp = sub.add_parser("laurent", help="Laurent data of log Phi on a circle")
    common(sp)
    sp.add_argument("--K", type=int, default=8)
    sp = sub.add_parser("elliptic-verify", help="residuals of the Weierstrass identities")
    sp.add_argument("--omega1", nargs=2, type=float, default=[2.0, 0.0], metavar=("RE", "IM"))
    sp.add_argument("--omega2", nargs=2, type=float, default=[0.0, 2.0], metavar=("RE", "IM"))
    sp.add_argument("--depth", type=int, default=40)
    sp.add_argument("--tol", type=float)
    sp.add_argument("--seed", type=parse_seed, default=0x5EED)
    sp.add_argument("--output")
    sp = sub.add_parser("verify-paper", help="run the reproduction checks")
    sp.add_argument("--only", action="append", default=[], choices=sorted(CHECKS))
    sp.add_argument("--tol", type=float)
    sp.add_argument("--output")
    return p


def config_from_args(ns: argparse.Namespace) -> JobConfig:
    kw = dict(command=ns.command, tol=getattr(ns, "tol", None), output=getattr(ns, "output", None),
              seed=getattr(ns, "seed", 0x5EED))
    for name in ("input", "example", "max_zeros", "emit_svg", "K", "depth"):
        if getattr(ns, name, None) is not None:
            kw[name] = getattr(ns, name)
    if getattr(ns, "region", None):
        kw["region"] = tuple(ns.region)
    if getattr(ns, "only", None):
        kw["only"] = tuple(ns.only)
    if getattr(ns, "set", None):
        kw["extra"] = dict(ns.set)
    if ns.command == "elliptic-verify":
        kw["lattice"] = (complex(*ns.omega1), complex(*ns.omega2))
    return JobConfig(**kw)


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
        return COMMANDS[cfg.command](cfg)
    except (InputError, ContourError, ExcludedPointError) as exc:
        if isinstance(exc, (ZeroOnContour, NonIntegerWinding)):
            print(f"expzero: {type(exc).__name__}: {exc}", file=sys.stderr)
            return EXIT_FAIL
        print(f"expzero: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"expzero: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    raise SystemExit(main())
