"""Command-line front end: ``simulate``, ``singular``, ``backlund``, ``verify``, ``prove``.

Exit codes: 0 success, 1 a verification or proof failed, 2 bad configuration
or arguments, 3 integration failure, 4 unit-speed violation.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import io as tio
from . import linkage as lk
from .backlund import backlund_transform, soliton_constants_from_elastica
from .curves import CurveError, NotUnitSpeedError, PlanarCurve, frenet_fd, inflectional_ic
from .io import ConfigError, RunConfig
from .ode import IntegrationError, IntegratorSpec
from .simulate import simulate_geodesic, simulate_singular

EXIT_OK, EXIT_FAILED, EXIT_CONFIG, EXIT_INTEGRATION, EXIT_UNIT_SPEED = 0, 1, 2, 3, 4

SIM_COLUMNS = ["t", "x1", "x2", "alpha1", "alpha2", "p1", "p2", "eta1", "eta2",
               "kappa_x", "H", "G_or_b", "a"]


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def circle_state() -> lk.PhaseState:
    """Unit-circle geodesic: the second wheel sits at the centre and stays there."""
    return lk.PhaseState(0.0, 0.0, math.pi, -math.pi / 2, 0.0, 0.0, 0.0, 1.0)


def initial_state(cfg: RunConfig) -> lk.PhaseState:
    if cfg.state is not None:
        return cfg.state
    if (cfg.l1, cfg.l2) != (1.0, 1.0):
        raise ConfigError(f"example {cfg.example!r} is defined for l1 = l2 = 1")
    if cfg.example == "circle":
        return circle_state()
    try:
        return inflectional_ic(cfg.k)
    except ValueError as exc:
        raise ConfigError(f"k: {exc}") from exc


def _number(name):
    def parse(text):
        try:
            return tio.parse_number(text, name)
        except ConfigError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from exc
    return parse


def _config_from_args(args) -> RunConfig:
    cfg = tio.load_config(args.config) if args.config else RunConfig()
    changes = {}
    if args.example is not None:
        changes.update(example=args.example, state=None)
    if args.k is not None:
        changes["k"] = args.k
    if args.l1 is not None:
        changes["l1"] = args.l1
    if args.l2 is not None:
        changes["l2"] = args.l2
    if args.tmax is not None:
        changes["t_max"] = args.tmax
    if args.dt is not None:
        changes["dt"] = args.dt
    if args.tol is not None:
        changes["integrator"] = replace(cfg.integrator, rtol=args.tol, atol=args.tol)
    cfg = replace(cfg, **changes)
    for name in ("l1", "l2", "t_max", "dt"):
        if not getattr(cfg, name) > 0:
            raise ConfigError(f"{name} must be positive")
    return cfg


def _run(cfg: RunConfig):
    state = initial_state(cfg)
    spec = replace(cfg.integrator, max_step=min(cfg.integrator.max_step, cfg.dt),
                   land_on_samples=True)
    try:
        return simulate_geodesic(state, cfg.params, cfg.t_max, spec, cfg.dt)
    except (IntegrationError, lk.LinkageError) as exc:
        raise CliError(EXIT_INTEGRATION, f"integration failed: {exc}") from exc


def _table(run) -> np.ndarray:
    inv = run.invariants()
    second = inv["G"] if "G" in inv else inv["b"]
    return np.column_stack([run.times, run.states, run.kappa, inv["H"], second, inv["a"]])


def _svg(prefix: Path, tracks: dict, title: str) -> Path:
    return tio.atomic_write(prefix.with_suffix(".svg"), tio.svg_tracks(tracks, title))


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def cmd_simulate(args) -> int:
    cfg = _config_from_args(args)
    run = _run(cfg)
    prefix = Path(args.out)
    written = []
    if "csv" in cfg.outputs:
        written.append(tio.write_csv(prefix.with_suffix(".csv"), SIM_COLUMNS, _table(run)))
    if "svg" in cfg.outputs:
        written.append(_svg(prefix, run.tracks()._asdict(), "geodesic tracks"))
    print(tio.dumps({"written": [str(p) for p in written], "samples": len(run.times),
                     "chart": run.chart}))
    return EXIT_OK


def cmd_singular(args) -> int:
    from .verify import report_dict, singular_report
    P = lk.Params(args.l1 if args.l1 is not None else 1.0, args.l2 if args.l2 is not None else 1.0)
    q = lk.ConfigPoint(0.0, 0.0, args.alpha1, args.alpha2)
    dt = args.dt if args.dt is not None else 0.005
    try:
        lk.check_configuration(q.alpha1, q.alpha2, P)
        run = simulate_singular(q, P, args.tmax if args.tmax is not None else 10.0, None, dt)
    except (IntegrationError, lk.LinkageError) as exc:
        raise CliError(EXIT_INTEGRATION, f"integration failed: {exc}") from exc
    A = lk.singular_elastica_constant(P)
    if P.equal:
        k_fd = np.zeros(len(run.times))
    else:
        _, _, k_fd = frenet_fd(run.curve("x"))
    table = np.column_stack([run.times, run.states, k_fd, run.closed_form_curvature(),
                             np.full(len(run.times), A)])
    prefix = Path(args.out)
    tio.write_csv(prefix.with_suffix(".csv"),
                  ["t", "x1", "x2", "alpha1", "alpha2", "kappa_fd", "kappa_closed", "A"], table)
    _svg(prefix, run.tracks()._asdict(), "singular curve")
    checks = singular_report(run)
    report = report_dict(checks, {"A": A, "collinear": bool(P.equal and checks[0].passed)})
    tio.write_json(prefix.with_suffix(".json"), report)
    print(tio.dumps(report))
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import closure_gap, invariant_report, report_dict
    cfg = _config_from_args(args)
    run = _run(cfg)
    checks = invariant_report(run)
    report = report_dict(checks, {"closure_gap": closure_gap(run),
                                  "lengths": [cfg.l1, cfg.l2], "t_max": cfg.t_max})
    if args.out:
        tio.write_json(Path(args.out).with_suffix(".json"), report)
    print(tio.dumps(report))
    return EXIT_OK if report["passed"] else EXIT_FAILED


def _backlund_input(args):
    """Input curve with its exact curvature and heading where known."""
    dt = args.dt if args.dt is not None else 0.005
    tmax = args.tmax if args.tmax is not None else 20.0
    if args.input:
        try:
            header, data = tio.read_csv(args.input)
        except (OSError, ValueError) as exc:
            raise ConfigError(f"cannot read input curve: {exc}") from exc
        cols = {h: i for i, h in enumerate(header)}
        xk, yk = ("x", "y") if "x" in cols else ("x1", "x2")
        if xk not in cols or yk not in cols or "t" not in cols:
            raise ConfigError("input CSV needs columns t and x, y (or x1, x2)")
        t = data[:, cols["t"]]
        if len(t) < 10:
            raise ConfigError("input curve needs at least 10 samples")
        step = np.diff(t)
        if np.max(np.abs(step - step[0])) > 1e-9 * max(1.0, abs(step[0])):
            raise ConfigError("input curve must be uniformly sampled")
        return PlanarCurve(data[:, [cols[xk], cols[yk]]], float(step[0])), None, None, None
    t = np.arange(int(round(tmax / dt)) + 1) * dt
    if args.example == "line":
        pts = np.column_stack([t, np.zeros_like(t)])
        return PlanarCurve(pts, dt), np.zeros_like(t), np.zeros_like(t), None
    if args.example == "circle":
        c = 1.0 if args.k is None else args.k
        pts = np.column_stack([np.sin(c * t) / c, (1 - np.cos(c * t)) / c])
        return PlanarCurve(pts, dt), np.full_like(t, c), c * t, (-c * c / 2, c ** 4 / 4)
    k = 0.707 if args.k is None else args.k
    s0 = inflectional_ic(k)
    run = simulate_geodesic(s0, lk.Params(), tmax, sample_dt=dt)
    return run.curve("x"), run.kappa, run.headings(), lk.elastica_constants(s0, lk.Params())


def cmd_backlund(args) -> int:
    curve, kappa, heading, AB = _backlund_input(args)
    L = args.L
    beta0 = args.beta0
    if beta0 is None:
        beta0 = math.asin(min(1.0, curve_k0(kappa) * L / 2)) if args.example == "circle" else 0.3
    try:
        res = backlund_transform(curve, L, beta0, kappa=kappa, heading=heading)
    except NotUnitSpeedError as exc:
        raise CliError(EXIT_UNIT_SPEED, f"unit-speed violation: {exc}") from exc
    except CurveError as exc:
        raise CliError(EXIT_FAILED, str(exc)) from exc
    prefix = Path(args.out)
    table = np.column_stack([curve.t, res.curve_out.points, res.beta, res.kappa_closed, res.kappa_fd])
    tio.write_csv(prefix.with_suffix(".csv"),
                  ["t", "x", "y", "beta", "kappa_closed", "kappa_fd"], table)
    _svg(prefix, {"input": curve.points, "transformed": res.curve_out.points}, "bicycle transform")
    summary = {"L": L, "beta0": beta0, "sign": res.sign, "orientation": res.orientation,
               "speed_deviation": res.speed_deviation, "kappa_agreement": res.kappa_agreement}
    if AB is not None:
        A, B = AB
        c1, c2 = soliton_constants_from_elastica(A, B, L)
        summary.update(A=A, B=B, c1=c1, c2=c2,
                       soliton_residual=res.soliton_residual(A, B).sup)
    tio.write_json(prefix.with_suffix(".json"), summary)
    print(tio.dumps(summary))
    return EXIT_OK


def curve_k0(kappa) -> float:
    return float(kappa[0]) if kappa is not None else 0.0


def parse_length_pairs(text: str) -> list:
    """``"1/1,1/2"`` -> [(1, 1), (1, 2)]; ``"a:b"`` allows rational lengths."""
    from fractions import Fraction
    pairs = []
    for item in filter(None, (s.strip() for s in text.split(","))):
        try:
            if ":" in item:
                a, b = item.split(":")
                pair = (Fraction(a), Fraction(b))
            else:
                a, b = item.split("/")
                pair = (Fraction(int(a)), Fraction(int(b)))
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"malformed length pair {item!r}") from exc
        if pair[0] <= 0 or pair[1] <= 0:
            raise ConfigError(f"lengths must be positive in {item!r}")
        pairs.append(pair)
    if not pairs:
        raise ConfigError("no length pairs given")
    return pairs


def cmd_prove(args) -> int:
    from .poly.proofs import run_all
    pairs = parse_length_pairs(args.lengths)
    reports = run_all(pairs, npts=args.points)
    claims, discrepancies = [], []
    for r in reports:
        (discrepancies if "printed" in r.claim else claims).append(r.to_dict())
    ok = all(c["status"] == "proved" for c in claims)
    out = {"status": "proved" if ok else "failed", "claims": claims,
           "display_discrepancies": discrepancies}
    if args.strict_displays:
        ok = ok and all(d["status"] == "proved" for d in discrepancies)
        out["status"] = "proved" if ok else "failed"
    if args.out:
        tio.write_json(Path(args.out).with_suffix(".json"), out)
    print(tio.dumps(out))
    return EXIT_OK if ok else EXIT_FAILED


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tricycle", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, example_choices):
        sp.add_argument("--config", help="JSON run configuration (schema 1)")
        sp.add_argument("--example", choices=example_choices)
        sp.add_argument("--k", type=_number("k"), help="elliptic modulus / circle curvature")
        sp.add_argument("--l1", type=_number("l1"))
        sp.add_argument("--l2", type=_number("l2"))
        sp.add_argument("--tmax", type=_number("tmax"))
        sp.add_argument("--dt", type=_number("dt"))
        sp.add_argument("--tol", type=_number("tol"), help="relative and absolute tolerance")

    s = sub.add_parser("simulate", help="integrate a geodesic, write CSV and SVG")
    common(s, ("circle", "inflectional"))
    s.add_argument("--out", default="run")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("singular", help="integrate a singular curve")
    s.add_argument("--l1", type=_number("l1"))
    s.add_argument("--l2", type=_number("l2"))
    s.add_argument("--alpha1", type=_number("alpha1"), default=0.3)
    s.add_argument("--alpha2", type=_number("alpha2"), default=2.0)
    s.add_argument("--tmax", type=_number("tmax"))
    s.add_argument("--dt", type=_number("dt"))
    s.add_argument("--out", default="singular")
    s.set_defaults(func=cmd_singular)

    s = sub.add_parser("verify", help="run the invariant suite, JSON report on stdout")
    common(s, ("circle", "inflectional"))
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("backlund", help="bicycle transform of a curve")
    s.add_argument("--input", help="CSV with columns t, x, y (or x1, x2)")
    s.add_argument("--example", choices=("line", "circle", "elastica"), default="elastica")
    s.add_argument("--k", type=_number("k"))
    s.add_argument("--L", type=_number("L"), default=2.0)
    s.add_argument("--beta0", type=_number("beta0"))
    s.add_argument("--tmax", type=_number("tmax"))
    s.add_argument("--dt", type=_number("dt"))
    s.add_argument("--out", default="backlund")
    s.set_defaults(func=cmd_backlund)

    s = sub.add_parser("prove", help="exact Gröbner-basis certificates")
    s.add_argument("--lengths", default="1/1,1/2",
                   help="comma-separated l1/l2 integer pairs, or l1:l2 with rationals")
    s.add_argument("--points", type=int, default=50, help="exact evaluation points per claim")
    s.add_argument("--strict-displays", action="store_true",
                   help="also fail when a printed display does not reduce")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_prove)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (IntegrationError, lk.LinkageError) as exc:
        print(f"error: integration failed: {exc}", file=sys.stderr)
        return EXIT_INTEGRATION


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
