"""Run configuration, CSV tables, SVG figures and atomic file output."""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

from .linkage import Params, PhaseState
from .ode import IntegratorSpec

SCHEMA_VERSION = 1
EXAMPLES = ("circle", "inflectional")
STATE_KEYS = ("x1", "x2", "alpha1", "alpha2", "p1", "p2", "eta1", "eta2")


class ConfigError(ValueError):
    pass


# --------------------------------------------------------------------------
# numbers
# --------------------------------------------------------------------------

def parse_number(x, name: str = "value") -> float:
    """Finite float from a number or a decimal/rational string such as ``"2/3"``."""
    if isinstance(x, bool):
        raise ConfigError(f"{name}: expected a number, got a boolean")
    try:
        v = float(Fraction(x.strip())) if isinstance(x, str) else float(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"{name}: cannot parse {x!r}") from exc
    if not math.isfinite(v):
        raise ConfigError(f"{name}: must be finite")
    return v


def parse_rational(x, name: str = "value") -> Fraction:
    try:
        v = Fraction(str(x).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"{name}: malformed rational {x!r}") from exc
    return v


# --------------------------------------------------------------------------
# configuration
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class RunConfig:
    """Everything a simulation run needs; parsed from JSON with ``schema: 1``."""

    l1: float = 1.0
    l2: float = 1.0
    example: str | None = "inflectional"
    k: float = 0.707
    state: PhaseState | None = None
    t_max: float = 20.0
    dt: float = 0.01
    integrator: IntegratorSpec = field(default_factory=IntegratorSpec)
    outputs: tuple = ("csv", "svg")

    @property
    def params(self) -> Params:
        return Params(self.l1, self.l2)

    def to_dict(self) -> dict:
        d = {"schema": SCHEMA_VERSION, "lengths": [self.l1, self.l2], "t_max": self.t_max,
             "dt": self.dt, "outputs": list(self.outputs),
             "integrator": {"method": self.integrator.method, "rtol": self.integrator.rtol,
                            "atol": self.integrator.atol, "step": self.integrator.step,
                            "max_steps": self.integrator.max_steps}}
        if self.state is not None:
            d["initial"] = {"state": dict(zip(STATE_KEYS, self.state.as_array().tolist()))}
        else:
            d["initial"] = {"example": self.example}
            if self.example == "inflectional":
                d["initial"]["k"] = self.k
        return d


_TOP_KEYS = {"schema", "lengths", "initial", "t_max", "dt", "integrator", "outputs"}
_INTEGRATOR_KEYS = {"method", "rtol", "atol", "step", "max_steps"}


def _reject_unknown(d: dict, allowed: set, where: str):
    extra = set(d) - allowed
    if extra:
        raise ConfigError(f"{where}: unknown keys {sorted(extra)}")


def config_from_dict(d: dict) -> RunConfig:
    if not isinstance(d, dict):
        raise ConfigError("config must be a JSON object")
    _reject_unknown(d, _TOP_KEYS, "config")
    if d.get("schema") != SCHEMA_VERSION:
        raise ConfigError(f"config: schema must be {SCHEMA_VERSION}")
    kw: dict = {}
    if "lengths" in d:
        ls = d["lengths"]
        if not isinstance(ls, list) or len(ls) != 2:
            raise ConfigError("lengths: expected [l1, l2]")
        kw["l1"], kw["l2"] = (parse_number(v, "lengths") for v in ls)
        if kw["l1"] <= 0 or kw["l2"] <= 0:
            raise ConfigError("lengths: must be positive")
    init = d.get("initial", {"example": "inflectional"})
    if not isinstance(init, dict):
        raise ConfigError("initial: expected an object")
    _reject_unknown(init, {"example", "k", "state"}, "initial")
    if "state" in init:
        st = init["state"]
        if not isinstance(st, dict):
            raise ConfigError("initial.state: expected an object")
        _reject_unknown(st, set(STATE_KEYS), "initial.state")
        missing = [k for k in STATE_KEYS if k not in st]
        if missing:
            raise ConfigError(f"initial.state: missing {missing}")
        kw["state"] = PhaseState(*(parse_number(st[k], f"state.{k}") for k in STATE_KEYS))
        kw["example"] = None
    else:
        ex = init.get("example", "inflectional")
        if ex not in EXAMPLES:
            raise ConfigError(f"initial.example: expected one of {EXAMPLES}")
        kw["example"] = ex
        if "k" in init:
            kw["k"] = parse_number(init["k"], "k")
    for key in ("t_max", "dt"):
        if key in d:
            kw[key] = parse_number(d[key], key)
            if kw[key] <= 0:
                raise ConfigError(f"{key}: must be positive")
    if "integrator" in d:
        spec = d["integrator"]
        if not isinstance(spec, dict):
            raise ConfigError("integrator: expected an object")
        _reject_unknown(spec, _INTEGRATOR_KEYS, "integrator")
        args = {}
        for key in ("rtol", "atol", "step"):
            if spec.get(key) is not None:
                args[key] = parse_number(spec[key], f"integrator.{key}")
        if "method" in spec:
            args["method"] = spec["method"]
        if "max_steps" in spec:
            args["max_steps"] = int(spec["max_steps"])
        try:
            kw["integrator"] = IntegratorSpec(**args)
        except ValueError as exc:
            raise ConfigError(f"integrator: {exc}") from exc
    if "outputs" in d:
        outs = d["outputs"]
        if not isinstance(outs, list) or not set(outs) <= {"csv", "svg"}:
            raise ConfigError("outputs: expected a subset of ['csv', 'svg']")
        kw["outputs"] = tuple(outs)
    return RunConfig(**kw)


def load_config(path) -> RunConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    return config_from_dict(data)


# --------------------------------------------------------------------------
# files
# --------------------------------------------------------------------------

def atomic_write(path, data: str | bytes) -> Path:
    """Write via a temporary file in the same directory and rename into place."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    mode = "wb" if isinstance(data, bytes) else "w"
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, mode) as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
    return path


def format_float(v: float) -> str:
    return format(float(v), ".17g")


def csv_text(columns: list[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([format_float(v) for v in row])
    return buf.getvalue()


def write_csv(path, columns: list[str], data) -> Path:
    data = np.asarray(data, dtype=float)
    if data.ndim != 2 or data.shape[1] != len(columns):
        raise ValueError("data must be (n, len(columns))")
    return atomic_write(path, csv_text(columns, data))


def read_csv(path) -> tuple[list[str], np.ndarray]:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ValueError(f"{path}: empty file")
    header, body = rows[0], rows[1:]
    if any(len(r) != len(header) for r in body):
        raise ValueError(f"{path}: ragged rows")
    return header, np.array([[float(v) for v in r] for r in body], dtype=float).reshape(
        len(body), len(header))


# --------------------------------------------------------------------------
# SVG
# --------------------------------------------------------------------------

PALETTE = ("#000000", "#d62728", "#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd")


def svg_tracks(tracks: dict, title: str = "", width: int = 800) -> str:
    """Polylines for named point sequences, with a legend; y axis points up."""
    arrays = {k: np.asarray(v, dtype=float) for k, v in tracks.items() if len(v)}
    if not arrays:
        raise ValueError("nothing to draw")
    allpts = np.vstack(list(arrays.values()))
    lo, hi = allpts.min(axis=0), allpts.max(axis=0)
    span = np.maximum(hi - lo, 1e-9)
    lo, hi = lo - 0.05 * span, hi + 0.05 * span
    w, h = hi - lo
    height = max(1, int(round(width * h / w)))
    stroke = max(w, h) / 400

    def fmt(v):
        return format(float(v), ".6g")

    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="{fmt(lo[0])} {fmt(-hi[1])} {fmt(w)} {fmt(h)}">']
    if title:
        out.append(f"<title>{escape(title)}</title>")
    out.append(f'<rect x="{fmt(lo[0])}" y="{fmt(-hi[1])}" width="{fmt(w)}" height="{fmt(h)}" '
               'fill="white"/>')
    for i, (name, pts) in enumerate(arrays.items()):
        step = max(1, len(pts) // 4000)
        sel = pts[::step]
        coords = " ".join(f"{fmt(x)},{fmt(-y)}" for x, y in sel)
        out.append(f'<polyline id="{escape(name)}" fill="none" stroke="{PALETTE[i % len(PALETTE)]}" '
                   f'stroke-width="{fmt(stroke)}" points="{coords}"/>')
    fs = max(w, h) / 40
    out.append('<g id="legend">')
    for i, name in enumerate(arrays):
        y = -hi[1] + fs * (1.5 + 1.3 * i)
        x = lo[0] + fs
        out.append(f'<line x1="{fmt(x)}" y1="{fmt(y - fs / 3)}" x2="{fmt(x + fs)}" '
                   f'y2="{fmt(y - fs / 3)}" stroke="{PALETTE[i % len(PALETTE)]}" '
                   f'stroke-width="{fmt(stroke * 2)}"/>')
        out.append(f'<text x="{fmt(x + 1.4 * fs)}" y="{fmt(y)}" font-size="{fmt(fs)}" '
                   f'font-family="sans-serif">{escape(name)}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_json(path, obj) -> Path:
    return atomic_write(path, json.dumps(obj, indent=2, sort_keys=True, default=_json_default) + "\n")


def _json_default(o):
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, Fraction):
        return str(o)
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=_json_default)
