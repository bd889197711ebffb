"""Run configuration schema, canonical JSON and config hashing.

Serialized numbers are IEEE-754 doubles printed with up to 17 significant
digits, keys are sorted and separators are fixed, so a (config, seed) pair
determines every output byte.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass

from . import geometry as geo
from .errors import ConfigError
from .measure import Discrete, DrivingMeasure, Isotropic2D


def _num(x: float) -> str:
    if isinstance(x, bool):  # bool is an int subclass; keep it out
        raise TypeError("bool is not a number here")
    if isinstance(x, int):
        return str(x)
    if not math.isfinite(x):
        raise ValueError("non-finite float in canonical JSON")
    return format(x, ".17g")


def dumps_canonical(obj) -> str:
    """Canonical JSON: sorted keys, no whitespace, 17-significant-digit floats."""
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, float)):
        return _num(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=True)
    if isinstance(obj, dict):
        items = sorted(obj.items())
        inner = ",".join(f"{json.dumps(str(k))}:{dumps_canonical(v)}" for k, v in items)
        return "{" + inner + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(dumps_canonical(v) for v in obj) + "]"
    raise TypeError(f"cannot canonicalize {type(obj).__name__}")


def config_hash(obj) -> str:
    return hashlib.sha256(dumps_canonical(obj).encode()).hexdigest()[:16]


def sanitize(obj):
    """Coerce numpy scalars and non-finite floats into JSON-clean values."""
    if hasattr(obj, "item") and not isinstance(obj, (str, bytes, dict, list, tuple)):
        obj = obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return "inf" if obj > 0 else ("-inf" if obj < 0 else "nan")
    if isinstance(obj, dict):
        return {k: sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [sanitize(v) for v in obj]
    return obj


# ---------------------------------------------------------------------------
# measure and window configs

def measure_to_json(m: DrivingMeasure) -> dict:
    if isinstance(m.directional, Isotropic2D):
        directional = {"kind": "isotropic2d"}
    else:
        directional = {
            "kind": "discrete",
            "axes": [{"u": list(u), "w": w} for u, w in m.directional.axes],
        }
    return {"gamma": m.gamma, "directional": directional}


def _require_keys(d: dict, allowed: set[str], required: set[str], where: str):
    unknown = set(d) - allowed
    if unknown:
        raise ConfigError(f"unknown keys {sorted(unknown)} in {where}")
    missing = required - set(d)
    if missing:
        raise ConfigError(f"missing keys {sorted(missing)} in {where}")


def measure_from_json(d: dict) -> DrivingMeasure:
    _require_keys(d, {"gamma", "directional"}, {"gamma", "directional"}, "measure")
    dd = d["directional"]
    if not isinstance(dd, dict) or "kind" not in dd:
        raise ConfigError("directional must be an object with a 'kind'")
    try:
        if dd["kind"] == "isotropic2d":
            _require_keys(dd, {"kind"}, {"kind"}, "directional")
            return DrivingMeasure(float(d["gamma"]), Isotropic2D())
        if dd["kind"] == "discrete":
            _require_keys(dd, {"kind", "axes"}, {"kind", "axes"}, "directional")
            axes = []
            for ax in dd["axes"]:
                _require_keys(ax, {"u", "w"}, {"u", "w"}, "axis")
                axes.append((tuple(float(x) for x in ax["u"]), float(ax["w"])))
            return DrivingMeasure(float(d["gamma"]), Discrete(tuple(axes)))
    except (ValueError, TypeError) as e:
        raise ConfigError(str(e)) from e
    raise ConfigError(f"unknown directional kind {dd['kind']!r}")


def window_from_json(d: dict):
    if not isinstance(d, dict) or "kind" not in d:
        raise ConfigError("window must be an object with a 'kind'")
    try:
        if d["kind"] == "box":
            _require_keys(d, {"kind", "lo", "hi"}, {"kind", "lo", "hi"}, "window")
            return geo.Box(tuple(float(x) for x in d["lo"]),
                           tuple(float(x) for x in d["hi"]))
        if d["kind"] == "polygon":
            _require_keys(d, {"kind", "vertices"}, {"kind", "vertices"}, "window")
            return geo.Polygon2D(tuple(tuple(float(x) for x in p)
                                       for p in d["vertices"]))
    except (ValueError, TypeError) as e:
        raise ConfigError(str(e)) from e
    raise ConfigError(f"unknown window kind {d['kind']!r}")


@dataclass(frozen=True)
class RunConfig:
    model: str  # "stit" or "pht"
    measure: DrivingMeasure
    window: geo.Polytope
    time: float
    rho: float
    method: str

    def to_json(self) -> dict:
        out = {
            "model": self.model,
            "measure": measure_to_json(self.measure),
            "window": geo.polytope_to_json(self.window),
        }
        if self.model == "stit":
            out["time"] = self.time
            out["method"] = self.method
        else:
            out["rho"] = self.rho
        return out


def run_config_from_json(d: dict) -> RunConfig:
    allowed = {"model", "measure", "window", "time", "method", "rho"}
    _require_keys(d, allowed, {"model", "measure", "window"}, "config")
    model = d["model"]
    if model not in ("stit", "pht"):
        raise ConfigError(f"model must be 'stit' or 'pht', got {model!r}")
    measure = measure_from_json(d["measure"])
    window = window_from_json(d["window"])
    if isinstance(measure.directional, Isotropic2D) and window.dim != 2:
        raise ConfigError("RegimeMismatch: isotropic measure requires a 2-D window")
    if isinstance(measure.directional, Discrete) and \
            measure.directional.dim != window.dim:
        raise ConfigError("RegimeMismatch: measure and window dimensions differ")
    if window.dim > 2 and measure.axis_rates(window.dim) is None:
        raise ConfigError(
            "RegimeMismatch: dimensions above 2 support only coordinate-axis measures")
    if model == "stit":
        if "rho" in d:
            raise ConfigError("'rho' is a pht key")
        t = float(d.get("time", 1.0))
        if t <= 0:
            raise ConfigError("time must be positive")
        method = d.get("method", "direct")
        if method not in ("direct", "rejection"):
            raise ConfigError(f"method must be 'direct' or 'rejection', got {method!r}")
        return RunConfig("stit", measure, window, t, 0.0, method)
    if "time" in d or "method" in d:
        raise ConfigError("'time'/'method' are stit keys")
    rho = float(d.get("rho", 1.0))
    if rho < 0:
        raise ConfigError("rho must be non-negative")
    return RunConfig("pht", measure, window, 0.0, rho, "direct")
