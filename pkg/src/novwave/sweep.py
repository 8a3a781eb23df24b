"""Parameter scans: stability maps over k, threshold location, exports.

Scan configs may be read from a JSON file with the schema

    {
      "b": 1.0,
      "a_list": [0.02],
      "k_grid": {"min": 1.0, "max": 2.2, "count": 25},
      "xi_rule": {"type": "proportional", "factor": 0.1},   # or {"type": "fixed", "value": 0.002}
      "N": 32,
      "mode": "both",                                       # asymptotic | numeric | both
      "out": "scan.csv"
    }

Exports are byte-stable: 17-significant-digit floats, LF newlines, fixed
column order `k,a,xi,delta,verdict,growth_rate_predicted,growth_rate_hill,error`.
"""

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .bloch import spectrum_slice
from .errors import BracketingError
from .modulation import classify, classify_profile
from .waveform import WaveParams, asymptotic_profile, solve_profile

MODES = ("asymptotic", "numeric", "both")


@dataclass(frozen=True)
class ScanConfig:
    b: float
    a_list: tuple
    k_grid: tuple          # (min, max, count)
    xi_rule: tuple         # ("fixed", value) or ("proportional", factor)
    N: int = 32
    mode: str = "both"
    out: str | None = None

    def __post_init__(self):
        lo, hi, count = self.k_grid
        if not self.a_list:
            raise ValueError("a_list must be non-empty")
        if count < 1 or hi < lo:
            raise ValueError("k_grid must be ordered and non-empty")
        if self.N < 8:
            raise ValueError("N must be at least 8")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        kind = self.xi_rule[0]
        if kind not in ("fixed", "proportional"):
            raise ValueError("xi_rule must be ('fixed', value) or ('proportional', factor)")

    def k_values(self):
        lo, hi, count = self.k_grid
        if count == 1:
            return [float(lo)]
        return list(np.linspace(lo, hi, int(count)))

    def xi_for(self, a):
        kind, value = self.xi_rule
        return float(value) if kind == "fixed" else float(value) * a


def load_config(path):
    with open(path) as fh:
        d = json.load(fh)
    kg = d["k_grid"]
    xr = d["xi_rule"]
    rule = ("fixed", xr["value"]) if xr["type"] == "fixed" \
        else ("proportional", xr["factor"])
    return ScanConfig(
        b=float(d.get("b", 1.0)),
        a_list=tuple(float(a) for a in d["a_list"]),
        k_grid=(float(kg["min"]), float(kg["max"]), int(kg["count"])),
        xi_rule=rule,
        N=int(d.get("N", 32)),
        mode=d.get("mode", "both"),
        out=d.get("out"),
    )


@dataclass(frozen=True)
class ScanRow:
    k: float
    a: float
    xi: float
    delta: float
    verdict: str
    growth_rate_predicted: float
    growth_rate_hill: float | None = None
    error: str | None = None


@dataclass(frozen=True)
class StabilityMap:
    rows: tuple

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)


def _scan_point(cfg, k, a):
    xi = cfg.xi_for(a)
    try:
        params = WaveParams(k=k, b=cfg.b, a=a)
        hill = None
        if cfg.mode == "asymptotic":
            res = classify(params, xi)
        else:
            profile = solve_profile(params, N=cfg.N)
            if cfg.mode == "numeric":
                res = classify_profile(profile, xi, N=cfg.N)
            else:
                res = classify(params, xi)
            near = spectrum_slice(profile, xi, cfg.N).origin_nearest(3)
            hill = float(np.max(near.real))
        return ScanRow(k=k, a=a, xi=xi, delta=res.delta, verdict=res.verdict,
                       growth_rate_predicted=res.growth_rate,
                       growth_rate_hill=hill)
    except Exception as exc:   # per-point failures degrade to tagged rows
        return ScanRow(k=k, a=a, xi=xi, delta=math.nan, verdict="Error",
                       growth_rate_predicted=math.nan, growth_rate_hill=None,
                       error=f"{type(exc).__name__}: {exc}")


def run_scan(cfg, workers=1):
    """One row per (k, a) pair, in grid order (k outer, a inner)."""
    points = [(k, a) for k in cfg.k_values() for a in cfg.a_list]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda p: _scan_point(cfg, *p), points))
    else:
        rows = [_scan_point(cfg, k, a) for k, a in points]
    return StabilityMap(rows=tuple(rows))


def threshold_locate(b, a, xi_rule, bracket, width=1e-4):
    """Bisection for the wavenumber at which the classifier's discriminant
    changes sign; returns the bracket midpoint at the requested width."""
    xi = xi_rule[1] if xi_rule[0] == "fixed" else xi_rule[1] * a

    def delta_at(k):
        return classify(WaveParams(k=k, b=b, a=a), xi).delta

    lo, hi = float(bracket[0]), float(bracket[1])
    f_lo, f_hi = delta_at(lo), delta_at(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if f_lo * f_hi > 0.0:
        raise BracketingError(
            f"no discriminant sign change on [{lo}, {hi}]: "
            f"Delta({lo})={f_lo:.3e}, Delta({hi})={f_hi:.3e}"
        )
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        f_mid = delta_at(mid)
        if f_mid == 0.0:
            return mid
        if f_lo * f_mid < 0.0:
            hi, f_hi = mid, f_mid
        else:
            lo, f_lo = mid, f_mid
    return 0.5 * (lo + hi)


def _fmt(x):
    if x is None:
        return ""
    return f"{x:.17g}"


def export_csv(stability_map, path):
    """Deterministic CSV of a stability map."""
    lines = ["k,a,xi,delta,verdict,growth_rate_predicted,growth_rate_hill,error"]
    for r in stability_map:
        lines.append(
            f"{_fmt(r.k)},{_fmt(r.a)},{_fmt(r.xi)},{_fmt(r.delta)},"
            f"{r.verdict},{_fmt(r.growth_rate_predicted)},"
            f"{_fmt(r.growth_rate_hill)},{r.error or ''}"
        )
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")
    return path


def export_json(stability_map, path):
    """Deterministic JSON of a stability map; load_json inverts it exactly."""
    def num(x):
        if x is None or not math.isfinite(x):
            return "null"
        return f"{x:.17g}"

    rows = []
    for r in stability_map:
        err = "null" if r.error is None else json.dumps(r.error)
        rows.append(
            "{"
            f'"k": {num(r.k)}, "a": {num(r.a)}, "xi": {num(r.xi)}, '
            f'"delta": {num(r.delta)}, "verdict": "{r.verdict}", '
            f'"growth_rate_predicted": {num(r.growth_rate_predicted)}, '
            f'"growth_rate_hill": {num(r.growth_rate_hill)}, "error": {err}'
            "}"
        )
    text = '{"rows": [' + ", ".join(rows) + "]}\n"
    with open(path, "w", newline="") as fh:
        fh.write(text)
    return path


def load_json(path):
    with open(path) as fh:
        d = json.load(fh)

    def num(x, none_ok=False):
        if x is None:
            return None if none_ok else math.nan
        return float(x)

    rows = tuple(
        ScanRow(k=num(r["k"]), a=num(r["a"]), xi=num(r["xi"]),
                delta=num(r["delta"]), verdict=r["verdict"],
                growth_rate_predicted=num(r["growth_rate_predicted"]),
                growth_rate_hill=num(r["growth_rate_hill"], none_ok=True),
                error=r["error"])
        for r in d["rows"]
    )
    return StabilityMap(rows=rows)
