"""Parameter sweeps over the interferometer configurations.

A sweep is described by a JSON document (scenario, grid axes, fixed
parameters, output path/format, seed).  The named scenarios reproduce the
standard figure data sets: the hybrid phase-uncertainty map with its margin
of per-mixing minima, the normalized-Fisher surface and gain cuts of the
lossy Yurke setup, the loss-scaling curves with their high-gain reference
lines, and the Yurke-versus-differential-Mandel comparison.  ``custom``
evaluates a user grid for one topology.

Output is a flat record table with one fixed column set; divergent grid
points carry a sentinel flag and empty numeric fields.  Re-running a
scenario with the same configuration yields byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np

from . import __version__
from .analytic import (
    hybrid_fringes,
    mandel_fringe,
    mandel_sum_diff,
    thermal_variance,
    yurke_fringe,
)
from .errors import ConfigError, DomainError
from .sensitivity import (
    numeric_phi_min,
    sigma_diff,
    sigma_hybrid,
    sigma_min_thermal,
    sigma_thermal,
    yurke_highgain,
)

#: Fixed column set of every emitted record table.
COLUMNS = ("scenario", "n", "v_a", "v_b", "t_s", "t_i", "rho", "phi",
           "n_s", "n_plus", "n_minus", "variance", "sigma2", "phi_min",
           "sigma2_min", "fisher", "fisher_norm", "contrast", "sentinel")

SCENARIOS = ("hybrid-map", "fisher-surface", "fisher-vs-n", "scaling",
             "compare", "custom")

AXIS_NAMES = ("n", "v_a", "v_b", "t_s", "t_i", "rho", "phi")

VARIANT_CHOICES = ("yurke", "mandel", "mandel-diff", "hybrid")

_FIXED_PHASES = (0.9 * math.pi, 0.95 * math.pi, 0.97 * math.pi)

_TWO_PI = 2.0 * math.pi


@dataclass
class SweepConfig:
    """Validated sweep description."""

    scenario: str
    axes: dict[str, list[float]] = field(default_factory=dict)
    fixed: dict[str, object] = field(default_factory=dict)
    out: Optional[str] = None
    format: str = "csv"
    seed: int = 1
    count: int = 1000


def _expand_axis(name: str, value: object) -> list[float]:
    path = f"axes.{name}"
    if isinstance(value, dict):
        unknown = set(value) - {"min", "max", "count", "spacing"}
        if unknown:
            raise ConfigError(f"{path}: unknown range keys {sorted(unknown)}")
        try:
            lo, hi = float(value["min"]), float(value["max"])
            count = int(value["count"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"{path}: range needs numeric min/max and integer count") from exc
        spacing = value.get("spacing", "linear")
        if spacing not in ("linear", "log"):
            raise ConfigError(f"{path}.spacing: expected 'linear' or 'log', got {spacing!r}")
        if count < 1:
            raise ConfigError(f"{path}.count: must be >= 1")
        if spacing == "log":
            if lo <= 0.0:
                raise ConfigError(f"{path}: log spacing requires min > 0")
            pts = np.logspace(math.log10(lo), math.log10(hi), count)
        else:
            pts = np.linspace(lo, hi, count)
        return [float(x) for x in pts]
    if isinstance(value, (list, tuple)):
        if not value:
            raise ConfigError(f"{path}: axis must be nonempty")
        out = []
        for k, x in enumerate(value):
            if not isinstance(x, (int, float)) or isinstance(x, bool) or not math.isfinite(x):
                raise ConfigError(f"{path}[{k}]: expected a finite number, got {x!r}")
            out.append(float(x))
        return out
    raise ConfigError(f"{path}: expected a list or a min/max/count range object")


def parse_config(doc: object, command: str = "sweep") -> SweepConfig:
    """Validate a JSON configuration document for one CLI command."""
    if not isinstance(doc, dict):
        raise ConfigError("configuration must be a JSON object")
    allowed = {"scenario", "axes", "fixed", "out", "format", "seed"}
    if command == "verify":
        allowed |= {"count"}
    unknown = set(doc) - allowed
    if unknown:
        raise ConfigError(f"unknown config keys {sorted(unknown)}")

    scenario = doc.get("scenario")
    if command in ("fringe", "sensitivity"):
        scenario = scenario or "custom"
        if scenario != "custom":
            raise ConfigError(f"{command} accepts only the custom scenario, got {scenario!r}")
    elif command == "sweep":
        if scenario is None:
            raise ConfigError("scenario is required (config key or --scenario)")
        if scenario not in SCENARIOS:
            raise ConfigError(f"scenario: expected one of {SCENARIOS}, got {scenario!r}")
    else:
        scenario = scenario or "verify"

    axes: dict[str, list[float]] = {}
    raw_axes = doc.get("axes", {})
    if not isinstance(raw_axes, dict):
        raise ConfigError("axes: expected an object of axis name -> list or range")
    for name, value in raw_axes.items():
        if name not in AXIS_NAMES:
            raise ConfigError(f"axes.{name}: unknown axis (expected one of {AXIS_NAMES})")
        axes[name] = _expand_axis(name, value)

    fixed: dict[str, object] = {}
    raw_fixed = doc.get("fixed", {})
    if not isinstance(raw_fixed, dict):
        raise ConfigError("fixed: expected an object of parameter name -> value")
    for name, value in raw_fixed.items():
        if name == "variant":
            if value not in VARIANT_CHOICES:
                raise ConfigError(f"fixed.variant: expected one of {VARIANT_CHOICES}, got {value!r}")
            fixed[name] = value
            continue
        if name not in AXIS_NAMES:
            raise ConfigError(f"fixed.{name}: unknown parameter")
        if not isinstance(value, (int, float)) or isinstance(value, bool) or not math.isfinite(value):
            raise ConfigError(f"fixed.{name}: expected a finite number, got {value!r}")
        fixed[name] = float(value)
    overlap = set(axes) & set(fixed)
    if overlap:
        raise ConfigError(f"parameters {sorted(overlap)} appear in both axes and fixed")

    out = doc.get("out")
    if out is not None and not isinstance(out, str):
        raise ConfigError("out: expected a path string")
    fmt = doc.get("format", "json" if command == "verify" else "csv")
    if command == "verify":
        if fmt != "json":
            raise ConfigError("verify reports are JSON only")
    elif fmt not in ("csv", "json"):
        raise ConfigError(f"format: expected 'csv' or 'json', got {fmt!r}")

    seed = doc.get("seed", 1)
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise ConfigError("seed: expected an integer")
    count = doc.get("count", 1000)
    if not isinstance(count, int) or isinstance(count, bool) or count < 1:
        raise ConfigError("count: expected an integer >= 1")

    return SweepConfig(scenario=scenario, axes=axes, fixed=fixed, out=out,
                       format=fmt, seed=seed, count=count)


def _rec(scenario: str, **values: object) -> dict:
    row = {c: None for c in COLUMNS}
    row["scenario"] = scenario
    row["sentinel"] = False
    row.update(values)
    return row


def _axis(config: SweepConfig, name: str, default: list[float]) -> list[float]:
    return config.axes.get(name, default)


def _fixed(config: SweepConfig, name: str, default: float) -> float:
    value = config.fixed.get(name, default)
    return float(value)  # type: ignore[arg-type]


def _lin(lo: float, hi: float, count: int) -> list[float]:
    return [float(x) for x in np.linspace(lo, hi, count)]


def _log(lo: float, hi: float, count: int) -> list[float]:
    return [float(x) for x in np.logspace(math.log10(lo), math.log10(hi), count)]


def _hybrid_map(config: SweepConfig) -> list[dict]:
    n = _fixed(config, "n", 10.0)
    rhos = _axis(config, "rho", _lin(0.0, 1.0, 101))
    phis = _axis(config, "phi", _lin(0.0, _TWO_PI, 361))
    records = []
    # Grid rows carry the plotted quantity n * sigma^2.
    for rho in rhos:
        for phi in phis:
            try:
                res = sigma_hybrid(n, rho, phi)
            except DomainError:
                records.append(_rec("hybrid-map", n=n, rho=rho, phi=phi, sentinel=True))
            else:
                records.append(_rec("hybrid-map", n=n, rho=rho, phi=phi,
                                    sigma2=n * res.variance))
    for rho in rhos:
        phase, best = numeric_phi_min(lambda p: sigma_hybrid(n, rho, p).variance,
                                      (0.0, _TWO_PI))
        records.append(_rec("hybrid-map", n=n, rho=rho, phi_min=phase,
                            sigma2_min=n * best))
    return records


def _fisher_surface(config: SweepConfig) -> list[dict]:
    t_s = _fixed(config, "t_s", 0.8)
    ns = _axis(config, "n", _log(0.1, 1e4, 60))
    tis = _axis(config, "t_i", _lin(0.05, 0.95, 91))
    records = []
    for n in ns:
        for t_i in tis:
            res = sigma_min_thermal(yurke_fringe(n, n, t_s, t_i), photons=n)
            records.append(_rec("fisher-surface", n=n, t_s=t_s, t_i=t_i,
                                phi_min=res.phase, sigma2_min=res.variance,
                                fisher=res.fisher, fisher_norm=res.normalized_fisher))
    return records


def _fisher_vs_n(config: SweepConfig) -> list[dict]:
    t_s = _fixed(config, "t_s", 0.8)
    tis = _axis(config, "t_i", [0.8, 0.7])
    ns = _axis(config, "n", _log(0.1, 1e4, 120))
    records = []
    for t_i in tis:
        for n in ns:
            fringe = yurke_fringe(n, n, t_s, t_i)
            opt = sigma_min_thermal(fringe, photons=n)
            records.append(_rec("fisher-vs-n", n=n, t_s=t_s, t_i=t_i,
                                phi_min=opt.phase, sigma2_min=opt.variance,
                                fisher=opt.fisher, fisher_norm=opt.normalized_fisher))
            for phi in _FIXED_PHASES:
                res = sigma_thermal(fringe, phi, photons=n)
                records.append(_rec("fisher-vs-n", n=n, t_s=t_s, t_i=t_i, phi=phi,
                                    sigma2=res.variance, fisher=res.fisher,
                                    fisher_norm=res.normalized_fisher))
    return records


_REF_TAGS = ("ref-constant", "ref-shot", "ref-heisenberg")


def _reference_rows(scenario: str, t_s: float, t_i: float, ns: list[float]) -> list[dict]:
    hg = yurke_highgain(t_s, t_i)
    terms = (hg.constant_term, hg.inverse_n_term, hg.inverse_n2_term)
    records = []
    for tag, coeff, power in zip(_REF_TAGS, terms, (0, 1, 2)):
        if coeff == 0.0:
            continue
        for n in ns:
            records.append(_rec(f"{scenario}:{tag}", n=n, t_s=t_s, t_i=t_i,
                                sigma2=coeff / n ** power))
    return records


def _scaling(config: SweepConfig) -> list[dict]:
    t_s = _fixed(config, "t_s", 0.9)
    tis = _axis(config, "t_i", [0.9, 0.85])
    ns = _axis(config, "n", _log(0.1, 1e4, 120))
    records = []
    for t_i in tis:
        for n in ns:
            res = sigma_min_thermal(yurke_fringe(n, n, t_s, t_i), photons=n)
            records.append(_rec("scaling", n=n, t_s=t_s, t_i=t_i,
                                phi_min=res.phase, sigma2_min=res.variance))
    for t_i in tis:
        records.extend(_reference_rows("scaling", t_s, t_i, ns))
    return records


def _compare(config: SweepConfig) -> list[dict]:
    t_s = _fixed(config, "t_s", 0.8)
    t_i = _fixed(config, "t_i", 0.7)
    t_bal = _fixed(config, "t_s", 0.8)
    ns = _axis(config, "n", _log(0.1, 1e4, 120))
    records = []
    for n in ns:
        res = sigma_min_thermal(yurke_fringe(n, n, t_s, t_i), photons=n)
        records.append(_rec("compare:yurke", n=n, t_s=t_s, t_i=t_i,
                            phi_min=res.phase, sigma2_min=res.variance))
    for n in ns:
        res = sigma_diff(n, t_s, t_i, math.pi / 2.0)
        records.append(_rec("compare:mandel", n=n, t_s=t_s, t_i=t_i,
                            phi=res.phase, sigma2=res.variance))
    for n in ns:
        res = sigma_min_thermal(yurke_fringe(n, n, t_bal, t_bal), photons=n)
        records.append(_rec("compare:yurke-balanced", n=n, t_s=t_bal, t_i=t_bal,
                            phi_min=res.phase, sigma2_min=res.variance))
    floor = yurke_highgain(t_s, t_i).constant_term
    if floor > 0.0:
        for n in ns:
            records.append(_rec("compare:ref-floor", n=n, t_s=t_s, t_i=t_i, sigma2=floor))
    return records


def _grid_points(config: SweepConfig) -> Iterator[dict[str, float]]:
    names = list(config.axes)
    values = [config.axes[name] for name in names]

    def walk(k: int, point: dict[str, float]) -> Iterator[dict[str, float]]:
        if k == len(names):
            yield dict(point)
            return
        for v in values[k]:
            point[names[k]] = v
            yield from walk(k + 1, point)

    yield from walk(0, {})


def _gains(params: dict) -> tuple[float, float, Optional[float]]:
    if "n" in params:
        n = float(params["n"])
        return n, n, n
    try:
        return float(params["v_a"]), float(params["v_b"]), None
    except KeyError as exc:
        raise ConfigError("custom sweeps need either n or both v_a and v_b") from exc


def _custom_point(params: dict) -> dict:
    variant = params.get("variant")
    if variant not in VARIANT_CHOICES:
        raise ConfigError("custom sweeps require fixed.variant")
    v_a, v_b, n = _gains(params)
    t_s = float(params.get("t_s", 1.0))
    t_i = float(params.get("t_i", 1.0))
    phi = params.get("phi")
    row = _rec("custom", n=n, t_s=t_s, t_i=t_i, phi=phi,
               v_a=None if n is not None else v_a,
               v_b=None if n is not None else v_b)

    if variant in ("yurke", "mandel"):
        fringe = yurke_fringe(v_a, v_b, t_s, t_i) if variant == "yurke" \
            else mandel_fringe(v_a, v_b, t_s, t_i)
        row["contrast"] = fringe.contrast
        if phi is not None:
            row["n_s"] = fringe.mean(phi)
            row["variance"] = thermal_variance(row["n_s"])
        try:
            opt = sigma_min_thermal(fringe)
            row["phi_min"], row["sigma2_min"] = opt.phase, opt.variance
            if phi is not None:
                res = sigma_thermal(fringe, phi)
                row["sigma2"], row["fisher"] = res.variance, res.fisher
            else:
                row["fisher"] = opt.fisher
        except DomainError:
            row["sentinel"] = True
    elif variant == "mandel-diff":
        total, diff = mandel_sum_diff(v_a, v_b, t_s, t_i)
        row["n_plus"] = total.baseline
        if phi is not None:
            row["n_minus"] = diff.mean(phi)
            row["variance"] = row["n_plus"] + row["n_minus"] ** 2 \
                + 2.0 * v_a * v_b * t_s * (1.0 - t_i)
        try:
            slope_sq = (diff.amplitude * math.sin(math.pi / 2.0)) ** 2
            if diff.amplitude == 0.0:
                raise DomainError("no difference fringe")
            best = (row["n_plus"] + 2.0 * v_a * v_b * t_s * (1.0 - t_i)) / slope_sq
            row["phi_min"], row["sigma2_min"] = math.pi / 2.0, best
            if phi is not None:
                slope = diff.slope(phi)
                if abs(slope) < 1e-12 * diff.amplitude:
                    raise DomainError("vanishing slope")
                row["sigma2"] = row["variance"] / (slope * slope)
                row["fisher"] = 1.0 / row["sigma2"]
            else:
                row["fisher"] = 1.0 / best
        except DomainError:
            row["sentinel"] = True
    else:  # hybrid
        if "rho" not in params:
            raise ConfigError("hybrid sweeps require rho (axis or fixed)")
        if n is None:
            raise ConfigError("hybrid sweeps are equal-gain; specify n")
        rho = float(params["rho"])
        row["rho"] = rho
        total, diff = hybrid_fringes(n, rho)
        if phi is not None:
            row["n_plus"] = total.mean(phi)
            row["n_minus"] = diff.mean(phi)
            row["variance"] = row["n_plus"] + row["n_minus"] ** 2
        try:
            phase, best = numeric_phi_min(lambda p: sigma_hybrid(n, rho, p).variance,
                                          (0.0, _TWO_PI))
            row["phi_min"], row["sigma2_min"] = phase, best
            if phi is not None:
                res = sigma_hybrid(n, rho, phi)
                row["sigma2"], row["fisher"] = res.variance, res.fisher
            else:
                row["fisher"] = 1.0 / best
        except DomainError:
            row["sentinel"] = True
    if n is not None and row["fisher"] is not None and n > 0.0:
        row["fisher_norm"] = row["fisher"] / n
    return row


def _custom(config: SweepConfig) -> list[dict]:
    records = []
    if config.axes:
        for point in _grid_points(config):
            records.append(_custom_point({**config.fixed, **point}))
    else:
        records.append(_custom_point(dict(config.fixed)))
    return records


_SCENARIO_FUNCS = {
    "hybrid-map": _hybrid_map,
    "fisher-surface": _fisher_surface,
    "fisher-vs-n": _fisher_vs_n,
    "scaling": _scaling,
    "compare": _compare,
    "custom": _custom,
}


def run_sweep(config: SweepConfig) -> list[dict]:
    """Evaluate one sweep configuration into an ordered record list."""
    return _SCENARIO_FUNCS[config.scenario](config)


def _cell(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def records_to_csv(records: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in records:
        writer.writerow([_cell(row[c]) for c in COLUMNS])
    return buf.getvalue()


def records_to_json(records: list[dict], config: SweepConfig) -> str:
    doc = {
        "metadata": {
            "tool": "fringelab",
            "version": __version__,
            "seed": config.seed,
            "config": {
                "scenario": config.scenario,
                "axes": config.axes,
                "fixed": config.fixed,
                "format": config.format,
            },
        },
        "records": [{c: row[c] for c in COLUMNS} for row in records],
    }
    return json.dumps(doc, indent=2) + "\n"
