"""Figure rendering from sweep record tables.

Five jobs mirror the sweep scenarios: the hybrid phase-uncertainty map with
its margin of per-mixing minima, the normalized-Fisher surface, the
Fisher-versus-gain cuts, the loss-scaling curves and the Yurke/Mandel
comparison.  Rendering is read-only; sentinel-flagged records are masked,
never interpolated over.  SVG output carries no timestamps, so identical
inputs give identical bytes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "fringefig"

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)
import numpy as np  # noqa: E402

from .schema import MissingDataError, read_records  # noqa: E402

FIGURES = ("hybrid-map", "fisher-surface", "fisher-vs-n", "scaling", "compare")


@dataclass(frozen=True)
class FigureJob:
    figure: str
    input_csv: str
    output_image: str
    image_format: str = "png"
    log_axes: bool = True
    reference_lines: bool = True

    def __post_init__(self) -> None:
        if self.figure not in FIGURES:
            raise MissingDataError(f"unknown figure {self.figure!r}; expected one of {FIGURES}")
        if self.image_format not in ("png", "svg"):
            raise MissingDataError(f"image format must be png or svg, got {self.image_format!r}")


@dataclass
class RenderInfo:
    """What a render actually drew; used by callers to check placement."""

    figure: str
    records: int
    series_points: dict = field(default_factory=dict)
    reference_values: dict = field(default_factory=dict)
    margin_endpoints: tuple | None = None


def _require(records: list[dict], fields: tuple[str, ...], figure: str) -> list[dict]:
    rows = [r for r in records
            if not r["sentinel"] and all(r[f] is not None for f in fields)]
    if not rows:
        raise MissingDataError(f"no usable rows with {fields} for figure {figure!r}")
    return rows


def _pivot(rows: list[dict], x: str, y: str, z: str):
    xs = sorted({r[x] for r in rows})
    ys = sorted({r[y] for r in rows})
    xi = {v: k for k, v in enumerate(xs)}
    yi = {v: k for k, v in enumerate(ys)}
    grid = np.full((len(ys), len(xs)), np.nan)
    for r in rows:
        grid[yi[r[y]], xi[r[x]]] = r[z]
    return np.array(xs), np.array(ys), np.ma.masked_invalid(grid)


def _save(fig, job: FigureJob) -> None:
    if job.image_format == "svg":
        fig.savefig(job.output_image, format="svg", metadata={"Date": None})
    else:
        fig.savefig(job.output_image, format="png", dpi=150)
    plt.close(fig)


def _render_hybrid_map(job: FigureJob, records: list[dict]) -> RenderInfo:
    grid_rows = [r for r in records if r["phi"] is not None]
    margin_rows = [r for r in records
                   if r["phi"] is None and r["phi_min"] is not None
                   and r["sigma2_min"] is not None]
    usable = [r for r in grid_rows if not r["sentinel"] and r["sigma2"] is not None]
    if not usable or not margin_rows:
        raise MissingDataError("hybrid-map needs grid rows and margin rows")
    rhos, phis, grid = _pivot(usable, "rho", "phi", "sigma2")

    fig, (ax, margin) = plt.subplots(
        2, 1, figsize=(6.0, 7.0), sharex=True,
        gridspec_kw={"height_ratios": (3.0, 1.0), "hspace": 0.12})
    mesh = ax.pcolormesh(rhos, phis, grid, shading="nearest",
                         norm=matplotlib.colors.LogNorm())
    fig.colorbar(mesh, ax=ax, label="n sigma^2")
    margin_rows.sort(key=lambda r: r["rho"])
    ax.plot([r["rho"] for r in margin_rows], [r["phi_min"] for r in margin_rows],
            "w.", markersize=5)
    ax.set_ylabel("phase (rad)")

    margin_vals = [r["sigma2_min"] for r in margin_rows]
    margin.plot([r["rho"] for r in margin_rows], margin_vals, "k-")
    if job.log_axes:
        margin.set_yscale("log")
    margin.set_xlabel("mixing rho")
    margin.set_ylabel("min n sigma^2")
    _save(fig, job)
    return RenderInfo(job.figure, len(records),
                      series_points={"grid": len(usable), "margin": len(margin_rows)},
                      margin_endpoints=(margin_vals[0], margin_vals[-1]))


def _render_fisher_surface(job: FigureJob, records: list[dict]) -> RenderInfo:
    rows = _require(records, ("n", "t_i", "fisher_norm"), job.figure)
    ns, tis, grid = _pivot(rows, "n", "t_i", "fisher_norm")
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    mesh = ax.pcolormesh(ns, tis, grid, shading="nearest")
    fig.colorbar(mesh, ax=ax, label="F/n")
    if job.log_axes:
        ax.set_xscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("idler transmittance")
    _save(fig, job)
    return RenderInfo(job.figure, len(records), series_points={"surface": len(rows)})


def _render_fisher_vs_n(job: FigureJob, records: list[dict]) -> RenderInfo:
    rows = _require(records, ("n", "t_i", "fisher_norm"), job.figure)
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    series: dict = {}
    for t_i in sorted({r["t_i"] for r in rows}, reverse=True):
        opt = sorted((r for r in rows if r["t_i"] == t_i and r["phi"] is None),
                     key=lambda r: r["n"])
        if opt:
            ax.plot([r["n"] for r in opt], [r["fisher_norm"] for r in opt],
                    lw=2.2, label=f"optimal phase, T_i={t_i:g}")
            series[f"opt:{t_i:g}"] = len(opt)
        for phi in sorted({r["phi"] for r in rows
                           if r["t_i"] == t_i and r["phi"] is not None}):
            cut = sorted((r for r in rows if r["t_i"] == t_i and r["phi"] == phi),
                         key=lambda r: r["n"])
            ax.plot([r["n"] for r in cut], [r["fisher_norm"] for r in cut],
                    lw=0.8, alpha=0.7)
            series[f"phi:{t_i:g}:{phi:.4f}"] = len(cut)
    if job.log_axes:
        ax.set_xscale("log")
        ax.set_yscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("F/n")
    ax.legend(fontsize=8)
    _save(fig, job)
    return RenderInfo(job.figure, len(records), series_points=series)


_REF_STYLE = {"ref-constant": ("gray", "-"), "ref-shot": ("tab:blue", "--"),
              "ref-heisenberg": ("tab:red", ":"), "ref-floor": ("gray", "-")}


def _ref_series(records: list[dict]) -> dict:
    refs: dict = {}
    for r in records:
        tag = r["scenario"].split(":", 1)
        if len(tag) == 2 and tag[1].startswith("ref-") and r["sigma2"] is not None:
            refs.setdefault(tag[1], []).append(r)
    return refs


def _render_scaling(job: FigureJob, records: list[dict]) -> RenderInfo:
    data = [r for r in records if r["scenario"] == "scaling"
            and r["n"] is not None and r["sigma2_min"] is not None]
    if not data:
        raise MissingDataError("scaling needs scenario rows with sigma2_min")
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    info = RenderInfo(job.figure, len(records))
    for t_i in sorted({r["t_i"] for r in data}):
        sel = sorted((r for r in data if r["t_i"] == t_i), key=lambda r: r["n"])
        ax.plot([r["n"] for r in sel], [r["sigma2_min"] for r in sel],
                lw=2.0, label=f"T_i={t_i:g}")
        info.series_points[f"data:{t_i:g}"] = len(sel)
    if job.reference_lines:
        for tag, rows in sorted(_ref_series(records).items()):
            rows.sort(key=lambda r: (r["t_i"], r["n"]))
            color, style = _REF_STYLE[tag]
            ax.plot([r["n"] for r in rows], [r["sigma2"] for r in rows],
                    color=color, ls=style, lw=1.0)
            first = rows[0]
            power = {"ref-constant": 0, "ref-shot": 1, "ref-heisenberg": 2}[tag]
            info.reference_values[tag] = first["sigma2"] * first["n"] ** power
            info.series_points[tag] = len(rows)
    if job.log_axes:
        ax.set_xscale("log")
        ax.set_yscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("minimal sigma^2")
    ax.legend(fontsize=8)
    _save(fig, job)
    return info


def _render_compare(job: FigureJob, records: list[dict]) -> RenderInfo:
    labels = {"compare:yurke": ("k", 2.0, "Yurke, optimal"),
              "compare:mandel": ("tab:red", 2.0, "Mandel, differential"),
              "compare:yurke-balanced": ("tab:blue", 1.2, "Yurke, balanced loss")}
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    info = RenderInfo(job.figure, len(records))
    drew = False
    for tag, (color, width, label) in labels.items():
        sel = sorted((r for r in records if r["scenario"] == tag), key=lambda r: r["n"])
        values = [(r["n"], r["sigma2_min"] if r["sigma2_min"] is not None else r["sigma2"])
                  for r in sel]
        values = [(n, v) for n, v in values if v is not None]
        if values:
            drew = True
            ax.plot([n for n, _ in values], [v for _, v in values],
                    color=color, lw=width,
                    ls="--" if tag == "compare:yurke-balanced" else "-", label=label)
            info.series_points[tag] = len(values)
    if not drew:
        raise MissingDataError("compare needs compare:* series rows")
    if job.reference_lines:
        for tag, rows in _ref_series(records).items():
            rows.sort(key=lambda r: r["n"])
            color, style = _REF_STYLE[tag]
            ax.plot([r["n"] for r in rows], [r["sigma2"] for r in rows],
                    color=color, ls=style, lw=1.0)
            info.reference_values[tag] = rows[0]["sigma2"]
            info.series_points[tag] = len(rows)
    if job.log_axes:
        ax.set_xscale("log")
        ax.set_yscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("minimal sigma^2")
    ax.legend(fontsize=8)
    _save(fig, job)
    return info


_RENDERERS = {
    "hybrid-map": _render_hybrid_map,
    "fisher-surface": _render_fisher_surface,
    "fisher-vs-n": _render_fisher_vs_n,
    "scaling": _render_scaling,
    "compare": _render_compare,
}


def render(job: FigureJob) -> RenderInfo:
    """Validate the input table and render one figure to the output path."""
    records = read_records(job.input_csv)
    return _RENDERERS[job.figure](job, records)
