"""Lattice diagrams of composition-series regions.

Text mode draws the ket window with one digit per lattice point counting
how many series layers contain it (deeper nesting = larger digit).  SVG
mode renders the same window with matplotlib, one translucent color per
layer, axes labeled by the weight coordinates, deterministically.
"""

from __future__ import annotations

import io

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

# stable element ids and no timestamps: byte-identical output per input
plt.rcParams["svg.hashsalt"] = "iqgt"

from .structure import AnalysisReport  # noqa: E402

_COLORS = ["#d62728", "#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd", "#8c564b"]


def _kets(report: AnalysisReport, window: int):
    if report.n == 3:
        return [(k,) for k in range(-window, window + 1)]
    rng = range(-window, window + 1)
    return [(kl, km) for kl in rng for km in rng]


def _depth(report: AnalysisReport, ket) -> int:
    return sum(1 for layer in report.series if layer.region.contains(ket))


def render_text(report: AnalysisReport, window: int = 4) -> str:
    lines = []
    if report.n == 3:
        row = []
        for k in range(-window, window + 1):
            d = _depth(report, (k,))
            row.append(str(d) if d else ".")
        lines.append("k_m: " + " ".join(f"{k:+d}" for k in
                                        range(-window, window + 1)))
        lines.append("     " + "  ".join(row))
    else:
        lines.append("rows k_m (top = +{0}), columns k_l".format(window))
        for km in range(window, -window - 1, -1):
            cells = []
            for kl in range(-window, window + 1):
                d = _depth(report, (kl, km))
                cells.append(str(d) if d else ".")
            lines.append(f"{km:+3d} | " + " ".join(cells))
        lines.append("      " + " ".join(
            "-" for _ in range(2 * window + 1)))
        lines.append("      " + " ".join(
            str(abs(kl) % 10) for kl in range(-window, window + 1)))
    lines.append("")
    if report.series:
        lines.append("layers (innermost first):")
        for layer in report.series:
            lines.append(f"  {layer.name}: {_region_text(layer)}")
    else:
        lines.append("irreducible: no proper nonzero submodule")
    return "\n".join(lines)


def _region_text(layer) -> str:
    parts = []
    for clause in layer.region.clauses:
        descs = []
        for c in clause:
            terms = []
            if c.a:
                terms.append(f"{c.a:+d}*k_l" if abs(c.a) != 1 else
                             ("k_l" if c.a == 1 else "-k_l"))
            if c.b:
                terms.append(f"{c.b:+d}*k_m" if abs(c.b) != 1 else
                             ("+k_m" if c.b == 1 else "-k_m"))
            descs.append(" ".join(terms).lstrip("+") + f" <= {c.c}")
        parts.append(" and ".join(descs) if descs else "all")
    return " or ".join(parts)


def render_svg(report: AnalysisReport, window: int = 4) -> str:
    fig, ax = plt.subplots(figsize=(6, 6) if report.n == 4 else (6, 1.8))
    if report.n == 4:
        xs = lambda ket: ket[0]
        ys = lambda ket: ket[1]
    else:
        xs = lambda ket: ket[0]
        ys = lambda ket: 0
    for t, layer in enumerate(report.series):
        col = _COLORS[t % len(_COLORS)]
        pts = [k for k in _kets(report, window) if layer.region.contains(k)]
        for ket in pts:
            ax.add_patch(plt.Rectangle(
                (xs(ket) - 0.5, ys(ket) - 0.5), 1, 1,
                facecolor=col, alpha=0.25, edgecolor="none"))
        ax.scatter([], [], marker="s", color=col, alpha=0.5, label=layer.name)
    allk = _kets(report, window)
    ax.scatter([xs(k) for k in allk], [ys(k) for k in allk],
               s=12, color="black", zorder=3)
    if report.n == 4:
        l0, m0 = report.params["l0"], report.params["m0"]
        ax.set_xlabel(f"l = {l0} + k_l")
        ax.set_ylabel(f"m = {m0} + k_m")
        ax.set_ylim(-window - 1, window + 1)
    else:
        l, m0 = report.params["l"], report.params["m0"]
        ax.set_xlabel(f"m = {m0} + k_m  (l = {l})")
        ax.set_yticks([])
        ax.set_ylim(-1, 1)
    ax.set_xlim(-window - 1, window + 1)
    ax.set_title("irreducible" if report.irreducible else
                 f"{report.case}, length {report.length}")
    if report.series:
        ax.legend(loc="upper left", fontsize=8)
    ax.set_aspect("equal" if report.n == 4 else "auto")
    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata={"Date": None})
    plt.close(fig)
    return buf.getvalue()


def render_diagram(report: AnalysisReport, fmt: str = "text",
                   window: int = 4) -> str:
    if fmt == "text":
        return render_text(report, window)
    if fmt == "svg":
        return render_svg(report, window)
    raise ValueError(f"unknown diagram format {fmt!r}")
