"""Static SVG pictures of rank-2 diagrams and fans."""

from __future__ import annotations

import io as _io

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .diagram import ScatteringDiagram  # noqa: E402
from .errors import RankUnsupported  # noqa: E402
from .fans import Fan  # noqa: E402

matplotlib.rcParams["svg.hashsalt"] = "scatlab"
matplotlib.rcParams["svg.fonttype"] = "none"


def wall_label(fn, max_terms: int = 3) -> str:
    """1 + c_1 zeta^{n} + ..., cut after ``max_terms`` terms."""
    n = ",".join(map(str, fn.normal))
    parts = ["1"]
    for ell, c in enumerate(fn.coeffs, start=1):
        if c == 0:
            continue
        mono = f"ζ^({n})" if ell == 1 else f"ζ^{ell}({n})"
        parts.append(mono if c == 1 else f"{c}·{mono}")
    if len(parts) > max_terms:
        parts = parts[:max_terms] + ["…"]
    return " + ".join(parts)


def _unit(v):
    x, y = float(v[0]), float(v[1])
    r = (x * x + y * y) ** 0.5
    return (x / r, y / r) if r else (0.0, 0.0)


def _axes():
    fig, ax = plt.subplots(figsize=(6, 6))
    ax.set_xlim(-1.3, 1.3)
    ax.set_ylim(-1.3, 1.3)
    ax.set_aspect("equal")
    ax.axhline(0, color="0.85", lw=0.6, zorder=0)
    ax.axvline(0, color="0.85", lw=0.6, zorder=0)
    ax.set_xlabel("f1")
    ax.set_ylabel("f2")
    return fig, ax


def _finish(fig) -> str:
    buf = _io.StringIO()
    fig.savefig(buf, format="svg", metadata={"Date": None})
    plt.close(fig)
    return buf.getvalue()


def render_diagram(D: ScatteringDiagram) -> str:
    if D.rank != 2:
        raise RankUnsupported("only rank-2 diagrams are rendered")
    fig, ax = _axes()
    for w in D.walls:
        label = wall_label(w.fn)
        gens = w.cone.generators
        for g in gens:
            ux, uy = _unit(g)
            ax.plot([0, ux], [0, uy], color="tab:blue", lw=1.2)
        if gens:
            ux, uy = _unit(gens[0])
            ax.annotate(label, (ux, uy), fontsize=7, ha="center",
                        xytext=(4 * ux, 4 * uy), textcoords="offset points")
    return _finish(fig)


def render_fan(fan: Fan) -> str:
    if fan.dim != 2:
        raise RankUnsupported("only two-dimensional fans are rendered")
    fig, ax = _axes()
    for c in fan.cones:
        if c.dimension == 1:
            for g in c.generators:
                ux, uy = _unit(g)
                ax.plot([0, ux], [0, uy], color="tab:red", lw=1.2)
    for i, c in enumerate(fan.maximal):
        p = c.relint_point()
        ux, uy = _unit(p)
        ax.text(0.6 * ux, 0.6 * uy, str(i), fontsize=8, ha="center", va="center")
    return _finish(fig)


def render(obj) -> str:
    if isinstance(obj, ScatteringDiagram):
        return render_diagram(obj)
    if isinstance(obj, Fan):
        return render_fan(obj)
    raise TypeError(f"cannot render {type(obj).__name__}")

