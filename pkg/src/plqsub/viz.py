"""Primal / dual / subdifferential views and their SVG, CSV and JSON export.

The primal view draws the function with its two ε-support lines through the
point (x̄, f(x̄) - ε); the dual view draws the conjugate, the affine minorant
l_x̄ and the green coincidence segment where ``min(f*, l_x̄)`` equals ``f*``
(that slope interval *is* the ε-subdifferential); the subdifferential view
draws the sampled interval endpoints along a parameter grid with the current
query highlighted.

All sampling is deterministic (default 512 points per curve) and the SVG is a
pure function of its inputs, so exports are byte-stable.  Every drawn element
lives in a group whose transform maps data coordinates to screen coordinates;
the element coordinates themselves are raw data values, which makes figures
checkable numerically straight from the file.  Colors: function red, minorant
solid black, support lines dashed black, coincidence segment green.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .core import PlqFunction, domain, eval_at, eval_grid
from .epssub import EpsQuery, EpsSubdiffResult, eps_subdifferential
from .extreal import DEFAULT_TOL, INF, NINF, fmt_g, is_finite
from .sweep import SubdiffGraph, graph_to_csv, graph_to_json, sweep_eps, sweep_x

CURVE_SAMPLES = 512
GRAPH_POINTS = 101

PANEL_W = 320.0
PANEL_H = 300.0
PANEL_GAP = 20.0
TOP = 40.0
BOTTOM = 16.0


@dataclass(frozen=True)
class Series:
    """A sampled curve; non-finite ys mark gaps (outside the domain)."""

    xs: tuple[float, ...]
    ys: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.xs) != len(self.ys):
            raise ValueError("xs and ys must have equal length")


def _range_ok(r: tuple[float, float]) -> bool:
    lo, hi = r
    return is_finite(lo) and is_finite(hi) and lo < hi


@dataclass(frozen=True)
class ViewWindow:
    """Finite plot ranges for the three views."""

    primal_x: tuple[float, float]
    primal_y: tuple[float, float]
    dual_s: tuple[float, float]
    dual_y: tuple[float, float]
    graph_param: tuple[float, float]
    graph_s: tuple[float, float]

    def __post_init__(self) -> None:
        for name in ("primal_x", "primal_y", "dual_s", "dual_y", "graph_param", "graph_s"):
            r = tuple(float(v) for v in getattr(self, name))
            object.__setattr__(self, name, r)
            if not _range_ok(r):
                raise ValueError(f"degenerate window range {name}={r}")

    def union(self, other: "ViewWindow") -> "ViewWindow":
        def u(a, b):
            return (min(a[0], b[0]), max(a[1], b[1]))

        return ViewWindow(
            u(self.primal_x, other.primal_x),
            u(self.primal_y, other.primal_y),
            u(self.dual_s, other.dual_s),
            u(self.dual_y, other.dual_y),
            u(self.graph_param, other.graph_param),
            u(self.graph_s, other.graph_s),
        )


@dataclass(frozen=True)
class ViewBundle:
    """Everything needed to draw one query: curves, lines, graph, metadata.

    The support-line slopes and the echoed endpoints are exactly the interval
    returned by the ε-subdifferential computation; nothing is recomputed in
    this layer.
    """

    x_bar: float
    eps: float
    v_lo: float
    v_hi: float
    anchor: tuple[float, float]
    primal: Series
    dual_conj: Series
    dual_minorant: Series
    coincidence: Series
    graph: SubdiffGraph
    window: ViewWindow

    def to_dict(self) -> dict:
        def enc(v: float):
            if v == INF:
                return "inf"
            if v == NINF:
                return "-inf"
            return v

        return {
            "x_bar": self.x_bar,
            "eps": self.eps,
            "v_lo": enc(self.v_lo),
            "v_hi": enc(self.v_hi),
            "anchor": list(self.anchor),
            "primal": {"xs": list(self.primal.xs), "ys": [enc(y) for y in self.primal.ys]},
            "dual_conj": {"xs": list(self.dual_conj.xs), "ys": [enc(y) for y in self.dual_conj.ys]},
            "dual_minorant": {"xs": list(self.dual_minorant.xs), "ys": list(self.dual_minorant.ys)},
            "coincidence": {"xs": list(self.coincidence.xs), "ys": [enc(y) for y in self.coincidence.ys]},
            "graph": {
                "axis": self.graph.axis,
                "samples": [[s[0], enc(s[1]), enc(s[2])] for s in self.graph.samples],
                "skipped": list(self.graph.skipped),
            },
            "window": {
                "primal_x": list(self.window.primal_x),
                "primal_y": list(self.window.primal_y),
                "dual_s": list(self.window.dual_s),
                "dual_y": list(self.window.dual_y),
                "graph_param": list(self.window.graph_param),
                "graph_s": list(self.window.graph_s),
            },
        }

    @staticmethod
    def from_dict(doc: dict) -> "ViewBundle":
        def dec(v):
            if v == "inf":
                return INF
            if v == "-inf":
                return NINF
            return float(v)

        def series(d):
            return Series(tuple(float(x) for x in d["xs"]), tuple(dec(y) for y in d["ys"]))

        g = doc["graph"]
        w = doc["window"]
        return ViewBundle(
            x_bar=float(doc["x_bar"]),
            eps=float(doc["eps"]),
            v_lo=dec(doc["v_lo"]),
            v_hi=dec(doc["v_hi"]),
            anchor=(float(doc["anchor"][0]), float(doc["anchor"][1])),
            primal=series(doc["primal"]),
            dual_conj=series(doc["dual_conj"]),
            dual_minorant=series(doc["dual_minorant"]),
            coincidence=series(doc["coincidence"]),
            graph=SubdiffGraph(
                g["axis"],
                tuple((float(p), dec(lo), dec(hi)) for p, lo, hi in g["samples"]),
                tuple(float(p) for p in g["skipped"]),
            ),
            window=ViewWindow(
                tuple(w["primal_x"]),
                tuple(w["primal_y"]),
                tuple(w["dual_s"]),
                tuple(w["dual_y"]),
                tuple(w["graph_param"]),
                tuple(w["graph_s"]),
            ),
        )


# ---------------------------------------------------------------------------
# window selection


def _padded(values: Sequence[float], frac: float = 0.35, least: float = 1.0) -> tuple[float, float]:
    lo, hi = min(values), max(values)
    span = hi - lo
    pad = max(least, frac * span)
    return lo - pad, hi + pad


def auto_window(
    f: PlqFunction,
    q: EpsQuery,
    result: EpsSubdiffResult,
    graph_axis: str = "x",
) -> ViewWindow:
    """Deterministic default window covering the function and the query."""
    fin_breaks = [b for b in f.breaks if is_finite(b)]
    primal_x = _padded(fin_breaks + [q.x_bar])

    fx = eval_at(f, q.x_bar)
    anchor_y = fx - q.eps
    vals = eval_grid(f, np.linspace(primal_x[0], primal_x[1], 257))
    fin = vals[np.isfinite(vals)]
    ys = [anchor_y, fx] + (list(fin) if fin.size else [])
    primal_y = _padded(ys, frac=0.15, least=0.5)

    fc = result.f_conj
    v_lo, v_hi = result.interval.lo, result.interval.hi
    s_pts = [b for b in fc.breaks if is_finite(b)]
    s_pts += [v for v in (v_lo, v_hi) if is_finite(v)]
    s_pts.append(0.0)
    dual_s = _padded(s_pts)

    s_grid = np.linspace(dual_s[0], dual_s[1], 257)
    cvals = eval_grid(fc, s_grid)
    cfin = cvals[np.isfinite(cvals)]
    lvals = q.eps - fx + q.x_bar * s_grid
    dys = list(lvals) + (list(cfin) if cfin.size else [])
    dual_y = _padded(dys, frac=0.15, least=0.5)

    if graph_axis == "x":
        graph_param = primal_x
    else:
        graph_param = (max(1e-9, 0.05 * q.eps), 2.0 * q.eps)
    return ViewWindow(primal_x, primal_y, dual_s, dual_y, graph_param, dual_s)


# ---------------------------------------------------------------------------
# rendering


def render_views(
    f: PlqFunction,
    q: EpsQuery,
    window: ViewWindow | None = None,
    *,
    curve_samples: int = CURVE_SAMPLES,
    graph_points: int = GRAPH_POINTS,
    graph_axis: str = "x",
) -> ViewBundle:
    """Assemble the three views for one query.

    ``window=None`` selects :func:`auto_window`.  A degenerate explicit
    window raises ``ValueError``.
    """
    if graph_axis not in ("x", "eps"):
        raise ValueError("graph_axis must be 'x' or 'eps'")
    result = eps_subdifferential(f, q)
    if window is None:
        window = auto_window(f, q, result, graph_axis)

    fx = eval_at(f, q.x_bar)
    anchor = (q.x_bar, fx - q.eps)
    v_lo, v_hi = result.interval.lo, result.interval.hi

    xs = np.linspace(window.primal_x[0], window.primal_x[1], curve_samples)
    primal = Series(tuple(xs.tolist()), tuple(eval_grid(f, xs).tolist()))

    ss = np.linspace(window.dual_s[0], window.dual_s[1], curve_samples)
    dual_conj = Series(tuple(ss.tolist()), tuple(eval_grid(result.f_conj, ss).tolist()))
    lvals = q.eps - fx + q.x_bar * ss
    dual_minorant = Series(tuple(ss.tolist()), tuple(lvals.tolist()))

    coincidence = _coincidence_series(result, window, curve_samples)

    if graph_axis == "x":
        grid = np.linspace(window.graph_param[0], window.graph_param[1], graph_points)
        graph = sweep_x(f, q.eps, grid, q.tol)
    else:
        lo = max(window.graph_param[0], 1e-12)
        grid = np.linspace(lo, window.graph_param[1], graph_points)
        graph = sweep_eps(f, q.x_bar, grid, q.tol)

    return ViewBundle(
        x_bar=q.x_bar,
        eps=q.eps,
        v_lo=v_lo,
        v_hi=v_hi,
        anchor=anchor,
        primal=primal,
        dual_conj=dual_conj,
        dual_minorant=dual_minorant,
        coincidence=coincidence,
        graph=graph,
        window=window,
    )


def _coincidence_series(
    result: EpsSubdiffResult, window: ViewWindow, samples: int
) -> Series:
    """f* sampled over [v_lo, v_hi] ∩ dom f*, clipped to the window."""
    fc = result.f_conj
    dom = domain(fc)
    lo = max(result.interval.lo, dom.lo if dom else NINF, window.dual_s[0])
    hi = min(result.interval.hi, dom.hi if dom else INF, window.dual_s[1])
    if not (is_finite(lo) and is_finite(hi)) or lo > hi:
        return Series((), ())
    ss = np.linspace(lo, hi, samples)
    return Series(tuple(ss.tolist()), tuple(eval_grid(fc, ss).tolist()))


# ---------------------------------------------------------------------------
# SVG


def _fmt(v: float) -> str:
    return repr(float(v))


def _polylines(xs, ys, clamp: tuple[float, float] | None = None) -> list[str]:
    """Split a sampled curve at non-finite values into point strings."""
    chunks: list[str] = []
    run: list[str] = []
    for x, y in zip(xs, ys):
        if not math.isfinite(y):
            if clamp is not None and y == INF:
                y = clamp[1]
            elif clamp is not None and y == NINF:
                y = clamp[0]
            else:
                if len(run) >= 2:
                    chunks.append(" ".join(run))
                run = []
                continue
        run.append(f"{_fmt(x)},{_fmt(y)}")
    if len(run) >= 2:
        chunks.append(" ".join(run))
    return chunks


class _Panel:
    """One screen panel with a data-coordinate group."""

    def __init__(self, origin_x: float, xr: tuple[float, float], yr: tuple[float, float], pid: str):
        self.ox = origin_x
        self.xr = xr
        self.yr = yr
        self.pid = pid
        self.body: list[str] = []

    def line(self, pid, x1, y1, x2, y2, stroke, dash=None, width=1.5):
        d = f' stroke-dasharray="{dash}"' if dash else ""
        self.body.append(
            f'<line id="{pid}" x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}"'
            f' stroke="{stroke}" stroke-width="{width}"{d} vector-effect="non-scaling-stroke"/>'
        )

    def polyline(self, pid, points, stroke, width=1.5):
        for j, pts in enumerate(points):
            suffix = "" if len(points) == 1 else f"-{j}"
            self.body.append(
                f'<polyline id="{pid}{suffix}" points="{pts}" fill="none" stroke="{stroke}"'
                f' stroke-width="{width}" vector-effect="non-scaling-stroke"/>'
            )

    def circle(self, pid, cx, cy, fill):
        # radius in data units would distort; draw as a tiny fixed-size marker
        self.body.append(
            f'<circle id="{pid}" cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="0.001" fill="none"'
            f' stroke="{fill}" stroke-width="7" vector-effect="non-scaling-stroke"/>'
        )

    def emit(self, title: str) -> str:
        xlo, xhi = self.xr
        ylo, yhi = self.yr
        sx = PANEL_W / (xhi - xlo)
        sy = PANEL_H / (yhi - ylo)
        tx = self.ox - sx * xlo
        ty = TOP + sy * yhi
        clip_id = f"clip-{self.pid}"
        parts = [
            f'<g id="{self.pid}">',
            f'<clipPath id="{clip_id}"><rect x="{_fmt(self.ox)}" y="{_fmt(TOP)}"'
            f' width="{_fmt(PANEL_W)}" height="{_fmt(PANEL_H)}"/></clipPath>',
            f'<rect x="{_fmt(self.ox)}" y="{_fmt(TOP)}" width="{_fmt(PANEL_W)}"'
            f' height="{_fmt(PANEL_H)}" fill="white" stroke="#888" stroke-width="1"/>',
            f'<text x="{_fmt(self.ox + 4)}" y="{_fmt(TOP - 8)}" font-family="monospace"'
            f' font-size="13">{title}</text>',
            f'<g clip-path="url(#{clip_id})">',
            f'<g id="{self.pid}-data" transform="translate({_fmt(tx)} {_fmt(ty)})'
            f' scale({_fmt(sx)} {_fmt(-sy)})">',
            *self.body,
            "</g>",
            "</g>",
            "</g>",
        ]
        return "\n".join(parts)


def _support_line(panel: _Panel, pid: str, slope: float, anchor: tuple[float, float]) -> None:
    ax, ay = anchor
    xlo, xhi = panel.xr
    ylo, yhi = panel.yr
    if is_finite(slope):
        panel.line(pid, xlo, ay + slope * (xlo - ax), xhi, ay + slope * (xhi - ax), "black", dash="6 4")
    else:
        # an infinite endpoint renders as a vertical line clipped at the window
        panel.line(pid, ax, ylo, ax, yhi, "black", dash="6 4")


def bundle_to_svg(bundle: ViewBundle) -> str:
    """Deterministic standalone SVG with the three views as separate groups."""
    w = bundle.window
    total_w = 3 * PANEL_W + 4 * PANEL_GAP
    total_h = TOP + PANEL_H + BOTTOM

    meta = json.dumps(
        {
            "x_bar": bundle.x_bar,
            "eps": bundle.eps,
            "v_lo": "-inf" if bundle.v_lo == NINF else bundle.v_lo,
            "v_hi": "inf" if bundle.v_hi == INF else bundle.v_hi,
            "anchor": list(bundle.anchor),
        },
        sort_keys=True,
    )

    primal = _Panel(PANEL_GAP, w.primal_x, w.primal_y, "primal")
    primal.polyline("primal-curve", _polylines(bundle.primal.xs, bundle.primal.ys), "red")
    _support_line(primal, "primal-support-lo", bundle.v_lo, bundle.anchor)
    _support_line(primal, "primal-support-hi", bundle.v_hi, bundle.anchor)
    primal.circle("primal-anchor", bundle.anchor[0], bundle.anchor[1], "red")

    dual = _Panel(2 * PANEL_GAP + PANEL_W, w.dual_s, w.dual_y, "dual")
    dual.polyline("dual-conj", _polylines(bundle.dual_conj.xs, bundle.dual_conj.ys), "red")
    dual.polyline("dual-minorant", _polylines(bundle.dual_minorant.xs, bundle.dual_minorant.ys), "black")
    if bundle.coincidence.xs:
        dual.polyline("dual-coincidence", _polylines(bundle.coincidence.xs, bundle.coincidence.ys), "green", width=3)

    graph = _Panel(3 * PANEL_GAP + 2 * PANEL_W, w.graph_param, w.graph_s, "graph")
    if bundle.graph.samples:
        ps = [s[0] for s in bundle.graph.samples]
        los = [s[1] for s in bundle.graph.samples]
        his = [s[2] for s in bundle.graph.samples]
        graph.polyline("graph-lo", _polylines(ps, los, clamp=w.graph_s), "red")
        graph.polyline("graph-hi", _polylines(ps, his, clamp=w.graph_s), "red")
    qp = bundle.x_bar if bundle.graph.axis == "x" else bundle.eps
    g_lo = w.graph_s[0] if bundle.v_lo == NINF else bundle.v_lo
    g_hi = w.graph_s[1] if bundle.v_hi == INF else bundle.v_hi
    graph.line("graph-query", qp, g_lo, qp, g_hi, "green", width=3)

    header = (
        f'x̄={fmt_g(bundle.x_bar)}  ε={fmt_g(bundle.eps)}  '
        f'∂εf(x̄)=[{fmt_g(bundle.v_lo)}, {fmt_g(bundle.v_hi)}]'
    )
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(total_w)}"'
        f' height="{_fmt(total_h)}" viewBox="0 0 {_fmt(total_w)} {_fmt(total_h)}">',
        f"<metadata>{meta}</metadata>",
        f'<text x="{_fmt(PANEL_GAP)}" y="16" font-family="monospace" font-size="13">{header}</text>',
        primal.emit("primal"),
        dual.emit("dual"),
        graph.emit("subdifferential"),
        "</svg>",
    ]
    return "\n".join(parts) + "\n"


def graph_to_svg(graph: SubdiffGraph) -> str:
    """Single-panel SVG of a sampled multifunction graph."""
    if not graph.samples:
        raise ValueError("cannot render an empty graph")
    ps = [s[0] for s in graph.samples]
    fin = [v for s in graph.samples for v in s[1:] if is_finite(v)]
    if not fin:
        fin = [-1.0, 1.0]
    xr = _padded(ps, frac=0.05, least=0.1)
    yr = _padded(fin, frac=0.1, least=0.5)
    panel = _Panel(PANEL_GAP, xr, yr, "graph")
    los = [s[1] for s in graph.samples]
    his = [s[2] for s in graph.samples]
    panel.polyline("graph-lo", _polylines(ps, los, clamp=yr), "red")
    panel.polyline("graph-hi", _polylines(ps, his, clamp=yr), "red")
    total_w = PANEL_W + 2 * PANEL_GAP
    total_h = TOP + PANEL_H + BOTTOM
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(total_w)}"'
        f' height="{_fmt(total_h)}" viewBox="0 0 {_fmt(total_w)} {_fmt(total_h)}">',
        panel.emit(f"subdifferential ({graph.axis}-sweep)"),
        "</svg>",
    ]
    return "\n".join(parts) + "\n"


# ---------------------------------------------------------------------------
# export and animation


def bundle_to_json(bundle: ViewBundle) -> str:
    return json.dumps(bundle.to_dict())


def bundle_from_json(text: str) -> ViewBundle:
    return ViewBundle.from_dict(json.loads(text))


def bundle_to_csv(bundle: ViewBundle) -> str:
    """Raw samples as ``series,x,y`` rows."""
    from .extreal import format_ext

    lines = ["series,x,y"]

    def rows(name: str, xs, ys):
        for x, y in zip(xs, ys):
            lines.append(f"{name},{format_ext(x)},{format_ext(y)}")

    rows("f", bundle.primal.xs, bundle.primal.ys)
    rows("conjugate", bundle.dual_conj.xs, bundle.dual_conj.ys)
    rows("minorant", bundle.dual_minorant.xs, bundle.dual_minorant.ys)
    rows("coincidence", bundle.coincidence.xs, bundle.coincidence.ys)
    for p, lo, hi in bundle.graph.samples:
        rows("graph-lo", [p], [lo])
        rows("graph-hi", [p], [hi])
    return "\n".join(lines) + "\n"


def export(obj: ViewBundle | SubdiffGraph, fmt: str, path: str | Path) -> Path:
    """Write ``obj`` to ``path`` in ``svg``, ``csv`` or ``json`` form."""
    if fmt not in ("svg", "csv", "json"):
        raise ValueError(f"unsupported format {fmt!r}")
    if isinstance(obj, ViewBundle):
        text = {"svg": bundle_to_svg, "csv": bundle_to_csv, "json": bundle_to_json}[fmt](obj)
    elif isinstance(obj, SubdiffGraph):
        text = {"svg": graph_to_svg, "csv": graph_to_csv, "json": graph_to_json}[fmt](obj)
    else:
        raise TypeError(f"cannot export {type(obj).__name__}")
    out = Path(path)
    if out.parent and not out.parent.exists():
        raise ValueError(f"output directory does not exist: {out.parent}")
    out.write_text(text, encoding="utf-8")
    return out


def animate(
    f: PlqFunction,
    *,
    axis: str,
    grid: Sequence[float],
    eps: float | None = None,
    x_bar: float | None = None,
    out_dir: str | Path,
    curve_samples: int = CURVE_SAMPLES,
    graph_points: int = GRAPH_POINTS,
    tol: float = DEFAULT_TOL,
) -> list[Path]:
    """Write one SVG frame per grid point with axes shared across frames.

    ``axis="x"`` varies the query point at fixed ``eps``; ``axis="eps"``
    varies ε at fixed ``x_bar``.  Returns the frame paths in grid order.
    """
    if axis not in ("x", "eps"):
        raise ValueError("axis must be 'x' or 'eps'")
    pts = [float(v) for v in grid]
    if not pts:
        raise ValueError("animation grid must not be empty")

    def query(p: float) -> EpsQuery:
        if axis == "x":
            if eps is None:
                raise ValueError("axis='x' requires eps")
            return EpsQuery(p, eps, tol)
        if x_bar is None:
            raise ValueError("axis='eps' requires x_bar")
        return EpsQuery(x_bar, p, tol)

    shared: ViewWindow | None = None
    for p in pts:
        q = query(p)
        res = eps_subdifferential(f, q)
        win = auto_window(f, q, res, graph_axis=axis)
        shared = win if shared is None else shared.union(win)
    assert shared is not None

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths: list[Path] = []
    for i, p in enumerate(pts):
        bundle = render_views(
            f,
            query(p),
            window=shared,
            curve_samples=curve_samples,
            graph_points=graph_points,
            graph_axis=axis,
        )
        paths.append(export(bundle, "svg", out / f"frame_{i:03d}.svg"))
    return paths
