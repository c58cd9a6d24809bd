import json
import math
import xml.etree.ElementTree as ET

import pytest

from plqsub import EpsQuery, eps_subdifferential, eval_at, sweep_x
from plqsub.gallery import (
    AFFINE_LINE,
    HALF_PARABOLA_FLAT,
    LINE_THEN_PARABOLAS,
    RIGHT_WALL_AFFINE,
)
from plqsub.viz import (
    ViewWindow,
    animate,
    auto_window,
    bundle_from_json,
    bundle_to_csv,
    bundle_to_json,
    bundle_to_svg,
    export,
    render_views,
)

SVG_NS = "{http://www.w3.org/2000/svg}"


def svg_index(text):
    """Map element id -> element over the whole tree."""
    root = ET.fromstring(text)
    return {el.get("id"): el for el in root.iter() if el.get("id")}, root


def line_coords(el):
    return tuple(float(el.get(k)) for k in ("x1", "y1", "x2", "y2"))


# ---------------------------------------------------------------------------


def test_render_is_deterministic():
    q = EpsQuery(0.0, 1.0)
    a = bundle_to_svg(render_views(HALF_PARABOLA_FLAT, q))
    b = bundle_to_svg(render_views(HALF_PARABOLA_FLAT, q))
    assert a == b


def test_support_lines_pass_through_anchor_with_interval_slopes():
    q = EpsQuery(-1.0, 1.0)
    bundle = render_views(LINE_THEN_PARABOLAS, q)
    ids, _ = svg_index(bundle_to_svg(bundle))
    res = eps_subdifferential(LINE_THEN_PARABOLAS, q)
    ax, ay = bundle.anchor
    assert ay == eval_at(LINE_THEN_PARABOLAS, -1.0) - 1.0
    for el_id, slope in (
        ("primal-support-lo", res.interval.lo),
        ("primal-support-hi", res.interval.hi),
    ):
        x1, y1, x2, y2 = line_coords(ids[el_id])
        drawn = (y2 - y1) / (x2 - x1)
        assert drawn == pytest.approx(slope, rel=1e-9, abs=1e-9)
        # the line passes through the anchor point
        assert y1 + drawn * (ax - x1) == pytest.approx(ay, abs=1e-9)


def test_infinite_endpoint_renders_vertical_line():
    q = EpsQuery(1.0, 1.0)  # at the right wall, upper endpoint is +inf
    bundle = render_views(RIGHT_WALL_AFFINE, q)
    assert bundle.v_hi == math.inf
    ids, _ = svg_index(bundle_to_svg(bundle))
    x1, y1, x2, y2 = line_coords(ids["primal-support-hi"])
    assert x1 == x2 == 1.0 and y1 != y2


def test_coincidence_segment_matches_interval():
    q = EpsQuery(0.0, 1.0)
    bundle = render_views(HALF_PARABOLA_FLAT, q)
    res = eps_subdifferential(HALF_PARABOLA_FLAT, q)
    assert bundle.coincidence.xs[0] == pytest.approx(res.interval.lo, abs=1e-12)
    assert bundle.coincidence.xs[-1] == pytest.approx(res.interval.hi, abs=1e-12)
    # the segment rides on the conjugate
    for s, v in zip(bundle.coincidence.xs[::64], bundle.coincidence.ys[::64]):
        assert v == pytest.approx(eval_at(res.f_conj, s), abs=1e-12)


def test_view_layer_echoes_computation_exactly():
    q = EpsQuery(0.5, 1.0)
    bundle = render_views(LINE_THEN_PARABOLAS, q)
    res = eps_subdifferential(LINE_THEN_PARABOLAS, q)
    assert bundle.v_lo == res.interval.lo
    assert bundle.v_hi == res.interval.hi


def test_bundle_json_roundtrip_full_precision():
    bundle = render_views(LINE_THEN_PARABOLAS, EpsQuery(0.5, 1.0))
    back = bundle_from_json(bundle_to_json(bundle))
    assert back.v_lo == bundle.v_lo and back.v_hi == bundle.v_hi
    assert back.anchor == bundle.anchor
    assert back.primal == bundle.primal
    assert back.graph == bundle.graph
    assert back.window == bundle.window


def test_bundle_csv_header_and_graph_csv_header(tmp_path):
    bundle = render_views(HALF_PARABOLA_FLAT, EpsQuery(0.0, 1.0))
    text = bundle_to_csv(bundle)
    assert text.startswith("series,x,y\n")
    g = sweep_x(HALF_PARABOLA_FLAT, 1.0, [-1.0, 0.0, 1.0])
    p = export(g, "csv", tmp_path / "g.csv")
    assert p.read_text().startswith("param,lo,hi\n")


def test_export_same_inputs_identical_bytes(tmp_path):
    bundle = render_views(HALF_PARABOLA_FLAT, EpsQuery(0.0, 1.0))
    p1 = export(bundle, "svg", tmp_path / "a.svg")
    p2 = export(bundle, "svg", tmp_path / "b.svg")
    assert p1.read_bytes() == p2.read_bytes()


def test_export_rejects_unknown_format_and_missing_dir(tmp_path):
    bundle = render_views(HALF_PARABOLA_FLAT, EpsQuery(0.0, 1.0))
    with pytest.raises(ValueError, match="format"):
        export(bundle, "png", tmp_path / "x.png")
    with pytest.raises(ValueError, match="does not exist"):
        export(bundle, "svg", tmp_path / "missing" / "x.svg")


def test_degenerate_window_rejected():
    with pytest.raises(ValueError, match="degenerate"):
        ViewWindow((0, 0), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1))
    with pytest.raises(ValueError, match="degenerate"):
        ViewWindow((0, math.inf), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1))


def test_animate_frame_count_and_shared_axes(tmp_path):
    grid = [-1.0, 0.0, 0.5]
    paths = animate(
        LINE_THEN_PARABOLAS, axis="x", grid=grid, eps=1.0, out_dir=tmp_path / "frames"
    )
    assert [p.name for p in paths] == ["frame_000.svg", "frame_001.svg", "frame_002.svg"]
    transforms = []
    for p in paths:
        ids, _ = svg_index(p.read_text())
        transforms.append(ids["primal-data"].get("transform"))
    assert len(set(transforms)) == 1  # same axes across frames


def test_animate_single_frame_equals_render_export(tmp_path):
    q = EpsQuery(-1.0, 1.0)
    res = eps_subdifferential(LINE_THEN_PARABOLAS, q)
    shared = auto_window(LINE_THEN_PARABOLAS, q, res, graph_axis="x")
    paths = animate(
        LINE_THEN_PARABOLAS, axis="x", grid=[-1.0], eps=1.0, out_dir=tmp_path / "one"
    )
    direct = export(
        render_views(LINE_THEN_PARABOLAS, q, window=shared),
        "svg",
        tmp_path / "direct.svg",
    )
    assert paths[0].read_bytes() == direct.read_bytes()


def test_animate_fifty_frame_sweep(tmp_path):
    from plqsub.gallery import LEFT_WALL_MIXED

    grid = [-5.0 + 9.5 * k / 49 for k in range(50)]
    paths = animate(
        LEFT_WALL_MIXED,
        axis="x",
        grid=grid,
        eps=1.0,
        out_dir=tmp_path / "fifty",
        curve_samples=64,
        graph_points=21,
    )
    assert len(paths) == 50
    assert paths[-1].name == "frame_049.svg"


def test_animate_eps_axis(tmp_path):
    paths = animate(
        RIGHT_WALL_AFFINE,
        axis="eps",
        grid=[0.5, 1.0, 1.5],
        x_bar=-1.0,
        out_dir=tmp_path / "eps",
    )
    assert len(paths) == 3
    ids, _ = svg_index(paths[0].read_text())
    assert "graph-query" in ids


def test_svg_metadata_carries_full_precision():
    bundle = render_views(HALF_PARABOLA_FLAT, EpsQuery(0.0, 1.0))
    text = bundle_to_svg(bundle)
    _, root = svg_index(text)
    meta = root.find(f"{SVG_NS}metadata")
    doc = json.loads(meta.text)
    assert doc["v_lo"] == bundle.v_lo
    assert doc["v_hi"] == bundle.v_hi


def test_render_linear_function_supports_coincide():
    q = EpsQuery(2.0, 1.0)
    bundle = render_views(AFFINE_LINE, q)
    assert bundle.v_lo == bundle.v_hi == 2.0
    ids, _ = svg_index(bundle_to_svg(bundle))
    lo = line_coords(ids["primal-support-lo"])
    hi = line_coords(ids["primal-support-hi"])
    assert lo == hi  # both supports are the graph shifted down by eps
    drawn = (lo[3] - lo[1]) / (lo[2] - lo[0])
    assert drawn == pytest.approx(2.0, abs=1e-9)
    assert lo[1] + drawn * (2.0 - lo[0]) == pytest.approx(eval_at(AFFINE_LINE, 2.0) - 1.0, abs=1e-9)
