"""Acceptance suite: every criterion prints one PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v -s`` to see the lines alongside the
pytest statuses.
"""

import gc
import math
import time
import tracemalloc
import xml.etree.ElementTree as ET

import numpy as np

from plqsub import (
    INF,
    EpsQuery,
    br_witness,
    conjugate,
    eps_subdifferential,
    is_equal,
    oracle_eps_interval,
    plq,
    plq_min,
    subdifferential,
    sweep_x,
)
from plqsub.cli import cli_dispatch
from plqsub.gallery import (
    ALL_CONVEX,
    HALF_PARABOLA_FLAT,
    LINE_THEN_PARABOLAS,
    PARABOLA_VALLEY_PARABOLA,
)
from plqsub.viz import bundle_to_svg, render_views
from support import random_convex_plq, random_point_in_domain

SQRT2 = math.sqrt(2)
SQRT10 = math.sqrt(10)


def report(num: int, name: str, ok: bool, detail: str = "") -> None:
    line = f"[ACCEPT-{num:02d}] {'PASS' if ok else 'FAIL'} {name}"
    if detail:
        line += f" ({detail})"
    print(line)
    assert ok, line


def close(a: float, b: float, tol: float) -> bool:
    if math.isinf(a) or math.isinf(b):
        return a == b
    return abs(a - b) <= tol


def chained_convex(rng: np.random.Generator, n_rows: int):
    """All-finite chained convex function with exactly ``n_rows`` pieces."""
    start = float(rng.uniform(-5, 5))
    bps = start + np.cumsum(rng.uniform(0.05, 0.5, size=n_rows - 1))
    rows = []
    a, b, c = float(rng.uniform(0.01, 5)), float(rng.uniform(-5, 5)), float(rng.uniform(-5, 5))
    for i in range(n_rows):
        x_hi = float(bps[i]) if i < n_rows - 1 else INF
        rows.append((x_hi, a, b, c))
        if i < n_rows - 1:
            x = float(bps[i])
            slope, val = 2 * a * x + b, (a * x + b) * x + c
            jump = 0.0 if rng.random() < 0.5 else float(rng.uniform(0, 2))
            a = 0.0 if rng.random() < 0.3 else float(rng.uniform(0.01, 5))
            b = slope + jump - 2 * a * x
            c = val - (a * x + b) * x
    return plq(rows)


# ---------------------------------------------------------------------------


def test_accept_01_half_parabola_replication():
    f = HALF_PARABOLA_FLAT
    fc = conjugate(f)
    ok_conj = fc.matrix == [[0.0, 0.5, 0.0, 0.0], [INF, 0.0, 0.0, INF]]

    m = plq_min(fc, plq([(INF, 0, 0, 1)]))
    ok_min = (
        len(m.pieces) == 3
        and close(m.pieces[0].x_hi, -SQRT2, 1e-9)
        and m.matrix[0][1:] == [0.0, 0.0, 1.0]
        and m.matrix[1] == [0.0, 0.5, 0.0, 0.0]
        and m.matrix[2] == [INF, 0.0, 0.0, 1.0]
    )

    q = EpsQuery(0.0, 1.0)
    iv = eps_subdifferential(f, q).interval
    ok_iv = close(iv.lo, -SQRT2, 1e-9) and close(iv.hi, 0.0, 1e-9)

    times = []
    for _ in range(7):
        t0 = time.perf_counter()
        eps_subdifferential(f, q)
        times.append(time.perf_counter() - t0)
    med = sorted(times)[len(times) // 2]
    ok_time = med < 0.010

    report(
        1,
        "half-parabola query: conjugate, min matrix, interval, runtime",
        ok_conj and ok_min and ok_iv and ok_time,
        f"median {med * 1e3:.3f} ms",
    )


def test_accept_02_three_piece_replication():
    f = LINE_THEN_PARABOLAS
    iv1 = eps_subdifferential(f, EpsQuery(-1.0, 1.0)).interval
    iv2 = eps_subdifferential(f, EpsQuery(0.5, 1.0)).interval
    ok = (
        close(iv1.lo, -7.0, 1e-9)
        and close(iv1.hi, -1.0, 1e-9)
        and close(iv2.lo, -2.0, 1e-9)
        and close(iv2.hi, -1.0 + SQRT10, 1e-9)
    )
    report(2, "three-piece kinked function intervals at -1 and 0.5", ok,
           f"[{iv1.lo:.9g}, {iv1.hi:.9g}], [{iv2.lo:.9g}, {iv2.hi:.9g}]")


def test_accept_03_oracle_equivalence_500():
    rng = np.random.default_rng(20240817)
    t0 = time.perf_counter()
    worst = 0.0
    n_checked = 0
    for _ in range(500):
        f = random_convex_plq(rng, max_rows=21, coeff=10.0)
        x = random_point_in_domain(rng, f)
        q = EpsQuery(x, float(rng.uniform(1e-6, 5.0)) or 1e-6)
        fast = eps_subdifferential(f, q).interval
        slow = oracle_eps_interval(f, q)
        for a, b in ((fast.lo, slow.lo), (fast.hi, slow.hi)):
            if math.isinf(a) or math.isinf(b):
                assert a == b, (f.matrix, q, fast, slow)
            else:
                worst = max(worst, abs(a - b))
                assert abs(a - b) <= 1e-6, (f.matrix, q, fast, slow)
        n_checked += 1
    elapsed = time.perf_counter() - t0
    report(
        3,
        "fast path equals definition-level oracle on 500 random instances",
        n_checked == 500 and worst <= 1e-6 and elapsed < 60.0,
        f"worst gap {worst:.2e}, {elapsed:.1f} s",
    )


def test_accept_04_biconjugate_corpus_and_random():
    bad = [name for name, f in ALL_CONVEX.items() if not is_equal(conjugate(conjugate(f)), f, 1e-8)]
    rng = np.random.default_rng(7777)
    n_bad_random = 0
    for _ in range(500):
        f = random_convex_plq(rng)
        if not is_equal(conjugate(conjugate(f)), f, 1e-8):
            n_bad_random += 1
    report(
        4,
        "biconjugate identity on the corpus plus 500 random instances",
        not bad and n_bad_random == 0,
        f"corpus failures: {bad or 'none'}, random failures: {n_bad_random}",
    )


def test_accept_05_monotonicity_and_nesting():
    violations = 0

    # enlargement: exact subdifferential inside every eps-subdifferential
    for f in ALL_CONVEX.values():
        from plqsub import domain

        dom = domain(f)
        if dom.is_singleton:
            xs = [dom.lo]
        else:
            lo = dom.lo if math.isfinite(dom.lo) else -6.0
            hi = dom.hi if math.isfinite(dom.hi) else 6.0
            xs = list(np.linspace(lo, hi, 15))
        for x in xs:
            sub = subdifferential(f, float(x))
            if sub is None:
                continue
            for eps in (0.3, 1.0, 2.5):
                iv = eps_subdifferential(f, EpsQuery(float(x), eps)).interval
                if not sub.issubset(iv, tol=1e-9):
                    violations += 1

    # nesting across a 20-point eps grid
    for f in ALL_CONVEX.values():
        from plqsub import domain

        dom = domain(f)
        x = dom.lo if dom.is_singleton else float(
            np.clip(0.25, dom.lo if math.isfinite(dom.lo) else -1e9,
                    dom.hi if math.isfinite(dom.hi) else 1e9))
        prev = None
        for eps in np.linspace(0.05, 4.0, 20):
            iv = eps_subdifferential(f, EpsQuery(x, float(eps))).interval
            if prev is not None and not prev.issubset(iv, tol=1e-9):
                violations += 1
            prev = iv

    # x-sweep endpoint monotonicity on 100-point grids
    for f in (HALF_PARABOLA_FLAT, LINE_THEN_PARABOLAS, PARABOLA_VALLEY_PARABOLA):
        g = sweep_x(f, 1.0, list(np.linspace(-5, 5, 100)))
        for seq in ([s[1] for s in g.samples], [s[2] for s in g.samples]):
            for a, b in zip(seq, seq[1:]):
                slack = 1e-9 * (1 + abs(a)) if math.isfinite(a) else 0.0
                if a > b + slack:
                    violations += 1

    report(5, "enlargement, ε-nesting and x-sweep monotonicity", violations == 0,
           f"{violations} violations")


def test_accept_06_linear_time_and_space():
    def measure(n_rows: int):
        rng = np.random.default_rng(42)
        f = chained_convex(rng, n_rows)
        x = float(np.mean([b for b in f.breaks if math.isfinite(b)]))
        q = EpsQuery(x, 1.0)
        times = []
        for _ in range(5):
            t0 = time.perf_counter()
            eps_subdifferential(f, q)
            times.append(time.perf_counter() - t0)
        gc.collect()
        tracemalloc.start()
        eps_subdifferential(f, q)
        peak = tracemalloc.get_traced_memory()[1]
        tracemalloc.stop()
        return sorted(times)[len(times) // 2], peak

    t10, m10 = measure(10_000)
    t20, m20 = measure(20_000)
    time_ratio = t20 / t10
    mem_ratio = m20 / m10
    report(
        6,
        "doubling N=10000 to 20000 scales linearly in time and memory",
        time_ratio <= 3.0 and 1.0 <= mem_ratio <= 4.0,
        f"time x{time_ratio:.2f} ({t10 * 1e3:.0f}->{t20 * 1e3:.0f} ms), mem x{mem_ratio:.2f}",
    )


def test_accept_07_sweep_performance():
    grid = list(np.linspace(-5.0, 5.0, 100))
    t0 = time.perf_counter()
    g = sweep_x(LINE_THEN_PARABOLAS, 1.0, grid)
    elapsed = time.perf_counter() - t0
    report(
        7,
        "100-point x-sweep with one shared conjugate under 1 s",
        len(g.samples) == 100 and elapsed < 1.0,
        f"{elapsed * 1e3:.1f} ms",
    )


def test_accept_08_rectangle_witness_suite():
    f = PARABOLA_VALLEY_PARABOLA
    q = EpsQuery(-1.5, 1.0)
    iv = eps_subdifferential(f, q).interval
    slow = oracle_eps_interval(f, q)
    # acceptance binds to oracle-verified endpoints
    ok_oracle = abs(iv.lo - slow.lo) <= 1e-6 and abs(iv.hi - slow.hi) <= 1e-6
    # independently derived closed forms for this configuration
    ok_derived = close(iv.lo, -1.0 - SQRT2 / 3.0, 1e-9) and close(iv.hi, 0.75, 1e-9)

    s = iv.lo
    ok_witness = True
    for lam in np.linspace(0.2, 2.0, 50):
        lam = float(lam)
        w = br_witness(f, q, s, lam)
        sub = subdifferential(f, w.x_lam)
        ok_witness = (
            ok_witness
            and abs(w.x_lam - q.x_bar) <= lam + 1e-12
            and abs(w.s_lam - s) <= q.eps / lam + 1e-12
            and sub is not None
            and sub.contains(w.s_lam, tol=1e-9)
        )
    report(
        8,
        "rectangle witness found for all 50 λ with exact invariants",
        ok_oracle and ok_derived and ok_witness,
        f"v_l={iv.lo:.9g} (oracle {slow.lo:.9g})",
    )


def test_accept_09_error_paths_verbatim(tmp_path, capsys):
    bad = tmp_path / "bad.plq"
    bad.write_text("1 0 1 0\n0 0 2 0\n")
    nonconvex = tmp_path / "nonconvex.plq"
    nonconvex.write_text("0 0 1 0\n1 0 0 0\ninf 0 1 0\n")
    wall = tmp_path / "wall.plq"
    wall.write_text("-2 0.16666666666666666 0.3333333333333333 0\n1 0 1 2\ninf 0 0 inf\n")

    rc1 = cli_dispatch(["check", "--plq", str(bad)])
    err1 = capsys.readouterr().err
    rc2 = cli_dispatch(["epssub", "--plq", str(nonconvex), "--xbar", "0", "--eps", "1"])
    err2 = capsys.readouterr().err
    rc3 = cli_dispatch(["epssub", "--plq", str(wall), "--xbar", "2", "--eps", "1"])
    err3 = capsys.readouterr().err

    ok = (
        rc1 == 2 and "the input function is not plq." in err1
        and rc2 == 2 and "the input function is not convex." in err2
        and rc3 == 2 and "x̄ is not in the domain of the function." in err3
    )
    report(9, "three validation messages verbatim with exit code 2", ok,
           f"codes {rc1},{rc2},{rc3}")


def test_accept_10_golden_figures():
    configs = [
        (HALF_PARABOLA_FLAT, EpsQuery(0.0, 1.0)),
        (LINE_THEN_PARABOLAS, EpsQuery(-1.0, 1.0)),
        (LINE_THEN_PARABOLAS, EpsQuery(0.5, 1.0)),
        (PARABOLA_VALLEY_PARABOLA, EpsQuery(-1.5, 1.0)),
    ]
    ok = True
    details = []
    for f, q in configs:
        text1 = bundle_to_svg(render_views(f, q))
        text2 = bundle_to_svg(render_views(f, q))
        stable = text1 == text2
        ok = ok and stable

        res = eps_subdifferential(f, q)
        bundle = render_views(f, q)
        ids = {el.get("id"): el for el in ET.fromstring(text1).iter() if el.get("id")}

        def coords(eid):
            el = ids[eid]
            return tuple(float(el.get(k)) for k in ("x1", "y1", "x2", "y2"))

        ax, ay = bundle.anchor
        for eid, slope in (("primal-support-lo", res.interval.lo),
                           ("primal-support-hi", res.interval.hi)):
            x1, y1, x2, y2 = coords(eid)
            if math.isfinite(slope):
                drawn = (y2 - y1) / (x2 - x1)
                ok = ok and abs(drawn - slope) <= 1e-9 * (1 + abs(slope))
                ok = ok and abs(y1 + drawn * (ax - x1) - ay) <= 1e-9 * (1 + abs(ay))
            else:
                ok = ok and x1 == x2 == ax

        # coincidence segment spans the interval clipped to dom(f*)
        from plqsub import domain

        dom = domain(res.f_conj)
        lo = max(res.interval.lo, dom.lo, bundle.window.dual_s[0])
        hi = min(res.interval.hi, dom.hi, bundle.window.dual_s[1])
        cs = bundle.coincidence.xs
        ok = ok and cs and abs(cs[0] - lo) <= 1e-9 and abs(cs[-1] - hi) <= 1e-9
        details.append(f"x̄={q.x_bar:g}: stable={stable}")
    report(10, "golden figures byte-stable with correct embedded geometry", ok,
           "; ".join(details))
