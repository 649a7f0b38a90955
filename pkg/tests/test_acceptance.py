"""Acceptance criteria, one test each.

Each test prints a PASS/FAIL line; the lines are repeated in the pytest
terminal summary. Run directly (``python3 tests/test_acceptance.py``) to get
just the nine lines.
"""
import math
import random
import sys
import time
from decimal import Decimal
from fractions import Fraction as F
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from fgcoords.canonical import (  # noqa: E402
    CLOSURE_BOUNDARY, INTERIOR, canonicalize, cell_membership, deform_toward_one,
    extract_cell_decomposition, random_flip_word, sample_cell,
)
from fgcoords.coords import (  # noqa: E402
    chart_transition, finite_area_residuals, flip_transform, outitude, outitudes, random_coords, to_x_coords,
)
from fgcoords.develop import develop, tetrahedron_outitudes, verify_development  # noqa: E402
from fgcoords.dualize import dual_coords  # noqa: E402
from fgcoords.fixtures import (  # noqa: E402
    ALPHA0, GENUS2_LABELS, TORUS_SIDES, _segment_side, genus2_chart, genus2_coords,
    thrice_punctured_sphere, torus_chart, torus_coords,
)
from fgcoords.holonomy import is_parabolic, peripheral_holonomy  # noqa: E402
from fgcoords.hyperbolic import (  # noqa: E402
    cell_center, diagonal_lambdas_chebyshev, diagonal_lambdas_rational, diagonal_lambdas_sine,
)
from fgcoords.linalg import char_coeffs  # noqa: E402
from fgcoords.surface import canonical_encoding, full_cell, standard_subdivision  # noqa: E402

from helpers import same_up_to_relabeling  # noqa: E402

RESULTS = []

ALPHA1 = (F(3, 2), F(4, 3), 1, 1, F(17, 6), F(25, 12), 1, F(1, 2))
ALPHA2 = (1, 1, 1, 1, 1, F(3, 2), 1, F(1, 2))


def _record(number, title, limit, fn):
    start = time.perf_counter()
    try:
        detail = fn()
        elapsed = time.perf_counter() - start
        ok = elapsed < limit
        if not ok:
            detail = f"runtime {elapsed:.2f}s exceeds {limit}s"
    except AssertionError as exc:
        elapsed = time.perf_counter() - start
        ok, detail = False, str(exc) or "assertion failed"
    line = f"{'PASS' if ok else 'FAIL'} [{number}] {title} ({elapsed:.2f}s) {detail}"
    RESULTS.append(line)
    print(line, flush=True)
    return ok, line


def _matches_printed(value, printed: str) -> bool:
    """Agreement at the printed number of decimals, within 1e-3."""
    places = -Decimal(printed).as_tuple().exponent
    return abs(round(float(value), places) - float(printed)) < 1e-3


def alpha1_reading(a1, side_map):
    carried = {k: side_map[TORUS_SIDES[k]] for k in ("a+", "a-", "b+", "b-")}
    A = carried["b+"][0]
    B = next(t for t in a1.chart.triangles if t != A)
    d_minus = next(k for k in a1.chart.sides("c") if k[0] == A)
    return (a1.tri(A), a1.tri(B)) + tuple(a1.edge_params[carried[k]] for k in ("a+", "a-", "b+", "b-")) + (
        a1.edge_params[a1.chart.partner(d_minus)], a1.edge_params[d_minus])


def criterion_1():
    a0 = torus_coords(ALPHA0)
    outs = outitudes(a0)
    printed = {"a": "265.629", "b": "548.357", "c": "-3234.55"}
    for e, p in printed.items():
        assert _matches_printed(outs[e], p), f"Out({e}) = {float(outs[e])} vs {p}"
    final, flips = canonicalize(a0)
    assert flips == ["c", "b"], f"flips {flips}"
    a1, side_map = flip_transform(a0, "c", return_map=True)
    assert alpha1_reading(a1, side_map) == tuple(F(v) for v in ALPHA1), "alpha_1 differs"
    assert same_up_to_relabeling(torus_coords(ALPHA2), final, keep_edge_names=True), "alpha_2 differs"
    assert outitudes(final) == {"a": 2, "b": F(5, 4), "c": F(9, 4)}
    raw = max(abs(float(outs[e]) - float(p)) for e, p in printed.items())
    return f"flips=[c, b]; raw deviation from printed decimals {raw:.4f}"


def criterion_2():
    c = genus2_coords()
    outs = outitudes(c)
    assert [outs[f"b{i}"] for i in range(9)] == [4, 3, 3, 3, 3, 3, 8, 4, 3], f"primal {outs}"
    d = dual_coords(c)
    chart = c.chart
    assert d.triangle_params == {"A0": 3, "A1": 3, "A2": 10, "A3": 10, "A4": 3, "A5": 3}
    expected = {k: F(1) for k in chart.all_sides()}
    for e, tail, head, v in GENUS2_LABELS:
        expected[chart.partner(_segment_side(chart, e, tail, head))] = F(v)
    assert d.edge_params == expected, "dual edge parameters differ"
    douts = outitudes(d)
    low = min(douts.values())
    assert low == -20, f"minimum dual outitude {low}"
    where = [e for e, v in douts.items() if v == low]
    return f"min dual outitude -20 at {','.join(where)}"


def criterion_3():
    rng = random.Random(301)
    count = 0
    for make in (torus_chart, thrice_punctured_sphere):
        chart = make()
        for _ in range(1000):
            c = random_coords(chart, rng)
            e = rng.choice(chart.edges)
            assert same_up_to_relabeling(c, flip_transform(flip_transform(c, e), e)), f"double flip of {e}"
            count += 1
    return f"{count} double flips exact"


def criterion_4():
    rng = random.Random(401)
    chart = torus_chart()
    for _ in range(1000):
        c = random_coords(chart, rng)
        d = dual_coords(c)
        assert dual_coords(d) == c, "dual is not an involution"
        before, after = outitudes(c), outitudes(d)
        for e in chart.edges:
            assert (before[e] > 0) - (before[e] < 0) == (after[e] > 0) - (after[e] < 0), f"sign of {e}"
    return "1000 torus samples"


def criterion_5():
    rng = random.Random(501)
    checked = 0
    for make in (torus_chart, thrice_punctured_sphere):
        chart = make()
        for _ in range(100):
            c = random_coords(chart, rng)
            res = finite_area_residuals(to_x_coords(c))
            assert all(v == (1, 1) for v in res.values()), f"finite-area products {res}"
            for p in chart.punctures:
                m = peripheral_holonomy(c, p)
                tau, sigma, delta = char_coeffs(m)
                assert tau * tau == 3 * sigma and tau ** 3 == 27 * delta, f"no triple root at {p}"
                assert is_parabolic(m), f"scalar holonomy at {p}"
                checked += 1
    return f"{checked} peripheral holonomies parabolic"


def criterion_6():
    rng = random.Random(601)
    chart = torus_chart()
    pairs = edges = 0
    for _ in range(50):
        c = random_coords(chart, rng)
        dev = develop(c, "t0", 4)
        report = verify_development(dev)
        assert report.ok, f"development violations: {report.violations[:3]}"
        for e, form, out in tetrahedron_outitudes(dev):
            assert form == out, f"tetrahedron form differs on {e}"
            edges += 1
        pairs += report.checked_pairs
    return f"{pairs} flag pairs, {edges} interior edges"


def criterion_7():
    rng = random.Random(701)
    g2 = genus2_chart()
    cells = {
        "square": standard_subdivision(torus_chart(), ["a", "b"]),
        "pentagon": standard_subdivision(g2, ["b0", "b1", "b2", "b3", "b6", "b7", "b8"]),
        "octagon": standard_subdivision(g2, ["b0", "b1", "b2", "b3"]),
    }
    for name, cell in cells.items():
        assert any(p.n == {"square": 4, "pentagon": 5, "octagon": 8}[name] for p in cell.polygons)
        for _ in range(20):
            tp = {t: F(rng.randint(1, 50), rng.randint(1, 50)) for t in cell.chart.triangles}
            s = sample_cell(cell, tp)
            assert cell_membership(s, cell) == INTERIOR, f"{name} sample not interior"
            for t in (F(1), F(1, 2), F(1, 4), F(1, 100)):
                assert cell_membership(deform_toward_one(s, cell, t), cell) == INTERIOR, f"{name} t={t}"
    return "60 samples, 240 deformations"


def criterion_8():
    torus = torus_chart()
    full = cell_center(full_cell(torus))
    assert all(v == 1.0 for v in full.edge_params.values())
    assert all(abs(v - math.sqrt(2)) < 1e-12 for v in full.triangle_params.values())
    square = standard_subdivision(torus, ["a", "b"])
    c = cell_center(square)
    diag = square.diagonal_edges[0]
    assert all(abs(v - 2.0) < 1e-9 for v in c.edge_pair(diag)), "diagonal parameter"
    assert all(abs(v - 2.0) < 1e-9 for v in c.triangle_params.values()), "flanking triangles"
    assert abs(outitude(c, diag)) < 1e-9, "diagonal outitude"
    assert all(outitude(c, e) > 0 for e in square.kept_edges), "boundary outitudes"
    assert cell_membership(c, square) == INTERIOR
    assert cell_membership(c, full_cell(square.chart)) == CLOSURE_BOUNDARY
    worst = 0.0
    for n in range(4, 49):
        for x, y, z in zip(diagonal_lambdas_rational(n), diagonal_lambdas_chebyshev(n), diagonal_lambdas_sine(n)):
            worst = max(worst, abs(x - y), abs(x - z))
    assert worst < 1e-9, f"recurrences differ by {worst}"
    return f"recurrence spread {worst:.1e} for n <= 48"


def criterion_9():
    rng = random.Random(901)
    chart = torus_chart()
    strong = 0
    for _ in range(200):
        c = random_coords(chart, rng)
        word = random_flip_word(chart, rng, rng.randint(0, 6))
        f1, _ = canonicalize(c)
        f2, _ = canonicalize(chart_transition(c, word))
        cell1, cell2 = extract_cell_decomposition(f1), extract_cell_decomposition(f2)
        assert canonical_encoding(cell1) == canonical_encoding(cell2), f"cells differ after {word}"
        if not cell1.diagonal_edges:
            assert canonical_encoding(f1.chart, f1) == canonical_encoding(f2.chart, f2)
            strong += 1
    return f"200 samples ({strong} also equal as coordinates)"


CRITERIA = [
    (1, "worked flip example", 1.0, criterion_1),
    (2, "genus-two duality example", 1.0, criterion_2),
    (3, "flip involution", 10.0, criterion_3),
    (4, "duality involution and torus signs", 10.0, criterion_4),
    (5, "finite area and parabolic holonomy", 30.0, criterion_5),
    (6, "development positivity", 60.0, criterion_6),
    (7, "cell sampling and deformation", 30.0, criterion_7),
    (8, "cell centres and diagonal recurrences", 5.0, criterion_8),
    (9, "chart independence of canonicalization", 60.0, criterion_9),
]


@pytest.mark.parametrize("number,title,limit,fn", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, limit, fn):
    ok, line = _record(number, title, limit, fn)
    assert ok, line


if __name__ == "__main__":
    results = [_record(*c)[0] for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
