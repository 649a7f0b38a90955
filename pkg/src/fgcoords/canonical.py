"""Canonical cell decompositions and points of cells.

Flipping edges of negative outitude until none remain yields a triangulation
whose positive-outitude edges form the canonical cell decomposition. A cell
is described on its standard subdivision chart: a point lies in the open cell
when every kept edge has positive outitude and every fan diagonal has zero
outitude.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .coords import ACoords, edge_neighborhood, flip_transform, outitude
from .errors import ComputationError, ValidationError
from .scalar import FLOAT, RATIONAL, TOL
from .surface import CellDecomposition, IdealTriangulation, flip_edge, standard_subdivision

INTERIOR = "INTERIOR"
CLOSURE_BOUNDARY = "CLOSURE_BOUNDARY"
OUTSIDE = "OUTSIDE"


def _sign(value, backend):
    if backend == FLOAT and abs(value) < TOL:
        return 0
    return (value > 0) - (value < 0)


def canonicalize(coords: ACoords, max_flips: int = 1000) -> tuple:
    """Flip negative-outitude edges until all outitudes are nonnegative.

    The most negative edge goes first; ties are broken by edge id. Returns the
    coordinates on the final chart and the list of flipped edge ids (a flipped
    edge keeps its id).
    """
    flips = []
    while True:
        outs = {e: outitude(coords, e) for e in coords.chart.edges}
        neg = [(v, e) for e, v in outs.items() if _sign(v, coords.backend) < 0]
        if not neg:
            return coords, flips
        if len(flips) >= max_flips:
            bad = ", ".join(sorted(e for _, e in neg))
            raise ComputationError("FLIP_BUDGET_EXCEEDED",
                                   f"{max_flips} flips done, negative edges remain: {bad}")
        _, e = min(neg)
        coords = flip_transform(coords, e)
        flips.append(e)


def extract_cell_decomposition(coords: ACoords) -> CellDecomposition:
    """Cell decomposition kept by the strictly positive edges of a canonical chart."""
    kept = []
    for e in coords.chart.edges:
        s = _sign(outitude(coords, e), coords.backend)
        if s < 0:
            raise ComputationError("NOT_CANONICAL", f"edge {e} has negative outitude")
        if s > 0:
            kept.append(e)
    return standard_subdivision(coords.chart, kept)


def cell_membership(coords: ACoords, cell: CellDecomposition, report: bool = False):
    """Classify ``coords`` as INTERIOR, CLOSURE_BOUNDARY or OUTSIDE of ``cell``.

    Signs are exact on the rational backend. On floats, values within 1e-9 of
    zero count as zero and kept edges with such values are reported as
    borderline when ``report`` is set.
    """
    if coords.chart != cell.chart:
        raise ValidationError("CHART_MISMATCH", "coordinates are not on the cell's chart")
    status = INTERIOR
    borderline = []
    diagonals = set(cell.diagonal_edges)
    for e in cell.chart.edges:
        val = outitude(coords, e)
        s = _sign(val, coords.backend)
        if e in diagonals:
            if s != 0:
                status = OUTSIDE
        elif s < 0:
            status = OUTSIDE
        elif s == 0:
            if coords.backend == FLOAT and val != 0:
                borderline.append(e)
            if status == INTERIOR:
                status = CLOSURE_BOUNDARY
    if report:
        return status, borderline
    return status


def solve_zero_outitude(coords: ACoords, side) -> object:
    """Value of the parameter at ``side`` that makes its edge's outitude vanish.

    The outitude is affine in either parameter of the edge:
    Out = e+ (A c+ + B b+) + e- (A d- + B a-) - (A + B) e+ e-.
    """
    chart = coords.chart
    e = chart.edge_at(side)
    n = edge_neighborhood(coords, e)
    A, B = n.A, n.B
    first = chart.sides(e)[0]
    if (side[0], side[1] % 3) == first:  # solving for e-
        num = n.e_plus * (A * n.c_plus + B * n.b_plus)
        den = (A + B) * n.e_plus - A * n.d_minus - B * n.a_minus
    else:
        num = n.e_minus * (A * n.d_minus + B * n.a_minus)
        den = (A + B) * n.e_minus - A * n.c_plus - B * n.b_plus
    if not den > 0:
        raise ComputationError("NO_POSITIVE_SOLUTION", f"edge {e} admits no positive zero-outitude parameter")
    return num / den


def _backend_of(values):
    return FLOAT if any(isinstance(v, float) for v in values) else RATIONAL


def sample_cell(cell: CellDecomposition, triangle_params) -> ACoords:
    """Explicit point of the open cell with the given triangle parameters.

    Kept edges get parameters 1. In a polygon with triangle parameters between
    N and M, put eps = N / (N + M) and give the m-th diagonal the parameter
    1 + eps^0 + ... + eps^m on its orientation leaving the fan vertex; the
    other orientation is solved from zero outitude.
    """
    chart = cell.chart
    backend = _backend_of(triangle_params.values())
    one = 1.0 if backend == FLOAT else Fraction(1)
    tp = {t: (float(triangle_params[t]) if backend == FLOAT else Fraction(triangle_params[t]))
          for t in chart.triangles}
    ep = {k: one for k in chart.all_sides()}
    for poly in cell.polygons:
        vals = [tp[t] for t in poly.triangles]
        N, M = min(vals), max(vals)
        eps = N / (N + M)
        total = one
        power = one
        for m in range(len(poly.diagonals)):
            total = total + power
            power = power * eps
            ep[poly.diagonal_sides(m)[0]] = total
    coords = ACoords(chart, tp, ep, backend)
    return _solve_inward(coords, cell)


def _solve_inward(coords: ACoords, cell: CellDecomposition) -> ACoords:
    updates = {}
    for poly in cell.polygons:
        for m in range(len(poly.diagonals)):
            inward = poly.diagonal_sides(m)[1]
            updates[inward] = solve_zero_outitude(coords, inward)
    return coords.replace(edge_params=updates)


def deform_toward_one(coords: ACoords, cell: CellDecomposition, t) -> ACoords:
    """Move kept-edge parameters and outward diagonal parameters linearly toward 1.

    Triangle parameters stay fixed and each inward diagonal parameter is
    re-solved so the diagonal keeps zero outitude.
    """
    if not (0 < t <= 1):
        raise ValidationError("BAD_PARAMETER", f"t = {t} is not in (0, 1]")
    if cell_membership(coords, cell) != INTERIOR:
        raise ComputationError("NOT_IN_CELL", "coordinates are not in the interior of the cell")
    if coords.backend == RATIONAL:
        t = Fraction(t)
    inward = {poly.diagonal_sides(m)[1] for poly in cell.polygons for m in range(len(poly.diagonals))}
    ep = {k: (v if k in inward else t * v + 1 - t) for k, v in coords.edge_params.items()}
    moved = ACoords(coords.chart, dict(coords.triangle_params), ep, coords.backend)
    return _solve_inward(moved, cell)


def random_flip_word(chart: IdealTriangulation, rng: random.Random, length: int) -> list:
    """Random sequence of edge flips, each admissible on the chart it is applied to."""
    word = []
    for _ in range(length):
        options = [e for e in chart.edges if chart.is_flippable(e)]
        e = rng.choice(options)
        word.append(e)
        chart = flip_edge(chart, e).triangulation
    return word
