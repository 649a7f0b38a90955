"""Projective duality on A-coordinates.

Swapping the roles of vectors and covectors reverses every oriented edge
parameter and replaces a triangle parameter ``A`` by the determinant of the
covector matrix, which is ``(ccw product + cw product) / A`` in terms of the
six edge parameters of the triangle.

The covector decoration of the dual follows the convention used for the
primal structure; there is no intrinsic reason to prefer it.
"""
from __future__ import annotations

from .coords import ACoords


def dual_triangle_param(coords: ACoords, t: str):
    ccw = coords.edge((t, 0)) * coords.edge((t, 1)) * coords.edge((t, 2))
    cw = coords.other((t, 0)) * coords.other((t, 1)) * coords.other((t, 2))
    return (ccw + cw) / coords.tri(t)


def dual_coords(coords: ACoords) -> ACoords:
    """The dual structure on the same chart. Applying it twice is the identity."""
    chart = coords.chart
    ep = {k: coords.other(k) for k in chart.all_sides()}
    tp = {t: dual_triangle_param(coords, t) for t in chart.triangles}
    return ACoords(chart, tp, ep, coords.backend)
