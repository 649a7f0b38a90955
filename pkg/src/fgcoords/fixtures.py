"""Reference charts and coordinates used by tests, docs and the CLI.

The torus chart is the square (0,0), (3,0), (3,3), (0,3) with opposite sides
identified and a diagonal ``c`` from (0,0) to (3,3). Triangle ``t0`` is the
upper triangle, ``t1`` the lower one, ``a`` the horizontal and ``b`` the
vertical edge.

The genus-two chart is an octagon with side pairing b0 b1 b2 b3 b2 b3 b0 b1
(read counterclockwise from the bottom side) and a triangulation by the
diagonals b4..b8.
"""
from __future__ import annotations

from fractions import Fraction as F

from .coords import ACoords
from .surface import SurfaceSignature, build_triangulation


def torus_chart():
    # t0 = (0,0), (3,3), (0,3); t1 = (0,0), (3,0), (3,3)
    return build_triangulation(
        SurfaceSignature(1, 1),
        [("a", ("t1", 0), ("t0", 1)),
         ("b", ("t1", 1), ("t0", 2)),
         ("c", ("t0", 0), ("t1", 2))],
        ["t0", "t1"])


TORUS_SIDES = {
    # oriented edge name -> side; every side of t1 is a "+" side and every
    # side of t0 a "-" side, in the order (A, B, a+, a-, b+, b-, c+, c-)
    "a+": ("t1", 0), "a-": ("t0", 1),
    "b+": ("t1", 1), "b-": ("t0", 2),
    "c+": ("t1", 2), "c-": ("t0", 0),
}
TORUS_ORDER = ("A", "B", "a+", "a-", "b+", "b-", "c+", "c-")


def torus_coords(values, chart=None) -> ACoords:
    """Coordinates from a tuple (A, B, a+, a-, b+, b-, c+, c-) on the torus chart."""
    chart = chart or torus_chart()
    vals = dict(zip(TORUS_ORDER, [F(v) for v in values]))
    return ACoords(chart, {"t0": vals["A"], "t1": vals["B"]},
                   {TORUS_SIDES[k]: vals[k] for k in TORUS_ORDER[2:]})


def torus_tuple(coords: ACoords) -> tuple:
    return ((coords.tri("t0"), coords.tri("t1"))
            + tuple(coords.edge(TORUS_SIDES[k]) for k in TORUS_ORDER[2:]))


ALPHA0 = (F(107, 12), F(95, 18), 1, 1, F(17, 6), F(25, 12), F(1145, 72), F(1289, 72))


def thrice_punctured_sphere():
    return build_triangulation(
        SurfaceSignature(0, 3),
        [("e0", ("t0", 0), ("t1", 0)),
         ("e1", ("t0", 1), ("t1", 2)),
         ("e2", ("t0", 2), ("t1", 1))],
        ["t0", "t1"])


# octagon triangles: counterclockwise corner positions and the edge in each slot
GENUS2_TRIANGLES = {
    "A0": (((2, 0), (0, 4), (0, 2)), ("b4", "b0", "b1")),
    "A1": (((2, 0), (2, 6), (0, 4)), ("b5", "b3", "b4")),
    "A2": (((2, 0), (4, 0), (2, 6)), ("b0", "b6", "b5")),
    "A3": (((4, 0), (4, 6), (2, 6)), ("b7", "b2", "b6")),
    "A4": (((4, 0), (6, 2), (4, 6)), ("b1", "b8", "b7")),
    "A5": (((6, 2), (6, 4), (4, 6)), ("b2", "b3", "b8")),
}

# (edge, endpoint the value sits next to, other endpoint, value); all other
# parameters are 1
GENUS2_LABELS = [
    ("b0", (4, 0), (2, 0), 2),
    ("b2", (6, 2), (6, 4), 2),
    ("b5", (2, 6), (2, 0), 2),
    ("b6", (2, 6), (4, 0), 2),
    ("b6", (4, 0), (2, 6), 3),
    ("b7", (4, 0), (4, 6), 2),
]


def genus2_chart():
    sides = {}
    for t, (_, labels) in GENUS2_TRIANGLES.items():
        for s, e in enumerate(labels):
            sides.setdefault(e, []).append((t, s))
    gluing = [(e, *sides[e]) for e in sorted(sides, key=lambda x: int(x[1:]))]
    return build_triangulation(SurfaceSignature(2, 1), gluing, list(GENUS2_TRIANGLES))


def _segment_side(chart, edge, tail, head):
    """Side of ``edge`` whose tail sits at ``tail`` on the drawn segment tail-head."""
    for t, s in chart.sides(edge):
        pts = GENUS2_TRIANGLES[t][0]
        p, q = pts[s], pts[(s + 1) % 3]
        if (p, q) == (tail, head):
            return (t, s)
        if (p, q) == (head, tail):
            return chart.partner((t, s))
    raise KeyError((edge, tail, head))


def genus2_coords() -> ACoords:
    chart = genus2_chart()
    ep = {k: F(1) for k in chart.all_sides()}
    for e, tail, head, val in GENUS2_LABELS:
        ep[_segment_side(chart, e, tail, head)] = F(val)
    return ACoords(chart, {t: F(1) for t in chart.triangles}, ep)
