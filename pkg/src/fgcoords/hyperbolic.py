"""Decorated hyperbolic structures inside A-coordinates, and centres of cells.

A lambda-length assignment embeds as: both orientations of an edge get
lambda^2, a triangle with edge parameters a, b, c gets sqrt(2abc). Centres
of cells use lambda = 1 on kept edges and regular-polygon diagonal lengths
on the fan diagonals.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .coords import ACoords, flip_quad
from .errors import ValidationError
from .scalar import FLOAT
from .surface import CellDecomposition, IdealTriangulation


@dataclass
class LambdaLengths:
    chart: IdealTriangulation
    values: dict  # edge id -> positive float

    def __post_init__(self):
        for e in self.chart.edges:
            if e not in self.values:
                raise ValidationError("COUNT_MISMATCH", f"missing lambda-length for {e}")
            if not self.values[e] > 0:
                raise ValidationError("NONPOSITIVE_PARAMETER", f"lambda-length of {e} is {self.values[e]}")


def embed_penner(lam: LambdaLengths) -> ACoords:
    chart = lam.chart
    sq = {e: float(v) ** 2 for e, v in lam.values.items()}
    ep = {k: sq[chart.edge_at(k)] for k in chart.all_sides()}
    tp = {}
    for t in chart.triangles:
        prod = sq[chart.edge_at((t, 0))] * sq[chart.edge_at((t, 1))] * sq[chart.edge_at((t, 2))]
        tp[t] = math.sqrt(2.0 * prod)
    return ACoords(chart, tp, ep, FLOAT)


def hyperbolic_outitude_value(lam: LambdaLengths, e: str) -> float:
    """sqrt(ab)(c + d - e) + sqrt(cd)(a + b - e) in squared lambda-lengths.

    a, b are the other edges of the triangle on the first side of ``e``,
    c, d those of the other triangle. Its sign is the sign of the outitude.
    """
    chart = lam.chart
    if not chart.has_edge(e):
        raise ValidationError("UNKNOWN_EDGE", f"no edge {e!r}")
    q = flip_quad(chart, e)
    sq = lambda side: float(lam.values[chart.edge_at(side)]) ** 2  # noqa: E731
    a, b, c, d = sq(q["a"]), sq(q["b"]), sq(q["c"]), sq(q["d"])
    ee = float(lam.values[e]) ** 2
    return math.sqrt(a * b) * (c + d - ee) + math.sqrt(c * d) * (a + b - ee)


def hyperbolic_outitude_positive(lam: LambdaLengths, e: str) -> bool:
    return hyperbolic_outitude_value(lam, e) > 0


def diagonal_lambdas_rational(n: int) -> list:
    """d_1..d_{n-3} from d_1 = 2cos(pi/n), d_2 = d_1^2 - 1, d_k = (d_{k-1}^2 - 1) / d_{k-2}."""
    if n < 4:
        raise ValidationError("BAD_PARAMETER", f"polygon needs at least 4 sides, got {n}")
    d = [1.0, 2.0 * math.cos(math.pi / n)]  # d_0 = 1 is a side
    for _ in range(n - 4):
        d.append((d[-1] ** 2 - 1.0) / d[-2])
    return d[1:]


def diagonal_lambdas_chebyshev(n: int) -> list:
    """d_1..d_{n-3} from d_k = d_1 d_{k-1} - d_{k-2} with d_0 = 1."""
    if n < 4:
        raise ValidationError("BAD_PARAMETER", f"polygon needs at least 4 sides, got {n}")
    d1 = 2.0 * math.cos(math.pi / n)
    d = [1.0, d1]
    for _ in range(n - 4):
        d.append(d1 * d[-1] - d[-2])
    return d[1:]


def diagonal_lambdas_sine(n: int) -> list:
    """Closed form d_k = sin((k+1) pi / n) / sin(pi / n)."""
    if n < 4:
        raise ValidationError("BAD_PARAMETER", f"polygon needs at least 4 sides, got {n}")
    return [math.sin((k + 1) * math.pi / n) / math.sin(math.pi / n) for k in range(1, n - 2)]


def diagonal_lambdas(n: int) -> list:
    """Lengths of the fan diagonals of a regular n-gon with unit sides.

    Entry m belongs to the diagonal V0 V_{m+2}. Both recurrences and the sine
    formula are evaluated and must agree to 1e-9.
    """
    cheb = diagonal_lambdas_chebyshev(n)
    rat = diagonal_lambdas_rational(n)
    sine = diagonal_lambdas_sine(n)
    for x, y, z in zip(cheb, rat, sine):
        if max(abs(x - y), abs(x - z)) > 1e-9 * max(1.0, abs(x)):
            raise ValidationError("RECURRENCE_MISMATCH", f"recurrences disagree for n = {n}")
    return cheb


def center_lambdas(cell: CellDecomposition) -> LambdaLengths:
    values = {e: 1.0 for e in cell.chart.edges}
    for poly in cell.polygons:
        for m, d in zip(range(len(poly.diagonals)), diagonal_lambdas(poly.n)):
            values[poly.diagonals[m]] = d
    return LambdaLengths(cell.chart, values)


def cell_center(cell: CellDecomposition) -> ACoords:
    return embed_penner(center_lambdas(cell))


def on_hyperbolic_locus(coords: ACoords, tol: float = 1e-9) -> bool:
    """Both orientations of every edge agree and A^2 = 2abc for every triangle."""
    chart = coords.chart
    for e in chart.edges:
        x, y = coords.edge_pair(e)
        if abs(x - y) > tol * max(1.0, abs(x)):
            return False
    for t in chart.triangles:
        a, b, c = (coords.edge((t, s)) for s in range(3))
        A = coords.tri(t)
        if abs(A * A - 2 * a * b * c) > tol * max(1.0, A * A):
            return False
    return True
