"""A-coordinate charts: storage, outitude, flips, rescaling and X-coordinates.

Each triangle carries one positive parameter (the determinant of its vertex
matrix) and each oriented edge one positive parameter (a covector at its tail
evaluated on the vector at its head). Oriented edges are keyed by sides, see
:mod:`fgcoords.surface`.
"""
from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from .errors import ComputationError, ValidationError
from .scalar import FLOAT, RATIONAL, serialize, to_scalar
from .surface import (IdealTriangulation, flip_edge, flip_quad, parse_side_key,
                      side_key, triangulation_from_json)


class ACoords:
    """Positive parameters on a chart. Treat instances as immutable."""

    def __init__(self, chart: IdealTriangulation, triangle_params: Mapping, edge_params: Mapping,
                 backend: str = RATIONAL, check: bool = True):
        self.chart = chart
        self.backend = backend
        self.triangle_params = {t: triangle_params[t] for t in chart.triangles} if check else dict(triangle_params)
        self.edge_params = {k: edge_params[k] for k in chart.all_sides()} if check else dict(edge_params)
        if check:
            self._validate(triangle_params, edge_params)

    def _validate(self, tp, ep):
        if len(tp) != len(self.chart.triangles) or len(ep) != 2 * len(self.chart.edges):
            raise ValidationError("COUNT_MISMATCH", "parameter count does not match the chart")
        for name, v in list(self.triangle_params.items()) + list(self.edge_params.items()):
            if not v > 0:
                raise ValidationError("NONPOSITIVE_PARAMETER", f"parameter at {name} is {v}")

    def edge(self, side) -> object:
        return self.edge_params[(side[0], side[1] % 3)]

    def other(self, side) -> object:
        """Parameter of the opposite orientation of the edge at ``side``."""
        return self.edge_params[self.chart.partner(side)]

    def tri(self, t: str):
        return self.triangle_params[t]

    def edge_pair(self, e: str) -> tuple:
        a, b = self.chart.sides(e)
        return self.edge_params[a], self.edge_params[b]

    def replace(self, triangle_params=None, edge_params=None, chart=None) -> "ACoords":
        tp = dict(self.triangle_params)
        ep = dict(self.edge_params)
        tp.update(triangle_params or {})
        ep.update(edge_params or {})
        return ACoords(chart or self.chart, tp, ep, self.backend)

    def map_values(self, fn) -> "ACoords":
        return ACoords(self.chart, {t: fn(v) for t, v in self.triangle_params.items()},
                       {k: fn(v) for k, v in self.edge_params.items()}, self.backend)

    def to_float(self) -> "ACoords":
        c = self.map_values(float)
        c.backend = FLOAT
        return c

    def values(self) -> list:
        return list(self.triangle_params.values()) + list(self.edge_params.values())

    def __eq__(self, other):
        if not isinstance(other, ACoords):
            return NotImplemented
        return (self.chart == other.chart and self.triangle_params == other.triangle_params
                and self.edge_params == other.edge_params)

    def __repr__(self):
        return f"ACoords({self.chart!r}, backend={self.backend!r})"

    def to_json(self) -> dict:
        edges = {}
        for e in self.chart.edges:
            edges[e] = {side_key(k): serialize(self.edge_params[k]) for k in self.chart.sides(e)}
        return {
            "backend": self.backend,
            "triangle_params": {t: serialize(v) for t, v in self.triangle_params.items()},
            "edge_params": edges,
        }


def coords_from_json(chart: IdealTriangulation, data: dict) -> ACoords:
    backend = data.get("backend", RATIONAL)
    try:
        tp = {t: to_scalar(v, backend) for t, v in data["triangle_params"].items()}
        ep = {}
        for e, d in data["edge_params"].items():
            for key, v in d.items():
                side = parse_side_key(key)
                if chart.edge_at(side) != e:
                    raise ValidationError("BAD_KEY", f"{key} is not a side of edge {e}")
                ep[side] = to_scalar(v, backend)
    except (KeyError, AttributeError, TypeError) as exc:
        raise ValidationError("BAD_FORMAT", f"malformed coordinates file: {exc}") from None
    missing = [t for t in chart.triangles if t not in tp] + [side_key(k) for k in chart.all_sides() if k not in ep]
    if missing:
        raise ValidationError("COUNT_MISMATCH", f"missing parameters: {', '.join(missing)}")
    return ACoords(chart, tp, ep, backend)


def load_coords(chart: IdealTriangulation, path) -> ACoords:
    with open(path) as fh:
        return coords_from_json(chart, json.load(fh))


def constant_coords(chart: IdealTriangulation, value=1, backend: str = RATIONAL) -> ACoords:
    v = to_scalar(value, backend)
    return ACoords(chart, {t: v for t in chart.triangles}, {k: v for k in chart.all_sides()}, backend)


def random_coords(chart: IdealTriangulation, rng: random.Random, backend: str = RATIONAL,
                  max_num: int = 20, max_den: int = 20) -> ACoords:
    """Random positive coordinates; rationals p/q with 1 <= p <= max_num, 1 <= q <= max_den."""
    def draw():
        x = Fraction(rng.randint(1, max_num), rng.randint(1, max_den))
        return x if backend == RATIONAL else float(x)
    return ACoords(chart, {t: draw() for t in chart.triangles},
                   {k: draw() for k in chart.all_sides()}, backend)


# Outitude

@dataclass(frozen=True)
class EdgeNeighborhood:
    """Parameters around an edge, read slot by slot so self-gluings resolve.

    ``A`` belongs to the triangle holding the first side of the edge, ``B`` to
    the other. Proximal parameters leave an endpoint of the edge and end at
    an apex; distal ones point back from the apexes.
    """

    A: object
    B: object
    e_plus: object
    e_minus: object
    a_minus: object
    b_plus: object
    c_plus: object
    d_minus: object
    a_plus: object
    b_minus: object
    c_minus: object
    d_plus: object


def edge_neighborhood(coords: ACoords, e: str) -> EdgeNeighborhood:
    q = flip_quad(coords.chart, e)
    p = coords.edge_params
    other = coords.other
    return EdgeNeighborhood(
        A=coords.triangle_params[q["t"]], B=coords.triangle_params[q["u"]],
        e_plus=p[q["e_plus"]], e_minus=p[q["e_minus"]],
        a_minus=p[q["a"]], b_plus=other(q["b"]), c_plus=p[q["c"]], d_minus=other(q["d"]),
        a_plus=other(q["a"]), b_minus=p[q["b"]], c_minus=other(q["c"]), d_plus=p[q["d"]],
    )


def outitude(coords: ACoords, e: str):
    """Signed outitude of edge ``e``; negative means flipping ``e`` improves convexity."""
    n = edge_neighborhood(coords, e)
    ee = n.e_plus * n.e_minus
    return (n.A * (n.e_plus * n.c_plus + n.e_minus * n.d_minus - ee)
            + n.B * (n.e_plus * n.b_plus + n.e_minus * n.a_minus - ee))


def outitudes(coords: ACoords) -> dict:
    return {e: outitude(coords, e) for e in coords.chart.edges}


# Flips

def flip_transform(coords: ACoords, e: str, return_map: bool = False):
    """Coordinates of the same structure on the chart with ``e`` flipped.

    With ``return_map`` the old-side to new-side relabeling is returned too.
    """
    chart = coords.chart
    if not chart.has_edge(e):
        raise ValidationError("UNKNOWN_EDGE", f"no edge {e!r}")
    res = flip_edge(chart, e)
    n = edge_neighborhood(coords, e)
    A, B = n.A, n.B
    C = (A * n.c_plus + B * n.b_plus) / n.e_minus   # triangle (C1, C2, C3)
    D = (A * n.d_minus + B * n.a_minus) / n.e_plus  # triangle (C0, C1, C3)
    f_plus = (C * n.a_plus + D * n.b_minus) / A     # tail C1
    f_minus = (C * n.d_plus + D * n.c_minus) / B    # tail C3

    q = flip_quad(chart, e)
    t, s, u, v = q["t"], q["s"], q["u"], q["v"]
    new_edges = {}
    for side, val in coords.edge_params.items():
        if side not in (q["e_minus"], q["e_plus"]):
            new_edges[res.side_map[side]] = val
    new_edges[(t, s)] = f_minus
    new_edges[(u, v)] = f_plus
    new_tris = dict(coords.triangle_params)
    new_tris[t] = C
    new_tris[u] = D
    out = ACoords(res.triangulation, new_tris, new_edges, coords.backend)
    if return_map:
        return out, res.side_map
    return out


def chart_transition(coords: ACoords, flips: Iterable[str]) -> ACoords:
    """Apply ``flip_transform`` for each edge id in turn."""
    for e in flips:
        coords = flip_transform(coords, e)
    return coords


# Rescaling

def _check_scale(lam):
    if not lam > 0:
        raise ValidationError("NONPOSITIVE_SCALE", f"scale factor {lam} must be positive")


def rescale_vector(coords: ACoords, puncture: str, lam) -> ACoords:
    """Scale the vector decoration at a puncture by ``lam``.

    Edge parameters whose head is at the puncture scale by ``lam``; a triangle
    scales by ``lam**m`` where ``m`` counts its corners there.
    """
    _check_scale(lam)
    chart = coords.chart
    chart.orbit(puncture)
    ep = {k: (v * lam if chart.head(k) == puncture else v) for k, v in coords.edge_params.items()}
    tp = {}
    for t, v in coords.triangle_params.items():
        m = sum(1 for c in range(3) if chart.puncture_of(t, c) == puncture)
        tp[t] = v * lam ** m
    return ACoords(chart, tp, ep, coords.backend)


def rescale_covector(coords: ACoords, puncture: str, lam) -> ACoords:
    """Scale the covector decoration at a puncture: edge parameters with tail there scale by ``lam``."""
    _check_scale(lam)
    chart = coords.chart
    chart.orbit(puncture)
    ep = {k: (v * lam if chart.tail(k) == puncture else v) for k, v in coords.edge_params.items()}
    return ACoords(chart, dict(coords.triangle_params), ep, coords.backend)


def normalize_decorations(coords: ACoords) -> ACoords:
    """Representative with triangle parameters summing to one and, at every
    puncture, the parameters of outgoing oriented edges summing to one."""
    if coords.backend != FLOAT:
        raise ComputationError("EXACT_BACKEND_UNSUPPORTED", "normalization needs cube roots; use the float backend")
    chart = coords.chart
    lam = sum(coords.triangle_params.values()) ** (-1.0 / 3.0)
    tp = {t: v * lam ** 3 for t, v in coords.triangle_params.items()}
    ep = {k: v * lam for k, v in coords.edge_params.items()}
    out = ACoords(chart, tp, ep, FLOAT)
    for p in chart.punctures:
        total = sum(v for k, v in out.edge_params.items() if chart.tail(k) == p)
        out = rescale_covector(out, p, 1.0 / total)
    return out


# X-coordinates

@dataclass
class XCoords:
    chart: IdealTriangulation
    triple_ratios: dict
    quadruple_ratios: dict

    def to_json(self) -> dict:
        return {
            "triple_ratios": {t: serialize(v) for t, v in self.triple_ratios.items()},
            "quadruple_ratios": {
                e: {side_key(k): serialize(self.quadruple_ratios[k]) for k in self.chart.sides(e)}
                for e in self.chart.edges
            },
        }


def triple_ratio(coords: ACoords, t: str):
    num = coords.edge((t, 0)) * coords.edge((t, 1)) * coords.edge((t, 2))
    den = coords.other((t, 0)) * coords.other((t, 1)) * coords.other((t, 2))
    return num / den


def quadruple_ratio(coords: ACoords, side):
    """Quadruple ratio attached to the oriented edge keyed by ``side``."""
    u, sg = side
    v, tau = coords.chart.partner(side)
    return (coords.tri(v) * coords.other((u, sg + 2))) / (coords.tri(u) * coords.edge((v, tau + 1)))


def to_x_coords(coords: ACoords) -> XCoords:
    chart = coords.chart
    return XCoords(chart,
                   {t: triple_ratio(coords, t) for t in chart.triangles},
                   {k: quadruple_ratio(coords, k) for k in chart.all_sides()})


def finite_area_residuals(x: XCoords) -> dict:
    """Per puncture: (product of outgoing quadruple ratios,
    product of incoming quadruple ratios times the triple ratio at each corner).

    The structure has finite area exactly when every entry is one.
    """
    chart = x.chart
    out = {}
    for p in chart.punctures:
        prod_out = 1
        prod_in = 1
        for k, q in x.quadruple_ratios.items():
            if chart.tail(k) == p:
                prod_out = prod_out * q
            if chart.head(k) == p:
                prod_in = prod_in * q
        for t, c in chart.orbit(p):
            prod_in = prod_in * x.triple_ratios[t]
        out[p] = (prod_out, prod_in)
    return out
