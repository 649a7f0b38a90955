"""Developing map: realize A-coordinates by concrete flags in R^3.

A concrete flag is a vector ``C`` with a covector ``r`` satisfying
``r . C = 0``. A decorated triangle is three flags with ``r_i . C_j > 0``
for ``i != j`` and ``det(C_0 | C_1 | C_2) > 0``. Starting from one triangle
in a normal form, neighbours are placed one edge at a time, which lifts the
triangulation to the universal cover.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .coords import ACoords, outitude
from .errors import ComputationError
from .linalg import columns, cross, det, dot, inverse, matmul, solve
from .scalar import FLOAT, TOL


@dataclass(frozen=True)
class ConcreteFlag:
    vector: tuple
    covector: tuple


@dataclass(frozen=True)
class ConcreteDecoratedTriangle:
    flags: tuple  # flag at corner 0, 1, 2

    def det(self):
        return det(columns(*(f.vector for f in self.flags)))

    def pairing(self, i: int, j: int):
        return dot(self.flags[i].covector, self.flags[j].vector)

    def is_valid(self) -> bool:
        return self.det() > 0 and all(self.pairing(i, j) > 0 for i in range(3) for j in range(3) if i != j)


def _pair_param(coords: ACoords, t: str, i: int, j: int):
    """Parameter of the oriented edge of ``t`` from corner ``i`` to corner ``j``."""
    if (i + 1) % 3 == j:
        return coords.edge((t, i))
    return coords.other((t, j))


def base_triangle(coords: ACoords, t: str) -> ConcreteDecoratedTriangle:
    """Normal form with vertex matrix diag(A, 1, 1); covectors follow from the pairings."""
    A = coords.tri(t)
    one = A / A
    zero = A - A
    diag = (A, one, one)
    vecs = [tuple(diag[k] if k == i else zero for k in range(3)) for i in range(3)]
    flags = []
    for i in range(3):
        cov = tuple(zero if k == i else _pair_param(coords, t, i, k) / diag[k] for k in range(3))
        flags.append(ConcreteFlag(vecs[i], cov))
    return ConcreteDecoratedTriangle(tuple(flags))


def next_vertex_closed_form(r0, c0, r2, c2, e03, e23, a023):
    """Vector C3 with r0.C3 = e03, r2.C3 = e23, det(C0|C2|C3) = a023, via an explicit inverse.

    With M = rows(r0, r2, C0 x C2) one has M . cols(C2, C0, r2 x r0) = diag(x, y, x y)
    where x = r0.C2 and y = r2.C0.
    """
    x = dot(r0, c2)
    y = dot(r2, c0)
    rhs = (e03 / x, e23 / y, a023 / (x * y))
    w = cross(r2, r0)
    return tuple(c2[i] * rhs[0] + c0[i] * rhs[1] + w[i] * rhs[2] for i in range(3))


def next_vertex_solve(r0, c0, r2, c2, e03, e23, a023):
    m = [list(r0), list(r2), cross(c0, c2)]
    try:
        return tuple(solve(m, [e03, e23, a023]))
    except ZeroDivisionError:
        raise ComputationError("SINGULAR_SYSTEM", "next-vertex system is singular") from None


def extend_across_edge(known: ConcreteDecoratedTriangle, e03, e23, a023, r3c0, r3c2,
                       i0: int = 0, i2: int = 2, closed_form: bool = True) -> ConcreteFlag:
    """New flag (r3, C3) across the edge joining flags ``i0`` and ``i2`` of ``known``.

    ``e03 = r0.C3``, ``e23 = r2.C3``, ``a023 = det(C0|C2|C3)``; the covector is
    fixed by ``r3.C3 = 0`` and the prescribed values ``r3c0``, ``r3c2``.
    """
    f0, f2 = known.flags[i0], known.flags[i2]
    r0, c0, r2, c2 = f0.covector, f0.vector, f2.covector, f2.vector
    if closed_form:
        try:
            c3 = next_vertex_closed_form(r0, c0, r2, c2, e03, e23, a023)
        except ZeroDivisionError:
            raise ComputationError("SINGULAR_SYSTEM", "edge pairings vanish") from None
    else:
        c3 = next_vertex_solve(r0, c0, r2, c2, e03, e23, a023)
    zero = e03 - e03
    try:
        r3 = tuple(solve([list(c3), list(c0), list(c2)], [zero, r3c0, r3c2]))
    except ZeroDivisionError:
        raise ComputationError("SINGULAR_SYSTEM", "covector system is singular") from None
    return ConcreteFlag(c3, r3)


@dataclass
class LiftedTriangle:
    id: tuple  # (base triangle, word of crossed sides)
    chart_triangle: str
    triangle: ConcreteDecoratedTriangle
    depth: int
    parent: Optional[tuple] = None
    entry_slot: Optional[int] = None  # slot of this triangle glued to the parent


@dataclass
class Development:
    coords: ACoords
    base: str
    depth: int
    triangles: dict = field(default_factory=dict)  # id -> LiftedTriangle
    adjacency: list = field(default_factory=list)  # (parent id, parent slot, child id, child slot)


def neighbor_flag(coords: ACoords, tri: ConcreteDecoratedTriangle, t: str, s: int, **kw) -> tuple:
    """Place the chart triangle across slot ``s`` of the placed triangle ``tri`` (chart id ``t``).

    Returns ``(u, v, flags)`` with ``flags`` indexed by the corners of ``u``.
    """
    u, v = coords.chart.partner((t, s))
    # corner v of u is corner s+1 of t, corner v+1 of u is corner s of t
    e03 = coords.other((u, v + 2))
    e23 = coords.edge((u, v + 1))
    r3c0 = coords.edge((u, v + 2))
    r3c2 = coords.other((u, v + 1))
    new = extend_across_edge(tri, e03, e23, coords.tri(u), r3c0, r3c2,
                             i0=(s + 1) % 3, i2=s, **kw)
    flags = [None, None, None]
    flags[v] = tri.flags[(s + 1) % 3]
    flags[(v + 1) % 3] = tri.flags[s]
    flags[(v + 2) % 3] = new
    return u, v, ConcreteDecoratedTriangle(tuple(flags))


def develop(coords: ACoords, base: str, depth: int, closed_form: bool = True) -> Development:
    """Breadth-first lift of the chart around ``base`` up to ``depth`` edge crossings."""
    if base not in coords.triangle_params:
        raise ComputationError("UNKNOWN_TRIANGLE", f"no triangle {base!r}")
    dev = Development(coords, base, depth)
    root = (base, ())
    dev.triangles[root] = LiftedTriangle(root, base, base_triangle(coords, base), 0)
    queue = deque([root])
    while queue:
        lid = queue.popleft()
        lt = dev.triangles[lid]
        if lt.depth >= depth:
            continue
        for s in range(3):
            if s == lt.entry_slot:
                continue
            u, v, tri = neighbor_flag(coords, lt.triangle, lt.chart_triangle, s, closed_form=closed_form)
            cid = (base, lid[1] + ((lt.chart_triangle, s),))
            dev.triangles[cid] = LiftedTriangle(cid, u, tri, lt.depth + 1, lid, v)
            dev.adjacency.append((lid, s, cid, v))
            queue.append(cid)
    return dev


def deck_matrix(dev: Development, lid) -> list:
    """Matrix carrying the base triangle's vectors onto those of a lift of the same chart triangle."""
    lt = dev.triangles[lid]
    if lt.chart_triangle != dev.base:
        raise ComputationError("NOT_A_LIFT", f"{lid} is a lift of {lt.chart_triangle}, not {dev.base}")
    base = dev.triangles[(dev.base, ())].triangle
    src = columns(*(f.vector for f in base.flags))
    dst = columns(*(f.vector for f in lt.triangle.flags))
    return matmul(dst, inverse(src))


@dataclass
class DevelopmentReport:
    ok: bool
    violations: list
    checked_pairs: int = 0


def _flag_key(flag: ConcreteFlag, backend: str):
    if backend == FLOAT:
        return tuple(round(x, 9) for x in flag.vector + flag.covector)
    return flag.vector + flag.covector


def verify_development(dev: Development) -> DevelopmentReport:
    """Check positivity and consistency of a development.

    (a) every lifted triangle has positive determinant, (b) every covector is
    positive on the vector of every other flag, (c) flags shared across an
    edge agree and every triangle reproduces the chart parameters.
    """
    backend = dev.coords.backend
    tol = TOL if backend == FLOAT else 0
    bad = []
    flags = {}
    for lid, lt in dev.triangles.items():
        d = lt.triangle.det()
        if not d > tol:
            bad.append(f"det {d} <= 0 at {lid}")
        for f in lt.triangle.flags:
            flags.setdefault(_flag_key(f, backend), f)
        t = lt.chart_triangle
        if not _close(d, dev.coords.tri(t), backend):
            bad.append(f"determinant mismatch at {lid}")
        for i in range(3):
            for j in range(3):
                if i != j and not _close(lt.triangle.pairing(i, j), _pair_param(dev.coords, t, i, j), backend):
                    bad.append(f"pairing ({i},{j}) mismatch at {lid}")
    for pid, s, cid, v in dev.adjacency:
        p = dev.triangles[pid].triangle.flags
        c = dev.triangles[cid].triangle.flags
        if c[v] != p[(s + 1) % 3] or c[(v + 1) % 3] != p[s]:
            bad.append(f"shared flags differ between {pid} and {cid}")
    flist = list(flags.values())
    pairs = 0
    for f in flist:
        for g in flist:
            if f is g:
                continue
            pairs += 1
            val = dot(f.covector, g.vector)
            if not val > tol:
                bad.append(f"r.C' = {val} <= 0")
    return DevelopmentReport(not bad, bad, pairs)


def _close(x, y, backend):
    if backend == FLOAT:
        return abs(x - y) <= TOL * max(1.0, abs(y))
    return x == y


def tetrahedron_outitudes(dev: Development) -> list:
    """For each developed edge: (edge id, determinant form, outitude formula).

    The determinant form is e+ e- (det D + det D' - det C - det C') where C, C'
    are the two placed triangles and D, D' the triangles of the flipped pair.
    """
    coords = dev.coords
    out = []
    for pid, s, cid, v in dev.adjacency:
        P = dev.triangles[pid]
        Q = dev.triangles[cid].triangle
        t = P.chart_triangle
        c2 = P.triangle.flags[s]
        c0 = P.triangle.flags[(s + 1) % 3]
        c1 = P.triangle.flags[(s + 2) % 3]
        c3 = Q.flags[(v + 2) % 3]
        vec = lambda f: f.vector  # noqa: E731
        dC = P.triangle.det()
        dC2 = Q.det()
        dD = det(columns(vec(c1), vec(c2), vec(c3)))
        dD2 = det(columns(vec(c0), vec(c1), vec(c3)))
        e_minus = dot(c2.covector, c0.vector)
        e_plus = dot(c0.covector, c2.vector)
        form = e_plus * e_minus * (dD + dD2 - dC - dC2)
        e = coords.chart.edge_at((t, s))
        out.append((e, form, outitude(coords, e)))
    return out


# Rendering

def _projector(dev: Development):
    base = dev.triangles[(dev.base, ())].triangle
    ell = [sum(f.covector[i] for f in base.flags) for i in range(3)]
    basis = [f.vector for f in base.flags]
    # equilateral reference triangle
    ref = [(0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3) / 2)]
    m = [[float(x) for x in row] for row in columns(*basis)]
    ellf = [float(x) for x in ell]
    ell_c = [dot(ellf, [float(x) for x in b]) for b in basis]

    def project(v):
        vf = [float(x) for x in v]
        s = dot(ellf, vf)
        if not s > 0 or not math.isfinite(s):
            raise ComputationError("PROJECTION_FAILURE", "vector is not in front of the base chart")
        w = solve(m, [x / s for x in vf])
        beta = [w[i] * ell_c[i] for i in range(3)]
        return (sum(beta[i] * ref[i][0] for i in range(3)),
                sum(beta[i] * ref[i][1] for i in range(3)))

    return project


def projected_triangles(dev: Development) -> dict:
    """Planar coordinates of every lifted triangle in the affine chart of the base triangle."""
    project = _projector(dev)
    return {lid: [project(f.vector) for f in lt.triangle.flags] for lid, lt in dev.triangles.items()}


def render_svg(dev: Development, width_px: int = 800, highlight_cell: bool = False) -> str:
    """SVG drawing of the development projected to the plane r0 + r1 + r2 = 1 of the base."""
    pts = projected_triangles(dev)
    xs = [p[0] for tri in pts.values() for p in tri]
    ys = [p[1] for tri in pts.values() for p in tri]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0) or 1.0
    pad = 0.05 * span
    x0, y0 = x0 - pad, y0 - pad
    span += 2 * pad
    scale = width_px / span
    height = int(math.ceil((y1 - y0 + pad) * scale))
    stroke = 0.005 * width_px

    def xy(p):
        return f"{(p[0] - x0) * scale:.4f},{(y0 + span - p[1]) * scale - (width_px - height):.4f}"

    positive = set()
    if highlight_cell:
        positive = {e for e in dev.coords.chart.edges if outitude(dev.coords, e) > 0}
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width_px}" height="{height}" '
        f'viewBox="0 0 {width_px} {height}">',
        f'<g stroke="#333333" stroke-width="{stroke:.3f}" stroke-linejoin="round">',
    ]
    for lid, tri in pts.items():
        fill = "#f4c06d" if lid[1] == () else "#cfe3f7"
        lines.append(f'<polygon points="{" ".join(xy(p) for p in tri)}" fill="{fill}"/>')
    if highlight_cell:
        for lid, tri in pts.items():
            t = dev.triangles[lid].chart_triangle
            for s in range(3):
                if dev.coords.chart.edge_at((t, s)) in positive:
                    a, b = tri[s], tri[(s + 1) % 3]
                    lines.append(f'<line x1="{xy(a).split(",")[0]}" y1="{xy(a).split(",")[1]}" '
                                 f'x2="{xy(b).split(",")[0]}" y2="{xy(b).split(",")[1]}" '
                                 f'stroke="#c0392b" stroke-width="{2 * stroke:.3f}"/>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
