"""Combinatorics of ideal triangulations of punctured surfaces.

A triangulation is a set of triangles with corners 0, 1, 2 in counterclockwise
order, glued along edges. Slot ``i`` of a triangle is the edge from corner
``i`` to corner ``i + 1``. Each edge is glued to two sides ``(triangle, slot)``
with opposite orientations, so corner ``s`` of ``t`` meets corner ``s' + 1``
of ``t'`` when side ``(t, s)`` is glued to ``(t', s')``.

A side doubles as the key of an oriented edge: side ``(t, s)`` stands for the
edge oriented from corner ``s`` (its tail) to corner ``s + 1`` (its head).
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .errors import ValidationError

Side = tuple  # (triangle id, slot)


@dataclass(frozen=True)
class SurfaceSignature:
    genus: int
    punctures: int

    def __post_init__(self):
        if self.genus < 0 or self.punctures < 1:
            raise ValidationError("BAD_SIGNATURE", f"genus {self.genus}, punctures {self.punctures}")
        if 2 * self.genus + self.punctures <= 2:
            raise ValidationError("BAD_SIGNATURE", "Euler characteristic must be negative")

    @property
    def num_triangles(self) -> int:
        return 4 * self.genus - 4 + 2 * self.punctures

    @property
    def num_edges(self) -> int:
        return 6 * self.genus - 6 + 3 * self.punctures


@dataclass(frozen=True)
class OrientedEdge:
    """An edge together with a direction, identified by the side whose tail it leaves."""

    edge: str
    triangle: str
    slot: int

    @property
    def side(self) -> Side:
        return (self.triangle, self.slot)

    @property
    def key(self) -> str:
        return side_key(self.side)


def side_key(side: Side) -> str:
    return f"tail_{side[0]}_s{side[1]}"


def parse_side_key(key: str) -> Side:
    if not key.startswith("tail_") or "_s" not in key[5:]:
        raise ValidationError("BAD_KEY", f"cannot parse oriented edge key {key!r}")
    body = key[5:]
    t, _, s = body.rpartition("_s")
    try:
        slot = int(s)
    except ValueError:
        raise ValidationError("BAD_KEY", f"cannot parse oriented edge key {key!r}") from None
    return (t, slot)


class IdealTriangulation:
    """Validated gluing of triangles. Immutable by convention.

    Use :func:`build_triangulation` to construct one from raw gluing data.
    """

    def __init__(self, signature: SurfaceSignature, triangles: Sequence[str],
                 gluings: Mapping[str, tuple]):
        self.signature = signature
        self.triangles = tuple(triangles)
        self.edges = tuple(gluings)
        self._sides = {e: (tuple(a), tuple(b)) for e, (a, b) in gluings.items()}
        self._tri_index = {t: i for i, t in enumerate(self.triangles)}
        self._edge_index = {e: i for i, e in enumerate(self.edges)}
        self._edge_at = {}
        self._partner = {}
        for e, (a, b) in self._sides.items():
            self._edge_at[a] = e
            self._edge_at[b] = e
            self._partner[a] = b
            self._partner[b] = a
        self._orbits = None
        self._corner_puncture = None

    # basic queries

    def sides(self, edge: str) -> tuple:
        try:
            return self._sides[edge]
        except KeyError:
            raise ValidationError("UNKNOWN_EDGE", f"no edge {edge!r}") from None

    def edge_at(self, side: Side) -> str:
        return self._edge_at[(side[0], side[1] % 3)]

    def partner(self, side: Side) -> Side:
        return self._partner[(side[0], side[1] % 3)]

    def triangle_index(self, t: str) -> int:
        return self._tri_index[t]

    def edge_index(self, e: str) -> int:
        return self._edge_index[e]

    def has_edge(self, e: str) -> bool:
        return e in self._sides

    def all_sides(self) -> list:
        """Every oriented edge key, grouped by edge in edge order."""
        out = []
        for e in self.edges:
            out.extend(self._sides[e])
        return out

    def oriented(self, side: Side) -> OrientedEdge:
        return OrientedEdge(self.edge_at(side), side[0], side[1] % 3)

    def is_flippable(self, edge: str) -> bool:
        a, b = self.sides(edge)
        return a[0] != b[0]

    # punctures

    def _compute_orbits(self):
        seen = set()
        orbits = []
        for t in self.triangles:
            for c in range(3):
                if (t, c) in seen:
                    continue
                orbit = []
                cur = (t, c)
                while cur not in seen:
                    seen.add(cur)
                    orbit.append(cur)
                    pt, ps = self._partner[cur]
                    cur = (pt, (ps + 1) % 3)
                orbits.append(tuple(orbit))
        self._orbits = tuple(orbits)
        self._corner_puncture = {}
        for i, orbit in enumerate(orbits):
            for corner in orbit:
                self._corner_puncture[corner] = f"p{i}"

    @property
    def corner_orbits(self) -> tuple:
        """Corner orbits, each listed in the order met when rotating around the puncture."""
        if self._orbits is None:
            self._compute_orbits()
        return self._orbits

    @property
    def punctures(self) -> tuple:
        return tuple(f"p{i}" for i in range(len(self.corner_orbits)))

    def orbit(self, puncture: str) -> tuple:
        try:
            i = int(puncture[1:]) if puncture.startswith("p") else -1
        except ValueError:
            i = -1
        if not 0 <= i < len(self.corner_orbits):
            raise ValidationError("UNKNOWN_PUNCTURE", f"no puncture {puncture!r}")
        return self.corner_orbits[i]

    def puncture_of(self, t: str, corner: int) -> str:
        if self._corner_puncture is None:
            self._compute_orbits()
        return self._corner_puncture[(t, corner % 3)]

    def tail(self, side: Side) -> str:
        return self.puncture_of(side[0], side[1])

    def head(self, side: Side) -> str:
        return self.puncture_of(side[0], side[1] + 1)

    def valence(self, puncture: str) -> int:
        return len(self.orbit(puncture))

    # serialization

    def to_json(self) -> dict:
        return {
            "genus": self.signature.genus,
            "punctures": self.signature.punctures,
            "triangles": list(self.triangles),
            "gluings": [
                {"edge": e, "sides": [[a[0], a[1]], [b[0], b[1]]]}
                for e, (a, b) in self._sides.items()
            ],
        }

    def gluing_list(self) -> list:
        return [(e, a, b) for e, (a, b) in self._sides.items()]

    def __eq__(self, other):
        if not isinstance(other, IdealTriangulation):
            return NotImplemented
        return (self.signature == other.signature and self.triangles == other.triangles
                and self._sides == other._sides)

    def __hash__(self):
        return hash((self.signature, self.triangles, tuple(self._sides.items())))

    def __repr__(self):
        return (f"IdealTriangulation(genus={self.signature.genus}, "
                f"punctures={self.signature.punctures}, triangles={len(self.triangles)})")


def build_triangulation(signature: SurfaceSignature, gluing: Iterable,
                        triangles: Optional[Sequence[str]] = None) -> IdealTriangulation:
    """Validate raw gluing data and return a triangulation.

    ``gluing`` is a list of ``(edge id, (t, slot), (t', slot'))``. When
    ``triangles`` is omitted the triangle ids are collected in order of
    first appearance.
    """
    gluing = [(e, tuple(a), tuple(b)) for e, a, b in gluing]
    if triangles is None:
        order = []
        for _, a, b in gluing:
            for t, _s in (a, b):
                if t not in order:
                    order.append(t)
        triangles = order
    triangles = list(triangles)
    if len(set(triangles)) != len(triangles):
        raise ValidationError("DUPLICATE_TRIANGLE", "triangle ids must be unique")
    tri_set = set(triangles)

    used = {}
    edges = {}
    for e, a, b in gluing:
        if e in edges:
            raise ValidationError("DUPLICATE_EDGE", f"edge {e!r} listed twice")
        for t, s in (a, b):
            if t not in tri_set or not isinstance(s, int) or isinstance(s, bool) or not 0 <= s <= 2:
                raise ValidationError("BAD_REFERENCE", f"edge {e!r} refers to ({t!r}, {s!r})")
        for side in (a, b):
            if side in used:
                raise ValidationError("DUPLICATE_SLOT", f"slot {side} used by {used[side]!r} and {e!r}")
            used[side] = e
        edges[e] = (a, b)

    if len(triangles) != signature.num_triangles or len(edges) != signature.num_edges:
        raise ValidationError(
            "COUNT_MISMATCH",
            f"signature ({signature.genus},{signature.punctures}) needs "
            f"{signature.num_triangles} triangles and {signature.num_edges} edges, "
            f"got {len(triangles)} and {len(edges)}")
    for t in triangles:
        for s in range(3):
            if (t, s) not in used:
                raise ValidationError("UNGLUED_SLOT", f"slot ({t}, {s}) is not glued")

    tri = IdealTriangulation(signature, triangles, edges)

    # connectivity of the triangle gluing graph
    seen = {triangles[0]}
    queue = deque([triangles[0]])
    while queue:
        t = queue.popleft()
        for s in range(3):
            u = tri.partner((t, s))[0]
            if u not in seen:
                seen.add(u)
                queue.append(u)
    if len(seen) != len(triangles):
        raise ValidationError("DISCONNECTED", "triangle gluing graph is not connected")

    if len(tri.corner_orbits) != signature.punctures:
        raise ValidationError(
            "PUNCTURE_MISMATCH",
            f"{len(tri.corner_orbits)} corner orbits but {signature.punctures} punctures")
    return tri


def triangulation_from_json(data: dict) -> IdealTriangulation:
    try:
        sig = SurfaceSignature(int(data["genus"]), int(data["punctures"]))
        gl = [(g["edge"], tuple(g["sides"][0]), tuple(g["sides"][1])) for g in data["gluings"]]
        tris = data.get("triangles")
    except (KeyError, TypeError, IndexError) as exc:
        raise ValidationError("BAD_FORMAT", f"malformed surface file: {exc}") from None
    return build_triangulation(sig, gl, tris)


def load_triangulation(path) -> IdealTriangulation:
    with open(path) as fh:
        return triangulation_from_json(json.load(fh))


# Flips

@dataclass(frozen=True)
class FlipResult:
    triangulation: IdealTriangulation
    side_map: dict  # old side -> new side
    edge: str

    def __iter__(self):
        # allows ``new_tri, relabel = flip_edge(...)``
        yield self.triangulation
        yield self.side_map


def flip_quad(tri: IdealTriangulation, e: str) -> dict:
    """Name the sides around edge ``e`` with sides ``(t, s)`` and ``(t', s')``.

    The quadrilateral has corners C0 = corner s+1 of t, C1 = apex of t,
    C2 = corner s of t, C3 = apex of t'. Keys ``a``..``d`` are the sides of the
    four outer edges as seen from inside the quadrilateral.
    """
    (t, s), (u, v) = tri.sides(e)
    return {
        "t": t, "s": s, "u": u, "v": v,
        "e_minus": (t, s), "e_plus": (u, v),
        "a": (t, (s + 1) % 3), "b": (t, (s + 2) % 3),
        "c": (u, (v + 1) % 3), "d": (u, (v + 2) % 3),
    }


def flip_edge(tri: IdealTriangulation, e: str) -> FlipResult:
    """Replace ``e`` by the other diagonal of its quadrilateral.

    The new edge keeps the id ``e`` and the two triangles keep their ids.
    Returns the new triangulation and a map from old sides to new sides that
    is the identity away from the quadrilateral.
    """
    if not tri.has_edge(e):
        raise ValidationError("UNKNOWN_EDGE", f"no edge {e!r}")
    if not tri.is_flippable(e):
        raise ValidationError("UNFLIPPABLE_EDGE", f"edge {e!r} is the inner edge of a self-folded triangle")
    q = flip_quad(tri, e)
    t, s, u, v = q["t"], q["s"], q["u"], q["v"]
    # new t = (C3, C1, C2) on corners (s, s+1, s+2): slots f, b, c
    # new u = (C1, C3, C0) on corners (v, v+1, v+2): slots f, d, a
    side_map = {
        (t, s): (t, s),
        (u, v): (u, v),
        q["a"]: (u, (v + 2) % 3),
        q["b"]: (t, (s + 1) % 3),
        q["c"]: (t, (s + 2) % 3),
        q["d"]: (u, (v + 1) % 3),
    }

    def m(side):
        return side_map.get(side, side)

    gluings = {}
    for x in tri.edges:
        a, b = tri.sides(x)
        gluings[x] = (m(a), m(b))
    new = IdealTriangulation(tri.signature, tri.triangles, gluings)
    full = {side: m(side) for side in tri.all_sides()}
    return FlipResult(new, full, e)


def relabel_triangulation(tri: IdealTriangulation, tri_names: Mapping[str, str],
                          edge_names: Mapping[str, str], rotation: Mapping[str, int] = None,
                          shuffle_order=None) -> tuple:
    """Rename triangles and edges, optionally rotating corner labels.

    ``rotation[t] = k`` relabels corner ``i`` of ``t`` as corner ``i - k``.
    Returns the new triangulation and the side map.
    """
    rotation = rotation or {}

    def m(side):
        t, s = side
        return (tri_names[t], (s - rotation.get(t, 0)) % 3)

    tris = [tri_names[t] for t in tri.triangles]
    edges = list(tri.edges)
    if shuffle_order is not None:
        tris = [tris[i] for i in shuffle_order[0]]
        edges = [edges[i] for i in shuffle_order[1]]
    gluings = {}
    for e in edges:
        a, b = tri.sides(e)
        gluings[edge_names[e]] = (m(a), m(b))
    new = IdealTriangulation(tri.signature, tris, gluings)
    return new, {side: m(side) for side in tri.all_sides()}


def extend_side_map(src: IdealTriangulation, dst: IdealTriangulation, partial: Mapping) -> Optional[dict]:
    """Extend a partial side map to a full isomorphism ``src -> dst``.

    A map on one side of a triangle fixes the image of the whole triangle.
    Returns ``None`` when the partial data does not extend to an
    orientation-preserving isomorphism of gluings.
    """
    full = {}
    queue = deque(partial.items())
    while queue:
        (t, s), (t2, s2) = queue.popleft()
        if (t, s) in full:
            if full[(t, s)] != (t2, s2):
                return None
            continue
        if t2 not in dst._tri_index or not 0 <= s2 <= 2:
            return None
        shift = (s2 - s) % 3
        for i in range(3):
            img = (t2, (i + shift) % 3)
            if full.get((t, i), img) != img:
                return None
            full[(t, i)] = img
        for i in range(3):
            queue.append((src.partner((t, i)), dst.partner(full[(t, i)])))
    if len(full) != 3 * len(src.triangles):
        return None
    if len({x[0] for x in full.values()}) != len(dst.triangles):
        return None
    for e in src.edges:
        a, b = src.sides(e)
        try:
            if dst.partner(full[a]) != full[b]:
                return None
        except KeyError:
            return None
    return full


# Standard subdivisions and cell decompositions

@dataclass(frozen=True)
class Polygon:
    """A complementary polygon with its fan triangulation.

    ``boundary[i]`` is the side of the chart running from V_i to V_{i+1};
    triangle ``triangles[m]`` has corners (V0, V_{m+1}, V_{m+2}) and diagonal
    ``diagonals[m]`` joins V0 to V_{m+2}.
    """

    triangles: tuple
    diagonals: tuple
    boundary: tuple

    @property
    def n(self) -> int:
        return len(self.boundary)

    def diagonal_sides(self, m: int) -> tuple:
        """(side with tail V0, side with tail V_{m+2}) of diagonal ``m``."""
        return (self.triangles[m + 1], 0), (self.triangles[m], 2)


@dataclass(frozen=True)
class CellDecomposition:
    chart: IdealTriangulation
    kept_edges: tuple
    polygons: tuple = field(default=())

    @property
    def diagonal_edges(self) -> tuple:
        return tuple(d for p in self.polygons for d in p.diagonals)

    def is_kept(self, e: str) -> bool:
        return e in self.kept_edges


def _regions(chart: IdealTriangulation, kept: set) -> list:
    """Split the chart along kept edges; return boundary cycles of the regions.

    Each region is returned as ``(triangles, removed_edges, cycle, corners)``
    where ``cycle`` lists boundary sides counterclockwise and ``corners[i]``
    holds the triangle corners at the tail of ``cycle[i]``.
    """
    parent = {t: t for t in chart.triangles}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in chart.edges:
        if e in kept:
            continue
        (t, _), (u, _) = chart.sides(e)
        parent[find(t)] = find(u)
    groups = {}
    for t in chart.triangles:
        groups.setdefault(find(t), []).append(t)

    regions = []
    for root, tris in groups.items():
        tri_set = set(tris)
        removed = [e for e in chart.edges if e not in kept and chart.sides(e)[0][0] in tri_set]
        if len(removed) != len(tris) - 1:
            raise ValidationError("NOT_A_CELL_DECOMPOSITION",
                                  f"region of {len(tris)} triangles is not a disc")
        bsides = [(t, s) for t in tris for s in range(3) if chart.edge_at((t, s)) in kept]
        start = bsides[0]
        cycle, corners = [], []
        cur = start
        while True:
            cycle.append(cur)
            t, s = cur
            cand = (t, (s + 1) % 3)
            at_vertex = [cand]
            while chart.edge_at(cand) not in kept:
                pt, ps = chart.partner(cand)
                cand = (pt, (ps + 1) % 3)
                at_vertex.append(cand)
            corners.append(tuple(at_vertex))  # corners at the head of cur
            cur = cand
            if cur == start:
                break
            if len(cycle) > len(bsides):
                break
        if len(cycle) != len(bsides) or len(cycle) != len(tris) + 2:
            raise ValidationError("NOT_A_CELL_DECOMPOSITION", "region boundary is not a single cycle")
        # corners[i] sits at the head of cycle[i], which is the tail of cycle[i+1]
        tail_corners = [corners[i - 1] for i in range(len(cycle))]
        regions.append((tris, removed, cycle, tail_corners))
    return regions


def standard_subdivision(chart: IdealTriangulation, kept: Iterable[str]) -> CellDecomposition:
    """Re-triangulate every complementary polygon by a fan from one corner.

    The fan vertex V0 of a polygon is the vertex holding the triangle corner
    with the smallest (triangle position, corner index). Triangle and
    diagonal ids of each polygon are reused in chart order.
    """
    kept = list(dict.fromkeys(kept))
    for e in kept:
        if not chart.has_edge(e):
            raise ValidationError("UNKNOWN_EDGE", f"no edge {e!r}")
    kept_set = set(kept)
    kept_sorted = tuple(e for e in chart.edges if e in kept_set)
    regions = _regions(chart, kept_set)
    side_map = {}
    polygons = []
    for tris, removed, cycle, corners in regions:
        n = len(cycle)
        if n == 3:
            continue
        best = min(range(n), key=lambda i: min((chart.triangle_index(t), c) for t, c in corners[i]))
        cycle = cycle[best:] + cycle[:best]
        A = tuple(sorted(tris, key=chart.triangle_index))
        diag = tuple(sorted(removed, key=chart.edge_index))
        for i, side in enumerate(cycle):
            if i == 0:
                side_map[side] = (A[0], 0)
            elif i == n - 1:
                side_map[side] = (A[n - 3], 2)
            else:
                side_map[side] = (A[i - 1], 1)
        poly = Polygon(A, diag, tuple(side_map[s] for s in cycle))
        polygons.append(poly)
    if not polygons:
        return CellDecomposition(chart, kept_sorted, ())

    gluings = {}
    diag_sides = {}
    for poly in polygons:
        for m, d in enumerate(poly.diagonals):
            diag_sides[d] = poly.diagonal_sides(m)
    for e in chart.edges:
        if e in diag_sides:
            gluings[e] = diag_sides[e]
        else:
            a, b = chart.sides(e)
            gluings[e] = (side_map.get(a, a), side_map.get(b, b))
    new_chart = IdealTriangulation(chart.signature, chart.triangles, gluings)
    polygons.sort(key=lambda p: new_chart.triangle_index(p.triangles[0]))
    return CellDecomposition(new_chart, kept_sorted, tuple(polygons))


def full_cell(chart: IdealTriangulation) -> CellDecomposition:
    return CellDecomposition(chart, tuple(chart.edges), ())


# Monodromy graph

@dataclass(frozen=True)
class PathStep:
    """One step of a path in the monodromy graph.

    Nodes are sides ``(t, slot)``. A triangle step stays inside ``t`` and
    moves from slot ``i`` to slot ``i +/- 1``; its sign is +1 for ``i + 1``.
    An edge step crosses from a side to its partner.
    """

    kind: str
    source: Side
    target: Side

    @property
    def sign(self) -> int:
        if self.kind != "triangle":
            return 0
        return 1 if (self.source[1] + 1) % 3 == self.target[1] else -1

    def reversed(self) -> "PathStep":
        return PathStep(self.kind, self.target, self.source)


@dataclass(frozen=True)
class MonodromyGraph:
    nodes: tuple
    triangle_arcs: tuple  # PathStep with sign +1, one per (triangle, corner)
    edge_arcs: tuple  # (edge id, PathStep)


def monodromy_graph(tri: IdealTriangulation) -> MonodromyGraph:
    nodes = tuple((t, s) for t in tri.triangles for s in range(3))
    tarcs = tuple(PathStep("triangle", (t, (c - 1) % 3), (t, c)) for t in tri.triangles for c in range(3))
    earcs = tuple((e, PathStep("edge", *tri.sides(e))) for e in tri.edges)
    return MonodromyGraph(nodes, tarcs, earcs)


def peripheral_path(tri: IdealTriangulation, puncture: str) -> list:
    """Closed path around a puncture: one triangle step and one edge step per corner."""
    path = []
    for t, c in tri.orbit(puncture):
        path.append(PathStep("triangle", (t, (c - 1) % 3), (t, c)))
        path.append(PathStep("edge", (t, c), tri.partner((t, c))))
    return path


# Relabeling-invariant encodings

def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _encode_from(tri: IdealTriangulation, start: Side, coords) -> list:
    label = {start[0]: 0}
    offset = {start[0]: start[1]}
    order = [start[0]]
    out = []
    i = 0
    while i < len(order):
        t = order[i]
        i += 1
        off = offset[t]
        row = []
        for k in range(3):
            pt, ps = tri.partner((t, (off + k) % 3))
            if pt not in label:
                label[pt] = len(order)
                offset[pt] = ps
                order.append(pt)
            row.append((label[pt], (ps - offset[pt]) % 3))
        out.append(row)
    if coords is None:
        return out
    vals = []
    for t in order:
        off = offset[t]
        vals.append([_fmt(coords.triangle_params[t])]
                    + [_fmt(coords.edge_params[(t, (off + k) % 3)]) for k in range(3)])
    return [out, vals]


def _cell_encoding(cell: CellDecomposition) -> bytes:
    chart = cell.chart
    kept = set(cell.kept_edges)
    regions = _regions(chart, kept)
    where = {}
    for r, (_, _, cycle, _) in enumerate(regions):
        for i, side in enumerate(cycle):
            where[side] = (r, i)
    best = None
    for r0, (_, _, cyc0, _) in enumerate(regions):
        for i0 in range(len(cyc0)):
            label = {r0: 0}
            offset = {r0: i0}
            order = [r0]
            out = []
            j = 0
            while j < len(order):
                r = order[j]
                j += 1
                cyc = regions[r][2]
                n = len(cyc)
                row = [n]
                for k in range(n):
                    pr, pi = where[chart.partner(cyc[(offset[r] + k) % n])]
                    if pr not in label:
                        label[pr] = len(order)
                        offset[pr] = pi
                        order.append(pr)
                    row.append((label[pr], (pi - offset[pr]) % len(regions[pr][2])))
                out.append(row)
            enc = json.dumps(out, separators=(",", ":")).encode()
            if best is None or enc < best:
                best = enc
    sig = chart.signature
    return f"cell:{sig.genus},{sig.punctures}:".encode() + best


def canonical_encoding(tri, coords=None) -> bytes:
    """Encoding that is equal for triangulations differing only by labels.

    Accepts an :class:`IdealTriangulation` (optionally with coordinates on
    it) or a :class:`CellDecomposition`. Cells are encoded through their
    polygons only, so the choice of diagonals does not matter.
    """
    if isinstance(tri, CellDecomposition):
        return _cell_encoding(tri)
    best = None
    for side in tri.all_sides():
        enc = json.dumps(_encode_from(tri, side, coords), separators=(",", ":")).encode()
        if best is None or enc < best:
            best = enc
    sig = tri.signature
    return f"tri:{sig.genus},{sig.punctures}:".encode() + best
