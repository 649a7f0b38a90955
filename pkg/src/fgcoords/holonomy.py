"""Monodromy matrices from X-coordinates.

Paths live in the monodromy graph (nodes are sides ``(t, slot)``, see
:mod:`fgcoords.surface`). A triangle step turning counterclockwise inside
``t`` contributes ``T(t)``, a clockwise one ``T(t)^-1``. Crossing an edge
from side ``k`` to its partner ``k'`` contributes ``E(q[k], q[k'])``: the
ratio of the side being left sits on the right of the path.

Matrices are kept projectively: the cube-root scalars are dropped so exact
rationals stay exact.
"""
from __future__ import annotations

from fractions import Fraction

from .coords import ACoords, XCoords, to_x_coords
from .errors import ComputationError
from .linalg import char_coeffs, identity, matmul
from .scalar import TOL
from .surface import PathStep, peripheral_path


def triangle_matrix(t, eps: int = 1):
    """Unnormalized T(t); ``eps = -1`` gives the exact inverse, T(t)^2 / t."""
    if not t > 0:
        raise ComputationError("NONPOSITIVE_PARAMETER", f"triple ratio {t}")
    m = [[0 * t, 0 * t, 1 + 0 * t], [0 * t, -1 + 0 * t, -1 + 0 * t], [t, t + 1, 1 + 0 * t]]
    if eps == 1:
        return m
    if eps == -1:
        sq = matmul(m, m)
        return [[x / t for x in row] for row in sq]
    raise ComputationError("MALFORMED_PATH", f"triangle sign must be +1 or -1, got {eps}")


def edge_matrix(q_plus, q_minus, as_printed: bool = False):
    """Unnormalized E(q+, q-) = [[0, 0, q-], [0, -1, 0], [1/q+, 0, 0]].

    Crossing back gives E(q-, q+), the exact inverse. ``as_printed`` puts a 1
    in the lower right corner, the form found in some references; that form
    does not reproduce the holonomy of the developing map and is kept only
    for comparison.
    """
    if not (q_plus > 0 and q_minus > 0):
        raise ComputationError("NONPOSITIVE_PARAMETER", f"quadruple ratios {q_plus}, {q_minus}")
    z = 0 * q_plus
    corner = z + 1 if as_printed else z
    return [[z, z, q_minus], [z, z - 1, z], [1 / q_plus, z, corner]]


def step_matrix(kind: str, t=None, eps: int = 1, q_plus=None, q_minus=None, as_printed: bool = False):
    if kind == "triangle":
        return triangle_matrix(t, eps)
    if kind == "edge":
        return edge_matrix(q_plus, q_minus, as_printed)
    raise ComputationError("MALFORMED_PATH", f"unknown step kind {kind!r}")


def _check_step(chart, step: PathStep):
    (t, i), (u, j) = step.source, step.target
    if step.kind == "triangle":
        if t != u or (j - i) % 3 == 0 or t not in chart.triangles:
            raise ComputationError("MALFORMED_PATH", f"bad triangle step {step}")
    elif step.kind == "edge":
        if chart.partner(step.source) != step.target:
            raise ComputationError("MALFORMED_PATH", f"{step.source} is not glued to {step.target}")
    else:
        raise ComputationError("MALFORMED_PATH", f"unknown step kind {step.kind!r}")


def path_matrix(x: XCoords, path) -> list:
    """Ordered product of step matrices along a chained path."""
    chart = x.chart
    one = next(iter(x.triple_ratios.values()))
    one = one / one
    m = identity(one)
    prev = None
    for step in path:
        try:
            _check_step(chart, step)
        except KeyError:
            raise ComputationError("MALFORMED_PATH", f"unknown node in {step}") from None
        if prev is not None and prev.target != step.source:
            raise ComputationError("MALFORMED_PATH", f"{prev.target} does not continue to {step.source}")
        if step.kind == "triangle":
            s = triangle_matrix(x.triple_ratios[step.source[0]], step.sign)
        else:
            s = edge_matrix(x.quadruple_ratios[step.source], x.quadruple_ratios[step.target])
        m = matmul(m, s)
        prev = step
    return m


def crossing_path(chart, crossings) -> list:
    """Monodromy path for a walk through triangles crossing the given sides in order.

    Consecutive crossings are joined by one triangle step. If the walk ends in
    the triangle it started from, a final triangle step closes it at the
    first node.
    """
    crossings = [(t, s % 3) for t, s in crossings]
    path = []
    for k, side in enumerate(crossings):
        if path and path[-1].target != side:
            path.append(PathStep("triangle", path[-1].target, side))
        path.append(PathStep("edge", side, chart.partner(side)))
    if path and path[-1].target[0] == crossings[0][0] and path[-1].target != crossings[0]:
        path.append(PathStep("triangle", path[-1].target, crossings[0]))
    return path


def is_scalar_matrix(m, tol=None) -> bool:
    def zero(v):
        return abs(v) <= tol if tol is not None else v == 0
    if any(not zero(m[i][j]) for i in range(3) for j in range(3) if i != j):
        return False
    return zero(m[0][0] - m[1][1]) and zero(m[1][1] - m[2][2])


def is_parabolic(m, tol=None) -> bool:
    """True iff the characteristic polynomial has a triple root and ``m`` is not scalar.

    Uses tau^2 = 3 sigma and tau^3 = 27 delta, which do not depend on scaling.
    With floats, ``tol`` bounds the relative error of both identities.
    """
    tau, sigma, delta = char_coeffs(m)
    if delta == 0 or (tol is not None and abs(delta) <= tol):
        raise ComputationError("SINGULAR_MATRIX", "determinant vanishes")
    if tol is None and all(isinstance(v, (int, Fraction)) for row in m for v in row):
        return tau * tau == 3 * sigma and tau ** 3 == 27 * delta and not is_scalar_matrix(m)
    tol = TOL if tol is None else tol
    scale = abs(delta) ** (1.0 / 3.0)
    t, s = tau / scale, sigma / scale ** 2
    d = delta / scale ** 3
    size = max(abs(v) for row in m for v in row) / scale
    return (abs(t * t - 3 * s) <= tol * max(1.0, t * t) and abs(t ** 3 - 27 * d) <= tol * max(1.0, abs(t) ** 3)
            and not is_scalar_matrix([[v / scale for v in row] for row in m], tol * max(1.0, size)))


def peripheral_holonomy(coords: ACoords, puncture: str) -> list:
    x = to_x_coords(coords)
    return path_matrix(x, peripheral_path(coords.chart, puncture))


def normalized(m):
    """Scale a matrix so that its first nonzero entry (row by row) is one."""
    for row in m:
        for v in row:
            if v != 0:
                return [[w / v for w in r] for r in m]
    return m


def projectively_equal(m1, m2) -> bool:
    return normalized(m1) == normalized(m2)
