"""Small exact 3x3 / 3-vector helpers that work for Fractions and floats alike."""
from __future__ import annotations


def identity(one=1):
    z = one - one
    return [[one if i == j else z for j in range(3)] for i in range(3)]


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)] for i in range(3)]


def matvec(a, v):
    return [sum(a[i][k] * v[k] for k in range(3)) for i in range(3)]


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def cross(u, v):
    return [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]


def det(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def transpose(m):
    return [[m[j][i] for j in range(3)] for i in range(3)]


def columns(*cols):
    """Matrix whose columns are the given vectors."""
    return [[cols[j][i] for j in range(3)] for i in range(3)]


def inverse(m):
    d = det(m)
    if d == 0:
        raise ZeroDivisionError("singular matrix")
    cof = [[(m[(j + 1) % 3][(i + 1) % 3] * m[(j + 2) % 3][(i + 2) % 3]
             - m[(j + 1) % 3][(i + 2) % 3] * m[(j + 2) % 3][(i + 1) % 3]) for j in range(3)]
           for i in range(3)]
    return [[cof[i][j] / d for j in range(3)] for i in range(3)]


def solve(m, b):
    """Solve ``m x = b`` by Cramer's rule (exact for Fractions)."""
    d = det(m)
    if d == 0:
        raise ZeroDivisionError("singular system")
    out = []
    for k in range(3):
        mk = [[b[i] if j == k else m[i][j] for j in range(3)] for i in range(3)]
        out.append(det(mk) / d)
    return out


def trace(m):
    return m[0][0] + m[1][1] + m[2][2]


def char_coeffs(m):
    """(tau, sigma, delta) with char poly x^3 - tau x^2 + sigma x - delta."""
    tau = trace(m)
    sigma = (m[0][0] * m[1][1] - m[0][1] * m[1][0]
             + m[0][0] * m[2][2] - m[0][2] * m[2][0]
             + m[1][1] * m[2][2] - m[1][2] * m[2][1])
    return tau, sigma, det(m)
