"""Homogeneous-coordinate kernel for RP^3.

Points are unit lifts in R^4 (``Lift4`` is just a normalized float array of
shape (4,)).  Orientation convention: a tangent frame (f1, f2, f3) at [P] is
positive iff ``det4(P, f1, f2, f3) > 0``.  The antipodal map has determinant
+1 on R^4, so this is well defined on RP^3.
"""
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL
from .errors import DegenerateSpan, NotOnLine, ZeroVector


def normalize(v, zero=DEFAULT_TOL.zero):
    v = np.asarray(v, dtype=float)
    n = np.linalg.norm(v)
    if not n > zero:
        raise ZeroVector(f"cannot normalize vector of norm {n:g}")
    return v / n


def det4(a, b, c, d):
    """Determinant of the 4x4 matrix with columns a, b, c, d."""
    return float(np.linalg.det(np.column_stack([a, b, c, d])))


def det4_batch(a, b, c, d):
    """Vectorized det4 over leading axes; each argument has shape (..., 4)."""
    m = np.stack([a, b, c, d], axis=-1)
    return np.linalg.det(m)


@dataclass(frozen=True, eq=False)
class Chart3:
    """Orthonormal frame of V^perp, oriented so det4(V, b1, b2, b3) > 0.

    ``proj(X)`` gives homogeneous coordinates of the line span(V, X) in the
    RP^2 of lines through [V].
    """

    V: np.ndarray
    basis: np.ndarray  # (3, 4), rows b1, b2, b3

    def proj(self, X):
        return np.asarray(X, dtype=float) @ self.basis.T


def chart_at(V):
    V = np.asarray(V, dtype=float)
    # Householder reflection taking e to V, with e = -sign(V0) e1 so |e - V| >= 1
    e = np.zeros(4)
    e[0] = -1.0 if V[0] >= 0 else 1.0
    w = e - V
    H = np.eye(4) - 2.0 * np.outer(w, w) / (w @ w)
    cols = [H[:, k] for k in range(4)]
    # H e = V, the remaining columns span V^perp
    basis = np.array(cols[1:])
    if np.linalg.det(np.column_stack([V, *basis])) < 0:
        basis[2] = -basis[2]
    return Chart3(V.copy(), basis)


def decompose_on_line(V, X, Y, tol=DEFAULT_TOL):
    """Solve V = alpha X + beta Y.  Returns (alpha, beta, residual)."""
    V, X, Y = (np.asarray(a, dtype=float) for a in (V, X, Y))
    M = np.column_stack([X, Y])
    gram = M.T @ M
    sin2 = np.linalg.det(gram) / max(gram[0, 0] * gram[1, 1], tol.zero)
    if sin2 < tol.degeneracy**2:
        raise DegenerateSpan("X and Y span no line")
    alpha, beta = np.linalg.solve(gram, M.T @ V)
    residual = float(np.linalg.norm(V - alpha * X - beta * Y))
    if residual > tol.residual * max(1.0, np.linalg.norm(V)):
        raise NotOnLine(f"viewpoint off span(X, Y), residual {residual:.3g}")
    return float(alpha), float(beta), residual


def projective_distance(X, Y):
    """Angular distance in RP^3 (in [0, pi/2]) between unit lifts."""
    c = abs(float(np.dot(X, Y)))
    return float(np.arccos(min(c, 1.0)))


# -- arc geometry (vectorized) ------------------------------------------------
#
# An arc is the radial image of the chord (1-s)P + sQ, s in [0, 1], with
# unit P, Q and <P, Q> > 0.


def _arc_frame(P, Q):
    """Orthonormal basis (U1, U2) of span(P, Q) with U1 = P."""
    w = Q - np.sum(P * Q, axis=-1, keepdims=True) * P
    w = w / np.linalg.norm(w, axis=-1, keepdims=True)
    return P, w


def _in_arc(x, P, Q, slack=1e-12):
    """Whether unit x (already in span(P, Q)) is a nonnegative combination."""
    # solve x = aP + bQ via the 2x2 Gram system
    pq = np.sum(P * Q, axis=-1)
    xp = np.sum(x * P, axis=-1)
    xq = np.sum(x * Q, axis=-1)
    det = 1.0 - pq * pq
    a = (xp - pq * xq) / det
    b = (xq - pq * xp) / det
    return (a >= -slack) & (b >= -slack)


def point_arc_maxcos(x, P, Q):
    """max <x, y> over y on the arc P->Q (broadcasting over leading axes)."""
    x, P, Q = np.broadcast_arrays(x, P, Q)
    best = np.maximum(np.sum(x * P, axis=-1), np.sum(x * Q, axis=-1))
    U1, U2 = _arc_frame(P, Q)
    c1 = np.sum(x * U1, axis=-1)
    c2 = np.sum(x * U2, axis=-1)
    r = np.hypot(c1, c2)
    with np.errstate(invalid="ignore", divide="ignore"):
        y = (c1[..., None] * U1 + c2[..., None] * U2) / r[..., None]
    inside = (r > 0) & _in_arc(np.nan_to_num(y), P, Q)
    return np.where(inside, np.maximum(best, r), best)


def arc_arc_maxcos(P, Q, R, S):
    """max <x, y> over x on arc P->Q and y on arc R->S (broadcasting)."""
    P, Q, R, S = np.broadcast_arrays(P, Q, R, S)
    best = np.maximum.reduce([
        point_arc_maxcos(P, R, S),
        point_arc_maxcos(Q, R, S),
        point_arc_maxcos(R, P, Q),
        point_arc_maxcos(S, P, Q),
    ])
    # interior critical point: top singular pair of the frame overlap
    U1, U2 = _arc_frame(P, Q)
    W1, W2 = _arc_frame(R, S)
    U = np.stack([U1, U2], axis=-1)
    W = np.stack([W1, W2], axis=-1)
    M = np.swapaxes(U, -1, -2) @ W
    left, sv, rightT = np.linalg.svd(M)
    x = U @ left[..., :, 0:1]
    y = W @ np.swapaxes(rightT, -1, -2)[..., :, 0:1]
    x, y = x[..., 0], y[..., 0]
    for sgn in (1.0, -1.0):
        ok = _in_arc(sgn * x, P, Q) & _in_arc(sgn * y, R, S)
        best = np.where(ok, np.maximum(best, sv[..., 0]), best)
    return best


def arc_arc_distance(P, Q, R, S, folded=True):
    """Angular distance between arcs; folded=True measures in RP^3."""
    c = arc_arc_maxcos(P, Q, R, S)
    if folded:
        c = np.maximum(c, arc_arc_maxcos(P, Q, -R, -S))
    return np.arccos(np.clip(c, -1.0, 1.0))


def point_arc_distance(x, P, Q, folded=True):
    c = point_arc_maxcos(x, P, Q)
    if folded:
        c = np.maximum(c, point_arc_maxcos(-np.asarray(x), P, Q))
    return np.arccos(np.clip(c, -1.0, 1.0))
