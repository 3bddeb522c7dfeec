"""Ground truth through the double cover S^3 -> RP^3.

Curves are lifted to closed polylines on S^3 and their classical linking
numbers are counted from a planar diagram of a stereographic image.  Nothing
here touches the line-counting code in :mod:`rp3link.linking`; only the
projective kernel is shared.

Geodesic arcs of S^3 become circular arcs in R^3.  Each arc is subdivided
until the sagitta of every piece is below 1/16 of the S^3 separation of the
two curves; since stereographic projection expands distances by at least a
factor 1/2, replacing the arcs by their chords is a homotopy in the link
complement and leaves the linking number unchanged.
"""
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import projgeom
from .config import DEFAULT_TOL
from .curves import LiftedCurve, validate
from .errors import CurvesNotDisjoint, DegenerateProjection, NotNullHomologous

MAX_SEGMENTS = 400_000


@dataclass(frozen=True, eq=False)
class CoverCurve:
    vertices: np.ndarray  # (n, 4); closes from the last vertex back to the first
    source: str
    sheet: int  # 0 / 1 for the two lifts of a null-homologous curve, 0 otherwise


def preimage(curve):
    W = np.array(curve.lifts)
    if curve.closure == 1:
        return [CoverCurve(W, curve.name, 0), CoverCurve(-W, curve.name, 1)]
    return [CoverCurve(np.concatenate([W, -W]), curve.name, 0)]


def _arcs(K):
    P = np.asarray(K.vertices if isinstance(K, CoverCurve) else K)
    return P, np.roll(P, -1, axis=0)


def s3_separation(K1, K2):
    P1, Q1 = _arcs(K1)
    P2, Q2 = _arcs(K2)
    d = projgeom.arc_arc_distance(P1[:, None], Q1[:, None], P2[None], Q2[None], folded=False)
    return float(np.min(d))


def _stereo(X, N, basis):
    return (X @ basis.T) / (1.0 - X @ N)[..., None]


def _sagitta(A, M, B):
    """Height of the circular arc A-M-B over chord AB; inf when M is not on the minor arc."""
    a = np.linalg.norm(B - M, axis=-1)
    b = np.linalg.norm(A - M, axis=-1)
    c = np.linalg.norm(B - A, axis=-1)
    area2 = np.linalg.norm(np.cross(M - A, B - A), axis=-1)  # twice the triangle area
    with np.errstate(invalid="ignore", divide="ignore"):
        kappa = 2.0 * area2 / (a * b * c)  # 1 / circumradius
        h = (c * c / 4.0) * kappa / (1.0 + np.sqrt(np.maximum(1.0 - c * c * kappa * kappa / 4.0, 0.0)))
    obtuse = np.sum((A - M) * (B - M), axis=-1) < 0
    return np.where(obtuse | (area2 == 0), h, np.inf)


def _chord_points(P, Q, s):
    X = (1.0 - s)[:, None] * P + s[:, None] * Q
    return X / np.linalg.norm(X, axis=1, keepdims=True)


def _refined_image(K, N, basis, delta):
    """Stereographic images of the vertices of a refined cover curve, in order.

    Every arc is split into 2^k equal chord-parameter pieces, doubling k per
    arc until each piece's image has sagitta <= delta.
    """
    P, Q = _arcs(K)
    m = np.ones(len(P), dtype=int)
    pending = np.arange(len(P))
    while len(pending):
        if int(np.sum(m)) > MAX_SEGMENTS:
            raise DegenerateProjection("refinement exceeded the segment budget")
        e = np.repeat(pending, m[pending])
        k = np.concatenate([np.arange(c) for c in m[pending]])
        den = m[e].astype(float)
        A = _stereo(_chord_points(P[e], Q[e], k / den), N, basis)
        M = _stereo(_chord_points(P[e], Q[e], (k + 0.5) / den), N, basis)
        B = _stereo(_chord_points(P[e], Q[e], (k + 1) / den), N, basis)
        pending = np.unique(e[~(_sagitta(A, M, B) <= delta)])
        m[pending] *= 2
    e = np.repeat(np.arange(len(P)), m)
    k = np.concatenate([np.arange(c) for c in m])
    return _stereo(_chord_points(P[e], Q[e], k / m[e].astype(float)), N, basis)


def _random_rotation(rng):
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 2] = -q[:, 2]
    return q


def _diagram_lk(p1, p2, eps):
    """Linking number of closed polygons in R^3 from their xy-diagram.

    Returns None when the diagram is not generic enough to trust.
    """
    a0, a1 = p1, np.roll(p1, -1, axis=0)
    b0, b1 = p2, np.roll(p2, -1, axis=0)
    r = (a1 - a0)[:, None, :2]
    s = (b1 - b0)[None, :, :2]
    w = b0[None, :, :2] - a0[:, None, :2]
    den = r[..., 0] * s[..., 1] - r[..., 1] * s[..., 0]
    lr = np.linalg.norm(r, axis=-1)
    ls = np.linalg.norm(s, axis=-1)
    with np.errstate(invalid="ignore", divide="ignore"):
        t = (w[..., 0] * s[..., 1] - w[..., 1] * s[..., 0]) / den
        v = (w[..., 0] * r[..., 1] - w[..., 1] * r[..., 0]) / den
    parallel = np.abs(den) <= eps * lr * ls
    # parallel pairs only matter if they are also collinear and overlap
    if np.any(parallel):
        i, j = np.nonzero(parallel)
        cross = np.abs(w[i, j, 0] * r[i, j, 1] - w[i, j, 1] * r[i, j, 0]) / lr[i, j]
        if np.any(cross <= eps * np.maximum(lr[i, j], 1.0)):
            return None
    ok = ~parallel
    near = ok & (((np.abs(t) < eps) | (np.abs(t - 1) < eps)) & (v > -eps) & (v < 1 + eps)
                 | ((np.abs(v) < eps) | (np.abs(v - 1) < eps)) & (t > -eps) & (t < 1 + eps))
    if np.any(near):
        return None
    hit = ok & (t > 0) & (t < 1) & (v > 0) & (v < 1)
    i, j = np.nonzero(hit)
    if len(i) == 0:
        return 0
    ti, vj = t[i, j], v[i, j]
    da = (a1 - a0)[i]
    db = (b1 - b0)[j]
    pa = a0[i] + ti[:, None] * da
    pb = b0[j] + vj[:, None] * db
    depth = pa[:, 2] - pb[:, 2]
    if np.any(np.abs(depth) <= eps * (np.linalg.norm(da, axis=1) + np.linalg.norm(db, axis=1))):
        return None
    # sign of a crossing: det(tangent_1, tangent_2, point_1 - point_2)
    sign = np.sign(np.linalg.det(np.stack([da, db, pa - pb], axis=-1)))
    total = int(np.sum(sign))
    if total % 2:
        return None
    return total // 2


def lk_s3(K1, K2, seed=0, tol=DEFAULT_TOL, repeats=3, max_attempts=60):
    """Classical linking number of two disjoint closed polylines on S^3."""
    sep = s3_separation(K1, K2)
    if sep < tol.separation:
        raise CurvesNotDisjoint(f"cover curves are {sep:.3g} apart")
    delta = sep / 16.0
    P1, Q1 = _arcs(K1)
    P2, Q2 = _arcs(K2)
    allP, allQ = np.concatenate([P1, P2]), np.concatenate([Q1, Q2])
    rng = np.random.default_rng([seed & ((1 << 64) - 1), 0xC0FE])
    values = []
    for _ in range(max_attempts):
        N = projgeom.normalize(rng.normal(size=4))
        if np.min(projgeom.point_arc_distance(N, allP, allQ, folded=False)) < tol.pole_margin:
            continue
        # chart at -N keeps the stereographic map orientation preserving
        basis = projgeom.chart_at(-N).basis
        R = _random_rotation(rng)
        p1 = _refined_image(K1, N, basis, delta) @ R.T
        p2 = _refined_image(K2, N, basis, delta) @ R.T
        val = _diagram_lk(p1, p2, tol.projection)
        if val is None:
            continue
        values.append(val)
        if len(values) == repeats:
            if len(set(values)) != 1:
                raise DegenerateProjection(f"unstable oracle values {values}")
            return values[0]
    raise DegenerateProjection(f"only {len(values)} usable projections in {max_attempts} attempts")


def _as_side(side):
    return [side] if isinstance(side, LiftedCurve) else list(side)


def oracle_degree(side_a, side_b, seed=0, tol=DEFAULT_TOL):
    """Weighted lk_{S^3} of the full preimages; equals 2 lk in RP^3."""
    total = 0
    for ca in _as_side(side_a):
        validate(ca, tol)
        for cb in _as_side(side_b):
            validate(cb, tol)
            sub = sum(lk_s3(k1, k2, seed, tol) for k1 in preimage(ca) for k2 in preimage(cb))
            total += ca.weight * cb.weight * sub
    return total


def oracle_lk_rp3(side_a, side_b, seed=0, tol=DEFAULT_TOL):
    return Fraction(oracle_degree(side_a, side_b, seed, tol), 2)


def oracle_selflink(knot, seed=0, tol=DEFAULT_TOL):
    if knot.closure != 1:
        raise NotNullHomologous(f"curve {knot.name!r} is not null-homologous")
    validate(knot, tol)
    up, down = preimage(knot)
    return lk_s3(up, down, seed, tol)
