"""Linking numbers in RP^3 by counting lines through a generic point.

For a viewpoint v, every line through v meeting C1 at x and C2 at y is one
preimage of v under (x, t, y) -> t.  Its local degree is the sign of
det4(X, A, Y, B) with lifts X, Y of x, y and lift-consistent edge tangents
A, B.  The signed (weighted) count d is independent of v and equals twice
the linking number.
"""
import concurrent.futures
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import count

import numpy as np

from . import projgeom
from .config import DEFAULT_TOL, RunConfig
from .curves import LiftedCurve, min_separation, validate
from .errors import (CurvesNotDisjoint, DegeneratePair, GenericityError,
                     InconsistentDegree, NotOnLine, SignMarginViolation,
                     TooManyDegenerateViewpoints)

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True, eq=False)
class Viewpoint:
    V: np.ndarray
    chart: projgeom.Chart3 = field(repr=False)
    seed: int | None = None
    index: int | None = None

    def as_dict(self):
        return {"V": [float(x) for x in self.V], "seed": self.seed, "index": self.index}


def make_viewpoint(V, seed=None, index=None):
    V = projgeom.normalize(V)
    return Viewpoint(V, projgeom.chart_at(V), seed, index)


def sample_viewpoint(seed, index):
    """Uniform viewpoint for attempt ``index``; a pure function of (seed, index)."""
    bitgen = np.random.Philox(key=seed & _MASK64, counter=index)
    v = np.random.Generator(bitgen).normal(size=4)
    return make_viewpoint(v, seed, index)


@dataclass(frozen=True, eq=False)
class Crossing:
    component_a: str
    i: int
    s: float
    component_b: str
    j: int
    u: float
    X: np.ndarray = field(repr=False)
    Y: np.ndarray = field(repr=False)
    alpha: float
    beta: float
    tau: float
    sign: int
    residual: float
    weight: int = 1
    loop_class: int | None = None

    def as_dict(self):
        d = {
            "component_a": self.component_a, "edge_i": self.i, "s": self.s,
            "component_b": self.component_b, "edge_j": self.j, "u": self.u,
            "sign": self.sign, "weight": self.weight,
            "alpha": self.alpha, "beta": self.beta, "tau": self.tau,
            "residual": self.residual,
        }
        if self.loop_class is not None:
            d["loop_class"] = self.loop_class
        return d


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str = ""


@dataclass
class Scan:
    viewpoint: Viewpoint
    crossings: list
    violations: list

    @property
    def ok(self):
        return not self.violations


@dataclass
class DegreeReport:
    d: int
    crossings: list
    viewpoint: Viewpoint
    viewpoints_tried: int = 1
    trial_degrees: list = field(default_factory=list)
    trial_viewpoints: list = field(default_factory=list)
    rejected: list = field(default_factory=list)

    @property
    def lk(self):
        return Fraction(self.d, 2)

    def as_dict(self):
        return {
            "d": self.d,
            "lk": str(self.lk),
            "n_crossings": len(self.crossings),
            "viewpoint": self.viewpoint.as_dict(),
            "viewpoints_tried": self.viewpoints_tried,
            "trial_degrees": list(self.trial_degrees),
            "trial_viewpoints": [v.as_dict() for v in self.trial_viewpoints],
            "rejected": [{"index": v.index, "violations": sorted({x.kind for x in vs})}
                         for v, vs in self.rejected],
            "crossings": [c.as_dict() for c in self.crossings],
        }


# -- edge-pair solver -----------------------------------------------------------


def _take(K, m):
    return np.take_along_axis(K, m[..., None], axis=-1)[..., 0]


def _solve_block(chart, P1, Q1, P2, Q2, tol):
    """Solve proj(X(s)) x proj(Y(u)) = 0 for every edge pair of two blocks.

    Each cross-product component is bilinear, k0 + k1 s + k2 u + k3 s u.  The
    component with the largest coefficients eliminates u; substituting into
    another component leaves a quadratic in s whose roots are then checked
    against all three components.  Returns arrays over (n1, n2, 2).
    """
    B = chart.basis
    a, da = P1 @ B.T, (Q1 - P1) @ B.T
    c, dc = P2 @ B.T, (Q2 - P2) @ B.T
    a_, da_ = a[:, None, :], da[:, None, :]
    c_, dc_ = c[None, :, :], dc[None, :, :]
    K0 = np.cross(a_, c_)
    K1 = np.cross(da_, c_)
    K2 = np.cross(a_, dc_)
    K3 = np.cross(da_, dc_)
    Kabs = np.maximum.reduce([np.abs(K0), np.abs(K1), np.abs(K2), np.abs(K3)])
    m = np.argmax(Kabs, axis=-1)
    kscale = np.max(Kabs, axis=-1)

    best_q, best_norm = None, None
    for shift in (1, 2):
        o = (m + shift) % 3
        K0m, K1m, K2m, K3m = (_take(K, m) for K in (K0, K1, K2, K3))
        K0o, K1o, K2o, K3o = (_take(K, o) for K in (K0, K1, K2, K3))
        q = np.stack([
            K1m * K3o - K1o * K3m,
            K0m * K3o + K1m * K2o - K0o * K3m - K1o * K2m,
            K0m * K2o - K0o * K2m,
        ])
        qn = np.max(np.abs(q), axis=0)
        if best_q is None:
            best_q, best_norm = q, qn
        else:
            pick = qn > best_norm
            best_q = np.where(pick, q, best_q)
            best_norm = np.where(pick, qn, best_norm)

    degenerate = best_norm <= tol.residual * np.maximum(kscale, tol.zero) ** 2
    with np.errstate(invalid="ignore", divide="ignore"):
        q2, q1, q0 = best_q / np.where(degenerate, 1.0, best_norm)
        linear = np.abs(q2) < 1e-13
        disc = q1 * q1 - 4.0 * q2 * q0
        sq = np.sqrt(np.maximum(disc, 0.0))
        t = -0.5 * (q1 + np.copysign(sq, q1))
        r1 = np.where(linear, -q0 / q1, t / q2)
        r2 = np.where(linear | (t == 0), np.nan, q0 / t)
        real = linear | (disc >= 0)
        roots = np.stack([np.where(real, r1, np.nan), np.where(real, r2, np.nan)], axis=-1)
        vertex = np.where(linear, np.nan, -q1 / (2.0 * q2))
    near = (vertex > -tol.param) & (vertex < 1 + tol.param)
    tangency = ~degenerate & ~linear & (np.abs(disc) < tol.disc) & near
    roots[degenerate] = np.nan

    # u by least squares over the three components, then the full residual
    s = roots
    Ks = [K[..., None, :] for K in (K0, K1, K2, K3)]
    al = Ks[0] + Ks[1] * s[..., None]
    be = Ks[2] + Ks[3] * s[..., None]
    with np.errstate(invalid="ignore", divide="ignore"):
        u = -np.sum(al * be, axis=-1) / np.sum(be * be, axis=-1)
        xs = a_[..., None, :] + s[..., None] * da_[..., None, :]
        ys = c_[..., None, :] + u[..., None] * dc_[..., None, :]
        residual = np.linalg.norm(np.cross(xs, ys), axis=-1) / (
            np.linalg.norm(xs, axis=-1) * np.linalg.norm(ys, axis=-1))
    return s, u, residual, degenerate, tangency


def edge_pair_crossings(viewpoint, e1, e2, tol=DEFAULT_TOL):
    """All (s, u, residual) in (0, 1)^2 where span(V, X(s)) meets Y(u)."""
    blk = [np.asarray(x, dtype=float)[None] for x in (e1.P, e1.Q, e2.P, e2.Q)]
    s, u, res, degenerate, _ = _solve_block(viewpoint.chart, *blk, tol)
    if degenerate[0, 0]:
        raise DegeneratePair("viewpoint is coplanar with both edges")
    out = []
    for k in range(2):
        sk, uk, rk = s[0, 0, k], u[0, 0, k], res[0, 0, k]
        if np.isfinite(sk) and rk < tol.residual and 0 < sk < 1 and 0 < uk < 1:
            out.append((float(sk), float(uk), float(rk)))
    return out


def crossing_sign(X, A, Y, B, tol=DEFAULT_TOL):
    """Local degree at a collinear triple: sign det4(X, A, Y, B)."""
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    det = projgeom.det4(X, A / np.linalg.norm(A), Y, B / np.linalg.norm(B))
    if abs(det) < tol.sign:
        raise SignMarginViolation(f"|det4| = {abs(det):.3g} below sign margin")
    return 1 if det > 0 else -1


def _tau(V, X, Y, alpha, beta):
    """Fubini-Study ratio |J| / |I| of the segment from x through t to y."""
    Xp = np.sign(alpha) * X
    Yp = np.sign(beta) * Y
    t = abs(alpha) * Xp + abs(beta) * Yp
    t = t / np.linalg.norm(t)
    whole = np.arccos(np.clip(Xp @ Yp, -1.0, 1.0))
    part = np.arccos(np.clip(Xp @ t, -1.0, 1.0))
    return float(part / whole)


def _collinear_pairs(V, P1, Q1, P2, Q2, tol):
    """Edge pairs on one projective line, seen from a viewpoint off that line.

    Such a pair makes the bilinear system rank deficient for every viewpoint,
    yet its two arcs only meet where they touch, never at a crossing.
    """
    U1, U2 = (w[:, None, :] for w in projgeom._arc_frame(P1, Q1))

    def off_plane(x):  # x: (m, 4) -> distances (n1, m) to the plane of each edge 1
        x = x[None]
        r = x - np.sum(x * U1, -1, keepdims=True) * U1 - np.sum(x * U2, -1, keepdims=True) * U2
        return np.linalg.norm(r, axis=-1)

    coplanar = (off_plane(P2) < tol.degeneracy) & (off_plane(Q2) < tol.degeneracy)
    v_off = off_plane(np.asarray(V)[None])[:, 0] > tol.separation
    return coplanar & v_off[:, None]


def _scan_curves(viewpoint, ca, cb, tol, self_pair, sign_convention, violations):
    P1, Q1, P2, Q2 = ca.starts, ca.ends, cb.starts, cb.ends
    s, u, res, degenerate, tangency = _solve_block(viewpoint.chart, P1, Q1, P2, Q2, tol)
    if degenerate.any():
        degenerate = degenerate & ~_collinear_pairs(viewpoint.V, P1, Q1, P2, Q2, tol)
    n1, n2 = len(P1), len(P2)
    if self_pair:
        ii, jj = np.indices((n1, n2))
        relevant = ii < jj
    else:
        relevant = np.ones((n1, n2), dtype=bool)

    for i, j in zip(*np.nonzero(degenerate & relevant)):
        violations.append(Violation("degenerate_pair", f"{ca.name}[{i}] {cb.name}[{j}]"))
    for i, j in zip(*np.nonzero(tangency & relevant)):
        violations.append(Violation("tangency", f"{ca.name}[{i}] {cb.name}[{j}]"))

    eps = tol.param
    finite = np.isfinite(s) & np.isfinite(u) & relevant[..., None]
    with np.errstate(invalid="ignore"):
        in_box = finite & (s >= -eps) & (s <= 1 + eps) & (u >= -eps) & (u <= 1 + eps)
        good = res < tol.residual
        bad = res > tol.residual * tol.residual_band

    if self_pair:
        # adjacent edges always meet at the shared vertex (x = y): not a crossing
        ii, jj = np.indices((n1, n2))
        diag = 1e3 * eps
        nxt = (jj == ii + 1)[..., None]
        wrap = ((ii == 0) & (jj == n1 - 1))[..., None]
        shared = (nxt & (np.abs(s - 1) < diag) & (np.abs(u) < diag)) | (
            wrap & (np.abs(s) < diag) & (np.abs(u - 1) < diag))
        in_box &= ~shared

    for i, j, k in zip(*np.nonzero(in_box & ~good & ~bad)):
        violations.append(Violation("residual_band",
                                    f"{ca.name}[{i}] {cb.name}[{j}] res={res[i, j, k]:.3g}"))
    hit = in_box & good
    interior = (s > eps) & (s < 1 - eps) & (u > eps) & (u < 1 - eps)
    for i, j, k in zip(*np.nonzero(hit & ~interior)):
        violations.append(Violation("vertex", f"{ca.name}[{i}] s={s[i, j, k]:.3g} "
                                              f"{cb.name}[{j}] u={u[i, j, k]:.3g}"))

    out = []
    weight = ca.weight * cb.weight
    for i, j, k in zip(*np.nonzero(hit & interior)):
        si, uj = float(s[i, j, k]), float(u[i, j, k])
        A = Q1[i] - P1[i]
        Bt = Q2[j] - P2[j]
        X = projgeom.normalize(P1[i] + si * A)
        Y = projgeom.normalize(P2[j] + uj * Bt)
        try:
            sign = crossing_sign(X, A, Y, Bt, tol)
        except SignMarginViolation as exc:
            violations.append(Violation("sign_margin", str(exc)))
            continue
        try:
            alpha, beta, _ = projgeom.decompose_on_line(viewpoint.V, X, Y, tol)
        except NotOnLine as exc:
            violations.append(Violation("residual_band", str(exc)))
            continue
        out.append(Crossing(ca.name, int(i), si, cb.name, int(j), uj, X, Y,
                            alpha, beta, _tau(viewpoint.V, X, Y, alpha, beta),
                            sign * sign_convention, float(res[i, j, k]), weight))
    return out


def _proximity(viewpoint, curves, tol):
    out = []
    for c in curves:
        dist = projgeom.point_arc_distance(viewpoint.V, c.starts, c.ends)
        if np.min(dist) < tol.separation:
            out.append(Violation("proximity", f"viewpoint within {np.min(dist):.3g} of {c.name}"))
    return out


def _triple_points(viewpoint, crossings, tol):
    if len(crossings) < 2:
        return []
    d = viewpoint.chart.proj(np.array([c.X for c in crossings]))
    d /= np.linalg.norm(d, axis=1, keepdims=True)
    sin = np.linalg.norm(np.cross(d[:, None], d[None]), axis=-1)
    i, j = np.nonzero(np.triu(sin < tol.param, 1))
    return [Violation("triple_point", f"crossings {a} and {b} share a line") for a, b in zip(i, j)]


def _as_side(side):
    if isinstance(side, LiftedCurve):
        return [side]
    return list(side)


def scan_viewpoint(viewpoint, side_a, side_b, tol=DEFAULT_TOL, sign_convention=1):
    """Enumerate crossings through ``viewpoint`` and collect genericity violations."""
    side_a, side_b = _as_side(side_a), _as_side(side_b)
    violations = _proximity(viewpoint, side_a + side_b, tol)
    crossings = []
    if not violations:
        for ca in side_a:
            for cb in side_b:
                crossings += _scan_curves(viewpoint, ca, cb, tol, False,
                                          sign_convention, violations)
        violations += _triple_points(viewpoint, crossings, tol)
    return Scan(viewpoint, crossings, violations)


def scan_self(viewpoint, knot, tol=DEFAULT_TOL, sign_convention=1):
    """Crossings of a single curve with itself over unordered edge pairs."""
    violations = _proximity(viewpoint, [knot], tol)
    crossings = []
    if not violations:
        crossings = _scan_curves(viewpoint, knot, knot, tol, True, sign_convention, violations)
        violations += _triple_points(viewpoint, crossings, tol)
    return Scan(viewpoint, crossings, violations)


def is_generic(viewpoint, side_a, side_b, tol=DEFAULT_TOL):
    """Empty list when ``viewpoint`` is a regular value, else the violations."""
    return scan_viewpoint(viewpoint, side_a, side_b, tol).violations


def degree_through_viewpoint(side_a, side_b, viewpoint, tol=DEFAULT_TOL, sign_convention=1):
    if not isinstance(viewpoint, Viewpoint):
        viewpoint = make_viewpoint(viewpoint)
    scan = scan_viewpoint(viewpoint, side_a, side_b, tol, sign_convention)
    if scan.violations:
        raise GenericityError("; ".join(f"{v.kind}: {v.detail}" for v in scan.violations[:5]))
    d = sum(c.sign * c.weight for c in scan.crossings)
    return DegreeReport(d, scan.crossings, viewpoint, 1, [d], [viewpoint])


def check_sides(side_a, side_b, tol=DEFAULT_TOL):
    """Validate every component and require pairwise disjoint supports."""
    curves = _as_side(side_a) + _as_side(side_b)
    names = [c.name for c in curves]
    for c in curves:
        validate(c, tol)
    for x in range(len(curves)):
        for y in range(x + 1, len(curves)):
            if names[x] == names[y] and curves[x] is curves[y]:
                raise CurvesNotDisjoint(f"curve {names[x]!r} appears twice")
            sep = min_separation(curves[x], curves[y])
            if sep < tol.separation:
                raise CurvesNotDisjoint(
                    f"curves {names[x]!r} and {names[y]!r} are {sep:.3g} apart")


def run_trials(evaluate, config, initial_viewpoints=()):
    """Evaluate viewpoints in a fixed order until ``config.trials`` are generic.

    ``evaluate(viewpoint)`` returns a Scan.  Candidates are the initial
    viewpoints followed by sample_viewpoint(seed, 0), (seed, 1), ...; they are
    evaluated in batches (concurrently when workers > 1) but consumed strictly
    in order, so the outcome does not depend on the worker count.
    """
    def candidates():
        yield from initial_viewpoints
        for k in count():
            yield sample_viewpoint(config.seed, k)

    gen = candidates()
    accepted, rejected = [], []
    pool = (concurrent.futures.ThreadPoolExecutor(config.workers)
            if config.workers > 1 else None)
    try:
        while True:
            need = config.trials - len(accepted)
            batch = [next(gen) for _ in range(max(need, config.workers))]
            scans = list(pool.map(evaluate, batch)) if pool else [evaluate(v) for v in batch]
            for scan in scans:
                if scan.ok:
                    accepted.append(scan)
                    if len(accepted) == config.trials:
                        return accepted, rejected
                else:
                    rejected.append((scan.viewpoint, scan.violations))
                    if len(rejected) > config.max_resamples:
                        raise TooManyDegenerateViewpoints(
                            f"{len(rejected)} viewpoints rejected; last: "
                            + ", ".join(sorted({v.kind for v in scan.violations})))
    finally:
        if pool:
            pool.shutdown()


def linking_number(side_a, side_b, config=None, initial_viewpoints=(), sign_convention=1):
    """Degree report for two sides (curves or lists of weighted curves)."""
    config = config or RunConfig()
    tol = config.tol
    check_sides(side_a, side_b, tol)
    initial = [v if isinstance(v, Viewpoint) else make_viewpoint(v) for v in initial_viewpoints]
    accepted, rejected = run_trials(
        lambda vp: scan_viewpoint(vp, side_a, side_b, tol, sign_convention), config, initial)
    degrees = [sum(c.sign * c.weight for c in s.crossings) for s in accepted]
    if len(set(degrees)) != 1:
        raise InconsistentDegree(f"degrees differ across viewpoints: {degrees}")
    first = accepted[0]
    return DegreeReport(degrees[0], first.crossings, first.viewpoint,
                        len(accepted) + len(rejected), degrees,
                        [s.viewpoint for s in accepted], rejected)
