"""Piecewise-linear oriented closed curves in RP^3.

A curve is a cyclic list of unit lifts in S^3 plus a closure sign.  Edges are
the minor projective arcs between consecutive vertices.  The stored lifts may
have arbitrary signs; :attr:`LiftedCurve.lifts` is the consistent chain
W_0 = P_0, W_{k+1} = +-P_{k+1} with <W_k, W_{k+1}> > 0, and the wrap edge runs
from W_{n-1} to closure * W_0.  The closure sign is therefore the Z/2
homology class written as a sign: +1 when the chain closes in S^3.
"""
import re
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import projgeom
from .config import DEFAULT_TOL
from .errors import (CurveFormatError, DegenerateEdge, GenerationFailure,
                     InputError, SelfIntersection)


@dataclass(frozen=True, eq=False)
class LiftedCurve:
    name: str
    vertices: np.ndarray
    closure: int = 1
    weight: int = 1

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 4:
            raise CurveFormatError(f"curve {self.name!r}: vertices must be 4-vectors")
        if len(v) < 3:
            raise CurveFormatError(f"curve {self.name!r}: need at least 3 vertices")
        norms = np.linalg.norm(v, axis=1)
        if np.any(norms <= DEFAULT_TOL.zero):
            k = int(np.argmin(norms))
            raise DegenerateEdge(self.name, k, f"curve {self.name!r}: vertex {k} is zero")
        v = v / norms[:, None]
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)
        if self.closure not in (1, -1):
            raise CurveFormatError(f"curve {self.name!r}: closure must be +1 or -1")
        if int(self.weight) != self.weight:
            raise CurveFormatError(f"curve {self.name!r}: weight must be an integer")
        object.__setattr__(self, "weight", int(self.weight))

    @property
    def n_edges(self):
        return len(self.vertices)

    @cached_property
    def lifts(self):
        v = self.vertices
        w = np.empty_like(v)
        w[0] = v[0]
        for k in range(1, len(v)):
            w[k] = v[k] if w[k - 1] @ v[k] >= 0 else -v[k]
        w.setflags(write=False)
        return w

    @cached_property
    def starts(self):
        return self.lifts

    @cached_property
    def ends(self):
        e = np.roll(self.lifts, -1, axis=0)
        e[-1] *= self.closure
        e.setflags(write=False)
        return e

    def with_weight(self, weight):
        return LiftedCurve(self.name, self.vertices, self.closure, weight)

    def renamed(self, name):
        return LiftedCurve(name, self.vertices, self.closure, self.weight)

    def __repr__(self):
        return (f"LiftedCurve({self.name!r}, n={self.n_edges}, "
                f"closure={self.closure:+d}, weight={self.weight})")


@dataclass(frozen=True)
class Edge:
    curve: str
    index: int
    P: np.ndarray = field(repr=False)
    Q: np.ndarray = field(repr=False)

    @property
    def A(self):
        return self.Q - self.P


def edges(curve):
    return [Edge(curve.name, i, curve.starts[i], curve.ends[i]) for i in range(curve.n_edges)]


def adjacency_mask(n):
    """Boolean (n, n) mask of edge pairs that are equal or share a vertex."""
    i = np.arange(n)
    d = np.abs(i[:, None] - i[None, :])
    return (d <= 1) | (d == n - 1)


def validate(curve, tol=DEFAULT_TOL):
    """Check every LiftedCurve invariant and return the edge list."""
    P, Q = curve.starts, curve.ends
    n = curve.n_edges
    cos = np.sum(P * Q, axis=1)
    raw = np.sum(P * np.roll(curve.vertices, -1, axis=0), axis=1)
    for i in range(n):
        sin = np.sqrt(max(0.0, 1.0 - cos[i] ** 2))
        if sin < tol.degeneracy:
            raise DegenerateEdge(curve.name, i,
                                 f"curve {curve.name!r}: edge {i} joins parallel lifts")
        if abs(raw[i]) < tol.degeneracy:
            raise DegenerateEdge(curve.name, i,
                                 f"curve {curve.name!r}: edge {i} spans a quarter turn; arc is ambiguous")
    if cos[-1] < 0:
        raise DegenerateEdge(
            curve.name, n - 1,
            f"curve {curve.name!r}: closure={curve.closure:+d} contradicts the vertex lifts")

    # folding back at a vertex: incoming and outgoing tangents antiparallel
    t_in = Q - P
    t_out = np.roll(Q, -1, axis=0) - np.roll(P, -1, axis=0)
    t_out[-1] *= curve.closure  # edge 0 seen from closure * W_0
    t_in = t_in - np.sum(t_in * Q, axis=1, keepdims=True) * Q
    t_out = t_out - np.sum(t_out * Q, axis=1, keepdims=True) * Q
    c = np.sum(t_in * t_out, axis=1) / (
        np.linalg.norm(t_in, axis=1) * np.linalg.norm(t_out, axis=1))
    for i in np.nonzero(c < -1.0 + tol.degeneracy)[0]:
        raise SelfIntersection(curve.name, (int(i), int((i + 1) % n)),
                               f"curve {curve.name!r}: edges {i} and {(i + 1) % n} fold back")

    if n > 3:
        dist = projgeom.arc_arc_distance(P[:, None], Q[:, None], P[None], Q[None])
        dist = np.where(adjacency_mask(n), np.inf, dist)
        i, j = np.unravel_index(np.argmin(dist), dist.shape)
        if dist[i, j] < tol.separation:
            raise SelfIntersection(curve.name, (int(min(i, j)), int(max(i, j))))
    return edges(curve)


def point_at(curve, i, s):
    return projgeom.normalize((1.0 - s) * curve.starts[i] + s * curve.ends[i])


def tangent_at(curve, i):
    return curve.ends[i] - curve.starts[i]


def homology_class(curve):
    return 0 if curve.closure == 1 else 1


def min_separation(c1, c2):
    """Smallest projective distance between the two curves."""
    d = projgeom.arc_arc_distance(c1.starts[:, None], c1.ends[:, None],
                                  c2.starts[None], c2.ends[None])
    return float(np.min(d))


def transform(curve, op, k=0):
    """Return a curve with the same projective image (reverse flips orientation).

    op is one of "reverse", "rotate_start", "refine", "flip_all_lifts",
    "flip_one_lift"; ``k`` is the shift / edge / vertex index where relevant.
    """
    W, sigma = np.array(curve.lifts), curve.closure
    n = len(W)
    if op == "reverse":
        V = W[::-1]
    elif op == "rotate_start":
        k %= n
        V = np.concatenate([W[k:], sigma * W[:k]])
    elif op == "refine":
        k %= n
        mid = projgeom.normalize(curve.starts[k] + curve.ends[k])
        V = np.concatenate([W[:k + 1], mid[None], W[k + 1:]])
    elif op == "flip_all_lifts":
        V = -np.array(curve.vertices)
    elif op == "flip_one_lift":
        V = np.array(curve.vertices)
        V[k % n] *= -1
    else:
        raise ValueError(f"unknown transform {op!r}")
    return LiftedCurve(curve.name, V, sigma, curve.weight)


def random_curve(seed, n_edges=16, cls=0, scale=1.0, harmonics=3, name="K",
                 tol=DEFAULT_TOL, max_tries=50):
    """Random smooth loop on S^3 sampled at ``n_edges`` vertices.

    Class 0: constant term plus ``scale`` times harmonics 1..harmonics over a
    full period.  Class 1: odd harmonics over half a period, so the last edge
    ends at the negated first vertex.
    """
    if n_edges < 8:
        raise ValueError("n_edges must be >= 8")
    if cls not in (0, 1):
        raise ValueError("cls must be 0 or 1")
    for attempt in range(max_tries):
        rng = np.random.default_rng([*np.atleast_1d(seed).tolist(), n_edges, cls, attempt])
        if cls == 0:
            theta = 2.0 * np.pi * np.arange(n_edges) / n_edges
            pts = np.tile(rng.normal(size=4), (n_edges, 1))
            orders = range(1, harmonics + 1)
        else:
            theta = np.pi * np.arange(n_edges) / n_edges
            pts = np.zeros((n_edges, 4))
            orders = range(1, 2 * harmonics, 2)
        for m in orders:
            amp = 1.0 if (cls == 1 and m == 1) else scale / m
            a, b = rng.normal(size=(2, 4)) * amp
            pts += np.cos(m * theta)[:, None] * a + np.sin(m * theta)[:, None] * b
        try:
            c = LiftedCurve(name, pts, 1 if cls == 0 else -1)
            validate(c, tol)
        except InputError:
            continue
        return c
    raise GenerationFailure(f"no valid random curve after {max_tries} tries (seed={seed})")


# -- text format --------------------------------------------------------------

_HEADER = re.compile(r"^curve\s+(\S+)((?:\s+\w+=\S+)*)\s*$")


def parse_curves(text, affine=False):
    """Parse the block format; returns {name: LiftedCurve} in file order.

    With ``affine=True`` vertex lines carry 3 coordinates (x, y, z) which are
    homogenized as (1, x, y, z).
    """
    curves = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"line {lineno}"
        if current is None:
            m = _HEADER.match(line)
            if not m:
                raise CurveFormatError(f"{where}: expected 'curve <name> ...', got {raw!r}")
            name = m.group(1)
            if name in curves:
                raise CurveFormatError(f"{where}: duplicate curve name {name!r}")
            opts = dict(kv.split("=", 1) for kv in m.group(2).split())
            unknown = set(opts) - {"closure", "weight"}
            if unknown:
                raise CurveFormatError(f"{where}: unknown options {sorted(unknown)}")
            try:
                closure = int(opts.get("closure", "+1"))
                weight = int(opts.get("weight", "1"))
            except ValueError as exc:
                raise CurveFormatError(f"{where}: {exc}") from None
            current = (name, closure, weight, [])
        elif line == "end":
            name, closure, weight, verts = current
            curves[name] = LiftedCurve(name, np.array(verts, dtype=float).reshape(-1, 4),
                                       closure, weight)
            current = None
        else:
            parts = line.split()
            want = 3 if affine else 4
            if parts[0] != "v" or len(parts) != want + 1:
                raise CurveFormatError(f"{where}: expected 'v' and {want} coordinates")
            try:
                xs = [float(p) for p in parts[1:]]
            except ValueError:
                raise CurveFormatError(f"{where}: bad coordinate in {raw!r}") from None
            current[3].append([1.0, *xs] if affine else xs)
    if current is not None:
        raise CurveFormatError(f"curve {current[0]!r} is missing 'end'")
    return curves


def read_curves(path, affine=False):
    with open(path, encoding="utf-8") as fh:
        return parse_curves(fh.read(), affine=affine)


def format_curves(curves, comment=None):
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    for c in curves:
        out.append(f"curve {c.name} closure={c.closure:+d} weight={c.weight}")
        out.extend("v " + " ".join(repr(float(x)) for x in row) for row in c.vertices)
        out.append("end")
    return "\n".join(out) + "\n"


def write_curves(path, curves, comment=None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_curves(curves, comment))
