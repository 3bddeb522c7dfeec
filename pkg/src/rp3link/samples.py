"""Canonical curve instances used by tests, demos and ``rp3link gen``."""
import numpy as np

from .config import DEFAULT_TOL
from .curves import LiftedCurve, min_separation, random_curve
from .errors import GenerationFailure


def projective_line(plane, n=8, name="L", phase=0.0):
    """Polygon with n vertices on the projective line spanned by two basis axes."""
    i, j = plane
    theta = phase + np.pi * np.arange(n) / n
    v = np.zeros((n, 4))
    v[:, i] = np.cos(theta)
    v[:, j] = np.sin(theta)
    return LiftedCurve(name, v, -1)


def lines(n=8):
    """Two disjoint projective lines, span(e1, e2) and span(e3, e4)."""
    return [projective_line((0, 1), n, "A"), projective_line((2, 3), n, "B", phase=0.1)]


def affine_lift(points, name, weight=1):
    """Homogenize affine points p -> (1, p); this chart preserves orientation."""
    p = np.asarray(points, dtype=float)
    return LiftedCurve(name, np.column_stack([np.ones(len(p)), p]), 1, weight)


def _circle(center, e1, e2, r, n, phase=0.0):
    t = phase + 2 * np.pi * np.arange(n) / n
    return (np.asarray(center, float) + r * np.cos(t)[:, None] * np.asarray(e1, float)
            + r * np.sin(t)[:, None] * np.asarray(e2, float))


def hopf_affine(n=12, r=0.5):
    """Affine Hopf link with classical linking number +1.

    A runs counterclockwise in the xy-plane about the origin; B is the circle
    (r + r cos u, 0, -r sin u), which crosses the disk of A once, at its
    center and moving in the +z direction.
    """
    a = _circle((0, 0, 0), (1, 0, 0), (0, 1, 0), r, n, phase=0.05)
    b = _circle((r, 0, 0), (1, 0, 0), (0, 0, -1), r, n, phase=0.05)
    return [affine_lift(a, "A"), affine_lift(b, "B")]


def split_affine(n=12, r=0.3):
    """Two unlinked small circles in one affine chart."""
    a = _circle((-0.8, 0, 0), (1, 0, 0), (0, 1, 0), r, n)
    b = _circle((0.8, 0, 0), (0, 1, 0), (0, 0, 1), r, n)
    return [affine_lift(a, "A"), affine_lift(b, "B")]


def affine_unknot(n=12, r=0.4, name="K"):
    return affine_lift(_circle((0.1, -0.2, 0.05), (1, 0, 0), (0, 0.6, 0.8), r, n), name)


def affine_trefoil(n=48, scale=0.15, name="T"):
    """(2,3) torus knot in an affine chart; its lift is two split trefoils."""
    t = 2 * np.pi * np.arange(n) / n
    p = np.column_stack([(2 + np.cos(3 * t)) * np.cos(2 * t),
                         (2 + np.cos(3 * t)) * np.sin(2 * t),
                         np.sin(3 * t)]) * scale
    return affine_lift(p, name)


def torus_knot(p=2, q=3, n=48, name="T"):
    """Knot whose lift is the (p, q) curve on the Clifford torus (p even, q odd).

    The two lifts are parallel (p, q) curves, so the self-linking number is p*q.
    """
    if p % 2 or not q % 2 or np.gcd(p, q) != 1:
        raise ValueError("need p even, q odd, gcd(p, q) = 1")
    t = 2 * np.pi * np.arange(n) / n
    v = np.column_stack([np.cos(p * t), np.sin(p * t), np.cos(q * t), np.sin(q * t)])
    return LiftedCurve(name, v, 1)


def random_pair(seed, n1=16, n2=16, cls1=0, cls2=0, scale=1.0, margin=0.02,
                tol=DEFAULT_TOL, max_tries=50):
    """Two random curves whose projective distance is at least ``margin``."""
    for attempt in range(max_tries):
        a = random_curve([seed, attempt, 1], n1, cls1, scale, name="A", tol=tol)
        b = random_curve([seed, attempt, 2], n2, cls2, scale, name="B", tol=tol)
        if min_separation(a, b) >= margin:
            return a, b
    raise GenerationFailure(f"no disjoint random pair after {max_tries} tries (seed={seed})")
