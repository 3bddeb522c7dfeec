import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rp3link import cover_oracle, curves, projgeom, samples
from rp3link.cover_oracle import CoverCurve, lk_s3, oracle_selflink, preimage
from rp3link.errors import CurvesNotDisjoint, NotNullHomologous


def great_circle(i, j, n=16, phase=0.0):
    t = phase + 2 * np.pi * np.arange(n) / n
    v = np.zeros((n, 4))
    v[:, i], v[:, j] = np.cos(t), np.sin(t)
    return CoverCurve(v, "g", 0)


def small_circle(center, n=12, r=0.2):
    c = projgeom.normalize(center)
    basis = projgeom.chart_at(c).basis
    t = 2 * np.pi * np.arange(n) / n
    v = c + r * (np.cos(t)[:, None] * basis[0] + np.sin(t)[:, None] * basis[1])
    return CoverCurve(v / np.linalg.norm(v, axis=1, keepdims=True), "s", 0)


def reversed_(K):
    return CoverCurve(K.vertices[::-1].copy(), K.source, K.sheet)


def test_preimage_components():
    k = samples.affine_unknot()
    up, down = preimage(k)
    np.testing.assert_allclose(down.vertices, -up.vertices)
    (line,) = preimage(samples.projective_line((0, 1), 6))
    assert len(line.vertices) == 12
    np.testing.assert_allclose(line.vertices[6:], -line.vertices[:6])
    for c in (k, samples.projective_line((0, 1))):
        assert len(preimage(c)) == 2 - curves.homology_class(c)


def test_hopf_great_circles():
    a, b = great_circle(0, 1), great_circle(2, 3, phase=0.1)
    assert lk_s3(a, b) == 1
    assert lk_s3(b, a) == 1
    assert lk_s3(reversed_(a), b) == -1


def test_split_small_circles():
    assert lk_s3(small_circle([1, 0, 0, 0]), small_circle([0, 1, 0, 0])) == 0


def test_not_disjoint():
    a = great_circle(0, 1)
    with pytest.raises(CurvesNotDisjoint):
        lk_s3(a, a)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_stable_across_seeds(seed):
    a, b = great_circle(0, 1, 12), great_circle(2, 3, 10, phase=0.3)
    assert lk_s3(a, b, seed=seed) == 1


def test_refinement_and_rotation_invariance():
    a, b = samples.random_pair(3, 20, 20, 1, 1, scale=4.0)
    (A,), (B,) = preimage(a), preimage(b)
    base = lk_s3(A, B)
    (Ar,) = preimage(curves.transform(a, "refine", 4))
    assert lk_s3(Ar, B) == base
    Arot = CoverCurve(np.roll(A.vertices, 5, axis=0), A.source, 0)
    assert lk_s3(Arot, B) == base


def test_stereographic_map_preserves_orientation():
    rng = np.random.default_rng(5)
    for _ in range(20):
        N = projgeom.normalize(rng.normal(size=4))
        basis = projgeom.chart_at(-N).basis
        X = projgeom.normalize(rng.normal(size=4))
        T = np.linalg.svd(np.vstack([X, rng.normal(size=(3, 4))]))[2][1:]
        if projgeom.det4(X, *T) < 0:
            T[0] = -T[0]
        h = 1e-6
        J = np.array([(cover_oracle._stereo(projgeom.normalize(X + h * t), N, basis)
                       - cover_oracle._stereo(X, N, basis)) / h for t in T])
        assert np.linalg.det(J) > 0


def test_frozen_values():
    assert cover_oracle.oracle_lk_rp3(*samples.hopf_affine()) == 1
    assert cover_oracle.oracle_degree(*samples.lines(8)) == 1
    assert cover_oracle.oracle_degree(*samples.split_affine()) == 0
    assert oracle_selflink(samples.affine_unknot()) == 0


def test_selflink_mirror():
    k = samples.torus_knot(2, 1, 24)
    mirror = curves.LiftedCurve("M", k.vertices * np.array([1, 1, 1, -1]), 1)
    assert oracle_selflink(k) == 2
    assert oracle_selflink(mirror) == -2


def test_selflink_requires_null_homologous():
    with pytest.raises(NotNullHomologous):
        oracle_selflink(samples.projective_line((0, 1)))


def test_weighted_oracle():
    a, b = samples.hopf_affine()
    assert cover_oracle.oracle_degree([a.with_weight(-3)], [b]) == -6
