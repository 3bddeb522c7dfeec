import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from rp3link import curves, linking, projgeom, samples
from rp3link.config import RunConfig
from rp3link.curves import Edge, transform
from rp3link.errors import (CurvesNotDisjoint, DegeneratePair, GenericityError,
                            SignMarginViolation, TooManyDegenerateViewpoints)
from rp3link.linking import (crossing_sign, edge_pair_crossings, is_generic,
                             linking_number, make_viewpoint)

E = np.eye(4)
unit = arrays(float, 4, elements=st.floats(-1, 1, allow_nan=False))


def edge(P, Q):
    P, Q = projgeom.normalize(P), projgeom.normalize(Q)
    return Edge("c", 0, P, Q)


def d_of(a, b, trials=3, seed=0):
    return linking_number(a, b, RunConfig(seed=seed, trials=trials)).d


# -- edge pairs ------------------------------------------------------------------


def test_edge_pair_example():
    vp = make_viewpoint([1, 1, 1, 1])
    (hit,) = edge_pair_crossings(vp, edge(E[0], E[1]), edge(E[2], E[3]))
    assert hit[:2] == pytest.approx((0.5, 0.5), abs=1e-12)
    assert hit[2] < 1e-12


def test_edge_pair_far_viewpoint_is_empty():
    vp = make_viewpoint(E[3])
    e1 = edge([1, 0.1, 0, 0.2], [1, 0.2, 0, 0.2])
    e2 = edge([1, 0, 0.3, 0.25], [1, 0.05, 0.3, 0.25])
    assert edge_pair_crossings(vp, e1, e2) == []


def test_edge_pair_degenerate():
    vp = make_viewpoint([1, 1, 0, 0])
    with pytest.raises(DegeneratePair):
        edge_pair_crossings(vp, edge(E[0], [1, 0.5, 0, 0]), edge([0.5, 1, 0, 0], E[1]))


def reference_crossings(V, P1, Q1, P2, Q2):
    """Independent solver: X(s) must lie in the hyperplane spanned by V, P2, Q2."""
    n = np.linalg.svd(np.array([V, P2, Q2]))[2][-1]
    a, b = n @ P1, n @ (Q1 - P1)
    if abs(b) < 1e-14:
        return []
    s = -a / b
    if not 0 < s < 1:
        return []
    X = P1 + s * (Q1 - P1)
    # Y = P2 + u (Q2 - P2) = xV + yX, solved by least squares
    M = np.column_stack([Q2 - P2, -V, -X])
    u = np.linalg.lstsq(M, -P2, rcond=None)[0][0]
    return [(s, u)] if 0 < u < 1 else []


@settings(max_examples=200, deadline=None)
@given(unit, unit, unit, unit, unit)
def test_solver_matches_reference(v, p1, q1, p2, q2):
    vecs = [v, p1, q1, p2, q2]
    if min(np.linalg.norm(x) for x in vecs) < 0.2:
        return
    V, P1, Q1, P2, Q2 = (projgeom.normalize(x) for x in vecs)
    if P1 @ Q1 < 0.1 or P2 @ Q2 < 0.1 or abs(np.linalg.det(np.array([V, P1, Q1, P2]))) < 1e-3:
        return
    vp = make_viewpoint(V)
    try:
        got = edge_pair_crossings(vp, Edge("a", 0, P1, Q1), Edge("b", 0, P2, Q2))
    except DegeneratePair:
        return
    want = reference_crossings(V, P1, Q1, P2, Q2)
    # skip conditioning-limited cases at the edge-parameter boundary
    if any(min(s, 1 - s, u, 1 - u) < 1e-6 for s, u in want) or any(
            min(s, 1 - s, u, 1 - u) < 1e-6 for s, u, _ in got):
        return
    assert len(got) == len(want)
    for (s, u, _), (s2, u2) in zip(got, want):
        assert (s, u) == pytest.approx((s2, u2), abs=1e-7)


# -- signs -------------------------------------------------------------------------


def test_crossing_sign_examples():
    assert crossing_sign(E[0], E[1], E[2], E[3]) == 1
    assert crossing_sign(-E[0], -E[1], E[2], E[3]) == 1
    assert crossing_sign(E[0], E[1], E[3], E[2]) == -1
    with pytest.raises(SignMarginViolation):
        crossing_sign(E[0], E[1], E[2], E[2])


@given(unit, unit, unit, unit)
def test_crossing_sign_symmetries(x, a, y, b):
    if abs(np.linalg.det(np.array([x, a, y, b]))) < 1e-3 or min(
            np.linalg.norm(t) for t in (x, a, y, b)) < 0.1:
        return
    s = crossing_sign(x, a, y, b)
    assert crossing_sign(y, b, x, a) == s       # even permutation (13)(24)
    assert crossing_sign(-x, -a, y, b) == s     # lift flip
    assert crossing_sign(x, -a, y, b) == -s     # orientation reversal


# -- genericity --------------------------------------------------------------------


def test_vertex_collinear_viewpoint_is_rejected():
    a, b = samples.lines(8)
    V = projgeom.normalize(a.vertices[2] + 0.7 * b.vertices[5])
    kinds = {v.kind for v in is_generic(make_viewpoint(V), a, b)}
    assert "vertex" in kinds


def test_viewpoint_on_curve_is_rejected():
    a, b = samples.lines(8)
    V = curves.point_at(a, 3, 0.4)
    kinds = {v.kind for v in is_generic(make_viewpoint(V), a, b)}
    assert kinds == {"proximity"}


def test_acceptance_rate_on_corpus(pairs):
    total = bad = 0
    for seed, (a, b) in enumerate(pairs[:20]):
        for k in range(20):
            total += 1
            bad += bool(is_generic(linking.sample_viewpoint(seed, k), a, b))
    assert 1 - bad / total >= 0.99


def test_degree_through_viewpoint_rejects_nongeneric():
    a, b = samples.lines(8)
    V = projgeom.normalize(a.vertices[2] + 0.7 * b.vertices[5])
    with pytest.raises(GenericityError):
        linking.degree_through_viewpoint(a, b, V)


def test_too_many_degenerate_viewpoints():
    a, b = samples.lines(8)
    cfg = RunConfig(max_resamples=0)
    V = projgeom.normalize(a.vertices[2] + 0.7 * b.vertices[5])
    with pytest.raises(TooManyDegenerateViewpoints):
        linking_number(a, b, cfg, initial_viewpoints=[V])


# -- frozen instances ----------------------------------------------------------------


def test_lines_regression_constant():
    rep = linking_number(*samples.lines(8), RunConfig(trials=5))
    assert rep.d == 1
    assert str(rep.lk) == "1/2"
    assert len(rep.crossings) % 2 == 1


def test_affine_instances():
    assert d_of(*samples.hopf_affine()) == 2
    assert d_of(*samples.split_affine()) == 0


def test_split_pair_far_viewpoint_has_no_crossings():
    a, b = samples.split_affine()
    rep = linking.degree_through_viewpoint(a, b, [0.1, 0.2, 0.9, -0.3])
    assert rep.d == 0


def test_not_disjoint():
    a, _ = samples.lines(8)
    with pytest.raises(CurvesNotDisjoint):
        linking_number(a, a.renamed("A2"))


# -- properties on the corpus ---------------------------------------------------------


def test_viewpoint_independence_20(pairs):
    for seed in (0, 3, 6, 9, 13):
        rep = linking_number(*pairs[seed], RunConfig(seed=seed, trials=20))
        assert len(set(rep.trial_degrees)) == 1


@pytest.mark.parametrize("seed", range(6))
def test_orientation_and_symmetry(pairs, seed):
    a, b = pairs[seed]
    d = d_of(a, b)
    assert d_of(b, a) == d
    assert d_of(transform(a, "reverse"), b) == -d
    assert d_of(transform(a, "reverse"), transform(b, "reverse")) == d


def test_parity(pairs):
    for a, b in pairs[:12]:
        assert d_of(a, b, trials=1) % 2 == curves.homology_class(a) * curves.homology_class(b)


def test_weights_and_multicomponent(pairs):
    (a, b), (c, _) = pairs[4], pairs[7]
    assert min(curves.min_separation(c, a), curves.min_separation(c, b)) > 0.02
    dab, dcb = d_of(a, b), d_of(c.renamed("C"), b)
    assert d_of([a.with_weight(3)], [b]) == 3 * dab
    assert d_of([a, c.renamed("C").with_weight(-2)], [b]) == dab - 2 * dcb


def test_determinism_across_workers(pairs):
    a, b = pairs[5]
    reps = [linking_number(a, b, RunConfig(seed=11, workers=w)).as_dict() for w in (1, 3, 8)]
    assert reps[0] == reps[1] == reps[2]


def test_sample_viewpoint_is_pure():
    v1 = linking.sample_viewpoint(42, 7).V
    v2 = linking.sample_viewpoint(42, 7).V
    np.testing.assert_array_equal(v1, v2)
    assert not np.allclose(v1, linking.sample_viewpoint(42, 8).V)
    assert linking.sample_viewpoint(-1, 0).V.shape == (4,)


def test_solver_matches_reference_seeded_sweep():
    rng = np.random.default_rng(2024)
    hits = 0
    for _ in range(6000):
        V, P1, Q1, P2, Q2 = (projgeom.normalize(rng.uniform(-1, 1, 4)) for _ in range(5))
        if P1 @ Q1 < 0.1 or P2 @ Q2 < 0.1:
            continue
        want = reference_crossings(V, P1, Q1, P2, Q2)
        got = edge_pair_crossings(make_viewpoint(V), Edge("a", 0, P1, Q1), Edge("b", 0, P2, Q2))
        assert len(got) == len(want)
        for (s, u, _), (s2, u2) in zip(got, want):
            assert (s, u) == pytest.approx((s2, u2), abs=1e-7)
        hits += len(want)
    assert hits > 60
