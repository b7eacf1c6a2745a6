import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from freemetric.errors import DomainExceeded, EpsilonTooLarge, NotNormalized
from freemetric.rotations import (
    UnitQuaternion,
    ball_check,
    commutator_ratio,
    make_local_length,
    make_rep,
    max_radius_for,
    quat_angle,
    represent,
    so3_sweep,
)
from freemetric.words import enumerate_ball, parse

from conftest import words

P = parse
ORTHO = ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0))


def rodrigues(axis, angle):
    k = np.asarray(axis, float) / np.linalg.norm(axis)
    K = np.array([[0, -k[2], k[1]], [k[2], 0, -k[0]], [-k[1], k[0], 0]])
    return np.eye(3) + math.sin(angle) * K + (1 - math.cos(angle)) * K @ K


def matrix_angle(codes, axes, eps):
    m = np.eye(3)
    for c in codes:
        m = m @ rodrigues(axes[abs(c) - 1], eps if c > 0 else -eps)
    # sin from the skew part, cos from the trace: stable for small angles
    skew = np.array([m[2, 1] - m[1, 2], m[0, 2] - m[2, 0], m[1, 0] - m[0, 1]]) / 2
    return math.atan2(np.linalg.norm(skew), (np.trace(m) - 1) / 2)


def test_quaternion_basics():
    q = UnitQuaternion.from_axis_angle((0, 0, 2), 0.3)
    assert q.norm() == pytest.approx(1.0)
    assert quat_angle(q) == pytest.approx(0.3)
    assert quat_angle(q * q.conjugate()) == pytest.approx(0.0, abs=1e-15)
    # q and -q are the same rotation
    assert quat_angle(UnitQuaternion(-q.scalar, tuple(-v for v in q.vector))) == pytest.approx(0.3)
    with pytest.raises(NotNormalized):
        quat_angle(UnitQuaternion(2.0))
    with pytest.raises(ValueError):
        UnitQuaternion.from_axis_angle((0, 0, 0), 0.1)


@given(words(max_size=10))
def test_angle_matches_matrix_oracle(x):
    rep = make_rep(10, 0.1, axes=((1, 2, 3), (-1, 0.5, 2)))
    axes = rep.axes
    assert quat_angle(represent(rep, x)) == pytest.approx(matrix_angle(x.codes, axes, 0.1), abs=1e-7)


def test_make_rep_validation():
    rep = make_rep(6)
    assert rep.epsilon == pytest.approx(math.pi / 12)
    with pytest.raises(EpsilonTooLarge):
        make_rep(6, 0.5)
    with pytest.raises(EpsilonTooLarge):
        make_rep(1, 2.0)
    with pytest.raises(ValueError):
        make_rep(0)
    assert make_rep(4, seed=3).axes == make_rep(4, seed=3).axes
    assert make_rep(4, seed=3).axes != make_rep(4, seed=4).axes


def test_local_length_domain():
    fn = make_local_length(3, seed=1)
    assert fn(P("ab")) > 0
    with pytest.raises(DomainExceeded):
        fn(P("abab"))


@pytest.mark.parametrize("seed", range(5))
def test_ball_check_auto_epsilon(seed):
    rep = ball_check(make_local_length(5, "auto", seed))
    assert rep.n_words == len(enumerate_ball(5))
    assert rep.triangle_violations == 0
    assert rep.doubling_violations == 0
    assert rep.max_angle <= math.pi / 2 + 1e-9
    assert rep.positive
    assert all(r.status == "pass" for r in rep.rows())


def test_ball_check_triangle_pairs_brute_force():
    # the vectorized pair loop must visit every pair with |xy| <= R
    fn = make_local_length(3, "auto", 2)
    ball = enumerate_ball(3)
    expected = sum(1 for x in ball for y in ball if len(x * y) <= 3)
    worst = max(fn(x * y) - fn(x) - fn(y) for x in ball for y in ball if len(x * y) <= 3)
    rep = ball_check(fn)
    assert rep.n_triangle_pairs == expected
    assert rep.max_triangle_excess == pytest.approx(worst, abs=1e-12)


def test_ball_check_detects_violations():
    # with an unsafe epsilon angles leave [0, pi/2]; the triangle inequality
    # itself survives because the angle metric is bi-invariant
    fn = make_local_length(4, 1.2, 0, safe=False)
    rep = ball_check(fn)
    assert rep.triangle_violations == 0
    assert rep.max_angle > math.pi / 2
    failed = [r.id for r in rep.rows() if r.status == "fail"]
    assert failed == ["so3.max_angle"]


def test_positivity_is_soft():
    # parallel axes make the generators commute, so [a, b] maps to the identity
    fn = make_local_length(4, "auto", axes=((0, 0, 1), (0, 0, 1)))
    rep = ball_check(fn)
    assert "abAB" in rep.positivity_failures
    row = [r for r in rep.rows() if r.id.endswith("positivity")][0]
    assert row.status == "warn" and not row.hard


def test_commutator_ratio_orthogonal():
    for eps in (0.01, 0.05, 0.1):
        oracle = matrix_angle(P("abAB").codes, ORTHO, eps) / (2 * eps)
        assert commutator_ratio(eps, axes=ORTHO) == pytest.approx(oracle, rel=1e-6)
    assert commutator_ratio(0.01, axes=ORTHO) == pytest.approx(0.005, rel=0.2)
    with pytest.raises(ValueError):
        commutator_ratio(1.0)


@given(st.integers(0, 50))
def test_commutator_ratio_decays(seed):
    assert commutator_ratio(0.01, seed) < commutator_ratio(0.1, seed)


def test_sweep_and_radius():
    rows = so3_sweep([0.2, 0.1], [0, 1], radius=3)
    assert len(rows) == 4
    assert all(r[4] == 0 for r in rows)
    assert max_radius_for(math.pi / 12) == 6
