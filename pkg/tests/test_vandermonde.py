import math
import random
from fractions import Fraction

import pytest

from symconn.compositions import composition
from symconn.errors import DomainError
from symconn.polynomials import power_sums, vandermonde_map
from symconn.realroots import AlgebraicValue, thom_rooted
from symconn.vandermonde import (
    CanonicalPoint,
    fiber_points,
    min_canonical,
    ordered_real_solutions,
    point_in_box,
    power_sum_value,
    solve_weighted_system,
    verify_fiber_point,
)


def F(a, b=1):
    return Fraction(a, b)


def approx(pt, eps=F(1, 10**12)):
    return [float((lo + hi) / 2) for lo, hi in pt.refine(eps)]


def test_validation():
    with pytest.raises(DomainError):
        solve_weighted_system((1, 2), (1,))
    with pytest.raises(DomainError):
        solve_weighted_system((0, 2), (1, 1))
    with pytest.raises(DomainError):
        solve_weighted_system((), ())


def test_degree_one_exact():
    pts = fiber_points((3,), (F(2),))
    assert len(pts) == 1
    assert pts[0].exact_rational() == (F(2, 3),)


def test_pair_worked_example():
    # weights (1,2), a=(0,2): the ordered solution is (-2/sqrt3, 1/sqrt3)
    par = solve_weighted_system((1, 2), (0, 2))
    assert len(thom_rooted(par.q)) == 2  # both roots real
    pts = ordered_real_solutions(par)
    assert len(pts) == 1  # but only one respects the ordering
    x = approx(pts[0])
    assert abs(x[0] + 2 / math.sqrt(3)) < 1e-9
    assert abs(x[1] - 1 / math.sqrt(3)) < 1e-9
    assert verify_fiber_point(pts[0], (1, 2), (0, 2))
    v = power_sum_value(pts[0], (1, 2), 3)
    lo, hi = v.interval(F(1, 10**15))
    assert abs(float((lo + hi) / 2) + 2 / math.sqrt(3)) < 1e-12


def test_pair_empty_fiber():
    assert fiber_points((1, 1), (0, -1)) == []


def test_pair_tangent_double_root():
    # z1+z2=2, z1^2+z2^2=2 touches the ordering wall: single point (1,1)
    pts = fiber_points((1, 1), (2, 2))
    assert len(pts) == 1
    assert pts[0].exact_rational() == (F(1), F(1))


def test_power_sum_value_rational_path():
    pts = fiber_points((2, 2), (4, 4))
    assert len(pts) == 1
    v = power_sum_value(pts[0], (2, 2), 3)
    assert v.compare(AlgebraicValue.of_rational(4)) == 0


def test_vanishing_polynomial_vanishes():
    # the defining polynomial of the power-sum value must enclose zero on a
    # tight interval around the value
    pts = fiber_points((1, 2), (0, 2))
    v = power_sum_value(pts[0], (1, 2), 3)
    lo, hi = v.interval(F(1, 10**20))
    rlo, rhi = v.vanishing.eval_interval(lo, hi)
    assert rlo <= 0 <= rhi


def test_generic_roundtrip_fixed():
    zstar = (F(-1), F(1, 2), F(2))
    w = (1, 2, 1)
    a = vandermonde_map(zstar, 3, weights=w)
    pts = fiber_points(w, a)
    assert any(
        all(p.coordinate_sign(i, offset=zstar[i]) == 0 for i in range(3))
        for p in pts
    )
    for p in pts:
        assert verify_fiber_point(p, w, a)
        for i in range(2):
            assert p.coordinate_compare(i, i + 1) <= 0


def test_generic_tangent_multiplicity():
    # z*=(1,1,2) makes the Jacobian singular; the squarefree pass must still
    # produce the solution exactly once
    w = (1, 1, 2)
    a = vandermonde_map((1, 1, 2), 3, weights=w)
    pts = fiber_points(w, a)
    matches = [
        p
        for p in pts
        if all(
            p.coordinate_sign(i, offset=v) == 0
            for i, v in enumerate((F(1), F(1), F(2)))
        )
    ]
    assert len(matches) == 1


def test_unit_weights_recover_sorted_multiset():
    # with unit weights and d = n the power sums pin down the multiset, so
    # exactly one ordered solution exists: the sorted input
    rng = random.Random(23)
    for _ in range(6):
        n = 3
        x = [F(rng.randint(-4, 4), rng.choice([1, 2])) for _ in range(n)]
        if rng.random() < 0.4:
            x[rng.randrange(n)] = x[rng.randrange(n)]  # force duplicates sometimes
        a = power_sums(x, n)
        pts = fiber_points((1,) * n, a)
        assert len(pts) == 1
        want = sorted(x)
        assert all(
            pts[0].coordinate_sign(i, offset=want[i]) == 0 for i in range(n)
        )


def test_roundtrip_random_small_degrees():
    rng = random.Random(41)
    for _ in range(12):
        d = rng.randint(1, 2)
        w = tuple(rng.randint(1, 4) for _ in range(d))
        vals = sorted(
            rng.sample([F(k, 2) for k in range(-8, 9)], d)
        )
        a = vandermonde_map(vals, d, weights=w)
        pts = fiber_points(w, a)
        assert any(
            all(p.coordinate_sign(i, offset=vals[i]) == 0 for i in range(d))
            for p in pts
        )
        for p in pts:
            assert verify_fiber_point(p, w, a)


def test_point_in_box():
    pts = fiber_points((1, 2), (0, 2))
    assert point_in_box(pts[0], (-2, -2), (2, 2))
    assert not point_in_box(pts[0], (0, 0), (2, 2))
    assert point_in_box(pts[0], (-2, F(1, 2)), (2, 2))


def test_min_canonical_worked_example():
    res = min_canonical(3, 2, (0, 2))
    assert res is not None
    assert res.lam == composition((1, 2))
    x = approx(res.point)
    assert abs(x[0] + 2 / math.sqrt(3)) < 1e-9
    assert abs(x[1] - 1 / math.sqrt(3)) < 1e-9
    lo, hi = res.value.interval(F(1, 10**12))
    assert abs(float((lo + hi) / 2) + 2 / math.sqrt(3)) < 1e-9


def test_min_canonical_mirrored_pattern():
    # the mirrored face family picks up the maximizer on this fiber
    res = min_canonical(3, 2, (0, 2), pattern="mirrored")
    assert res.lam == composition((2, 1))
    lo, hi = res.value.interval(F(1, 10**12))
    assert abs(float((lo + hi) / 2) - 2 / math.sqrt(3)) < 1e-9


def test_min_canonical_empty():
    assert min_canonical(3, 2, (0, -1)) is None


def test_min_canonical_dominates_fiber_members():
    # for d <= 2 the extremal faces carry the true fiber minimizers, so the
    # result dominates every fiber member
    rng = random.Random(59)
    for _ in range(10):
        n = rng.randint(2, 5)
        d = rng.randint(1, 2)
        x = [F(rng.randint(-3, 3), rng.choice([1, 2, 3])) for _ in range(n)]
        a = power_sums(x, d)
        res = min_canonical(n, d, a)
        assert res is not None
        assert verify_fiber_point(res.point, res.lam.parts, a)
        higher = power_sums(x, d + 1)[d]
        assert res.value.compare(AlgebraicValue.of_rational(higher)) <= 0


def test_min_canonical_dominates_points_on_pattern_faces():
    # a query point lying on an extremal face is itself a candidate, so the
    # returned value can never exceed its p_{d+1}
    rng = random.Random(61)
    for _ in range(4):
        z = sorted(rng.sample([F(k, 2) for k in range(-6, 7)], 3))
        x = [z[0], z[1], z[1], z[2]]  # on the (1,2,1) face, n=4, d=3
        a = power_sums(x, 3)
        res = min_canonical(4, 3, a)
        assert res is not None
        assert verify_fiber_point(res.point, res.lam.parts, a)
        higher = power_sums(x, 4)[3]
        assert res.value.compare(AlgebraicValue.of_rational(higher)) <= 0


def test_min_canonical_degenerate_fiber_stays_on_pattern_faces():
    # the fiber of (0,0,1,1) is an arc whose p_4-minimum sits at (0,0,1,1)
    # itself, off every extremal face; the canonical point is the arc's other
    # end ((1-s)/2, 1/2, 1/2, (1+s)/2) with s = sqrt(2), where p_4 = 9/4
    x = [F(0), F(0), F(1), F(1)]
    a = power_sums(x, 3)
    res = min_canonical(4, 3, a)
    assert res is not None
    assert res.lam == composition((1, 2, 1))
    assert verify_fiber_point(res.point, res.lam.parts, a)
    assert res.value.compare(AlgebraicValue.of_rational(F(9, 4))) == 0
    emb = res.point
    assert emb.coordinate_sign(1, offset=F(1, 2)) == 0


def test_min_canonical_odd_degree_returns_family_extremum():
    # odd d: the extremal faces hold the far end of the p_{d+1} range, so a
    # fiber member off those faces may have a smaller value than the result
    x = [F(0), F(1, 2), F(1), F(2)]
    a = power_sums(x, 3)
    res = min_canonical(4, 3, a)
    assert res is not None
    assert res.lam == composition((1, 2, 1))
    assert verify_fiber_point(res.point, res.lam.parts, a)
    higher = power_sums(x, 4)[3]
    assert res.value.compare(AlgebraicValue.of_rational(higher)) > 0


def test_embedded_point_duplicates_blocks():
    res = min_canonical(3, 2, (0, 2))
    emb = res.embedded_point()
    assert emb.dim == 3
    x = approx(emb)
    assert abs(x[0] + 2 / math.sqrt(3)) < 1e-9
    assert abs(x[1] - 1 / math.sqrt(3)) < 1e-9
    assert abs(x[2] - 1 / math.sqrt(3)) < 1e-9
    assert emb.multiplicity_runs() == (1, 2)
