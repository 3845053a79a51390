import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadrance import (
    CircleSpec,
    CoincidentCenters,
    NullClassInWrongField,
    Point,
    WrongResidueClass,
    ZeroArgument,
    ZeroQuadranceClass,
    all_points,
    circle_points,
    companion_pair,
    count_admissible_k,
    discriminant,
    first_point_at,
    intersect_circles,
    intersection_by_enumeration,
    point_at,
    point_index,
    predicted_intersections,
    quadrance,
)
from quadrance.geometry import NONSQUARE, NONZERO_SQUARE, ORIGIN, ZERO, translate

from conftest import _field


def test_quadrance_examples():
    f7 = _field(7)
    assert quadrance(f7, Point(0, 0), Point(1, 0)) == 1
    assert quadrance(f7, Point(0, 0), Point(2, 2)) == 1
    f5 = _field(5)
    assert quadrance(f5, Point(0, 0), Point(1, 2)) == 0


@pytest.mark.parametrize("q", [3, 5, 7, 9, 11])
def test_quadrance_symmetry_exhaustive(q):
    ctx = _field(q)
    pts = all_points(ctx)
    for a in pts:
        for b in pts:
            assert quadrance(ctx, a, b) == quadrance(ctx, b, a)


@pytest.mark.parametrize("q", [7, 9, 25, 49])
def test_translation_invariance_sampled(q):
    ctx = _field(q)
    rng = random.Random(q)
    for _ in range(1000):
        a = Point(rng.randrange(q), rng.randrange(q))
        b = Point(rng.randrange(q), rng.randrange(q))
        t = Point(rng.randrange(q), rng.randrange(q))
        assert quadrance(ctx, a, b) == quadrance(
            ctx, translate(ctx, a, t), translate(ctx, b, t)
        )


@pytest.mark.parametrize("q", [3, 7, 11, 19, 23])
def test_anisotropy_when_q_is_3_mod_4(q):
    ctx = _field(q)
    pts = all_points(ctx)
    for a in pts:
        for b in pts:
            assert (quadrance(ctx, a, b) == 0) == (a == b)


def test_point_index_bijection():
    ctx = _field(9)
    seen = {point_index(ctx, p) for p in all_points(ctx)}
    assert seen == set(range(81))
    for i in range(81):
        assert point_index(ctx, point_at(ctx, i)) == i


def test_circle_examples():
    f7 = _field(7)
    pts = circle_points(f7, CircleSpec(ORIGIN, 1))
    assert pts == [
        Point(0, 1),
        Point(0, 6),
        Point(1, 0),
        Point(2, 2),
        Point(2, 5),
        Point(5, 2),
        Point(5, 5),
        Point(6, 0),
    ]
    assert circle_points(f7, CircleSpec(Point(3, 4), 0)) == [Point(3, 4)]
    f5 = _field(5)
    assert len(circle_points(f5, CircleSpec(ORIGIN, 5))) == 8
    with pytest.raises(NullClassInWrongField):
        circle_points(f7, CircleSpec(ORIGIN, 7))


@pytest.mark.parametrize("q", [3, 5, 7, 9, 11, 13, 25, 27, 49])
def test_circle_cardinalities(q):
    ctx = _field(q)
    rng = random.Random(q)
    centers = [ORIGIN] + [
        Point(rng.randrange(q), rng.randrange(q)) for _ in range(4)
    ]
    nonzero = q + 1 if ctx.residue_class == 3 else q - 1
    for center in centers:
        assert circle_points(ctx, CircleSpec(center, 0)) == [center]
        for klass in range(1, q):
            assert len(circle_points(ctx, CircleSpec(center, klass))) == nonzero
        if ctx.residue_class == 1:
            assert len(circle_points(ctx, CircleSpec(center, q))) == 2 * (q - 1)


def test_discriminant_examples():
    f7 = _field(7)
    assert discriminant(f7, 1, 1, 1) == discriminant(f7, 1, 1, 1)
    d = discriminant(f7, 1, 1, 1)
    assert d.value == 6 and d.square_status == NONSQUARE
    d = discriminant(f7, 1, 1, 4)
    assert d.value == 0 and d.square_status == ZERO
    d = discriminant(f7, 1, 2, 3)
    assert d.value == 2 and d.square_status == NONZERO_SQUARE


@pytest.mark.parametrize("q", [5, 7, 9, 13])
def test_discriminant_permutation_invariance(q):
    import itertools

    ctx = _field(q)
    for i in range(q):
        for j in range(q):
            for k in range(q):
                ref = discriminant(ctx, i, j, k)
                for perm in itertools.permutations((i, j, k)):
                    assert discriminant(ctx, *perm) == ref


def test_predicted_intersections_examples():
    f7 = _field(7)
    assert predicted_intersections(f7, 1, 1, 1) == 0
    assert predicted_intersections(f7, 1, 1, 4) == 1
    assert predicted_intersections(f7, 1, 2, 3) == 2
    with pytest.raises(ZeroArgument):
        predicted_intersections(f7, 0, 1, 1)
    with pytest.raises(ZeroArgument):
        predicted_intersections(f7, 1, 1, 0)


def test_intersect_examples():
    f7 = _field(7)
    assert intersect_circles(f7, Point(0, 0), 1, Point(2, 0), 1) == [Point(1, 0)]
    assert intersect_circles(f7, Point(0, 0), 1, Point(1, 0), 1) == []
    f5 = _field(5)
    pts = intersect_circles(f5, Point(0, 0), 1, Point(1, 2), 2)
    assert len(pts) == 1
    assert pts == intersection_by_enumeration(f5, Point(0, 0), 1, Point(1, 2), 2)
    with pytest.raises(CoincidentCenters):
        intersect_circles(f7, ORIGIN, 1, ORIGIN, 2)
    with pytest.raises(ZeroQuadranceClass):
        intersect_circles(f7, ORIGIN, 0, Point(1, 0), 2)


@pytest.mark.parametrize("q", [5, 7, 9, 11])
def test_intersection_matches_enumeration_on_representatives(q):
    ctx = _field(q)
    reps = {}
    for pt in all_points(ctx):
        if pt == ORIGIN:
            continue
        reps.setdefault(quadrance(ctx, ORIGIN, pt), pt)
    for k, rep in reps.items():
        for i in range(1, q):
            for j in range(1, q):
                constructed = intersect_circles(ctx, ORIGIN, i, rep, j)
                assert constructed == intersection_by_enumeration(
                    ctx, ORIGIN, i, rep, j
                )
                if k != 0:
                    assert len(constructed) == predicted_intersections(ctx, i, j, k)


@pytest.mark.parametrize("q", [5, 7, 9, 11])
def test_intersection_count_depends_only_on_classes(q):
    # Joint histogram of (Q(X,Z), Q(Y,Z)) over Z must agree for every pair
    # (X, Y) at the same quadrance.
    ctx = _field(q)
    pts = all_points(ctx)
    qtab = [[quadrance(ctx, a, b) for b in pts] for a in pts]
    n = len(pts)
    reference = {}
    for a in range(n):
        for b in range(n):
            if a == b:
                continue
            k = qtab[a][b]
            joint = {}
            row_a, row_b = qtab[a], qtab[b]
            for z in range(n):
                key = (row_a[z], row_b[z])
                joint[key] = joint.get(key, 0) + 1
            if k in reference:
                assert joint == reference[k], (a, b, k)
            else:
                reference[k] = joint


def test_admissible_examples():
    f7 = _field(7)
    assert count_admissible_k(f7, 1, 1) == (5, [0, 2, 4, 5, 6])
    assert count_admissible_k(f7, 1, 3)[0] == 4
    assert count_admissible_k(_field(11), 1, 1)[0] == 7
    with pytest.raises(ZeroArgument):
        count_admissible_k(f7, 0, 1)


@pytest.mark.parametrize("q", [3, 7, 11, 19, 23])
def test_admissible_closed_forms(q):
    ctx = _field(q)
    for i in range(1, q):
        for j in range(1, q):
            count, ks = count_admissible_k(ctx, i, j)
            expected = (q + 3) // 2 if ctx.chi(ctx.mul(i, j)) == 1 else (q + 1) // 2
            assert count == expected == len(ks)


@pytest.mark.parametrize("q", [5, 9, 13])
def test_admissible_lower_bound_when_q_is_1_mod_4(q):
    ctx = _field(q)
    for i in range(1, q):
        for j in range(1, q):
            assert count_admissible_k(ctx, i, j)[0] >= (q - 1) // 2


def test_companion_examples():
    assert companion_pair(_field(13), 2) == 2
    assert companion_pair(_field(5), 1) == 4
    assert companion_pair(_field(17), 1) == 11
    with pytest.raises(WrongResidueClass):
        companion_pair(_field(7), 1)
    with pytest.raises(ZeroArgument):
        companion_pair(_field(5), 0)


@pytest.mark.parametrize("q", [5, 9, 13, 17, 29])
def test_companion_property_everywhere(q):
    ctx = _field(q)
    for i in range(1, q):
        j = companion_pair(ctx, i)
        assert j != 0
        assert discriminant(ctx, i, i, j).is_square_or_zero
        assert discriminant(ctx, j, j, i).is_square_or_zero


@given(
    q=st.sampled_from([7, 9, 11, 13]),
    data=st.data(),
)
@settings(max_examples=80, deadline=None)
def test_first_point_at_is_smallest(q, data):
    ctx = _field(q)
    quad = data.draw(st.integers(1, q - 1))
    pt = first_point_at(ctx, ORIGIN, quad)
    idx = point_index(ctx, pt)
    for smaller in range(idx):
        assert quadrance(ctx, ORIGIN, point_at(ctx, smaller)) != quad
