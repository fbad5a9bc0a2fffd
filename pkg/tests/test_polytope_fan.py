import random
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from igusa_laurent.fan import (
    attainable_fan, build_normal_fan, classify_edges, fundamental_lattice_points, refine_to_simple,
)
from igusa_laurent.laurent import parse
from igusa_laurent.polytope import (
    DegeneratePolytopeError, NewtonPolytope, convex_hull, cross, newton_polytope, support_faces,
)

from conftest import random_laurent

G = parse("x^-3+y^-2+y^4")
F1 = parse("x^-3+y^2+y^4")


def brute_d(a, points):
    return min(a[0] * x + a[1] * y for x, y in points)


def test_polytope_of_g():
    P = newton_polytope(G)
    assert P.vertices == [(-3, 0), (0, -2), (0, 4)]
    assert sorted(P.normals()) == sorted([(2, 3), (-1, 0), (4, -3)])
    assert [P.d(n) for n in [(2, 3), (-1, 0), (4, -3)]] == [-6, 0, -12]
    assert P.d((1, 0)) == -3 and P.d((0, 1)) == -2


def test_normals_of_closed_form_input():
    assert sorted(newton_polytope(F1).normals()) == sorted([(-2, 3), (-1, 0), (4, -3)])


def test_fans_of_g():
    P = newton_polytope(G)
    FA = attainable_fan(P)
    assert FA.rays() == [(1, 0), (2, 3), (0, 1)]
    cones = FA.two_cones()
    assert [c.generators for c in cones] == [((1, 0), (2, 3)), ((2, 3), (0, 1))]
    assert [abs(c.det) for c in cones] == [3, 2]
    assert [c.face_tau.points for c in cones] == [((-3, 0),), ((0, -2),)]
    tags = dict(classify_edges(FA, P))
    assert tags[(2, 3)] == "D" and tags[(1, 0)] == "E" and tags[(0, 1)] == "E"
    FP = refine_to_simple(FA, P)
    assert all(c.is_simple() for c in FP.cones)
    inserted = [r for r, t in classify_edges(FP, P) if t == "E'"]
    assert sorted(inserted) == [(1, 1), (1, 2)]


def test_closed_form_input_fan_is_quadrant():
    P = newton_polytope(F1)
    FA = attainable_fan(P)
    assert FA.rays() == [(1, 0), (0, 1)]
    assert FA.two_cones()[0].face_tau.points == ((-3, 0),)


def test_degenerate_polytope():
    with pytest.raises(DegeneratePolytopeError):
        newton_polytope(parse("x^2+2*x*y+y^2"))
    assert len(support_faces([(0, 0), (1, 1), (2, 2)])) == 3


def test_convex_hull_ccw():
    hull = convex_hull([(0, 0), (2, 0), (1, 1), (2, 2), (0, 2), (1, 0)])
    assert hull == [(0, 0), (2, 0), (2, 2), (0, 2)]


def _check_polytope(f, rng, n_rays=1000):
    P = newton_polytope(f)
    pts = list(f)
    F0 = build_normal_fan(P)
    FA = attainable_fan(P)
    FP = refine_to_simple(FA, P)
    # d is linear on every cone of the normal fan
    for c in F0.two_cones():
        u, v = c.generators
        for _ in range(5):
            i, j, k, m = (rng.randint(0, 6) for _ in range(4))
            a = (i * u[0] + j * v[0], i * u[1] + j * v[1])
            b = (k * u[0] + m * v[0], k * u[1] + m * v[1])
            s = (a[0] + b[0], a[1] + b[1])
            assert P.d(s) == P.d(a) + P.d(b) == brute_d(s, pts)
    # coverage: every ray lies in exactly one relative interior
    for _ in range(n_rays):
        a = (rng.randint(-50, 50), rng.randint(-50, 50))
        if a != (0, 0):
            assert sum(c.contains_interior(a) for c in F0.cones) == 1
        b = (rng.randint(0, 50), rng.randint(0, 50))
        if b != (0, 0):
            for F in (FA, FP):
                hits = [c for c in F.cones if c.contains_interior(b)]
                assert len(hits) == 1
                assert hits[0].face_tau == P.meet(b)
    for c in FP.two_cones():
        assert abs(c.det) == 1
        assert P.meet((c.generators[0][0] + c.generators[1][0],
                       c.generators[0][1] + c.generators[1][1])) == c.face_tau
    for F in (F0, FA, FP):
        for c in F.two_cones():
            assert len(fundamental_lattice_points(c)) == abs(c.det)


def test_geometry_random_polytopes():
    rng = random.Random(7)
    for _ in range(20):
        _check_polytope(random_laurent(rng, span=6), rng, n_rays=200)


@given(st.tuples(st.integers(1, 40), st.integers(1, 40)), st.tuples(st.integers(1, 40), st.integers(1, 40)))
@settings(max_examples=200)
def test_fundamental_points_count(u, v):
    from igusa_laurent.fan import Cone
    from igusa_laurent.polytope import Face

    u = (u[0] // gcd(*u), u[1] // gcd(*u))
    v = (v[0] // gcd(*v), v[1] // gcd(*v))
    if cross(u, v) == 0:
        return
    if cross(u, v) < 0:
        u, v = v, u
    c = Cone((u, v), Face(0, ((0, 0),)), cross(u, v))
    pts = fundamental_lattice_points(c)
    assert len(pts) == cross(u, v)
    assert (0, 0) in pts


@given(st.lists(st.tuples(st.integers(-6, 6), st.integers(-6, 6)), min_size=3, max_size=8, unique=True))
def test_d_is_min_over_vertices(points):
    try:
        P = NewtonPolytope(points)
    except DegeneratePolytopeError:
        return
    for a in [(1, 0), (0, 1), (2, 3), (-1, 5), (3, -2)]:
        assert P.d(a) == brute_d(a, points)
        face = P.meet(a)
        assert all(a[0] * x + a[1] * y == P.d(a) for x, y in face.points)
