import itertools
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from svconvex import dd, lp
from svconvex.oracle import brute_support, brute_vertices
from svconvex.polyhedra import Polyhedron, cone_generators_list, dot, is_cone, polar_cone
from svconvex.xreal import NEG_INF, POS_INF, xr

from strategies import point_clouds, vectors

F = Fraction


def P_h(A, b, dim=None):
    return Polyhedron.from_hrep(A, b, dim=dim)


# -- LP --------------------------------------------------------------------

def test_lp_optimal_box():
    res = lp.maximize([1, 1], [[1, 0], [-1, 0], [0, 1], [0, -1]], [-1, -1, -1, -1])
    assert res.optimal and res.value == xr(2)
    assert res.x == (1, 1)


def test_lp_unbounded_carries_ray():
    A, b = [[1, 0], [0, 1]], [0, 0]
    res = lp.maximize([1, 0], A, b)
    assert res.status == lp.UNBOUNDED and res.value == POS_INF
    assert all(dot(a, res.ray) >= 0 for a in A) and res.ray[0] > 0


def test_lp_infeasible_has_farkas_certificate():
    A, b = [[1], [-1]], [1, 0]
    res = lp.maximize([0], A, b)
    assert res.status == lp.INFEASIBLE and res.value == NEG_INF
    assert lp.check_farkas(A, b, res.farkas)


def test_minimize_conventions():
    assert lp.minimize([1], [[1], [-1]], [1, 0]).value == POS_INF
    assert lp.minimize([1], [[-1]], [0]).value == NEG_INF


@given(point_clouds(2, 1, 5), vectors(2, st.integers(-3, 3)))
def test_lp_support_matches_vertex_max(pts, w):
    P = Polyhedron.from_vrep(pts)
    h = P.hrep
    if not h.A:
        return
    assert P.support(w) == xr(max(dot(w, p) for p in pts))
    assert P.support(w) == P.support_vrep(w)


# -- double description ---------------------------------------------------

def test_orthant_generators():
    verts, rays, lines = dd.h_to_v([[1, 0], [0, 1]], [0, 0], 2)
    assert [tuple(v) for v in verts] == [(0, 0)]
    assert sorted(map(tuple, rays)) == [(0, 1), (1, 0)]
    assert not lines


def test_infeasible_system_has_no_generators():
    assert dd.h_to_v([[1], [-1]], [1, 0], 1) is None
    assert Polyhedron.from_hrep([[1], [-1]], [1, 0]).is_empty


def test_staircase_hrep_from_generators():
    P = Polyhedron.from_vrep([(0, 1), (1, 0)], [(1, 0), (0, 1)])
    Q = P_h([(1, 0), (0, 1), (1, 1)], [0, 0, 1])
    assert P == Q
    assert sorted(zip(P.hrep.A, P.hrep.b)) == sorted(zip(Q.hrep.A, Q.hrep.b))
    assert len(P.hrep.A) == 3


@given(point_clouds(3, 1, 6))
def test_vertices_agree_with_brute_force(pts):
    P = Polyhedron.from_vrep(pts)
    h = P.hrep
    assume(P.vrep.lines == () and len(h.A) >= 3)
    full = [tuple(a) for a in h.A]
    assume(all(any(a) for a in full))
    # brute force needs a full-dimensional description: skip lower-dimensional hulls
    assume(not any((tuple(-x for x in a), -b) in zip(map(tuple, h.A), h.b)
                   for a, b in zip(h.A, h.b)))
    assert sorted(map(tuple, P.vrep.vertices)) == brute_vertices(h.A, h.b)


@given(point_clouds(2, 1, 5), st.lists(vectors(2, st.integers(-2, 2)), max_size=2))
def test_h_v_roundtrip(pts, rays):
    P = Polyhedron.from_vrep(pts, rays, dim=2)
    Q = Polyhedron.from_hrep(P.hrep.A, P.hrep.b, dim=2)
    assert P == Q
    assert P.vrep == Q.vrep
    for p in pts:
        assert P.contains_point(p)


# -- canonical forms and predicates ------------------------------------------

def test_canonical_form_removes_scaled_duplicates():
    assert P_h([[1], [2]], [0, 0]) == P_h([[1]], [0])
    assert P_h([[1], [2]], [0, 0]).hrep == P_h([[1]], [0]).hrep


def test_empty_and_whole():
    E = Polyhedron.empty(2)
    W = Polyhedron.whole(2)
    assert E.is_empty and not E.feasible_by_lp()
    assert W.is_whole and W.hrep.A == ()
    assert P_h([[0, 0]], [-1], dim=2).is_whole


def test_support_examples():
    sq = Polyhedron.box([-1, -1], [1, 1])
    assert sq.support((1, 1)) == xr(2)
    assert Polyhedron.empty(2).support((1, 0)) == NEG_INF
    up = Polyhedron.from_vrep([(1, 2)], [(1, 0), (0, 1)])
    assert up.support((0, -1)) == xr(-2)
    assert up.support((1, 0)) == POS_INF


def test_containment_examples():
    Q2 = Polyhedron.cone([(1, 0), (0, 1)])
    up = Polyhedron.from_vrep([(1, 1)], [(1, 0), (0, 1)])
    assert Q2.contains_poly(up) and not up.contains_poly(Q2)
    assert Q2.contains_poly(Polyhedron.empty(2))
    assert not Polyhedron.empty(2).contains_poly(Q2)


def test_recession_examples():
    Q2 = Polyhedron.cone([(1, 0), (0, 1)])
    assert Polyhedron.from_vrep([(1, 2)], [(1, 0), (0, 1)]).recession_contains(Q2)
    assert not Polyhedron.box([0, 0], [1, 1]).recession_contains(Q2)
    assert Polyhedron.empty(2).recession_contains(Q2)


def test_projection_examples():
    absx = P_h([(-1, 1), (1, 1)], [0, 0])
    assert absx.project([0]).is_whole
    seg = P_h([(1, 0), (-1, 0), (1, -1), (-1, 1)], [0, -1, 0, 0])
    assert seg.project([1]) == Polyhedron.box([0], [1])
    cube = Polyhedron.box([0, 0, 0], [1, 1, 1])
    assert cube.project([1, 2]) == Polyhedron.box([0, 0], [1, 1])


@given(point_clouds(3, 1, 4), st.sampled_from([[0], [1], [0, 2], [2, 1]]))
def test_projection_two_routes(pts, keep):
    P = Polyhedron.from_vrep(pts)
    assert P.project(keep) == P.project_vrep(keep)


def test_minkowski_examples():
    up = Polyhedron.from_vrep([(1, 2)], [(1, 0), (0, 1)])
    half = P_h([(0, 1)], [0])
    assert up.minkowski_sum(half) == P_h([(0, 1)], [2])
    assert up.minkowski_sum(Polyhedron.empty(2)).is_empty


def test_hull_union_example():
    a = Polyhedron.from_vrep([(0, 1)], [(1, 0), (0, 1)])
    b = Polyhedron.from_vrep([(1, 0)], [(1, 0), (0, 1)])
    assert a.hull_union(b) == P_h([(1, 0), (0, 1), (1, 1)], [0, 0, 1])


@given(point_clouds(2, 1, 3), point_clouds(2, 1, 3), vectors(2, st.integers(-3, 3)))
def test_support_is_additive_under_minkowski(p, q, w):
    P, Q = Polyhedron.from_vrep(p), Polyhedron.from_vrep(q)
    s = P.minkowski_sum(Q).support(w)
    assert s.value == P.support(w).value + Q.support(w).value


@given(point_clouds(2, 1, 3), point_clouds(2, 1, 3))
def test_intersection_is_greatest_lower_bound(p, q):
    P, Q = Polyhedron.from_vrep(p), Polyhedron.from_vrep(q)
    I = P.intersect(Q)
    assert P.contains_poly(I) and Q.contains_poly(I)
    H = P.hull_union(Q)
    assert H.contains_poly(P) and H.contains_poly(Q)


@given(point_clouds(2, 1, 3), st.lists(st.lists(st.integers(-2, 2), min_size=2, max_size=2),
                                       min_size=2, max_size=2))
def test_image_and_preimage_are_adjoint(pts, M):
    P = Polyhedron.from_vrep(pts)
    img = P.image(M)
    assert img.preimage(M).contains_poly(P)
    for p in pts:
        assert img.contains_point([dot(r, p) for r in M])


def test_slice_and_lift():
    absx = P_h([(-1, 1), (1, 1)], [0, 0])
    assert absx.slice({0: -2}) == P_h([(1,)], [2])
    strip = Polyhedron.box([0], [1]).lift(2, [1])
    assert strip == P_h([(0, 1), (0, -1)], [0, -1])


# -- cones -----------------------------------------------------------------

def test_polar_examples():
    Q2 = Polyhedron.cone([(1, 0), (0, 1)])
    assert polar_cone(Q2) == Polyhedron.cone([(-1, 0), (0, -1)])
    assert polar_cone(Polyhedron.point((0, 0))).is_whole
    assert polar_cone(Polyhedron.cone([(1, 1)])) == P_h([(-1, -1)], [0])


@given(st.lists(vectors(3, st.integers(-2, 2)), min_size=1, max_size=3))
def test_bipolar(rays):
    C = Polyhedron.cone(rays, dim=3)
    assert is_cone(C)
    assert polar_cone(polar_cone(C)) == C
    for r in cone_generators_list(polar_cone(C)):
        for c in cone_generators_list(C):
            assert dot(r, c) <= 0
