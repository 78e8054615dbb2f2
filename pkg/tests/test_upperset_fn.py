import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from svconvex import instances as I
from svconvex import scalar_fn as sf
from svconvex import upperset_fn as U
from svconvex.polyhedra import Polyhedron
from svconvex.upperset_fn import OrderedSpace, SetFn, UpperSet
from svconvex.xreal import NEG_INF, POS_INF, xr

from strategies import scalar_fns, seeds

F = Fraction
SP = I.orthant2()


def up(*points):
    return UpperSet.generated(SP, points)


def hs(rows, rhs):
    return Polyhedron.from_hrep(rows, rhs, dim=2)


def random_setup(seed, n=None, m=None):
    rng = random.Random(seed)
    n = n or rng.randint(1, 2)
    space = I.random_cone_space(rng, m or rng.randint(1, 3))
    return rng, n, space


# -- spaces and values --------------------------------------------------------

def test_trivial_cone_rejected():
    with pytest.raises(ValueError):
        OrderedSpace(2, [(0, 0)])


def test_negative_dual_of_orthant():
    assert SP.Cneg == Polyhedron.cone([(-1, 0), (0, -1)])
    assert SP.in_cneg((-1, -2)) and not SP.in_cneg((1, -1))
    with pytest.raises(ValueError):
        SP.check_zstar((1, 0))


def test_upper_set_must_absorb_cone():
    with pytest.raises(ValueError):
        UpperSet(SP, Polyhedron.box([0, 0], [1, 1]))


def test_halfspace_completion_rules():
    z = (F(0), F(-1))
    assert U.halfspace(SP, z, NEG_INF).to_poly().is_whole
    assert U.halfspace(SP, z, POS_INF).to_poly().is_empty
    assert U.halfspace(SP, z, 0).to_poly() == hs([(0, 1)], [0])
    zero = (F(0), F(0))
    assert U.halfspace(SP, zero, -3).to_poly().is_whole
    assert U.halfspace(SP, zero, 1).to_poly().is_empty


def test_cone_H_is_H0():
    for z in [(0, -1), (-1, -1), (-2, -1)]:
        assert U.cone_H(SP, z) == U.halfspace(SP, z, 0).to_poly()


# -- evaluation and scalarization ---------------------------------------------

def test_slices():
    g = I.abs2()
    assert g.eval_slice([1]).body == hs([(1, 0), (0, 1)], [1, 1])
    assert I.staircase().eval_slice([2]).is_empty
    assert SetFn.whole(1, SP).eval_slice([7]).is_whole


def test_scalarization_examples():
    g = I.abs2()
    assert U.scalarize(g, (0, -1)) == sf.make_abs(1)
    assert U.scalarize(g, (-1, 0)) == sf.make_affine([1], 0)
    st_ = I.staircase()
    assert U.scalarize(st_, (0, 0)) == sf.make_indicator(st_.domain())


def test_setify_examples():
    g = U.setify(sf.make_abs(1), (0, -1), SP)
    assert g.eval_slice([-3]).body == hs([(0, 1)], [3])
    f = sf.make_affine([1], 1)  # x - 1
    assert U.setify(f, (0, 0), SP).eval_slice([1]).is_whole
    assert U.setify(f, (0, 0), SP).eval_slice([2]).is_empty
    assert U.setify(sf.constant(1, "+inf"), (0, -1), SP).epi.is_empty


def test_conaffine_examples():
    a = U.Conaffine.make([0], (0, -1), 0)
    assert U.conaffine_eval(SP, a, [5]).to_poly() == hs([(0, 1)], [0])
    assert U.conaffine_eval(SP, U.Conaffine.make([3], (0, -1), "+inf"), [1]).to_poly().is_whole
    assert U.conaffine_eval(SP, U.Conaffine.make([1], (0, 0), 0), [2]).to_poly().is_empty


def test_minorant_examples():
    g = I.abs2()
    assert U.minorant_check(SP, U.Conaffine.make([-1], (0, -1), 0), g)
    assert not U.minorant_check(SP, U.Conaffine.make([2], (0, -1), 0), g)
    assert U.minorant_check(SP, U.Conaffine.make([2], (0, -1), "+inf"), g)


# -- conjugates -----------------------------------------------------------------

def test_conjugate_examples():
    g = I.abs2()
    assert U.conjugate(g, [0], (0, -1), 0).to_poly() == hs([(0, 1)], [0])
    assert U.conjugate(g, [0], (0, -1), "-inf").to_poly().is_empty
    assert U.conjugate(SetFn.empty(1, SP), [4], (-1, -1), 2).to_poly().is_whole


def test_zero_direction_conjugate():
    g = I.staircase()
    assert U.conjugate_zero_direction(g, [1], 1).to_poly().is_whole
    assert U.conjugate_zero_direction(g, [1], F(1, 2)).to_poly().is_empty
    assert U.conjugate_zero_direction(SetFn.empty(1, SP), [9], -5).to_poly().is_whole


def test_biconjugate_examples():
    g = I.abs2()
    assert U.biconjugate(g) == g
    assert U.biconjugate(SetFn.empty(1, SP)).epi.is_empty
    u = I.two_point_union()
    rep = U.biconjugate(u, report=True)
    assert rep.agree
    assert rep.hull.eval_slice([F(1, 2)]) == up((F(1, 2), F(1, 2)))
    assert rep.hull.eval_slice([0]) == up((0, 1))


def test_descalarize_example():
    assert U.descalarize(I.abs2(), [1]).body == hs([(1, 0), (0, 1)], [1, 1])
    assert U.descalarize(SetFn.whole(1, SP), [0]).is_whole
    assert U.descalarize(I.staircase(), [3]).is_empty


# -- residuals and sums ---------------------------------------------------------

def test_residual_examples():
    assert U.residual(up((1, 2)), up((0, 1))) == up((1, 1))
    assert U.residual(up((1, 2)), UpperSet.empty(SP)).is_whole


def test_halfspace_residual_identity():
    A = up((0, 1), (1, 0))
    for z in [(0, -1), (-1, -1), (-1, -3)]:
        assert all(U.review_identities(A, 0, z).values())


@given(seeds())
def test_residual_adjunction(seed):
    rng, _, space = random_setup(seed)
    A, B = I.random_upperset(rng, space), I.random_upperset(rng, space)
    R = U.residual(A, B)
    if not B.is_empty and not R.is_empty:
        assert A.body.contains_poly(U.closure_sum(B, R).body)
    # any D with B + D inside A lies in the residual
    D = I.random_upperset(rng, space)
    if A.body.contains_poly(U.closure_sum(B, D).body):
        assert R.body.contains_poly(D.body)


def test_setfn_sum_examples():
    g = I.abs2()
    assert U.setfn_add(g, I.constant_cone()) == g
    assert U.setfn_add(g, SetFn.constant(1, UpperSet.empty(SP))).epi.is_empty


# -- scalarization calculus -------------------------------------------------------

@given(seeds())
def test_scalarization_of_sum(seed):
    rng, n, space = random_setup(seed)
    f, g = I.random_setfn(rng, n, space), I.random_setfn(rng, n, space)
    z = I.random_zstar(rng, space, allow_zero=True)
    assert U.scalarize(U.setfn_add(f, g), z) == sf.pointwise_inf_add(U.scalarize(f, z),
                                                                   U.scalarize(g, z))


@given(seeds())
def test_scalarization_of_composition(seed):
    rng, n, space = random_setup(seed)
    p = rng.randint(1, 2)
    h = I.random_setfn(rng, p, space)
    T = I.random_matrix(rng, p, n)
    z = I.random_zstar(rng, space)
    assert U.scalarize(U.setfn_compose(h, T), z) == sf.compose_linear(U.scalarize(h, z), T)


@given(seeds())
def test_scalarization_of_infimum(seed):
    rng, n, space = random_setup(seed)
    f, g = I.random_setfn(rng, n, space), I.random_setfn(rng, n, space)
    z = I.random_zstar(rng, space)
    assert U.scalarize(U.setfn_inf(f, g), z) == sf.hull_inf(U.scalarize(f, z), U.scalarize(g, z))


@given(seeds())
def test_scalarization_of_inf_convolution(seed):
    rng, n, space = random_setup(seed)
    f, g = I.random_setfn(rng, n, space), I.random_setfn(rng, n, space)
    z = I.random_zstar(rng, space)
    assert U.scalarize(U.setfn_inf_convolve(f, g), z) == sf.inf_convolve(U.scalarize(f, z),
                                                                       U.scalarize(g, z))


@given(seeds())
def test_scalarization_of_pushforward(seed):
    rng, n, space = random_setup(seed)
    p = rng.randint(1, 2)
    g = I.random_setfn(rng, n, space)
    T = I.random_matrix(rng, p, n)
    z = I.random_zstar(rng, space)
    assert U.scalarize(U.setfn_pushforward(T, g), z) == sf.pushforward(T, U.scalarize(g, z))


@given(scalar_fns(1), st.sampled_from([(0, -1), (-1, -1), (-2, -1)]))
def test_setify_then_scalarize_is_identity(f, z):
    assert U.scalarize(U.setify(f, z, SP), z) == f


@given(seeds())
def test_scalarization_is_order_preserving(seed):
    rng, n, space = random_setup(seed)
    f, g = I.random_setfn(rng, n, space), I.random_setfn(rng, n, space)
    lower = U.setfn_inf(f, g)
    z = I.random_zstar(rng, space)
    assert U.scalarize(lower, z).leq(U.scalarize(f, z))


@given(seeds())
def test_residuation_and_supremum_bounds(seed):
    rng, n, space = random_setup(seed, n=1)
    f, g = I.random_setfn(rng, 1, space), I.random_setfn(rng, 1, space)
    z = I.random_zstar(rng, space)
    pts = [[F(k, 2)] for k in range(-4, 5)]
    for c in U.inf_residuation_check(f, g, z, pts):
        assert c.holds
        if c.equality_expected:
            assert c.equality
    for _, lhs, rhs, ok in U.sup_family_check([f, g], z, pts):
        assert ok


# -- biconjugation and representations ------------------------------------------

@settings(max_examples=25)
@given(seeds())
def test_biconjugate_two_routes(seed):
    rng, n, space = random_setup(seed)
    g = I.random_union(rng, n, space) if rng.random() < 0.4 else I.random_setfn(rng, n, space)
    rep = U.biconjugate(g, report=True)
    assert rep.agree
    for piece in g.pieces:
        assert rep.hull.epi.contains_poly(piece.epi)


@settings(max_examples=25)
@given(seeds())
def test_conjugate_sees_only_the_hull(seed):
    rng, n, space = random_setup(seed)
    g = I.random_union(rng, n, space)
    h = U.biconjugate(g)
    for _ in range(5):
        xs = [F(rng.randint(-3, 3)) for _ in range(n)]
        z = I.random_zstar(rng, space)
        r = rng.randint(-3, 3)
        assert U.conjugate(g, xs, z, r) == U.conjugate(h, xs, z, r)


@settings(max_examples=25)
@given(seeds())
def test_dual_representation_matches_biconjugate(seed):
    rng, n, space = random_setup(seed, n=1)
    g = I.random_setfn(rng, 1, space)
    for x in ([F(-2)], [F(0)], [F(3, 2)]):
        assert U.dual_representation(g, x).matches_biconjugate


def test_properness_examples():
    g = I.abs2()
    rep = U.properness(g)
    assert rep.proper and rep.equivalence_ok
    assert U.zstar_properness(g, (0, -1))
    assert not U.properness(SetFn.whole(1, SP)).proper
    assert U.zstar_properness(I.staircase(), (0, 0))


@given(seeds())
def test_properness_equivalence(seed):
    rng, n, space = random_setup(seed)
    g = I.improper_setfn(rng, n, space) if rng.random() < 0.3 else I.random_setfn(rng, n, space)
    rep = U.properness(g)
    assert rep.equivalence_ok
    if rep.dom_nonempty:
        assert U.zstar_properness(g, (0,) * space.m)
