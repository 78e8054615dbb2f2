from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from svconvex import scalar_fn as sf
from svconvex.polyhedra import Polyhedron, dot
from svconvex.xreal import NEG_INF, POS_INF, inf_add, sup_add, xr

from strategies import scalar_fns, vectors

F = Fraction
ABS = sf.make_abs(1)
UNIT = sf.make_indicator(Polyhedron.box([0], [1]))


def fn(A, b, n=1):
    return sf.ScalarFn(n, Polyhedron.from_hrep(A, b, dim=n + 1))


def values(f, xs):
    return [f.eval([x]) for x in xs]


# -- evaluation and constructors ----------------------------------------------

def test_eval_examples():
    assert ABS.eval([-2]) == xr(2)
    assert sf.constant(1, "+inf").eval([5]) == POS_INF
    ext = sf.make_improper_ext([1], 0)
    assert ext.eval([-1]) == NEG_INF
    assert ext.eval([1]) == POS_INF
    assert sf.make_affine([1], 0).eval([2]) == xr(2)
    assert sf.make_improper_ext([0], -1).is_pos_inf
    assert UNIT.eval([2]) == POS_INF and UNIT.eval([F(1, 2)]) == xr(0)


def test_properness_flags():
    assert ABS.proper and not ABS.takes_neg_inf
    assert sf.constant(1, "-inf").is_neg_inf
    assert sf.make_improper_ext([1], 0).takes_neg_inf
    assert sf.constant(2, "+inf").is_pos_inf


def test_epigraph_must_contain_upward_ray():
    with pytest.raises(ValueError):
        sf.ScalarFn(1, Polyhedron.box([0, 0], [1, 1]))


# -- conjugation --------------------------------------------------------------

def test_conjugate_examples():
    c = sf.conjugate(ABS)
    assert values(c, [F(-1), F(1, 2), F(1)]) == [xr(0)] * 3
    assert values(c, [F(-2), F(2)]) == [POS_INF] * 2
    assert c == sf.make_indicator(Polyhedron.box([-1], [1]))
    assert sf.conjugate(sf.constant(1, "+inf")).is_neg_inf
    assert sf.conjugate(sf.make_improper_ext([1], 0)).is_pos_inf


def test_biconjugate_examples():
    assert sf.biconjugate(ABS) == ABS
    assert sf.biconjugate(sf.constant(1, "+inf")).is_pos_inf
    assert sf.biconjugate(sf.make_improper_ext([1], 0)).is_neg_inf


@given(scalar_fns(1), vectors(1), vectors(1))
def test_fenchel_young(f, x, xs):
    c = sf.conjugate(f)
    assert sup_add(dot(xs, x), -c.eval(xs)) <= f.eval(x)


@given(scalar_fns(2))
def test_biconjugate_is_fixed_point(f):
    # polyhedral functions are closed, so f** differs only for improper f
    bb = sf.biconjugate(f)
    if f.proper or f.is_pos_inf:
        assert bb == f
    else:
        assert bb.is_neg_inf or bb == f
    assert sf.conjugate(bb) == sf.conjugate(f)


@given(scalar_fns(1), scalar_fns(1))
def test_conjugation_reverses_order(f, g):
    h = sf.pointwise_max(f, g)
    assert f.leq(h)
    assert sf.conjugate(h).leq(sf.conjugate(f))


# -- calculus -------------------------------------------------------------------

def test_inf_convolution_examples():
    d = sf.inf_convolve(ABS, UNIT)
    assert values(d, [F(-2), F(0), F(1, 2), F(3)]) == [xr(2), xr(0), xr(0), xr(2)]
    assert sf.inf_convolve(ABS, sf.constant(1, "+inf")).is_pos_inf
    assert sf.inf_convolve(ABS, sf.constant(1, 0)) == sf.constant(1, 0)


def test_linear_maps_examples():
    assert sf.compose_linear(ABS, [[2]]) == fn([(-2, 1), (2, 1)], [0, 0])
    point = sf.make_indicator(Polyhedron.point((0,)))
    assert sf.pushforward([[1]], point) == point
    shrink = sf.pushforward([[0]], ABS)
    assert shrink.eval([0]) == xr(0) and shrink.eval([1]) == POS_INF


def test_pointwise_sum_examples():
    assert sf.pointwise_inf_add(ABS, UNIT) == fn([(-1, 1), (1, 1), (1, 0), (-1, 0)],
                                                 [0, 0, 0, -1])
    assert sf.pointwise_inf_add(ABS, ABS) == fn([(-2, 1), (2, 1)], [0, 0])
    mixed = sf.pointwise_inf_add(sf.make_indicator(Polyhedron.box([0], [1])),
                                 sf.make_improper_ext([1], 0))
    assert mixed.eval([2]) == POS_INF


@given(scalar_fns(1), scalar_fns(1), vectors(1))
def test_inf_convolution_conjugate_is_sum(f, g, xs):
    lhs = sf.conjugate(sf.inf_convolve(f, g)).eval(xs)
    assert lhs == sup_add(sf.conjugate(f).eval(xs), sf.conjugate(g).eval(xs))


@given(scalar_fns(1), scalar_fns(1), vectors(1))
def test_pointwise_sum_matches_values(f, g, x):
    assert sf.pointwise_inf_add(f, g).eval(x) == inf_add(f.eval(x), g.eval(x))


# -- chain rule and fundamental duality ---------------------------------------

def _by(statement, rows):
    return [c for c in rows if c.statement == statement]


def test_chain_gap_with_plus_infinity():
    g = sf.constant(1, "+inf")
    f = sf.constant(1, "-inf")
    rows = sf.chain_conjugate_check(g, f, [[1]], [[1]], [[0]])
    assert all(c.ok for c in rows)
    deg = _by("conj_sum_degenerate", rows)[0]
    assert deg.lhs == NEG_INF
    assert sup_add(NEG_INF, POS_INF) == NEG_INF and inf_add(NEG_INF, POS_INF) == POS_INF
    assert _by("sup_convolution_below_inf_convolution", rows)[0].rhs == POS_INF


def test_chain_strong_with_point_indicator():
    f = sf.make_indicator(Polyhedron.point((0,)))
    rows = sf.chain_conjugate_check(ABS, f, [[1]], [[1]], [[F(k, 2)] for k in range(-4, 5)])
    strong = _by("conj_sum_strong", rows)
    assert len(strong) == 9
    for c in strong:
        assert c.ok and c.lhs == xr(0) and c.witness is not None


def test_chain_with_plus_infinity_factor():
    rows = sf.chain_conjugate_check(ABS, sf.constant(1, "+inf"), [[1]], [[1]], [[0], [3]])
    assert all(c.ok for c in rows)
    assert all(c.lhs == NEG_INF for c in _by("conj_sum_degenerate", rows))


@given(scalar_fns(1), scalar_fns(1), st.integers(-2, 2), vectors(1))
def test_chain_inequalities_hold(g, f, t, xs):
    rows = sf.chain_conjugate_check(g, f, [[t]], [[t]], [xs])
    assert all(c.ok for c in rows), [c.to_json() for c in rows if not c.ok]


def test_fundamental_duality_examples():
    # |x| + indicator(y = 0)
    h = fn([(-1, 0, 1), (1, 0, 1), (0, 1, 0), (0, -1, 0)], [0, 0, 0, 0], n=2)
    r = sf.fundamental_duality_scalar(h, 1)
    assert r.primal == xr(0) and r.dual == xr(0) and r.witness == (0,)
    # (1 - y) + indicator(0 <= x <= 1)
    h2 = fn([(0, 1, 1), (1, 0, 0), (-1, 0, 0)], [1, 0, -1], n=2)
    r = sf.fundamental_duality_scalar(h2, 1)
    assert r.ok and r.primal == xr(1) and r.dual == xr(1) and r.witness == (-1,)
    r = sf.fundamental_duality_scalar(sf.constant(2, "+inf"), 1)
    assert r.primal == POS_INF and not r.qualified and r.ok
