import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from svconvex import duality as D
from svconvex import instances as I
from svconvex import scalar_fn as sf
from svconvex import upperset_fn as U
from svconvex.errors import PremiseViolation
from svconvex.polyhedra import Polyhedron
from svconvex.upperset_fn import SetFn, UpperSet
from svconvex.xreal import xr

from strategies import seeds

F = Fraction
SP = I.orthant2()


def hs(rows, rhs):
    return Polyhedron.from_hrep(rows, rhs, dim=2)


STAIR_P = hs([(1, 0), (0, 1), (1, 1)], [0, 0, 1])


# -- infimal convolution of conjugates -------------------------------------------

def test_conj_inf_convolution_with_empty_factor():
    g = I.abs2()
    E, W = SetFn.empty(1, SP), SetFn.whole(1, SP)
    # the empty function has conjugate Z, and Z + A = Z for nonempty A
    assert D.conj_inf_convolve(g, E, [0], (0, -1), 0).to_poly().is_whole
    # the whole function has conjugate empty, which dominates the sum
    assert D.conj_inf_convolve_split(g, W, [0], (0, -1), 0, [0], 0).is_empty
    assert D.conj_inf_convolve_split(E, W, [0], (0, -1), 0, [0], 0).is_empty


def test_conj_inf_convolution_covers_splits():
    g = I.staircase()
    z = (-1, -1)
    for xs in ([F(-1)], [F(0)], [F(1, 2)]):
        whole = D.conj_inf_convolve(g, g, xs, z, 1).to_poly()
        for x1 in (F(-1), F(0), F(1, 2)):
            for r1 in (F(0), F(1, 2), F(1)):
                part = D.conj_inf_convolve_split(g, g, xs, z, 1, [x1], r1)
                assert whole.contains_poly(part)


def test_conj_inf_convolution_shift_in_r():
    g = I.staircase()
    z = (-1, -1)
    base = D.conj_inf_convolve(g, g, [0], z, 0).to_poly()
    for r in (-2, 1, F(5, 2)):
        shifted = D.conj_inf_convolve(g, g, [0], z, r).to_poly()
        assert shifted == base.minkowski_sum(U.halfspace(SP, z, -r).to_poly())


# -- chain rule -----------------------------------------------------------------

def test_chain_rule_gap_example():
    g = SetFn.empty(1, SP)
    f = SetFn.whole(1, SP)
    triples = [([0], (0, -1), 0), ([1], (-1, -1), 2), ([-3], (-2, -1), -1)]
    rep = D.set_chain_rule(g, f, [[1]], [[1]], triples)
    for e in (e for e in rep.entries if e.part == "conj_sum"):
        assert e.lhs.is_whole
        assert e.rhs.is_empty
        assert e.lhs_mid in ("strict", "equal") and e.chain_ok
        assert e.equalities.get("lhs_equals_rhs") == "not asserted"


def test_chain_rule_strong_example():
    g = U.setify(sf.make_abs(1), (0, -1), SP)
    f = I.constant_cone()
    rep = D.set_chain_rule(g, f, [[1]], [[1]], [([0], (0, -1), 0)])
    assert rep.ok
    for e in rep.entries:
        assert e.lhs == e.mid == e.rhs == hs([(0, 1)], [0])


@settings(max_examples=30)
@given(seeds())
def test_chain_rule_on_random_instances(seed):
    rng = random.Random(seed)
    n, p = rng.randint(1, 2), rng.randint(1, 2)
    space = I.random_cone_space(rng, rng.randint(1, 2))
    g = I.improper_setfn(rng, n, space) if rng.random() < 0.2 else I.random_setfn(rng, n, space)
    f = I.random_setfn(rng, p, space)
    T = I.random_matrix(rng, p, n)
    S = I.random_matrix(rng, n, p)
    triples = [([F(rng.randint(-2, 2)) for _ in range(n)], I.random_zstar(rng, space),
                rng.randint(-2, 2)) for _ in range(3)]
    rep = D.set_chain_rule(g, f, T, S, triples)
    assert rep.ok, rep.to_json()


# -- sandwich -----------------------------------------------------------------

def test_sandwich_example():
    w = D.sandwich(I.abs2(), I.linear_y(), [[1]], (0, -1))
    assert w.ystar == (F(-1),)
    assert w.z0 == (0, 0)
    assert w.lower_inclusion and w.upper_inclusion and w.z0_membership
    assert w.touching_point == (0,)
    assert w.conjugate_equalities == {"g_conjugate": True, "f_conjugate": True}
    # middle slices are {z2 >= -x}
    assert w.middle.eval_slice([3]).body == hs([(0, 1)], [-3])


def test_sandwich_with_constant_cone():
    w = D.sandwich(I.abs2(), I.constant_cone(), [[1]], (0, -1))
    assert w.ok and w.ystar == (0,)


def test_sandwich_premise_violation_has_witness():
    f = SetFn.from_graph(1, SP, Polyhedron.from_hrep(
        [(0, 1, 0), (0, -1, 0), (1, 0, 1), (-1, 0, -1)], [0, 0, -1, 1], dim=3))
    with pytest.raises(PremiseViolation) as err:
        D.sandwich(I.abs2(), f, [[1]], (0, -1))
    w = err.value.witness
    assert set(w) == {"x", "z"}
    assert I.abs2().eval_slice(w["x"]).body.contains_point(w["z"])


# -- Fenchel-Rockafellar ---------------------------------------------------------

def test_staircase_strong_duality():
    rep = D.fenchel_rockafellar(I.staircase(), I.constant_cone(), [[1]])
    assert rep.ok and rep.intersection_asserted and rep.intersection_equals_P
    assert rep.P.body == STAIR_P
    assert rep.D((-1, -1)) == hs([(1, 1)], [1])
    assert rep.D((-1, 0)) == hs([(1, 0)], [0])
    assert rep.D((0, -1)) == hs([(0, 1)], [0])
    d = next(d for d in rep.directions if d.zstar == (-1, -1))
    assert d.witness == (0,)


def test_zero_direction_and_empty_primal():
    rep = D.fenchel_rockafellar(I.staircase(), I.constant_cone(), [[1]],
                                directions=[(0, 0), (-1, -1)])
    assert rep.D((0, 0)).is_whole
    rep = D.fenchel_rockafellar(SetFn.empty(1, SP), I.constant_cone(), [[1]],
                                directions=[(-1, -1), (0, -1)])
    assert rep.P.is_empty and rep.weak_ok


@settings(max_examples=40)
@given(seeds())
def test_weak_duality_on_random_instances(seed):
    rng = random.Random(seed)
    n, p = rng.randint(1, 2), rng.randint(1, 2)
    space = I.random_cone_space(rng, rng.randint(1, 3))
    g = I.improper_setfn(rng, n, space) if rng.random() < 0.25 else I.random_setfn(rng, n, space)
    f = I.improper_setfn(rng, p, space) if rng.random() < 0.25 else I.random_setfn(rng, p, space)
    T = I.random_matrix(rng, p, n)
    dirs = [I.random_zstar(rng, space) for _ in range(3)]
    rep = D.fenchel_rockafellar(g, f, T, dirs)
    assert rep.weak_ok
    for d in rep.directions:
        assert d.D.to_poly().contains_poly(rep.P.body)
        assert d.sampled_ok
        if d.strong_asserted:
            assert d.strong_ok


# -- fundamental duality ---------------------------------------------------------

def test_fundamental_example():
    rep = D.fundamental_duality(I.fundamental_h(), 1, xbar=[F(1, 3)])
    assert rep.ok and rep.feasible
    e = next(e for e in rep.entries if e.zstar == (-1, -1))
    assert e.status == "checked" and e.equal
    assert e.lhs == hs([(1, 1)], [1])
    assert e.witness == (-1,)
    assert e.attainment["subdifferential_inclusion"] and e.attainment["z_minimal"]


def test_fundamental_with_whole_values():
    rep = D.fundamental_duality(SetFn.whole(2, SP), 1, directions=[(-1, -1), (0, -1)])
    assert all(e.status.startswith("weak only") for e in rep.entries)
    assert not rep.hull_asserted
