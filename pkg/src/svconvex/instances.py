"""Seeded random instances and the named fixtures used by tests and the CLI."""

from __future__ import annotations

import random
from fractions import Fraction

from .oracle import GridFn
from .polyhedra import Polyhedron
from .upperset_fn import OrderedSpace, SetFn, UnionSetFn, UpperSet


def random_cone_space(rng: random.Random, m: int) -> OrderedSpace:
    """The orthant half of the time, otherwise a random pointed cone inside
    the half-space ``sum(z) >= 0`` (so the negative dual cone is nontrivial)."""
    if rng.random() < 0.5:
        return OrderedSpace.orthant(m)
    gens = []
    while len(gens) < rng.randint(1, m + 1):
        v = [rng.randint(-1, 2) for _ in range(m)]
        if sum(v) > 0:
            gens.append(v)
    return OrderedSpace(m, gens)


def random_point(rng, d, lo=-3, hi=3):
    return [Fraction(rng.randint(lo, hi), rng.choice((1, 1, 1, 2))) for _ in range(d)]


def random_setfn(rng: random.Random, n: int, space: OrderedSpace, npts=None) -> SetFn:
    """``graph = conv(points) (+ a ray in x)`` lifted by ``{0} x C``."""
    m = space.m
    k = npts or rng.randint(1, 3)
    pts = [random_point(rng, n + m) for _ in range(k)]
    rays = []
    if rng.random() < 0.3:
        d = [rng.randint(-1, 1) for _ in range(n)]
        if any(d):
            rays.append(d + [rng.randint(0, 1) for _ in range(m)])
    return SetFn.from_graph(n, space, Polyhedron.from_vrep(pts, rays, dim=n + m))


def random_union(rng, n, space, pieces=None) -> UnionSetFn:
    k = pieces or rng.randint(2, 3)
    return UnionSetFn([random_setfn(rng, n, space, npts=rng.randint(1, 2)) for _ in range(k)])


def improper_setfn(rng, n, space, kind=None) -> SetFn:
    """Empty function, whole function, or ``Z`` on a box."""
    kind = kind or rng.choice(("empty", "whole", "Zslab"))
    if kind == "empty":
        return SetFn.empty(n, space)
    if kind == "whole":
        return SetFn.whole(n, space)
    lo = [rng.randint(-2, 0) for _ in range(n)]
    hi = [v + rng.randint(0, 2) for v in lo]
    return SetFn(n, space, Polyhedron.box(lo, hi).product(Polyhedron.whole(space.m)))


def random_matrix(rng, rows, cols, lo=-2, hi=2):
    return [[Fraction(rng.randint(lo, hi)) for _ in range(cols)] for _ in range(rows)]


def random_zstar(rng, space: OrderedSpace, allow_zero=False):
    """A random nonnegative combination of the dual cone generators."""
    while True:
        z = [Fraction(0)] * space.m
        for r in space.dual_rays:
            c = rng.randint(0, 2)
            z = [a + c * b for a, b in zip(z, r)]
        if any(z) or allow_zero:
            return tuple(z)


def random_upperset(rng, space: OrderedSpace) -> UpperSet:
    roll = rng.random()
    if roll < 0.05:
        return UpperSet.empty(space)
    pts = [random_point(rng, space.m) for _ in range(rng.randint(1, 3))]
    return UpperSet.generated(space, pts)


# -- fixtures --------------------------------------------------------------

def orthant2() -> OrderedSpace:
    return OrderedSpace.orthant(2)


def abs2() -> SetFn:
    """``x -> {(x, |x|)} + Q^2_+`` on ``Q``."""
    sp = orthant2()
    return SetFn(1, sp, Polyhedron.from_hrep([(-1, 1, 0), (-1, 0, 1), (1, 0, 1)], [0, 0, 0]))


def abs2_grid(xs=range(-10, 11)) -> GridFn:
    return GridFn([(Fraction(x),) for x in xs],
                  lambda x: [(x[0], abs(x[0]))], [(1, 0), (0, 1)])


def staircase() -> SetFn:
    """``x -> {(x, 1 - x)} + Q^2_+`` on ``[0, 1]``."""
    return SetFn.from_graph(1, orthant2(), Polyhedron.from_vrep([(0, 0, 1), (1, 1, 0)]))


def staircase_grid(steps=8) -> GridFn:
    xs = [(Fraction(k, steps),) for k in range(-2, steps + 3)]

    def pts(x):
        t = x[0]
        return [(t, 1 - t)] if 0 <= t <= 1 else []
    return GridFn(xs, pts, [(1, 0), (0, 1)])


def constant_cone(n=1) -> SetFn:
    """``x -> C``."""
    sp = orthant2()
    return SetFn.constant(n, UpperSet.generated(sp, [(0, 0)]))


def linear_y() -> SetFn:
    """``y -> {(0, y)} + Q^2_+``."""
    sp = orthant2()
    graph = Polyhedron.from_hrep([(0, 1, 0), (0, -1, 0), (-1, 0, 1), (1, 0, -1)],
                                 [0, 0, 0, 0], dim=3)
    return SetFn.from_graph(1, sp, graph)


def fundamental_h() -> SetFn:
    """``(x, y) -> {(x, 1 - x - y)} + Q^2_+`` for ``0 <= x <= 1``."""
    sp = orthant2()
    A = [(1, 0, 0, 0), (-1, 0, 0, 0),
         (-1, 0, 1, 0), (1, 0, -1, 0),
         (1, 1, 0, 1), (-1, -1, 0, -1)]
    b = [0, -1, 0, 0, 1, -1]
    return SetFn.from_graph(2, sp, Polyhedron.from_hrep(A, b, dim=4))


def two_point_union() -> UnionSetFn:
    """``0 -> (0, 1) + C`` and ``1 -> (1, 0) + C``, empty elsewhere."""
    sp = orthant2()
    return UnionSetFn([SetFn.from_graph(1, sp, Polyhedron.point((0, 0, 1))),
                       SetFn.from_graph(1, sp, Polyhedron.point((1, 1, 0)))])
