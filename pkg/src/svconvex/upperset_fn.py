"""Set-valued functions with values in the upper sets of an ordered space.

The image space is ``Z = Q^m`` ordered by a polyhedral cone ``C``.  Values are
upper sets ``A = A + C`` (always closed and convex here), ordered by reverse
inclusion, so ``Z`` is the least and the empty set the greatest element.

A :class:`SetFn` ``g: Q^n -> upper sets`` is stored by its epigraph
``{(x, z) : z in g(x)}``, a polyhedron in ``Q^(n+m)`` whose recession cone
contains ``{0} x C``.  Scalar functions enter through scalarization
``x -> inf {-z* . z : z in g(x)}`` and come back through setification
``x -> {z : f(x) <= -z* . z}``.  Conjugates are half-space valued and are
computed from the scalar conjugate of the scalarization.

:class:`UnionSetFn` holds a finite family whose pointwise union is in general
not convex; it is used wherever a test needs ``cl co g`` to differ from ``g``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Sequence

from . import scalar_fn as sf
from .errors import TheoremViolation
from .polyhedra import (Polyhedron, _vec, block_matrix, cone_generators_list, dot,
                        identity, nullspace, polar_cone, zeros)
from .scalar_fn import ScalarFn
from .xreal import NEG_INF, POS_INF, XReal, idif, inf_add, negate, sup_add, xr


class OrderedSpace:
    """``Z = Q^m`` with the ordering cone ``C = cone(rays) + lin(lines)``."""

    def __init__(self, m: int, cone_rays: Sequence[Sequence], cone_lines: Sequence[Sequence] = ()):
        self.m = m
        self.C = Polyhedron.cone(cone_rays, cone_lines, dim=m)
        v = self.C.vrep
        if not v.rays and not v.lines:
            raise ValueError("the ordering cone must not be {0}")
        self.Cneg = polar_cone(self.C)
        nv = self.Cneg.vrep
        if not nv.rays and not nv.lines:
            raise ValueError("the negative dual cone must not be {0}")
        self.dual_rays = tuple(cone_generators_list(self.Cneg))
        self.cone_gens = tuple(cone_generators_list(self.C))

    @classmethod
    def orthant(cls, m: int) -> "OrderedSpace":
        return cls(m, [[1 if i == j else 0 for j in range(m)] for i in range(m)])

    def in_cneg(self, zstar) -> bool:
        return self.Cneg.contains_point(zstar)

    def check_zstar(self, zstar) -> tuple:
        zs = _vec(zstar)
        if len(zs) != self.m:
            raise ValueError(f"z* must have {self.m} entries")
        if not self.in_cneg(zs):
            raise ValueError(f"z* = {[str(v) for v in zs]} is not in the negative dual cone")
        return zs

    def __eq__(self, other):
        return isinstance(other, OrderedSpace) and self.m == other.m and self.C == other.C

    def __hash__(self):
        return hash(self.C)

    def __repr__(self):
        return f"OrderedSpace(m={self.m}, C={self.C.vrep})"


def _check_space(a: OrderedSpace, b: OrderedSpace):
    if a != b:
        raise ValueError("ordering cones differ")


# -- values -----------------------------------------------------------------

class UpperSet:
    """A closed convex upper set ``body = body + C``."""

    __slots__ = ("space", "body")

    def __init__(self, space: OrderedSpace, body: Polyhedron):
        if body.dim != space.m:
            raise ValueError("body lives in the wrong dimension")
        if not body.recession_contains(space.C):
            raise ValueError("not an upper set: body + C is larger than body")
        self.space = space
        self.body = body

    @classmethod
    def generated(cls, space: OrderedSpace, points, rays=()) -> "UpperSet":
        """``conv(points) + cone(rays) + C``."""
        cv = space.C.vrep
        body = Polyhedron.from_vrep(points, list(rays) + list(cv.rays), cv.lines, dim=space.m)
        return cls(space, body)

    @classmethod
    def empty(cls, space):
        return cls(space, Polyhedron.empty(space.m))

    @classmethod
    def whole(cls, space):
        return cls(space, Polyhedron.whole(space.m))

    @property
    def is_empty(self):
        return self.body.is_empty

    @property
    def is_whole(self):
        return self.body.is_whole

    def __eq__(self, other):
        if isinstance(other, HalfSpaceValue):
            other = other.to_upperset()
        if not isinstance(other, UpperSet):
            return NotImplemented
        return self.space == other.space and self.body == other.body

    def __hash__(self):
        return hash(self.body)

    def contains(self, other: "UpperSet") -> bool:
        return self.body.contains_poly(other.body)

    def support(self, zstar) -> XReal:
        return self.body.support(zstar)

    def __repr__(self):
        return f"UpperSet({self.body!r})"


@dataclass(frozen=True)
class HalfSpaceValue:
    """``H_alpha(z*) = {z : alpha <= -z* . z}`` with the completion rules:
    ``alpha = -inf`` gives ``Z``, ``alpha = +inf`` the empty set, and for
    ``z* = 0`` the value is ``Z`` when ``alpha <= 0`` and empty otherwise."""

    space: OrderedSpace
    zstar: tuple
    alpha: XReal

    @property
    def kind(self) -> str:
        a = self.alpha
        if a.is_neg_inf:
            return "Z"
        if a.is_pos_inf:
            return "empty"
        if not any(self.zstar):
            return "Z" if a.value <= 0 else "empty"
        return "halfspace"

    def to_poly(self) -> Polyhedron:
        k = self.kind
        m = self.space.m
        if k == "Z":
            return Polyhedron.whole(m)
        if k == "empty":
            return Polyhedron.empty(m)
        return Polyhedron.from_hrep([tuple(-v for v in self.zstar)], [self.alpha.value], dim=m)

    def to_upperset(self) -> UpperSet:
        return UpperSet(self.space, self.to_poly())

    def __eq__(self, other):
        if isinstance(other, HalfSpaceValue):
            return self.to_poly() == other.to_poly()
        if isinstance(other, UpperSet):
            return self.to_poly() == other.body
        return NotImplemented

    def __hash__(self):
        return hash(self.to_poly())

    def to_json(self):
        return {"zstar": [str(v) for v in self.zstar], "alpha": self.alpha.to_json(),
                "kind": self.kind}


def halfspace(space: OrderedSpace, zstar, alpha) -> HalfSpaceValue:
    return HalfSpaceValue(space, _vec(zstar), xr(alpha))


def cone_H(space: OrderedSpace, zstar) -> Polyhedron:
    """``H(z*) = {z : z* . z <= 0}`` built from generators (ray ``-z*`` plus
    the orthogonal complement as lines)."""
    zs = _vec(zstar)
    lines = nullspace([zs], space.m)
    if not any(zs):
        return Polyhedron.whole(space.m)
    return Polyhedron.from_vrep([(0,) * space.m], [tuple(-v for v in zs)], lines, dim=space.m)


@dataclass(frozen=True)
class Conaffine:
    """``x -> H_{x* . x - r}(z*)``; ``r`` may be infinite."""

    xstar: tuple
    zstar: tuple
    r: XReal

    @classmethod
    def make(cls, xstar, zstar, r):
        return cls(_vec(xstar), _vec(zstar), xr(r))


def normalize_triple(xstar, zstar, r):
    """Rescale ``(x*, z*, r)`` by a positive factor so that ``z*`` is a
    primitive integer vector; the conaffine function is unchanged."""
    from .polyhedra import _primitive_normal
    zs = _vec(zstar)
    if not any(zs):
        return _vec(xstar), zs, xr(r)
    z2, _ = _primitive_normal(zs, Fraction(0))
    i = next(k for k, v in enumerate(zs) if v)
    t = z2[i] / zs[i]
    r = xr(r)
    r2 = XReal.finite(r.value * t) if r.is_finite else r
    return tuple(v * t for v in _vec(xstar)), z2, r2


def conaffine_eval(space: OrderedSpace, a: Conaffine, x) -> HalfSpaceValue:
    alpha = idif(XReal.finite(dot(a.xstar, _vec(x))), a.r)
    return HalfSpaceValue(space, a.zstar, alpha)


def residual(A: UpperSet, B: UpperSet) -> UpperSet:
    """``A (-) B = {z : B + z is inside A}``."""
    _check_space(A.space, B.space)
    sp = A.space
    if B.is_empty or A.is_whole:
        return UpperSet.whole(sp)
    if A.is_empty:
        return UpperSet.empty(sp)
    h = A.body.hrep
    rows, rhs = [], []
    for a, alpha in zip(h.A, h.b):
        # a.(b + z) >= alpha for all b in B  <=>  a.z >= alpha + sigma(-a | B)
        s = B.body.support(tuple(-v for v in a))
        new = sup_add(XReal.finite(alpha), s)
        if new.is_pos_inf:
            return UpperSet.empty(sp)
        rows.append(a)
        rhs.append(new.value)
    return UpperSet(sp, Polyhedron.from_hrep(rows, rhs, dim=sp.m))


def closure_sum(A: UpperSet, B: UpperSet) -> UpperSet:
    """``cl(A + B)``."""
    return UpperSet(A.space, A.body.minkowski_sum(B.body))


# -- set-valued functions --------------------------------------------------

class SetFn:
    """``g: Q^n -> upper sets of (Q^m, C)`` given by its epigraph."""

    __slots__ = ("n", "space", "epi")

    def __init__(self, n: int, space: OrderedSpace, epi: Polyhedron):
        if epi.dim != n + space.m:
            raise ValueError(f"epigraph must live in Q^{n + space.m}")
        lifted = Polyhedron.cone([(0,) * n + tuple(r) for r in space.cone_gens],
                                 dim=n + space.m) if space.cone_gens else None
        if lifted is not None and not epi.recession_contains(lifted):
            raise ValueError("epigraph is not invariant under {0} x C")
        self.n = n
        self.space = space
        self.epi = epi

    @classmethod
    def from_graph(cls, n: int, space: OrderedSpace, graph: Polyhedron) -> "SetFn":
        """The function whose epigraph is ``graph + {0} x C``."""
        cv = space.C.vrep
        z = (Fraction(0),) * n
        cone = Polyhedron.from_vrep([(0,) * (n + space.m)], [z + r for r in cv.rays],
                                    [z + l for l in cv.lines], dim=n + space.m)
        return cls(n, space, graph.minkowski_sum(cone))

    @classmethod
    def empty(cls, n, space):
        return cls(n, space, Polyhedron.empty(n + space.m))

    @classmethod
    def whole(cls, n, space):
        return cls(n, space, Polyhedron.whole(n + space.m))

    @classmethod
    def constant(cls, n, value: UpperSet) -> "SetFn":
        return cls(n, value.space, Polyhedron.whole(n).product(value.body))

    def __eq__(self, other):
        if not isinstance(other, SetFn):
            return NotImplemented
        return self.n == other.n and self.space == other.space and self.epi == other.epi

    def __hash__(self):
        return hash(self.epi)

    def __repr__(self):
        return f"SetFn(n={self.n}, m={self.space.m}, epi={self.epi!r})"

    @property
    def pieces(self):
        return (self,)

    def domain(self) -> Polyhedron:
        return self.epi.project(range(self.n))

    def eval_slice(self, x) -> UpperSet:
        x = _vec(x)
        if len(x) != self.n:
            raise ValueError("point has the wrong dimension")
        body = self.epi.slice({i: x[i] for i in range(self.n)})
        return UpperSet(self.space, body)

    __call__ = eval_slice

    def closed_convex_hull(self) -> "SetFn":
        return self


class UnionSetFn:
    """Pointwise union of finitely many :class:`SetFn` (the lattice infimum of
    the family before any convexification)."""

    def __init__(self, pieces: Sequence[SetFn]):
        pieces = list(pieces)
        if not pieces:
            raise ValueError("need at least one piece")
        n, sp = pieces[0].n, pieces[0].space
        for p in pieces:
            if p.n != n:
                raise ValueError("pieces have different domains")
            _check_space(p.space, sp)
        self.n = n
        self.space = sp
        self.pieces = tuple(pieces)

    def eval_points(self, x):
        return [p.eval_slice(x) for p in self.pieces]

    def closed_convex_hull(self) -> SetFn:
        epi = reduce(lambda a, b: a.hull_union(b), (p.epi for p in self.pieces))
        return SetFn(self.n, self.space, epi)

    def domain_pieces(self):
        return [p.domain() for p in self.pieces]


def _scalar_map(n: int, zstar):
    """Block matrix of ``(x, z) -> (x, -z* . z)``."""
    zs = _vec(zstar)
    return block_matrix([[identity(n), zeros(n, len(zs))],
                         [zeros(1, n), [[-v for v in zs]]]])


def scalarize(g: SetFn, zstar) -> ScalarFn:
    """``x -> inf {-z* . z : z in g(x)}``; for ``z* = 0`` the indicator of ``dom g``."""
    zs = g.space.check_zstar(zstar)
    image = g.epi.image(_scalar_map(g.n, zs))
    return ScalarFn.from_epi_closure(g.n, image)


def setify(f: ScalarFn, zstar, space: OrderedSpace) -> SetFn:
    """``x -> {z : f(x) <= -z* . z}``."""
    zs = space.check_zstar(zstar)
    return SetFn(f.n, space, f.epi.preimage(_scalar_map(f.n, zs)))


class _MinScalar:
    """Pointwise minimum of closed convex scalar functions (not convex itself)."""

    def __init__(self, parts):
        self.parts = list(parts)
        self.n = self.parts[0].n

    def eval(self, x) -> XReal:
        from .xreal import inf_of
        return inf_of(p.eval(x) for p in self.parts)


def scalarize_any(g, zstar):
    """Scalarization of a :class:`SetFn` or :class:`UnionSetFn`."""
    if isinstance(g, SetFn):
        return scalarize(g, zstar)
    return _MinScalar(scalarize(p, zstar) for p in g.pieces)


def scalar_conjugate(g, zstar) -> ScalarFn:
    """Conjugate of the scalarization.  For a union the conjugate of the
    pointwise minimum is the pointwise maximum of the piece conjugates."""
    if isinstance(g, SetFn):
        return sf.conjugate(scalarize(g, zstar))
    conj = [sf.conjugate(scalarize(p, zstar)) for p in g.pieces]
    return reduce(sf.pointwise_max, conj)


def conjugate(g, xstar, zstar, r, _cache=None) -> HalfSpaceValue:
    """``g*(x*, z*, r) = H_alpha(z*)`` with ``alpha = phi*(x*) idif r`` where
    ``phi`` is the scalarization along ``z*``."""
    zs = g.space.check_zstar(zstar)
    xs = _vec(xstar)
    if _cache is not None and zs in _cache:
        phic = _cache[zs]
    else:
        phic = scalar_conjugate(g, zs)
        if _cache is not None:
            _cache[zs] = phic
    alpha = idif(phic.eval(xs), xr(r))
    return HalfSpaceValue(g.space, zs, alpha)


def conjugate_zero_direction(g, xstar, r) -> HalfSpaceValue:
    """``Z`` when ``sigma(x* | dom g) <= r`` and empty otherwise."""
    xs = _vec(xstar)
    if isinstance(g, SetFn):
        sigma = g.domain().support(xs)
    else:
        from .xreal import sup_of
        sigma = sup_of(d.support(xs) for d in g.domain_pieces())
    return HalfSpaceValue(g.space, (Fraction(0),) * g.space.m, idif(sigma, xr(r)))


def minorant_check(space: OrderedSpace, a: Conaffine, g: SetFn) -> bool:
    """Does ``S_a(x)`` contain ``g(x)`` for every ``x``?

    Decided on scalarizations (affine minorant of ``phi_{g,z*}``) and
    cross-checked on epigraphs.
    """
    zs = space.check_zstar(a.zstar)
    if a.r.is_pos_inf:
        return True
    if a.r.is_neg_inf:
        return g.epi.is_empty
    phi = scalarize(g, zs)
    aff = sf.make_affine(a.xstar, a.r.value)
    scalar = aff.epi.contains_poly(phi.epi)
    S = setify(aff, zs, space)
    direct = S.epi.contains_poly(g.epi)
    if scalar != direct:
        raise TheoremViolation("minorant test disagrees between scalar and set level")
    return scalar


# -- biconjugation -----------------------------------------------------------

def facet_directions(epi: Polyhedron, n: int, space: OrderedSpace, with_zero=True):
    """``z* = -c`` for every epigraph row ``(a, c)`` with ``c != 0``, the
    generators of the negative dual cone and optionally ``0``."""
    seen = []
    if not epi.is_empty:
        for a in epi.hrep.A:
            c = a[n:]
            if any(c):
                z = tuple(-v for v in c)
                if z not in seen:
                    seen.append(z)
    for r in space.dual_rays:
        r = tuple(Fraction(v) for v in r)
        if r not in seen:
            seen.append(r)
    if with_zero:
        seen.append((Fraction(0),) * space.m)
    return seen


@dataclass
class BiconjugateReport:
    hull: SetFn
    dual: SetFn
    directions: list
    agree: bool


def biconjugate(g, report=False):
    """Closed convex hull of ``g`` computed twice.

    Route one takes the hull of the epigraph generators.  Route two
    intersects the setifications of the scalar biconjugates
    ``phi**_{g,z*}`` over the facet directions of the hull; for a union the
    scalar biconjugate is taken from the maximum of piece conjugates, so it
    never sees the hull.  Disagreement raises :class:`TheoremViolation`.
    """
    hull = g.closed_convex_hull()
    dirs = facet_directions(hull.epi, g.n, g.space)
    sp = g.space
    parts = []
    for z in dirs:
        phibb = sf.conjugate(scalar_conjugate(g, z))
        parts.append(setify(phibb, z, sp).epi)
    epi2 = reduce(lambda a, b: a.intersect(b), parts)
    dual = SetFn(g.n, sp, epi2)
    agree = dual.epi == hull.epi
    if not agree:
        raise TheoremViolation("biconjugate routes disagree")
    if report:
        return BiconjugateReport(hull, dual, dirs, agree)
    return hull


def descalarize(g, x) -> UpperSet:
    """``cl co g(x)`` as the intersection of ``H_{phi_{g,z*}(x)}(z*)`` over
    the facet directions of ``g`` and the dual cone generators."""
    x = _vec(x)
    sp = g.space
    epi = g.closed_convex_hull().epi
    body = Polyhedron.whole(sp.m)
    for z in facet_directions(epi, g.n, sp):
        val = scalarize_any(g, z).eval(x)
        body = body.intersect(HalfSpaceValue(sp, z, val).to_poly())
    return UpperSet(sp, body)


# -- function operations ----------------------------------------------------

def setfn_add(f: SetFn, g: SetFn) -> SetFn:
    """``x -> cl(f(x) + g(x))`` as the image of the fibre product."""
    _check_space(f.space, g.space)
    if f.n != g.n:
        raise ValueError("dimension mismatch")
    n, m = f.n, f.space.m
    if f.epi.is_empty or g.epi.is_empty:
        return SetFn.empty(n, f.space)
    I, J = identity(n), identity(m)
    P1 = block_matrix([[I, zeros(n, 2 * m)], [zeros(m, n), J, zeros(m, m)]])
    P2 = block_matrix([[I, zeros(n, 2 * m)], [zeros(m, n), zeros(m, m), J]])
    fibre = f.epi.preimage(P1).intersect(g.epi.preimage(P2))
    Sm = block_matrix([[I, zeros(n, 2 * m)], [zeros(m, n), J, J]])
    return SetFn(n, f.space, fibre.image(Sm))


def setfn_inf_convolve(f: SetFn, g: SetFn) -> SetFn:
    _check_space(f.space, g.space)
    return SetFn(f.n, f.space, f.epi.minkowski_sum(g.epi))


def _lift(T, n, m):
    T = [_vec(r) for r in T]
    return block_matrix([[T, zeros(len(T), m)], [zeros(m, n), identity(m)]])


def setfn_compose(f: SetFn, T) -> SetFn:
    """``x -> f(T x)``."""
    T = [_vec(r) for r in T]
    if len(T) != f.n:
        raise ValueError("operator range does not match")
    n = len(T[0]) if T else 0
    return SetFn(n, f.space, f.epi.preimage(_lift(T, n, f.space.m)))


def setfn_pushforward(T, g: SetFn) -> SetFn:
    """``y -> cl U {g(x) : T x = y}``."""
    T = [_vec(r) for r in T]
    return SetFn(len(T), g.space, g.epi.image(_lift(T, g.n, g.space.m)))


def setfn_inf(f: SetFn, g: SetFn) -> SetFn:
    """Closed convex hull of the pointwise union."""
    _check_space(f.space, g.space)
    return SetFn(f.n, f.space, f.epi.hull_union(g.epi))


def setfn_sup(f: SetFn, g: SetFn) -> SetFn:
    """Pointwise intersection."""
    _check_space(f.space, g.space)
    return SetFn(f.n, f.space, f.epi.intersect(g.epi))


# -- properness and representations -----------------------------------------

@dataclass
class ProperReport:
    proper: bool
    dom_nonempty: bool
    has_whole_slice: bool
    proper_directions: list = field(default_factory=list)
    equivalence_ok: bool = True


def properness(g: SetFn) -> ProperReport:
    """Proper means nonempty domain and no value equal to ``Z``.

    A nonempty closed convex epigraph has a slice equal to ``Z`` exactly when
    no row constrains ``z``.  The report also lists facet directions
    ``z* != 0`` along which ``g`` is ``z*``-proper and checks that such a
    direction exists iff ``g`` is proper.
    """
    nonempty = not g.epi.is_empty
    whole_slice = nonempty and all(not any(a[g.n:]) for a in g.epi.hrep.A)
    if nonempty and not whole_slice:
        # confirm at a domain point that the slice is not Z
        x = g.epi.vrep.vertices[0][:g.n]
        if g.eval_slice(x).is_whole:
            raise TheoremViolation("slice test disagrees with row test")
    proper = nonempty and not whole_slice
    dirs = [z for z in facet_directions(g.epi, g.n, g.space, with_zero=False) if any(z)]
    good = [z for z in dirs if zstar_properness(g, z)]
    return ProperReport(proper, nonempty, whole_slice, good, bool(good) == proper)


def zstar_properness(g: SetFn, zstar) -> bool:
    return scalarize(g, zstar).proper


@dataclass
class DualRepresentation:
    point: tuple
    in_domain: bool
    minorants: list
    value: UpperSet
    matches_biconjugate: bool
    separating: dict | None = None


def dual_representation(g: SetFn, x) -> DualRepresentation:
    """Represent ``(cl co g)(x)`` by conaffine minorants read off the facets.

    Each row ``a . x + c . z >= b`` of the epigraph is the minorant
    ``S_(-a, -c, -b)``.  Off the domain a violated row ``a_j . x >= b_j``
    with ``c_j = 0`` combined with any ``c != 0`` facet gives a family of
    minorants whose level grows without bound, which certifies the empty value.
    """
    x = _vec(x)
    sp = g.space
    n = g.n
    minorants = []
    body = Polyhedron.whole(sp.m)
    if g.epi.is_empty:
        minorants.append(Conaffine.make((0,) * n, (0,) * sp.m, 0))
        body = Polyhedron.empty(sp.m)
    for a, b in zip(g.epi.hrep.A, g.epi.hrep.b) if not g.epi.is_empty else []:
        ca = Conaffine.make(tuple(-v for v in a[:n]), tuple(-v for v in a[n:]), -b)
        if not minorant_check(sp, ca, g):
            raise TheoremViolation("facet conaffine is not a minorant")
        minorants.append(ca)
        body = body.intersect(conaffine_eval(sp, ca, x).to_poly())
    value = UpperSet(sp, body)
    expected = biconjugate(g).eval_slice(x)
    sep = None
    in_dom = g.domain().contains_point(x)
    if not in_dom and not g.epi.is_empty:
        rows = g.epi.hrep
        dom_rows = [(a, b) for a, b in zip(rows.A, rows.b)
                    if not any(a[n:]) and dot(a[:n], x) < b]
        proper_rows = [(a, b) for a, b in zip(rows.A, rows.b) if any(a[n:])]
        if dom_rows and proper_rows:
            (aj, bj), (ai, bi) = dom_rows[0], proper_rows[0]
            member = Conaffine.make(tuple(-u - v for u, v in zip(ai[:n], aj[:n])),
                                    tuple(-v for v in ai[n:]), -bi - bj)
            sep = {"rate": str(bj - dot(aj[:n], x)),
                   "base": [str(v) for v in ai], "cut": [str(v) for v in aj],
                   "member_is_minorant": minorant_check(sp, member, g)}
    return DualRepresentation(x, in_dom, minorants, value, value == expected, sep)


# -- scalarization of residuals ---------------------------------------------

def scalarize_set(A: UpperSet, zstar) -> XReal:
    """``inf {-z* . z : z in A}``."""
    return negate(A.body.support(_vec(zstar)))


@dataclass
class ResiduationCheck:
    point: tuple
    lhs: XReal
    rhs: XReal
    holds: bool
    equality_expected: bool
    equality: bool


def inf_residuation_check(f: SetFn, g: SetFn, zstar, points) -> list[ResiduationCheck]:
    """``phi_f(x) idif phi_g(x) <= phi_{f (-) g}(x)`` pointwise, with equality
    when ``f(x)`` is the half-space ``H_{phi_f(x)}(z*)``."""
    zs = f.space.check_zstar(zstar)
    out = []
    for x in points:
        fx, gx = f.eval_slice(x), g.eval_slice(x)
        pf, pg = scalarize_set(fx, zs), scalarize_set(gx, zs)
        lhs = idif(pf, pg)
        rhs = scalarize_set(residual(fx, gx), zs)
        eq_exp = HalfSpaceValue(f.space, zs, pf).to_poly() == fx.body
        out.append(ResiduationCheck(tuple(_vec(x)), lhs, rhs, lhs <= rhs, eq_exp, lhs == rhs))
    return out


def sup_family_check(fns: Sequence[SetFn], zstar, points):
    """``sup_i phi_{g_i}(x) <= phi_{sup g_i}(x)`` for a finite family."""
    from .xreal import sup_of
    zs = fns[0].space.check_zstar(zstar)
    top = reduce(setfn_sup, fns)
    phis = [scalarize(g, zs) for g in fns]
    ptop = scalarize(top, zs)
    out = []
    for x in points:
        lhs = sup_of(p.eval(x) for p in phis)
        rhs = ptop.eval(x)
        out.append((tuple(_vec(x)), lhs, rhs, lhs <= rhs))
    return out


# -- lattice identities on half-spaces ---------------------------------------

def review_identities(A: UpperSet, alpha, zstar) -> dict:
    """Three identities relating half-spaces, Minkowski sums and residuals:

    * ``H_0(z*) = H(z*)``;
    * ``cl(A + H_alpha(z*)) = H_{alpha inf_add (-sigma(z*|A))}(z*)``;
    * ``H_alpha(z*) (-) A = H_{alpha idif (-sigma(z*|A))}(z*)``.
    """
    sp = A.space
    zs = sp.check_zstar(zstar)
    alpha = xr(alpha)
    H0 = HalfSpaceValue(sp, zs, XReal.finite(0)).to_poly()
    first = H0 == cone_H(sp, zs)
    sigma = A.body.support(zs)
    Ha = HalfSpaceValue(sp, zs, alpha).to_upperset()
    second = closure_sum(A, Ha).body == HalfSpaceValue(sp, zs, inf_add(alpha, negate(sigma))).to_poly()
    third = residual(Ha, A).body == HalfSpaceValue(sp, zs, idif(alpha, negate(sigma))).to_poly()
    return {"H0_is_H": first, "sum": second, "residual": third}
