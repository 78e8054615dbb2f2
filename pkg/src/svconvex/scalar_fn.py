"""Polyhedral extended-real-valued convex functions.

A :class:`ScalarFn` on ``Q^n`` is stored as its epigraph, a closed polyhedron in
``Q^(n+1)`` whose recession cone contains the upward direction.  Values follow
the slice: ``+inf`` off the domain and ``-inf`` where the vertical slice is a
whole line.  Because every row ``(a, c) . (x, r) >= b`` of such an epigraph has
``c >= 0``, evaluation is a closed-form maximum over the rows with ``c > 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import lp
from .polyhedra import (Polyhedron, _vec, block_matrix, dot, identity, matvec,
                        transpose, zeros)
from .xreal import (NEG_INF, POS_INF, XReal, idif, inf_add, sup_add)


def _up(n: int) -> tuple:
    return (Fraction(0),) * n + (Fraction(1),)


class ScalarFn:
    """A closed polyhedral convex function ``Q^n -> [-inf, +inf]``."""

    __slots__ = ("n", "epi")

    def __init__(self, n: int, epi: Polyhedron):
        if epi.dim != n + 1:
            raise ValueError(f"epigraph must live in Q^{n + 1}, got Q^{epi.dim}")
        if not epi.recession_contains(Polyhedron.cone([_up(n)])):
            raise ValueError("epigraph is not closed upward in the last coordinate")
        self.n = n
        self.epi = epi

    @classmethod
    def from_epi_closure(cls, n: int, body: Polyhedron) -> "ScalarFn":
        """Epigraph generated by ``body`` plus the upward ray."""
        if body.is_empty:
            return cls(n, body)
        return cls(n, body.minkowski_sum(Polyhedron.cone([_up(n)])))

    def __eq__(self, other):
        if not isinstance(other, ScalarFn):
            return NotImplemented
        return self.n == other.n and self.epi == other.epi

    def __hash__(self):
        return hash(self.epi)

    def __repr__(self):
        return f"ScalarFn(n={self.n}, epi={self.epi!r})"

    # -- evaluation ---------------------------------------------------------

    def eval(self, x: Sequence) -> XReal:
        x = _vec(x)
        if len(x) != self.n:
            raise ValueError("point has the wrong dimension")
        h = self.epi.hrep
        lower = None
        for a, b in zip(h.A, h.b):
            c = a[-1]
            rhs = b - dot(a[:-1], x)
            if c == 0:
                if rhs > 0:
                    return POS_INF
            else:
                v = rhs / c
                if lower is None or v > lower:
                    lower = v
        if lower is None:
            return NEG_INF
        return XReal.finite(lower)

    __call__ = eval

    # -- classification -----------------------------------------------------

    @property
    def is_pos_inf(self) -> bool:
        """Constant ``+inf`` (empty epigraph)."""
        return self.epi.is_empty

    @property
    def takes_neg_inf(self) -> bool:
        """Some value is ``-inf``; for closed convex functions then every point
        of the domain has value ``-inf``."""
        if self.epi.is_empty:
            return False
        return all(a[-1] == 0 for a in self.epi.hrep.A)

    @property
    def is_neg_inf(self) -> bool:
        return self.epi.is_whole

    @property
    def proper(self) -> bool:
        return not self.epi.is_empty and not self.takes_neg_inf

    def domain(self) -> Polyhedron:
        return self.epi.project(range(self.n))

    def leq(self, other: "ScalarFn") -> bool:
        """``self <= other`` pointwise, i.e. ``epi other`` is inside ``epi self``."""
        return self.epi.contains_poly(other.epi)


# -- constructors ---------------------------------------------------------

def make_affine(xstar: Sequence, r) -> ScalarFn:
    """``x -> xstar . x - r``."""
    xs = _vec(xstar)
    n = len(xs)
    row = tuple(-v for v in xs) + (Fraction(1),)
    return ScalarFn(n, Polyhedron.from_hrep([row], [-Fraction(r)], dim=n + 1))


def make_improper_ext(xstar: Sequence, r) -> ScalarFn:
    """``-inf`` where ``xstar . x - r <= 0`` and ``+inf`` elsewhere."""
    xs = _vec(xstar)
    n = len(xs)
    row = tuple(-v for v in xs) + (Fraction(0),)
    return ScalarFn(n, Polyhedron.from_hrep([row], [-Fraction(r)], dim=n + 1))


def make_indicator(p: Polyhedron) -> ScalarFn:
    """``0`` on ``p`` and ``+inf`` elsewhere."""
    n = p.dim
    h = p.hrep
    A = [tuple(a) + (Fraction(0),) for a in h.A] + [_up(n)]
    return ScalarFn(n, Polyhedron.from_hrep(A, list(h.b) + [0], dim=n + 1))


def constant(n: int, value) -> ScalarFn:
    v = XReal.from_json(value) if isinstance(value, str) else value
    if isinstance(v, XReal):
        if v.is_pos_inf:
            return ScalarFn(n, Polyhedron.empty(n + 1))
        if v.is_neg_inf:
            return ScalarFn(n, Polyhedron.whole(n + 1))
        v = v.value
    return ScalarFn(n, Polyhedron.from_hrep([_up(n)], [v], dim=n + 1))


def make_abs(n: int = 1) -> ScalarFn:
    """The l1 norm, a handy fixture."""
    import itertools
    A = []
    for signs in itertools.product((1, -1), repeat=n):
        A.append(tuple(Fraction(-s) for s in signs) + (Fraction(1),))
    return ScalarFn(n, Polyhedron.from_hrep(A, [0] * len(A), dim=n + 1))


# -- conjugation ----------------------------------------------------------

def conjugate(g: ScalarFn) -> ScalarFn:
    """``g*(x*) = sup_x (x* . x idif g(x))`` read off the epigraph generators."""
    n = g.n
    if g.is_pos_inf:
        return constant(n, NEG_INF)
    if g.takes_neg_inf:
        return constant(n, POS_INF)
    v = g.epi.vrep
    A, b = [], []
    for p in v.vertices:
        # t >= x* . x - rho
        A.append(tuple(-c for c in p[:-1]) + (Fraction(1),))
        b.append(-p[-1])
    for d in v.rays:
        # x* . d - s <= 0
        A.append(tuple(-c for c in d[:-1]) + (Fraction(0),))
        b.append(-d[-1])
    for d in v.lines:
        A.append(tuple(-c for c in d[:-1]) + (Fraction(0),))
        b.append(-d[-1])
        A.append(tuple(d[:-1]) + (Fraction(0),))
        b.append(d[-1])
    return ScalarFn(n, Polyhedron.from_hrep(A, b, dim=n + 1))


def biconjugate(g: ScalarFn) -> ScalarFn:
    return conjugate(conjugate(g))


# -- calculus -------------------------------------------------------------

def _lift_map(T, n):
    """Block matrix of ``(x, r) -> (T x, r)``."""
    T = [_vec(r) for r in T]
    p = len(T)
    return block_matrix([[T, zeros(p, 1)], [zeros(1, n), [[Fraction(1)]]]])


def inf_convolve(g: ScalarFn, f: ScalarFn) -> ScalarFn:
    """``inf_y g(x - y) + f(y)`` via the Minkowski sum of epigraphs."""
    if g.n != f.n:
        raise ValueError("dimension mismatch")
    return ScalarFn(g.n, g.epi.minkowski_sum(f.epi))


def compose_linear(f: ScalarFn, T) -> ScalarFn:
    """``x -> f(T x)`` for ``T: Q^n -> Q^p``."""
    T = [_vec(r) for r in T]
    if len(T) != f.n:
        raise ValueError("operator range does not match the function")
    n = len(T[0]) if T else 0
    return ScalarFn(n, f.epi.preimage(_lift_map(T, n)))


def pushforward(T, g: ScalarFn) -> ScalarFn:
    """``y -> inf {g(x) : T x = y}``."""
    T = [_vec(r) for r in T]
    if T and len(T[0]) != g.n:
        raise ValueError("operator domain does not match the function")
    return ScalarFn(len(T), g.epi.image(_lift_map(T, g.n)))


def pointwise_inf_add(g: ScalarFn, f: ScalarFn) -> ScalarFn:
    """``x -> inf_add(g(x), f(x))`` as the image of the fibre product
    ``{(x, r1, r2)}`` under ``(x, r1, r2) -> (x, r1 + r2)``."""
    if g.n != f.n:
        raise ValueError("dimension mismatch")
    n = g.n
    if g.is_pos_inf or f.is_pos_inf:
        return constant(n, POS_INF)
    I = identity(n)
    # (x, r1, r2) -> (x, r1) and (x, r2)
    P1 = block_matrix([[I, zeros(n, 2)], [zeros(1, n), [[1, 0]]]])
    P2 = block_matrix([[I, zeros(n, 2)], [zeros(1, n), [[0, 1]]]])
    fibre = g.epi.preimage(P1).intersect(f.epi.preimage(P2))
    S = block_matrix([[I, zeros(n, 2)], [zeros(1, n), [[1, 1]]]])
    return ScalarFn(n, fibre.image(S))


def pointwise_max(g: ScalarFn, f: ScalarFn) -> ScalarFn:
    return ScalarFn(g.n, g.epi.intersect(f.epi))


def hull_inf(g: ScalarFn, f: ScalarFn) -> ScalarFn:
    """Closed convex hull of the pointwise minimum."""
    return ScalarFn(g.n, g.epi.hull_union(f.epi))


def scale_arg(f: ScalarFn, t) -> ScalarFn:
    """``x -> f(t x)``."""
    return compose_linear(f, [[Fraction(t) if i == j else Fraction(0) for j in range(f.n)]
                              for i in range(f.n)])


def sup_convolution_eval(gc: ScalarFn, fc: ScalarFn, T, xstar) -> XReal:
    """``inf_y* gc(x* - T^T y*) sup_add fc(y*)``.

    Both arguments are conjugates, hence closed; such a function is ``-inf``
    somewhere only when it is identically ``-inf``, and in that case the
    infimum over ``y*`` is ``-inf``.  Otherwise sup- and inf-addition agree and
    the value is the ordinary infimal convolution.
    """
    if gc.is_neg_inf or fc.is_neg_inf:
        return NEG_INF
    return inf_convolve(gc, pushforward(transpose(T), fc)).eval(xstar)


def inf_convolution_eval(gc: ScalarFn, fc: ScalarFn, T, xstar) -> XReal:
    """``inf_y* gc(x* - T^T y*) inf_add fc(y*)``; ``+inf`` dominates each term."""
    return inf_convolve(gc, pushforward(transpose(T), fc)).eval(xstar)


@dataclass
class Comparison:
    statement: str
    point: tuple
    lhs: XReal
    rhs: XReal
    relation: str
    expected: str
    ok: bool
    witness: tuple | None = None
    extra: dict = field(default_factory=dict)

    def to_json(self):
        out = {
            "statement": self.statement,
            "point": [str(v) for v in self.point],
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "relation": self.relation,
            "expected": self.expected,
            "ok": self.ok,
        }
        if self.witness is not None:
            out["witness"] = [str(v) for v in self.witness]
        out.update(self.extra)
        return out


def _relation(a: XReal, b: XReal) -> str:
    if a == b:
        return "equal"
    return "less" if a < b else "greater"


def _compare(statement, point, lhs, rhs, expected, witness=None):
    rel = _relation(lhs, rhs)
    if expected == "equal":
        ok = rel == "equal"
    elif expected == "leq":
        ok = rel in ("equal", "less")
    else:
        ok = True
    return Comparison(statement, tuple(point), lhs, rhs, rel, expected, ok, witness)


def convolution_witness(gc: ScalarFn, fc: ScalarFn, T, xstar):
    """A ``y*`` attaining ``inf_y* gc(x* - T^T y*) + fc(y*)`` or ``None``.

    Solved as one LP in ``(y*, t1, t2)``.
    """
    T = [_vec(r) for r in T]
    xstar = _vec(xstar)
    p = len(T)
    n = len(xstar)
    TT = transpose(T) if T else [[Fraction(0)] * 0 for _ in range(n)]
    A, b = [], []
    hg = gc.epi.hrep
    for a, beta in zip(hg.A, hg.b):
        ax, c = a[:-1], a[-1]
        # ax . (x* - T^T y*) + c t1 >= beta
        row = [-sum((ax[i] * TT[i][j] for i in range(n)), Fraction(0)) for j in range(p)]
        A.append(row + [c, Fraction(0)])
        b.append(beta - dot(ax, xstar))
    hf = fc.epi.hrep
    for a, beta in zip(hf.A, hf.b):
        A.append(list(a[:-1]) + [Fraction(0), a[-1]])
        b.append(beta)
    obj = [Fraction(0)] * p + [Fraction(1), Fraction(1)]
    if not A:
        return tuple([Fraction(0)] * p)
    res = lp.minimize(obj, A, b)
    if res.status != lp.OPTIMAL:
        return None
    return tuple(res.x[:p])


def chain_conjugate_check(g: ScalarFn, f: ScalarFn, T, S, samples) -> list[Comparison]:
    """Both sides of the scalar chain rule at the dual points ``samples``.

    ``T: Q^n -> Q^p`` and ``S: Q^p -> Q^n``; ``g`` lives on ``Q^n`` and ``f`` on
    ``Q^p``.  Checks, per sample ``x*``:

    * conj-of-inf-convolution: ``(g box Sf)* = g* sup_add f* S^T`` and that it
      is below the inf-added version;
    * sum-rule chain: ``(g + fT)* <= sup-convolution <= inf-convolution``;
    * the degenerate identities when ``g`` or ``f`` is ``+inf``;
    * under the qualification, equality with the inf-convolution and an
      attaining ``y*``.
    """
    T = [_vec(r) for r in T]
    S = [_vec(r) for r in S]
    n, p = g.n, f.n
    gc = conjugate(g)
    fc = conjugate(f)
    Sf = pushforward(S, f)
    lhs_a_fn = conjugate(inf_convolve(g, Sf))
    fT = compose_linear(f, T)
    sum_fn = pointwise_inf_add(g, fT)
    lhs_b_fn = conjugate(sum_fn)
    ST = transpose(S) if S else [[] for _ in range(p)]

    qualified, reason = chain_qualification(g, f, T)
    out = []
    for xs in samples:
        xs = _vec(xs)
        st_x = matvec(ST, xs) if p else ()
        la = lhs_a_fn.eval(xs)
        ra_sup = sup_add(gc.eval(xs), fc.eval(st_x))
        ra_inf = inf_add(gc.eval(xs), fc.eval(st_x))
        out.append(_compare("conj_inf_convolution", xs, la, ra_sup, "equal"))
        out.append(_compare("conj_inf_convolution_inf_add_bound", xs, ra_sup, ra_inf, "leq"))

        lb = lhs_b_fn.eval(xs)
        mid = sup_convolution_eval(gc, fc, T, xs)
        rb = inf_convolution_eval(gc, fc, T, xs)
        out.append(_compare("conj_sum_below_sup_convolution", xs, lb, mid, "leq"))
        out.append(_compare("sup_convolution_below_inf_convolution", xs, mid, rb, "leq"))

        if g.is_pos_inf or f.is_pos_inf:
            c1 = _compare("conj_sum_degenerate", xs, lb, mid, "equal")
            c1.ok = c1.ok and lb == NEG_INF
            out.append(c1)
        if qualified:
            w = convolution_witness(gc, fc, T, xs)
            cmp = _compare("conj_sum_strong", xs, lb, rb, "equal", witness=w)
            cmp.ok = cmp.ok and lb != NEG_INF
            if w is not None and rb.is_finite:
                val = inf_add(gc.eval(tuple(a - b for a, b in
                                            zip(xs, matvec(transpose(T), w)))), fc.eval(w))
                cmp.extra["witness_value"] = val.to_json()
                cmp.ok = cmp.ok and val == rb
            cmp.extra["qualification"] = reason
            out.append(cmp)
    return out


def chain_qualification(g: ScalarFn, f: ScalarFn, T):
    """Polyhedral replacement for the continuity hypothesis of the strong sum
    rule: returns ``(holds, reason)``."""
    fT = compose_linear(f, T)
    if g.is_pos_inf or f.is_pos_inf:
        return False, "degenerate (+inf summand)"
    common = g.domain().intersect(fT.domain())
    if fT.takes_neg_inf and not common.is_empty:
        return True, "fT takes -inf on dom g"
    if g.proper and f.proper and not common.is_empty:
        return True, "both proper, dom g meets T^-1 dom f"
    return False, "not established"


@dataclass
class FundamentalDualityResult:
    primal: XReal
    dual: XReal
    witness: tuple | None
    qualified: bool
    reason: str
    equal: bool
    attainment: dict | None = None

    @property
    def ok(self) -> bool:
        if not self.qualified:
            return self.dual <= self.primal
        return self.equal and (self.attainment is None or self.attainment["consistent"])


def fundamental_duality_scalar(h: ScalarFn, n: int, xbar: Sequence | None = None):
    """``inf_x h(x, 0)`` against ``sup_y* (0 idif h*(0, y*))`` for ``h`` on
    ``Q^n x Q^p`` (the last ``p = h.n - n`` coordinates form the y-block)."""
    p = h.n - n
    if p < 0:
        raise ValueError("y-block has negative size")
    # primal: min r over the y = 0 slice of epi h
    fixed = {n + j: 0 for j in range(p)}
    sl = h.epi.slice(fixed)
    primal = -sl.support(_vec([0] * n + [-1])) if not sl.is_empty else POS_INF
    hc = conjugate(h)
    dslice = hc.epi.slice({i: 0 for i in range(n)})
    # dual: sup_y* -h*(0, y*) = -inf_y* h*(0, y*)
    if dslice.is_empty:
        inf_conj = POS_INF
        witness = None
    else:
        res = lp.minimize([0] * p + [1], dslice.hrep.A, dslice.hrep.b) if dslice.hrep.A \
            else None
        if res is None:
            inf_conj, witness = NEG_INF, tuple([Fraction(0)] * p)
        else:
            inf_conj = res.value
            witness = tuple(res.x[:p]) if res.optimal else None
    dual = idif(XReal.finite(0), inf_conj)

    if h.is_pos_inf:
        qualified, reason = False, "h is constant +inf"
    elif sl.is_empty:
        qualified, reason = False, "y = 0 slice of dom h is empty"
    elif h.takes_neg_inf:
        qualified, reason = True, "h takes -inf on the slice"
    else:
        qualified, reason = True, "h proper, (x0, 0) in dom h"
    attainment = None
    if xbar is not None:
        xb = _vec(xbar)
        hx = h.eval(xb + (Fraction(0),) * p)
        attained = hx == primal
        subgrad = False
        if witness is not None:
            # 0 idif h(xbar, 0) = h*(0, ybar)  (the pairing (0, y*).(xbar, 0) is 0)
            subgrad = idif(XReal.finite(0), hx) == hc.eval((Fraction(0),) * n + witness)
        attainment = {"h_xbar": hx.to_json(), "attains_inf": attained,
                      "subgradient_condition": subgrad,
                      "consistent": attained == subgrad if qualified else True}
    return FundamentalDualityResult(primal, dual, witness, qualified, reason,
                                    primal == dual, attainment)
