"""Duality statements for set-valued functions as executable checks.

Every check below evaluates the set-valued objects directly (Minkowski sums,
residuals and slices of polyhedra) and, separately, through the scalar
conjugates of the scalarizations.  A check passes only when both agree with
the expected relation.  Values along a fixed ``z* != 0`` are half-spaces
``H_alpha(z*)``, and inclusion between them is the reverse order on ``alpha``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Sequence

from . import scalar_fn as sf
from .errors import PremiseViolation, TheoremViolation
from .polyhedra import Polyhedron, _vec, dot, matvec, transpose
from .upperset_fn import (HalfSpaceValue, OrderedSpace, SetFn, UpperSet, cone_H,
                          closure_sum, conjugate, facet_directions, residual,
                          scalar_conjugate, scalarize, setfn_add, setfn_compose,
                          setfn_inf_convolve, setfn_pushforward, setify)
from .xreal import NEG_INF, POS_INF, XReal, idif, inf_add, negate, sup_add, xr

ZERO = XReal.finite(0)


def _hs(space, zstar, alpha) -> Polyhedron:
    return HalfSpaceValue(space, _vec(zstar), alpha).to_poly()


def _poly_json(p: Polyhedron):
    if p.is_empty:
        return "empty"
    h = p.hrep
    return {"A": [[str(v) for v in a] for a in h.A], "b": [str(v) for v in h.b]}


def _relation(a: Polyhedron, b: Polyhedron) -> str:
    """Relation of ``a`` to ``b`` in the upper-set order (``a <= b`` iff ``a ⊇ b``)."""
    ab = a.contains_poly(b)
    ba = b.contains_poly(a)
    if ab and ba:
        return "equal"
    if ab:
        return "contains"
    if ba:
        return "contained"
    return "incomparable"


# -- infimal convolution of conjugates --------------------------------------

def conj_inf_convolve(g1, g2, xstar, zstar, r) -> HalfSpaceValue:
    """Closure of the union over ``x1* + x2* = x*`` and ``r1 + r2 = r`` of
    ``g1*(x1*, z*, r1) + g2*(x2*, z*, r2)``.

    With ``psi_i`` the scalar conjugates along ``z*`` every summand is
    ``H_{psi_1(x1*) + psi_2(x2*) - r}(z*)`` (an empty summand dominates), so
    the closed union is the half-space at the infimal convolution.
    """
    sp = g1.space
    zs = sp.check_zstar(zstar)
    p1 = scalar_conjugate(g1, zs)
    p2 = scalar_conjugate(g2, zs)
    val = sf.inf_convolve(p1, p2).eval(_vec(xstar))
    return HalfSpaceValue(sp, zs, idif(val, xr(r)))


def conj_inf_convolve_split(g1, g2, xstar, zstar, r, x1star, r1) -> Polyhedron:
    """One member of the union above, built as a Minkowski sum of sets."""
    xs = _vec(xstar)
    x1 = _vec(x1star)
    x2 = tuple(a - b for a, b in zip(xs, x1))
    r = xr(r)
    r1 = xr(r1)
    r2 = XReal.finite(r.value - r1.value)
    a = conjugate(g1, x1, zstar, r1).to_poly()
    b = conjugate(g2, x2, zstar, r2).to_poly()
    return a.minkowski_sum(b)


# -- chain rule --------------------------------------------------------------

@dataclass
class ChainEntry:
    triple: tuple
    part: str
    lhs: Polyhedron
    mid: Polyhedron
    rhs: Polyhedron
    lhs_mid: str
    mid_rhs: str
    chain_ok: bool
    equalities: dict = field(default_factory=dict)
    witness: tuple | None = None

    def to_json(self):
        xs, zs, r = self.triple
        out = {"xstar": [str(v) for v in xs], "zstar": [str(v) for v in zs],
               "r": r.to_json(), "part": self.part,
               "lhs": _poly_json(self.lhs), "mid": _poly_json(self.mid),
               "rhs": _poly_json(self.rhs), "lhs_vs_mid": self.lhs_mid,
               "mid_vs_rhs": self.mid_rhs, "chain_ok": self.chain_ok,
               "equalities": self.equalities}
        if self.witness is not None:
            out["witness_ystar"] = [str(v) for v in self.witness]
        return out


@dataclass
class ChainRuleReport:
    entries: list
    qualification: dict

    @property
    def ok(self) -> bool:
        return all(e.chain_ok and all(self._eq_ok(v) for v in e.equalities.values())
                   for e in self.entries)

    @staticmethod
    def _eq_ok(v):
        return v is True or v == "not asserted"

    def to_json(self):
        return {"qualification": {str(k): v for k, v in self.qualification.items()},
                "entries": [e.to_json() for e in self.entries], "ok": self.ok}


def _qualification(g: SetFn, f: SetFn, T, zs):
    phig = scalarize(g, zs)
    phif = scalarize(f, zs)
    return sf.chain_qualification(phig, phif, T)


def set_chain_rule(g: SetFn, f: SetFn, T, S, triples) -> ChainRuleReport:
    """Conjugates of ``g box Sf`` and of ``g + fT`` against their dual forms.

    ``T: Q^n -> Q^p`` and ``S: Q^p -> Q^n`` with ``g`` on ``Q^n`` and ``f`` on
    ``Q^p``.  Triples are ``(x*, z*, r)`` with finite ``r``.
    """
    if g.space != f.space:
        raise ValueError("ordering cones differ")
    sp = g.space
    T = [_vec(r) for r in T]
    S = [_vec(r) for r in S]
    ST = transpose(S)
    TT = transpose(T)
    g_box_sf = setfn_inf_convolve(g, setfn_pushforward(S, f))
    g_plus_ft = setfn_add(g, setfn_compose(f, T))
    dom_ok = not g.epi.is_empty and not f.epi.is_empty
    entries = []
    quals = {}
    caches = {}
    for xs, zs, r in triples:
        xs = _vec(xs)
        zs = sp.check_zstar(zs)
        r = xr(r)
        if not r.is_finite:
            raise ValueError("chain rule triples need a finite r")
        cache = caches.setdefault(zs, {})
        psig = cache.get("g") or cache.setdefault("g", scalar_conjugate(g, zs))
        psif = cache.get("f") or cache.setdefault("f", scalar_conjugate(f, zs))

        # (a)
        stx = matvec(ST, xs) if ST else ()
        s = psif.eval(stx)
        lhs = conjugate(g_box_sf, xs, zs, r).to_poly()
        mid = conjugate(g, xs, zs, idif(r, s)).to_poly().minkowski_sum(
            _hs(sp, zs, idif(s, s)))
        rhs = conjugate(g, xs, zs, r).to_poly().minkowski_sum(
            conjugate(f, stx, zs, ZERO).to_poly())
        scalar_alpha = idif(sup_add(psig.eval(xs), s), r)
        eqs = {"lhs_equals_mid": lhs == mid,
               "lhs_matches_scalar_rule": lhs == _hs(sp, zs, scalar_alpha)}
        if dom_ok:
            eqs["mid_equals_rhs"] = mid == rhs
        rel1, rel2 = _relation(lhs, mid), _relation(mid, rhs)
        entries.append(ChainEntry((xs, zs, r), "conj_inf_convolution", lhs, mid, rhs,
                                  rel1, rel2, mid.contains_poly(rhs) and lhs.contains_poly(mid),
                                  eqs))

        # (b) and (c)
        lhs = conjugate(g_plus_ft, xs, zs, r).to_poly()
        mid_val = sf.sup_convolution_eval(psig, psif, T, xs)
        mid = _hs(sp, zs, idif(mid_val, r))
        rhs = conj_inf_convolve_tf(g, f, T, xs, zs, r).to_poly()
        eqs = {}
        if dom_ok:
            eqs["mid_equals_rhs"] = mid == rhs
        qualified, reason = _qualification(g, f, T, zs)
        quals[zs] = reason
        witness = None
        if qualified:
            w = sf.convolution_witness(psig, psif, T, xs)
            witness = w if w is not None else tuple([Fraction(0)] * len(T))
            eqs["lhs_equals_rhs"] = lhs == rhs
            # materialize the witness term as a Minkowski sum of two conjugate values
            fy = psif.eval(witness)
            x1 = tuple(a - b for a, b in zip(xs, matvec(TT, witness))) if TT else xs
            term = conjugate(g, x1, zs, idif(r, fy)).to_poly().minkowski_sum(
                _hs(sp, zs, idif(fy, fy)))
            eqs["witness_term_equals_lhs"] = term == lhs
        else:
            eqs["lhs_equals_rhs"] = "not asserted"
        entries.append(ChainEntry((xs, zs, r), "conj_sum", lhs, mid, rhs,
                                  _relation(lhs, mid), _relation(mid, rhs),
                                  lhs.contains_poly(mid) and mid.contains_poly(rhs),
                                  eqs, witness))
    return ChainRuleReport(entries, quals)


def conj_inf_convolve_tf(g: SetFn, f: SetFn, T, xstar, zstar, r) -> HalfSpaceValue:
    """``(g* box T*f*)(x*, z*, r)``: closure of the union over
    ``x1* + T^T y* = x*`` of ``g*(x1*, z*, r1) + f*(y*, z*, r2)``."""
    sp = g.space
    zs = sp.check_zstar(zstar)
    val = sf.inf_convolution_eval(scalar_conjugate(g, zs), scalar_conjugate(f, zs), T,
                                  _vec(xstar))
    return HalfSpaceValue(sp, zs, idif(val, xr(r)))


# -- sandwich ------------------------------------------------------------------

@dataclass
class SandwichWitness:
    ystar: tuple
    z0: tuple
    middle: SetFn
    lower_inclusion: bool
    upper_inclusion: bool
    z0_membership: bool
    touching_point: tuple | None
    conjugate_equalities: dict | None

    @property
    def ok(self) -> bool:
        ok = self.lower_inclusion and self.upper_inclusion and self.z0_membership
        if self.conjugate_equalities is not None:
            ok = ok and all(self.conjugate_equalities.values())
        return ok

    def to_json(self):
        return {"ystar": [str(v) for v in self.ystar], "z0": [str(v) for v in self.z0],
                "middle_epi": _poly_json(self.middle.epi),
                "lower_inclusion": self.lower_inclusion,
                "upper_inclusion": self.upper_inclusion,
                "z0_membership": self.z0_membership,
                "touching_point": None if self.touching_point is None
                else [str(v) for v in self.touching_point],
                "conjugate_equalities": self.conjugate_equalities, "ok": self.ok}


def sandwich(g: SetFn, f: SetFn, T, zstar) -> SandwichWitness:
    """Separate ``g`` from ``H(z*) (-) fT`` by a shifted conaffine function.

    The premise ``g(x) ⊆ H(z*) (-) fT(x)`` for all ``x`` is the scalar bound
    ``phi_g + phi_f T >= 0``; a violation raises :class:`PremiseViolation`
    with a point ``x`` and ``z in g(x)`` outside the bound.
    """
    sp = g.space
    zs = sp.check_zstar(zstar)
    if not any(zs):
        raise ValueError("the sandwich check needs z* != 0")
    T = [_vec(r) for r in T]
    n = g.n
    phig = scalarize(g, zs)
    phif = scalarize(f, zs)
    phift = sf.compose_linear(phif, T)
    h = sf.pointwise_inf_add(phig, phift)
    down = (Fraction(0),) * n + (Fraction(-1),)
    if not h.epi.is_empty:
        top = h.epi.support(down)  # = -inf h
        if top > ZERO:
            x = _premise_witness(h, n)
            slice_ = g.eval_slice(x)
            z = slice_.body.argmax(zs)
            raise PremiseViolation("g(x) is not inside H(z*) (-) fT(x)",
                                   witness={"x": x, "z": z})
    qualified, reason = sf.chain_qualification(phig, phif, T)
    if not qualified:
        raise PremiseViolation(f"qualification not established: {reason}")

    psig = sf.conjugate(phig)
    psif = sf.conjugate(phif)
    w = sf.convolution_witness(psig, psif, T, (Fraction(0),) * n)
    if w is None:
        raise TheoremViolation("dual problem has no minimizer although qualified")
    ystar = tuple(-v for v in w)
    fval = psif.eval(w)  # psi_f(-y*)
    if not fval.is_finite:
        raise TheoremViolation("psi_f(-y*) is not finite")
    zz = dot(zs, zs)
    z0 = tuple(fval.value / zz * v for v in zs)

    TTy = matvec(transpose(T), ystar)
    # middle function x -> S_(T^T y*, z*)(x) + {-z0} = H_{T^T y* . x + z* . z0}(z*)
    middle = setify(sf.make_affine(TTy, -dot(zs, z0)), zs, sp)
    lower = middle.epi.contains_poly(g.epi)
    fT = setfn_compose(f, T)
    mf = setfn_add(middle, fT)
    Hz = cone_H(sp, zs)
    bound = Polyhedron.whole(n).product(Hz)
    upper = bound.contains_poly(mf.epi)

    gstar = conjugate(g, TTy, zs, 0).to_poly()
    fstar = conjugate(f, w, zs, 0).to_poly()
    res = residual(UpperSet(sp, Hz), UpperSet(sp, fstar)).body
    member = gstar.contains_point(z0) and res.contains_point(z0)

    touching = None
    eqs = None
    x0 = _touching_point(h, n)
    if x0 is not None:
        touching = x0
        left = closure_sum(g.eval_slice(x0), UpperSet(sp, Hz)).body
        right = residual(UpperSet(sp, Hz), fT.eval_slice(x0)).body
        if left == right:
            eqs = {"g_conjugate": gstar == Hz.translate(z0),
                   "f_conjugate": fstar == Hz.translate(tuple(-v for v in z0))}
        else:
            touching = None
    return SandwichWitness(ystar, z0, middle, lower, upper, member, touching, eqs)


def _premise_witness(h: sf.ScalarFn, n: int):
    """A point where ``h < 0``."""
    res = Polyhedron.from_hrep(h.epi.hrep.A, h.epi.hrep.b, dim=n + 1)
    from . import lp
    out = lp.minimize([0] * n + [1], res.hrep.A, res.hrep.b)
    if out.x is None:
        raise TheoremViolation("no premise witness found")
    if out.status == lp.UNBOUNDED:
        # walk along the ray until the value is negative
        x = tuple(a + 1_000 * b for a, b in zip(out.x, out.ray))
        t = 1
        while h.eval(x[:n]) >= ZERO:
            t *= 2
            x = tuple(a + t * b for a, b in zip(out.x, out.ray))
        return x[:n]
    return out.x[:n]


def _touching_point(h: sf.ScalarFn, n: int):
    """A minimizer of ``h`` when its minimum is ``0``."""
    from . import lp
    if h.epi.is_empty or not h.epi.hrep.A:
        return None
    out = lp.minimize([0] * n + [1], h.epi.hrep.A, h.epi.hrep.b)
    if out.status == lp.OPTIMAL and out.value == ZERO:
        return out.x[:n]
    return None


# -- Fenchel-Rockafellar --------------------------------------------------------

@dataclass
class DirectionResult:
    zstar: tuple
    D: HalfSpaceValue
    weak_ok: bool
    strong_asserted: bool
    strong_ok: bool | None
    witness: tuple | None
    sampled_ok: bool
    reason: str

    def to_json(self):
        return {"zstar": [str(v) for v in self.zstar], "D": _poly_json(self.D.to_poly()),
                "alpha": self.D.alpha.to_json(), "weak_ok": self.weak_ok,
                "strong_asserted": self.strong_asserted, "strong_ok": self.strong_ok,
                "witness_ystar": None if self.witness is None else [str(v) for v in self.witness],
                "sampled_ok": self.sampled_ok, "qualification": self.reason}


@dataclass
class DualityReport:
    P: UpperSet
    directions: list
    intersection_asserted: bool
    intersection_equals_P: bool | None

    @property
    def weak_ok(self) -> bool:
        return all(d.weak_ok for d in self.directions)

    @property
    def ok(self) -> bool:
        good = self.weak_ok and all(d.sampled_ok for d in self.directions)
        good = good and all(d.strong_ok for d in self.directions if d.strong_asserted)
        if self.intersection_asserted:
            good = good and bool(self.intersection_equals_P)
        return good

    def D(self, zstar) -> Polyhedron:
        zs = _vec(zstar)
        for d in self.directions:
            if d.zstar == zs:
                return d.D.to_poly()
        raise KeyError(zstar)

    def to_json(self):
        return {"P": _poly_json(self.P.body),
                "directions": [d.to_json() for d in self.directions],
                "intersection_asserted": self.intersection_asserted,
                "intersection_equals_P": self.intersection_equals_P,
                "weak_ok": self.weak_ok, "ok": self.ok}


def primal_set(g: SetFn, f: SetFn, T) -> UpperSet:
    """``cl co U_x (g(x) + f(T x))``."""
    h = setfn_add(g, setfn_compose(f, T))
    n, m = g.n, g.space.m
    return UpperSet(g.space, h.epi.project(range(n, n + m)))


def auto_directions(P: UpperSet) -> list:
    sp = P.space
    dirs = facet_directions(P.body, 0, sp, with_zero=False)
    return [d for d in dirs if any(d)]


def fenchel_rockafellar(g: SetFn, f: SetFn, T, directions="auto",
                        samples: Sequence | None = None) -> DualityReport:
    """Primal set ``P`` against the dual half-spaces ``D(z*)``.

    ``D(z*)`` is the intersection over ``y*`` of
    ``H(z*) (-) (g*(T^T y*, z*) + f*(-y*, z*))``; along ``z* != 0`` it is the
    half-space at level ``-inf_y* (psi_g(T^T y*) + psi_f(-y*))``.  The same
    residuals are also formed as sets at ``samples`` (and at the witness) to
    confirm that each contains ``D(z*)``.
    """
    if g.space != f.space:
        raise ValueError("ordering cones differ")
    sp = g.space
    T = [_vec(r) for r in T]
    p = len(T)
    TT = transpose(T)
    P = primal_set(g, f, T)
    if directions == "auto":
        directions = auto_directions(P)
    results = []
    Hcache = {}
    any_qualified = []
    for z in directions:
        zs = sp.check_zstar(z)
        if not any(zs):
            D = HalfSpaceValue(sp, zs, NEG_INF)
            results.append(DirectionResult(zs, D, True, False, None, None, True,
                                           "z* = 0: D = Z"))
            continue
        psig = scalar_conjugate(g, zs)
        psif = scalar_conjugate(f, zs)
        F = sf.inf_convolution_eval(psig, psif, T, (Fraction(0),) * g.n)
        D = HalfSpaceValue(sp, zs, idif(ZERO, F))
        Dp = D.to_poly()
        weak = Dp.contains_poly(P.body)
        qualified, reason = sf.chain_qualification(scalarize(g, zs), scalarize(f, zs), T)
        any_qualified.append(qualified)
        Hz = Hcache.setdefault(zs, cone_H(sp, zs))
        witness = None
        strong = None
        if qualified:
            w = sf.convolution_witness(psig, psif, T, (Fraction(0),) * g.n)
            witness = tuple(-v for v in w) if w is not None else None
            strong = P.body.minkowski_sum(Hz) == Dp
            if witness is not None:
                strong = strong and _dual_term(g, f, TT, witness, zs, Hz) == Dp
        pts = list(samples or [])
        if witness is not None:
            pts.append(witness)
        pts.append((Fraction(0),) * p)
        sampled = all(_dual_term(g, f, TT, _vec(y), zs, Hz).contains_poly(Dp) for y in pts)
        results.append(DirectionResult(zs, D, weak, qualified, strong, witness, sampled, reason))
    nonzero = [d for d in results if any(d.zstar)]
    asserted = bool(nonzero) and all(any_qualified) and not P.is_empty
    inter = None
    if nonzero:
        body = reduce(lambda a, b: a.intersect(b), (d.D.to_poly() for d in nonzero))
        inter = body == P.body
    return DualityReport(P, results, asserted, inter)


def _dual_term(g, f, TT, ystar, zs, Hz) -> Polyhedron:
    """``H(z*) (-) (g*(T^T y*, z*) + f*(-y*, z*))`` formed as sets."""
    sp = g.space
    x1 = matvec(TT, ystar) if TT else (Fraction(0),) * g.n
    a = conjugate(g, x1, zs, 0).to_poly()
    b = conjugate(f, tuple(-v for v in ystar), zs, 0).to_poly()
    return residual(UpperSet(sp, Hz), UpperSet(sp, a.minkowski_sum(b))).body


# -- fundamental duality --------------------------------------------------------

@dataclass
class FundamentalEntry:
    zstar: tuple
    status: str
    lhs: Polyhedron | None = None
    rhs: Polyhedron | None = None
    equal: bool | None = None
    witness: tuple | None = None
    attainment: dict | None = None

    def to_json(self):
        out = {"zstar": [str(v) for v in self.zstar], "status": self.status}
        if self.lhs is not None:
            out.update({"lhs": _poly_json(self.lhs), "rhs": _poly_json(self.rhs),
                        "equal": self.equal,
                        "witness_ystar": None if self.witness is None
                        else [str(v) for v in self.witness]})
        if self.attainment is not None:
            out["attainment"] = self.attainment
        return out


@dataclass
class FundamentalReport:
    entries: list
    feasible: bool
    hull_asserted: bool
    hull_equal: bool | None

    @property
    def ok(self) -> bool:
        good = all(e.equal for e in self.entries if e.status == "checked")
        good = good and all(e.attainment["consistent"] for e in self.entries
                            if e.attainment is not None)
        if self.hull_asserted:
            good = good and bool(self.hull_equal)
        return good

    def to_json(self):
        return {"feasible": self.feasible, "entries": [e.to_json() for e in self.entries],
                "hull_asserted": self.hull_asserted, "hull_equal": self.hull_equal,
                "ok": self.ok}


def fundamental_duality(h: SetFn, n: int, directions="auto", xbar=None) -> FundamentalReport:
    """``cl U_x (h(x, 0) + H(z*))`` against ``H(z*) (-) h*(0, y*, z*)``.

    ``h`` lives on ``Q^n x Q^p`` with ``p = h.n - n``.
    """
    sp = h.space
    p = h.n - n
    m = sp.m
    sl = h.epi.slice({n + j: 0 for j in range(p)})  # (x, z) with y = 0
    feasible = not sl.is_empty
    values = UpperSet(sp, sl.project(range(n, n + m)))
    if directions == "auto":
        dirs = facet_directions(values.body, 0, sp, with_zero=False)
        for d in facet_directions(h.epi, h.n, sp, with_zero=False):
            if d not in dirs:
                dirs.append(d)
        directions = [d for d in dirs if any(d)]
    entries = []
    all_proper = True
    rhs_parts = []
    for z in directions:
        zs = sp.check_zstar(z)
        if not any(zs):
            continue
        phi = scalarize(h, zs)
        if not phi.proper or not feasible:
            all_proper = False
            entries.append(FundamentalEntry(zs, "weak only: not z*-proper" if feasible
                                            else "weak only: y = 0 slice empty"))
            continue
        Hz = cone_H(sp, zs)
        lhs = values.body.minkowski_sum(Hz)
        res = sf.fundamental_duality_scalar(phi, n, xbar)
        y0 = res.witness
        if y0 is None:
            entries.append(FundamentalEntry(zs, "no dual witness", lhs, None, False))
            continue
        hstar = conjugate(h, (Fraction(0),) * n + y0, zs, 0).to_poly()
        rhs = residual(UpperSet(sp, Hz), UpperSet(sp, hstar)).body
        eq = lhs == rhs and lhs == _hs(sp, zs, res.primal) and res.equal
        rhs_parts.append(rhs)
        att = None
        if xbar is not None:
            xb = _vec(xbar)
            pt = xb + (Fraction(0),) * p
            hx = h.eval_slice(pt)
            minimal = closure_sum(hx, UpperSet(sp, Hz)).body == lhs
            S = HalfSpaceValue(sp, zs, ZERO).to_upperset()  # S_((0,y*),z*)(xbar, 0)
            subdiff = hstar.contains_poly(residual(S, hx).body)
            att = {"xbar": [str(v) for v in xb], "z_minimal": minimal,
                   "subdifferential_inclusion": subdiff,
                   "scalar_attains": res.attainment["attains_inf"],
                   "consistent": minimal == subdiff == res.attainment["attains_inf"]}
        entries.append(FundamentalEntry(zs, "checked", lhs, rhs, eq, y0, att))
    hull_asserted = feasible and all_proper and bool(rhs_parts)
    hull_equal = None
    if rhs_parts:
        inter = reduce(lambda a, b: a.intersect(b), rhs_parts)
        hull_equal = inter == values.body
    return FundamentalReport(entries, feasible, hull_asserted, hull_equal)
