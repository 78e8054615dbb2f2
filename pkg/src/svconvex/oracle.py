"""Brute-force evaluators that share no code with the polyhedral kernel.

Everything here works on finite samples: functions are given pointwise by a
finite set of points whose value is ``conv(points) + C``, and the ordering
cone is given by its generators.  No linear programming, double description
or projection is used, so agreement with the kernel is independent evidence.

Each sweep has a certified direction:

* ``grid_scalarize`` is exact at a sampled ``x``;
* ``grid_conjugate`` is a lower bound (supremum over fewer points);
* ``grid_residual`` decides membership exactly at the lattice points tested;
* ``grid_minkowski`` returns points of the sum (inner approximation).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

# Extended reals are modelled locally as Fractions plus two sentinels so that
# this module does not lean on the kernel's truth tables.
PINF = "+inf"
NINF = "-inf"


def _lt(a, b) -> bool:
    if a == b:
        return False
    if a == NINF or b == PINF:
        return True
    if a == PINF or b == NINF:
        return False
    return a < b


def _le(a, b) -> bool:
    return a == b or _lt(a, b)


def o_inf_add(a, b):
    if a == PINF or b == PINF:
        return PINF
    if a == NINF or b == NINF:
        return NINF
    return a + b


def o_sup_add(a, b):
    if a == NINF or b == NINF:
        return NINF
    if a == PINF or b == PINF:
        return PINF
    return a + b


def _candidates(a, b):
    """Finite sample for ``t``: includes every exact difference that matters."""
    pts = {Fraction(k, 2) for k in range(-8, 9)}
    for u in (a, b):
        if u not in (PINF, NINF):
            pts.add(u)
            pts.add(-u)
    if a not in (PINF, NINF) and b not in (PINF, NINF):
        pts.add(a - b)
    return [NINF] + sorted(pts) + [PINF]


def o_inf(values):
    out = PINF
    for v in values:
        if _lt(v, out):
            out = v
    return out


def o_sup(values):
    out = NINF
    for v in values:
        if _lt(out, v):
            out = v
    return out


def def_idif(a, b):
    """``inf {t : a <= inf_add(b, t)}`` by enumeration."""
    return o_inf(t for t in _candidates(a, b) if _le(a, o_inf_add(b, t)))


def def_sdif(a, b):
    """``sup {t : sup_add(b, t) <= a}`` by enumeration."""
    return o_sup(t for t in _candidates(a, b) if _le(o_sup_add(b, t), a))


def def_inf_add(a, b):
    """``inf_add`` as the infimum of ``r + s`` over reals ``r >= a, s >= b``.

    A real bound above ``-inf`` is arbitrarily negative; that unbounded
    family is represented by the token ``-inf`` itself.
    """
    def upper(u):
        if u == PINF:
            return []
        if u == NINF:
            return [NINF]
        return [u, u + 1]
    pairs = [NINF if NINF in (r, s) else r + s for r in upper(a) for s in upper(b)]
    return o_inf(pairs) if pairs else PINF


def def_sup_add(a, b):
    """``sup_add`` as the supremum of ``r + s`` over reals ``r <= a, s <= b``."""
    def lower(u):
        if u == NINF:
            return []
        if u == PINF:
            return [PINF]
        return [u, u - 1]
    pairs = [PINF if PINF in (r, s) else r + s for r in lower(a) for s in lower(b)]
    return o_sup(pairs) if pairs else NINF


def symbol(x) -> str | Fraction:
    """Convert a kernel XReal (or anything with ``to_json``) to the local model."""
    s = x.to_json() if hasattr(x, "to_json") else x
    if s in (PINF, NINF):
        return s
    return Fraction(s)


# -- sampled set-valued functions -----------------------------------------

def _dot(a, b):
    return sum((Fraction(x) * Fraction(y) for x, y in zip(a, b)), Fraction(0))


@dataclass
class GridFn:
    """``x -> conv(points(x)) + cone(cone_gens)`` known only at ``xs``.

    ``points`` returns an empty list off the domain.
    """

    xs: list
    points: Callable[[tuple], list]
    cone_gens: list

    def value(self, x):
        return [tuple(Fraction(v) for v in p) for p in self.points(tuple(x))]


def grid_scalarize(fn: GridFn, zstar) -> dict:
    """``x -> inf {-z* . z : z in g(x)}`` at every sample, exact there."""
    out = {}
    for x in fn.xs:
        pts = fn.value(x)
        if not pts:
            out[tuple(x)] = PINF
            continue
        if any(_lt(-_dot(zstar, c), Fraction(0)) for c in fn.cone_gens):
            out[tuple(x)] = NINF
            continue
        out[tuple(x)] = min(-_dot(zstar, p) for p in pts)
    return out


def grid_conjugate(values: dict, xstar):
    """``sup_x (x* . x idif f(x))`` over the sampled ``x``; a lower bound."""
    best = NINF
    for x, v in values.items():
        cand = o_sup_add(_dot(xstar, x), PINF if v == NINF else NINF if v == PINF else -v)
        if _lt(best, cand):
            best = cand
    return best


def grid_residual(A_member: Callable[[tuple], bool], B_points: list, lattice: Iterable) -> list:
    """Lattice points ``z`` with ``B + z`` inside the upper set ``A``.

    ``B = conv(B_points) + C`` and ``A`` is convex with ``A + C = A``, so it
    suffices to test the shifted generating points.
    """
    out = []
    for z in lattice:
        z = tuple(Fraction(v) for v in z)
        if all(A_member(tuple(b + c for b, c in zip(p, z))) for p in B_points):
            out.append(z)
    return out


def grid_minkowski(P_points: list, Q_points: list) -> list:
    """All pairwise sums of sample points."""
    return sorted({tuple(Fraction(a) + Fraction(b) for a, b in zip(p, q))
                   for p in P_points for q in Q_points})


def lattice(lo: int, hi: int, dim: int):
    return itertools.product(range(lo, hi + 1), repeat=dim)


def halfspace_member(rows):
    """Membership in ``{z : a . z >= b}`` by direct evaluation."""
    def member(z):
        return all(_dot(a, z) >= Fraction(b) for a, b in rows)
    return member


# -- brute-force vertex enumeration ----------------------------------------

def _solve(M, rhs):
    n = len(M)
    aug = [[Fraction(v) for v in row] + [Fraction(r)] for row, r in zip(M, rhs)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if piv is None:
            return None
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [v / p for v in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
    return tuple(aug[i][n] for i in range(n))


def brute_vertices(A, b) -> list:
    """Vertices of ``{x : A x >= b}`` by trying every square subsystem."""
    if not A:
        return []
    d = len(A[0])
    out = set()
    for rows in itertools.combinations(range(len(A)), d):
        x = _solve([A[i] for i in rows], [b[i] for i in rows])
        if x is None:
            continue
        if all(_dot(a, x) >= Fraction(bi) for a, bi in zip(A, b)):
            out.add(x)
    return sorted(out)


def brute_support(A, b, w):
    """Maximum of ``w`` over the vertices; meaningful for bounded polytopes."""
    verts = brute_vertices(A, b)
    if not verts:
        return NINF
    return max(_dot(w, v) for v in verts)


# -- the non-closed scalarization ------------------------------------------

@dataclass
class NonclosedReport:
    samples: dict
    phi_at_zero: str
    closure_at_zero: Fraction
    positive_all_zero: bool
    epigraph_closed_evidence: bool

    @property
    def ok(self) -> bool:
        return (self.positive_all_zero and self.phi_at_zero == PINF
                and self.closure_at_zero == 0)

    def to_json(self):
        return {"phi": {str(k): str(v) for k, v in self.samples.items()},
                "phi(0)": self.phi_at_zero, "cl_phi(0)": str(self.closure_at_zero),
                "phi_zero_on_positive_samples": self.positive_all_zero, "ok": self.ok}


def nonclosed_scalarization_demo(steps: int = 16) -> NonclosedReport:
    """``g(x) = {(1/x, 0)} + Q^2_+`` for ``x > 0`` and empty otherwise, scalarized
    along ``z* = (0, -1)``.

    Along that direction only the second coordinate counts, so the value is
    ``0`` at every positive ``x`` and ``+inf`` at ``0``; the lower closure at
    ``0`` is the limit inferior of the values on a sequence ``x_k -> 0``.
    """
    cone = [(1, 0), (0, 1)]

    def points(x):
        (t,) = x
        if t <= 0:
            return []
        return [(1 / Fraction(t), Fraction(0))]

    xs = [(Fraction(k, 8),) for k in range(0, 17)]
    xs += [(Fraction(1, 2 ** k),) for k in range(1, steps)]
    fn = GridFn(xs, points, cone)
    phi = grid_scalarize(fn, (0, -1))
    positive = all(v == 0 for x, v in phi.items() if x[0] > 0)
    approach = [phi[(Fraction(1, 2 ** k),)] for k in range(1, steps)]
    closure = min(v for v in approach if v not in (PINF, NINF))
    # the epigraph {(x, z) : x > 0, z1 >= 1/x, z2 >= 0} is closed: its boundary
    # points approached as x -> 0 escape to infinity in z1
    escaping = all(fn.value((Fraction(1, 2 ** k),))[0][0] == 2 ** k for k in range(1, steps))
    return NonclosedReport(phi, phi[(Fraction(0),)], closure, positive, escaping)
