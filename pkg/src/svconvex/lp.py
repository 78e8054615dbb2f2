"""Exact rational linear programming.

Problems are stated in the inequality form used throughout the package,

    maximize  c . x   subject to  A x >= b,   x free,

and solved by a two-phase tableau simplex over :class:`fractions.Fraction`
with Bland's rule, so every run terminates and is deterministic.  Infeasible
problems come back with a Farkas certificate ``y >= 0, A^T y = 0, b . y > 0``
and unbounded ones with a feasible point plus an improving ray.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .xreal import NEG_INF, POS_INF, XReal

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    value: XReal
    x: tuple | None = None
    ray: tuple | None = None
    farkas: tuple | None = None

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


class _Tableau:
    """Dense tableau for ``max obj . w  s.t.  M w = beta, w >= 0`` (beta >= 0)."""

    def __init__(self, rows, rhs, basis):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r, j):
        prow = self.rows[r]
        piv = prow[j]
        if piv != 1:
            inv = 1 / piv
            prow = [a * inv for a in prow]
            self.rows[r] = prow
            self.rhs[r] = self.rhs[r] * inv
        prhs = self.rhs[r]
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            f = row[j]
            if f:
                self.rows[i] = [a - f * p if p else a for a, p in zip(row, prow)]
                self.rhs[i] -= f * prhs
        self.basis[r] = j

    def reduced_costs(self, obj):
        # reduced cost of column j: obj_j - sum_i obj_{B(i)} T_ij
        ncol = len(obj)
        cb = [obj[b] for b in self.basis]
        red = list(obj)
        for cbi, row in zip(cb, self.rows):
            if cbi:
                for j in range(ncol):
                    if row[j]:
                        red[j] -= cbi * row[j]
        return red

    def run(self, obj, allowed):
        """Maximize ``obj``; returns ``None`` at optimum or the entering column
        of an unbounded direction."""
        while True:
            red = self.reduced_costs(obj)
            enter = None
            for j in allowed:
                if red[j] > 0:
                    enter = j
                    break
            if enter is None:
                return None
            best = None
            leave = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    if (best is None or ratio < best
                            or (ratio == best and self.basis[i] < self.basis[leave])):
                        best = ratio
                        leave = i
            if leave is None:
                return enter
            self.pivot(leave, enter)


def _solve_square(M, rhs):
    """Solve ``M y = rhs`` for square nonsingular ``M`` (Gauss-Jordan)."""
    n = len(M)
    aug = [list(M[i]) + [rhs[i]] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [a / p for a in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


def maximize(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    """Maximize ``c . x`` over ``{x : A x >= b}``."""
    c = [Fraction(v) for v in c]
    d = len(c)
    A = [[Fraction(v) for v in row] for row in A]
    b = [Fraction(v) for v in b]
    k = len(A)
    if k == 0:
        if any(c):
            return LPResult(UNBOUNDED, POS_INF, x=tuple([Fraction(0)] * d),
                            ray=tuple(c))
        return LPResult(OPTIMAL, XReal.finite(0), x=tuple([Fraction(0)] * d))

    # columns: u (d) | v (d) | s (k) | artificial (k);  A u - A v - s = b
    nstruct = 2 * d + k
    ncol = nstruct + k
    sign = [1 if bi >= 0 else -1 for bi in b]
    rows = []
    rhs = []
    for i in range(k):
        sg = sign[i]
        row = [Fraction(0)] * ncol
        for j in range(d):
            a = A[i][j] * sg
            row[j] = a
            row[d + j] = -a
        row[2 * d + i] = Fraction(-sg)
        row[nstruct + i] = Fraction(1)
        rows.append(row)
        rhs.append(b[i] * sg)
    tab = _Tableau(rows, rhs, [nstruct + i for i in range(k)])

    phase1 = [Fraction(0)] * nstruct + [Fraction(-1)] * k
    tab.run(phase1, range(ncol))
    infeas = sum(tab.rhs[i] for i in range(k) if tab.basis[i] >= nstruct)
    if infeas > 0:
        # Phase-1 duals: B^T y = c_B over the equality system M w = beta.
        bt = list(_columns(A, sign, d, k, tab.basis, nstruct))
        y = _solve_square(bt, [phase1[j] for j in tab.basis])
        # Translate back through the row flips: y' = -sign * y is a Farkas vector.
        farkas = tuple(-sign[i] * y[i] for i in range(k))
        return LPResult(INFEASIBLE, NEG_INF, farkas=farkas)

    # Drive zero-level artificials out of the basis; drop redundant rows.
    keep = []
    for i in range(k):
        if tab.basis[i] >= nstruct:
            j = next((j for j in range(nstruct) if tab.rows[i][j] != 0), None)
            if j is None:
                continue
            tab.pivot(i, j)
        keep.append(i)
    tab.rows = [tab.rows[i][:nstruct] for i in keep]
    tab.rhs = [tab.rhs[i] for i in keep]
    tab.basis = [tab.basis[i] for i in keep]

    obj = list(c) + [-v for v in c] + [Fraction(0)] * k
    enter = tab.run(obj, range(nstruct))
    w = [Fraction(0)] * nstruct
    for i, bcol in enumerate(tab.basis):
        w[bcol] = tab.rhs[i]
    x = tuple(w[j] - w[d + j] for j in range(d))
    if enter is not None:
        dw = [Fraction(0)] * nstruct
        dw[enter] = Fraction(1)
        for i, bcol in enumerate(tab.basis):
            dw[bcol] = -tab.rows[i][enter]
        ray = tuple(dw[j] - dw[d + j] for j in range(d))
        return LPResult(UNBOUNDED, POS_INF, x=x, ray=ray)
    val = sum((ci * xi for ci, xi in zip(c, x)), Fraction(0))
    return LPResult(OPTIMAL, XReal.finite(val), x=x)


def _columns(A, sign, d, k, basis, nstruct):
    for j in basis:
        col = []
        for i in range(k):
            sg = sign[i]
            if j < d:
                col.append(A[i][j] * sg)
            elif j < 2 * d:
                col.append(-A[i][j - d] * sg)
            elif j < nstruct:
                col.append(Fraction(-sg) if j - 2 * d == i else Fraction(0))
            else:
                col.append(Fraction(1) if j - nstruct == i else Fraction(0))
        yield col


def minimize(c, A, b) -> LPResult:
    """Minimize ``c . x`` over ``{x : A x >= b}``; value is ``-inf`` if unbounded
    and ``+inf`` if infeasible."""
    res = maximize([-Fraction(v) for v in c], A, b)
    if res.status == OPTIMAL:
        return LPResult(OPTIMAL, XReal.finite(-res.value.value), x=res.x)
    if res.status == UNBOUNDED:
        return LPResult(UNBOUNDED, NEG_INF, x=res.x, ray=res.ray)
    return LPResult(INFEASIBLE, POS_INF, farkas=res.farkas)


def feasible_point(A, b):
    """A point of ``{x : A x >= b}`` or ``None``."""
    d = len(A[0]) if A else 0
    res = maximize([0] * d, A, b)
    return res.x if res.status != INFEASIBLE else None


def check_farkas(A, b, y) -> bool:
    """Verify a certificate of infeasibility of ``A x >= b``."""
    if any(v < 0 for v in y):
        return False
    d = len(A[0]) if A else 0
    for j in range(d):
        if sum(y[i] * Fraction(A[i][j]) for i in range(len(A))) != 0:
            return False
    return sum(y[i] * Fraction(b[i]) for i in range(len(b))) > 0
