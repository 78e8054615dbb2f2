"""Exact rational convex polyhedra.

A :class:`Polyhedron` is ``{v in Q^d : A v >= b}`` and, equivalently,
``conv(vertices) + cone(rays) + lin(lines)``.  Either description may be given;
the other is produced lazily by double description and cached.  Both are kept
in a canonical form so that set equality is a syntactic comparison:

* H side: the affine hull equations in reduced row echelon form (each emitted
  as a pair of opposite rows), then the facet inequalities reduced modulo the
  equations, scaled to a primitive integer normal and sorted.
* V side: the lineality basis in echelon form, rays and vertices reduced
  modulo the lineality space, rays primitive, everything sorted.

The empty set is the single row ``0 >= 1``; the whole space has no rows.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from . import dd, lp
from .xreal import NEG_INF, POS_INF, XReal

Vec = tuple


def _vec(v) -> Vec:
    return tuple(Fraction(a) for a in v)


def dot(a, b) -> Fraction:
    return sum((x * y for x, y in zip(a, b) if x and y), Fraction(0))


def _primitive_normal(a: Vec, beta: Fraction):
    """Positive rescaling making ``a`` a primitive integer vector."""
    den = 1
    for x in a:
        q = x.denominator
        den = den * q // gcd(den, q)
    ints = [int(x * den) for x in a]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return a, beta
    s = Fraction(den, g)
    return tuple(Fraction(x // g) for x in ints), beta * s


def rref(rows: Sequence[Sequence[Fraction]], ncols: int):
    """Reduced row echelon form restricted to the first ``ncols`` pivot columns.

    Returns ``(rows, pivots)``; zero rows are dropped.
    """
    M = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        p = M[r][c]
        if p != 1:
            M[r] = [x / p for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return [tuple(row) for row in M[:r]], pivots


def _reduce(v, basis, pivots):
    v = list(v)
    for row, p in zip(basis, pivots):
        f = v[p]
        if f:
            v = [x - f * y for x, y in zip(v, row)]
    return v


@dataclass(frozen=True)
class HRep:
    """``{v : A v >= b}``; no rows means the whole space."""

    dim: int
    A: tuple
    b: tuple

    @property
    def rows(self):
        return list(zip(self.A, self.b))


@dataclass(frozen=True)
class VRep:
    """``conv(vertices) + cone(rays) + lin(lines)``; no vertices means empty."""

    dim: int
    vertices: tuple
    rays: tuple
    lines: tuple = ()


def _canonical_h_from_v(dim: int, vertices, rays, lines) -> HRep:
    if not vertices:
        return HRep(dim, ((Fraction(0),) * dim,), (Fraction(1),))
    eqs, ineqs = dd.v_to_h(vertices, rays, lines, dim)
    eq_rows, pivots = rref([list(a) + [beta] for a, beta in eqs], dim)
    rows = set()
    for row in eq_rows:
        a, beta = _primitive_normal(tuple(row[:dim]), row[dim])
        rows.add((a, beta))
        rows.add((tuple(-x for x in a), -beta))
    for a, beta in ineqs:
        red = _reduce(list(a) + [beta], eq_rows, pivots)
        a2 = tuple(red[:dim])
        if not any(a2):
            continue
        rows.add(_primitive_normal(a2, red[dim]))
    ordered = sorted(rows)
    return HRep(dim, tuple(a for a, _ in ordered), tuple(b for _, b in ordered))


def _canonical_v(dim: int, gens) -> VRep:
    if gens is None:
        return VRep(dim, (), (), ())
    vertices, rays, lines = gens
    lrows, pivots = rref([_vec(l) for l in lines], dim)
    out_lines = tuple(sorted(tuple(Fraction(x) for x in dd.integer_row(l))
                             for l in lrows))
    out_rays = set()
    for r in rays:
        red = _reduce(_vec(r), lrows, pivots)
        if any(red):
            out_rays.add(tuple(Fraction(x) for x in dd.integer_row(red)))
    out_vertices = {tuple(_reduce(_vec(v), lrows, pivots)) for v in vertices}
    return VRep(dim, tuple(sorted(out_vertices)), tuple(sorted(out_rays)), out_lines)


class Polyhedron:
    """An immutable convex polyhedron in ``Q^dim``."""

    __slots__ = ("dim", "_raw_h", "_raw_v", "_h", "_v", "_empty", "_lock")

    def __init__(self, dim: int, hrep: tuple | None = None, vrep: tuple | None = None):
        self.dim = dim
        self._raw_h = hrep
        self._raw_v = vrep
        self._h: HRep | None = None
        self._v: VRep | None = None
        self._empty: bool | None = None
        self._lock = threading.RLock()
        if hrep is None and vrep is None:
            raise ValueError("a polyhedron needs an H- or a V-description")

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_hrep(cls, A: Iterable[Sequence], b: Sequence, dim: int | None = None):
        A = [_vec(a) for a in A]
        b = [Fraction(x) for x in b]
        if dim is None:
            if not A:
                raise ValueError("dim is required for an empty constraint list")
            dim = len(A[0])
        if len(A) != len(b) or any(len(a) != dim for a in A):
            raise ValueError("inconsistent H-representation dimensions")
        return cls(dim, hrep=(tuple(A), tuple(b)))

    @classmethod
    def from_vrep(cls, vertices: Iterable[Sequence], rays: Iterable[Sequence] = (),
                  lines: Iterable[Sequence] = (), dim: int | None = None):
        vertices = [_vec(v) for v in vertices]
        rays = [_vec(r) for r in rays]
        lines = [_vec(l) for l in lines]
        if dim is None:
            for group in (vertices, rays, lines):
                if group:
                    dim = len(group[0])
                    break
            else:
                raise ValueError("dim is required for an empty generator list")
        if any(len(v) != dim for v in vertices + rays + lines):
            raise ValueError("inconsistent V-representation dimensions")
        if not vertices:
            rays, lines = [], []
        return cls(dim, vrep=(tuple(vertices), tuple(rays), tuple(lines)))

    @classmethod
    def empty(cls, dim: int):
        return cls.from_vrep([], dim=dim)

    @classmethod
    def whole(cls, dim: int):
        return cls.from_hrep([], [], dim=dim)

    @classmethod
    def point(cls, p: Sequence):
        return cls.from_vrep([p])

    @classmethod
    def cone(cls, rays: Iterable[Sequence], lines: Iterable[Sequence] = (), dim: int | None = None):
        rays = [_vec(r) for r in rays]
        lines = [_vec(l) for l in lines]
        if dim is None:
            dim = len((rays + lines)[0])
        return cls.from_vrep([(0,) * dim], rays, lines, dim=dim)

    @classmethod
    def box(cls, lo: Sequence, hi: Sequence):
        d = len(lo)
        A, b = [], []
        for i in range(d):
            e = [0] * d
            e[i] = 1
            A.append(e)
            b.append(lo[i])
            A.append([-x for x in e])
            b.append(-Fraction(hi[i]))
        return cls.from_hrep(A, b, dim=d)

    # -- representations ----------------------------------------------------

    @property
    def vrep(self) -> VRep:
        with self._lock:
            if self._v is None:
                # minimal generators come from the canonical inequalities
                h = self.hrep
                self._v = _canonical_v(self.dim, dd.h_to_v(h.A, h.b, self.dim)
                                       if not self._is_empty_h(h) else None)
                self._empty = not self._v.vertices
            return self._v

    @property
    def hrep(self) -> HRep:
        with self._lock:
            if self._h is None:
                if self._raw_v is not None:
                    verts, rays, lines = self._raw_v
                else:
                    A, b = self._raw_h
                    gens = dd.h_to_v(A, b, self.dim)
                    verts, rays, lines = gens if gens is not None else ((), (), ())
                self._h = _canonical_h_from_v(self.dim, verts, rays, lines)
                self._empty = not verts
            return self._h

    @staticmethod
    def _is_empty_h(h: HRep) -> bool:
        return len(h.A) == 1 and not any(h.A[0]) and h.b[0] > 0

    @property
    def is_empty(self) -> bool:
        if self._empty is None:
            self.hrep
        return self._empty

    @property
    def is_whole(self) -> bool:
        return not self.hrep.A

    def feasible_by_lp(self) -> bool:
        """Emptiness decided by phase-1 simplex on the stated H-description."""
        if self._raw_h is not None:
            A, b = self._raw_h
        else:
            A, b = self.hrep.A, self.hrep.b
        if not A:
            return True
        return lp.feasible_point(A, b) is not None

    # -- predicates ---------------------------------------------------------

    def contains_point(self, p: Sequence) -> bool:
        p = _vec(p)
        return all(dot(a, p) >= b for a, b in zip(self.hrep.A, self.hrep.b))

    def contains_poly(self, other: "Polyhedron") -> bool:
        """``other`` is a subset of ``self``."""
        self._check_dim(other)
        if other.is_empty:
            return True
        if self.is_empty:
            return False
        h = self.hrep
        v = other.vrep
        for a, b in zip(h.A, h.b):
            if any(dot(a, x) < b for x in v.vertices):
                return False
            if any(dot(a, r) < 0 for r in v.rays):
                return False
            if any(dot(a, l) != 0 for l in v.lines):
                return False
        return True

    def equal(self, other: "Polyhedron") -> bool:
        self._check_dim(other)
        return self.hrep == other.hrep

    def __eq__(self, other):
        if not isinstance(other, Polyhedron):
            return NotImplemented
        return self.dim == other.dim and self.hrep == other.hrep

    def __hash__(self):
        return hash(self.hrep)

    def __repr__(self):
        if self.is_empty:
            return f"Polyhedron(dim={self.dim}, empty)"
        rows = []
        for a, b in zip(self.hrep.A, self.hrep.b):
            rows.append(" ".join(str(x) for x in a) + " >= " + str(b))
        return f"Polyhedron(dim={self.dim}, [{'; '.join(rows)}])"

    def _check_dim(self, other):
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    # -- support ------------------------------------------------------------

    def support(self, w: Sequence) -> XReal:
        """``sup {w . v : v in self}`` by exact LP; ``-inf`` on the empty set."""
        w = _vec(w)
        if self.is_empty:
            return NEG_INF
        h = self.hrep
        return lp.maximize(w, h.A, h.b).value

    def support_vrep(self, w: Sequence) -> XReal:
        """The same value read off the generators."""
        w = _vec(w)
        v = self.vrep
        if not v.vertices:
            return NEG_INF
        if any(dot(w, l) != 0 for l in v.lines) or any(dot(w, r) > 0 for r in v.rays):
            return POS_INF
        return XReal.finite(max(dot(w, x) for x in v.vertices))

    def argmax(self, w: Sequence):
        """An LP maximizer of ``w`` (``None`` if empty or unbounded)."""
        if self.is_empty:
            return None
        res = lp.maximize(_vec(w), self.hrep.A, self.hrep.b)
        return res.x if res.optimal else None

    def interior_point(self):
        """Some point of the set, or ``None``."""
        if self.is_empty:
            return None
        return self.vrep.vertices[0]

    # -- set operations -----------------------------------------------------

    def intersect(self, other: "Polyhedron") -> "Polyhedron":
        self._check_dim(other)
        h1, h2 = self.hrep, other.hrep
        return Polyhedron.from_hrep(h1.A + h2.A, h1.b + h2.b, dim=self.dim)

    def minkowski_sum(self, other: "Polyhedron") -> "Polyhedron":
        """Closed Minkowski sum; ``P + empty = empty``."""
        self._check_dim(other)
        if self.is_empty or other.is_empty:
            return Polyhedron.empty(self.dim)
        v1, v2 = self.vrep, other.vrep
        verts = {tuple(a + b for a, b in zip(x, y)) for x in v1.vertices for y in v2.vertices}
        return Polyhedron.from_vrep(sorted(verts), v1.rays + v2.rays,
                                    v1.lines + v2.lines, dim=self.dim)

    def hull_union(self, other: "Polyhedron") -> "Polyhedron":
        """Closed convex hull of the union."""
        self._check_dim(other)
        if self.is_empty:
            return other
        if other.is_empty:
            return self
        v1, v2 = self.vrep, other.vrep
        return Polyhedron.from_vrep(v1.vertices + v2.vertices, v1.rays + v2.rays,
                                    v1.lines + v2.lines, dim=self.dim)

    def translate(self, t: Sequence) -> "Polyhedron":
        t = _vec(t)
        h = self.hrep
        return Polyhedron.from_hrep(h.A, [b + dot(a, t) for a, b in zip(h.A, h.b)], dim=self.dim)

    def product(self, other: "Polyhedron") -> "Polyhedron":
        """Cartesian product ``self x other``."""
        d1, d2 = self.dim, other.dim
        if self.is_empty or other.is_empty:
            return Polyhedron.empty(d1 + d2)
        h1, h2 = self.hrep, other.hrep
        z1, z2 = (Fraction(0),) * d2, (Fraction(0),) * d1
        A = [a + z1 for a in h1.A] + [z2 + a for a in h2.A]
        return Polyhedron.from_hrep(A, h1.b + h2.b, dim=d1 + d2)

    def image(self, M: Sequence[Sequence], shift: Sequence | None = None) -> "Polyhedron":
        """``{M v + shift : v in self}`` (``M`` has ``out x dim`` entries)."""
        M = [_vec(r) for r in M]
        out = len(M)
        if any(len(r) != self.dim for r in M):
            raise ValueError("image matrix does not match the ambient dimension")
        if self.is_empty:
            return Polyhedron.empty(out)
        s = _vec(shift) if shift is not None else (Fraction(0),) * out
        v = self.vrep

        def apply(x):
            return tuple(dot(r, x) for r in M)

        verts = sorted({tuple(a + b for a, b in zip(apply(x), s)) for x in v.vertices})
        return Polyhedron.from_vrep(verts, [apply(r) for r in v.rays],
                                    [apply(l) for l in v.lines], dim=out)

    def preimage(self, M: Sequence[Sequence], shift: Sequence | None = None) -> "Polyhedron":
        """``{u : M u + shift in self}`` by substitution into the H-description."""
        M = [_vec(r) for r in M]
        if len(M) != self.dim:
            raise ValueError("preimage matrix does not match the ambient dimension")
        indim = len(M[0]) if M else 0
        s = _vec(shift) if shift is not None else (Fraction(0),) * self.dim
        h = self.hrep
        A, b = [], []
        for a, beta in zip(h.A, h.b):
            A.append(tuple(sum((a[i] * M[i][j] for i in range(self.dim)), Fraction(0))
                           for j in range(indim)))
            b.append(beta - dot(a, s))
        return Polyhedron.from_hrep(A, b, dim=indim)

    def slice(self, fixed: dict) -> "Polyhedron":
        """Fix coordinates ``{index: value}``; the rest keep their order."""
        free = [i for i in range(self.dim) if i not in fixed]
        M = []
        shift = []
        for i in range(self.dim):
            if i in fixed:
                M.append([Fraction(0)] * len(free))
                shift.append(Fraction(fixed[i]))
            else:
                M.append([Fraction(1) if j == free.index(i) else Fraction(0)
                          for j in range(len(free))])
                shift.append(Fraction(0))
        if not free:
            return Polyhedron.whole(0) if self.contains_point(shift) else Polyhedron.empty(0)
        return self.preimage(M, shift)

    def project(self, keep: Sequence[int]) -> "Polyhedron":
        """Projection onto the coordinates ``keep`` by Fourier-Motzkin elimination."""
        keep = list(keep)
        if any(i < 0 or i >= self.dim for i in keep) or len(set(keep)) != len(keep):
            raise ValueError("bad coordinate selection")
        if self.is_empty:
            return Polyhedron.empty(len(keep))
        h = self.hrep
        rows = [(list(a), b) for a, b in zip(h.A, h.b)]
        coords = list(range(self.dim))
        for j in [i for i in range(self.dim) if i not in keep]:
            col = coords.index(j)
            rows = fourier_motzkin_step(rows, col)
            coords.pop(col)
            if rows:
                P = Polyhedron.from_hrep([a for a, _ in rows], [b for _, b in rows],
                                         dim=len(coords))
                rows = [(list(a), b) for a, b in zip(P.hrep.A, P.hrep.b)]
        order = [coords.index(i) for i in keep]
        A = [[a[k] for k in order] for a, _ in rows]
        return Polyhedron.from_hrep(A, [b for _, b in rows], dim=len(keep))

    def project_vrep(self, keep: Sequence[int]) -> "Polyhedron":
        """The same projection as a generator image."""
        keep = list(keep)
        M = [[Fraction(1) if j == i else Fraction(0) for j in range(self.dim)] for i in keep]
        return self.image(M)

    def recession_contains(self, cone: "Polyhedron") -> bool:
        """Every generator direction of ``cone`` is a recession direction."""
        self._check_dim(cone)
        if self.is_empty:
            return True
        cv = cone.vrep
        for a in self.hrep.A:
            if any(dot(a, r) < 0 for r in cv.rays):
                return False
            if any(dot(a, l) != 0 for l in cv.lines):
                return False
        return True

    def recession_cone(self) -> "Polyhedron":
        if self.is_empty:
            return Polyhedron.point((0,) * self.dim)
        h = self.hrep
        return Polyhedron.from_hrep(h.A, [0] * len(h.A), dim=self.dim)

    def lift(self, total: int, positions: Sequence[int]) -> "Polyhedron":
        """Embed as a cylinder in ``Q^total``: coordinate ``k`` of ``self`` lands
        on ``positions[k]``, the remaining coordinates are free."""
        h = self.hrep
        A = []
        for a in h.A:
            row = [Fraction(0)] * total
            for k, p in enumerate(positions):
                row[p] = a[k]
            A.append(row)
        return Polyhedron.from_hrep(A, h.b, dim=total)


def fourier_motzkin_step(rows, col):
    """Eliminate column ``col`` from rows ``(a, b)`` meaning ``a . v >= b``."""
    pos, neg, out = [], [], []
    for a, b in rows:
        c = a[col]
        rest = a[:col] + a[col + 1:]
        if c > 0:
            pos.append((rest, b, c))
        elif c < 0:
            neg.append((rest, b, c))
        else:
            out.append((rest, b))
    for ap, bp, cp in pos:
        for an, bn, cn in neg:
            # (-cn) * pos_row + cp * neg_row cancels the column
            a = [-cn * x + cp * y for x, y in zip(ap, an)]
            out.append((a, -cn * bp + cp * bn))
    return out


def polar_cone(c: Polyhedron) -> Polyhedron:
    """Negative dual cone ``{w : w . v <= 0 for all v in c}``."""
    if c.is_empty:
        return Polyhedron.whole(c.dim)
    v = c.vrep
    if any(any(x) for x in v.vertices):
        raise ValueError("polar_cone expects a cone (single vertex at the origin)")
    A = [tuple(-x for x in r) for r in v.rays]
    for l in v.lines:
        A.append(l)
        A.append(tuple(-x for x in l))
    return Polyhedron.from_hrep(A, [0] * len(A), dim=c.dim)


def cone_generators_list(c: Polyhedron):
    """Rays of a cone with each line split into two opposite rays."""
    v = c.vrep
    out = list(v.rays)
    for l in v.lines:
        out.append(l)
        out.append(tuple(-x for x in l))
    return out


def is_cone(p: Polyhedron) -> bool:
    if p.is_empty:
        return False
    return all(b == 0 for b in p.hrep.b)


def identity(n: int):
    return [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def block_matrix(rows_of_blocks):
    """Assemble a dense matrix from a grid of blocks (lists of rows)."""
    out = []
    for blocks in rows_of_blocks:
        height = len(blocks[0])
        for i in range(height):
            row = []
            for blk in blocks:
                row.extend(blk[i])
            out.append(row)
    return out


def zeros(r: int, c: int):
    return [[Fraction(0)] * c for _ in range(r)]


def transpose(M):
    if not M:
        return []
    return [list(col) for col in zip(*M)]


def matvec(M, v):
    return tuple(dot(r, v) for r in M)


def nullspace(rows, dim: int):
    """A basis of ``{w : r . w = 0 for every row r}``."""
    red, pivots = rref([_vec(r) for r in rows], dim)
    free = [j for j in range(dim) if j not in pivots]
    basis = []
    for f in free:
        w = [Fraction(0)] * dim
        w[f] = Fraction(1)
        for row, p in zip(red, pivots):
            w[p] = -row[f]
        basis.append(tuple(w))
    return basis
