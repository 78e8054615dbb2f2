"""Double description method in integer arithmetic.

``cone_generators`` converts ``{y : M y >= 0}`` into a lineality basis plus the
extreme rays of the pointed part.  Lines are eliminated first (a constraint that
is not orthogonal to some remaining line consumes that line and turns it into a
ray); otherwise rays are combined pairwise across the hyperplane, restricted to
adjacent pairs by the combinatorial test on tight-constraint sets.  Everything
is kept as primitive integer vectors.

``h_to_v`` and ``v_to_h`` lift this to polyhedra through homogenization.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence


def primitive(v: Sequence[int]) -> tuple:
    g = 0
    for a in v:
        if a:
            g = gcd(g, a)
    if g > 1:
        return tuple(a // g for a in v)
    return tuple(v)


def integer_row(v: Sequence) -> tuple:
    """Scale a rational vector by a positive factor to a primitive integer one."""
    if all(type(a) is int for a in v):
        return primitive(tuple(v))
    den = 1
    for a in v:
        q = a.denominator  # ints and Fractions both carry one
        if q != 1:
            den = den * q // gcd(den, q)
    if den == 1:
        return primitive(tuple(int(a) for a in v))
    return primitive(tuple(a.numerator * (den // a.denominator) for a in v))


def _dot(m, v):
    return sum(a * b for a, b in zip(m, v) if a)


def cone_generators(rows: Sequence[Sequence[int]], dim: int):
    """Return ``(lines, rays)`` with ``{y : r . y >= 0 for r in rows}`` equal to
    ``lin(lines) + cone(rays)`` and ``rays`` the extreme rays modulo lines."""
    lines = [tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)]
    rays: list[tuple[tuple, int]] = []
    for idx, m in enumerate(rows):
        m = tuple(m)
        if not any(m):
            continue
        bit = 1 << idx
        piv = next((i for i, l in enumerate(lines) if _dot(m, l) != 0), None)
        if piv is not None:
            l = lines.pop(piv)
            ml = _dot(m, l)
            if ml < 0:
                l = tuple(-a for a in l)
                ml = -ml
            new_lines = []
            for l2 in lines:
                v = _dot(m, l2)
                if v:
                    l2 = primitive(tuple(ml * a - v * b for a, b in zip(l2, l)))
                new_lines.append(l2)
            lines = new_lines
            new_rays = []
            for r, z in rays:
                v = _dot(m, r)
                if v:
                    r = primitive(tuple(ml * a - v * b for a, b in zip(r, l)))
                new_rays.append((r, z | bit))
            new_rays.append((l, bit - 1))
            rays = new_rays
            continue

        pos, neg, out = [], [], []
        for r, z in rays:
            v = _dot(m, r)
            if v > 0:
                pos.append((r, z, v))
                out.append((r, z))
            elif v < 0:
                neg.append((r, z, v))
            else:
                out.append((r, z | bit))
        if pos and neg:
            need = dim - len(lines) - 2
            masks = [z for _, z in rays]
            for p, zp, vp in pos:
                for n, zn, vn in neg:
                    inter = zp & zn
                    if inter.bit_count() < need:
                        continue
                    adjacent = True
                    for zr in masks:
                        if zr != zp and zr != zn and (zr & inter) == inter:
                            adjacent = False
                            break
                    if adjacent:
                        vec = primitive(tuple(vp * a - vn * b for a, b in zip(n, p)))
                        out.append((vec, inter | bit))
        rays = out
    seen = set()
    uniq = []
    for r, _ in rays:
        if r not in seen and any(r):
            seen.add(r)
            uniq.append(r)
    return lines, uniq


def h_to_v(A: Sequence[Sequence], b: Sequence, dim: int):
    """Generators of ``{x : A x >= b}``; ``None`` when the set is empty.

    Returns ``(vertices, rays, lines)`` with rational vertices and primitive
    integer rays/lines.
    """
    rows = [tuple([0] * dim + [1])]
    for a, bi in zip(A, b):
        rows.append(integer_row(list(a) + [-Fraction(bi)]))
    lines, rays = cone_generators(rows, dim + 1)
    vertices = []
    out_rays = []
    for r in rays:
        t = r[-1]
        if t > 0:
            vertices.append(tuple(Fraction(a, t) for a in r[:-1]))
        else:
            out_rays.append(primitive(r[:-1]))
    if not vertices:
        return None
    out_lines = [primitive(l[:-1]) for l in lines]
    return vertices, out_rays, out_lines


def v_to_h(vertices, rays, lines, dim: int):
    """Facets and equations of ``conv(vertices) + cone(rays) + lin(lines)``.

    Returns ``(equalities, inequalities)`` as lists of ``(a, beta)`` meaning
    ``a . x = beta`` and ``a . x >= beta``; ``vertices`` must be nonempty.
    """
    rows = []
    for v in vertices:
        rows.append(integer_row(list(v) + [-1]))
    for r in rays:
        rows.append(integer_row(list(r) + [0]))
    for l in lines:
        row = integer_row(list(l) + [0])
        rows.append(row)
        rows.append(tuple(-a for a in row))
    q_lines, q_rays = cone_generators(rows, dim + 1)
    eqs = [(tuple(Fraction(a) for a in l[:-1]), Fraction(l[-1])) for l in q_lines]
    ineqs = []
    for r in q_rays:
        if any(r[:-1]):
            ineqs.append((tuple(Fraction(a) for a in r[:-1]), Fraction(r[-1])))
    return eqs, ineqs
