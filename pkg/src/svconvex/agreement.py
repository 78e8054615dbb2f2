"""Cross-checks between the polyhedral kernel and the grid oracle.

Each check names the direction in which the oracle is certified: ``"equal"``
where the oracle is exact (scalarization at samples, residual membership at
lattice points, vertices of a polytope) and ``"lower"``/``"inner"`` where it
only bounds the kernel from one side.  On the fixtures every vertex of the
epigraph is a grid sample, so wherever the kernel conjugate is finite the
oracle's lower bound must be attained.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import instances as I
from . import oracle as O
from .polyhedra import Polyhedron
from .upperset_fn import UpperSet, residual, closure_sum, scalar_conjugate, scalarize


@dataclass
class AgreementCheck:
    fixture: str
    quantity: str
    direction: str
    at: str
    kernel: str
    oracle: str
    ok: bool

    def to_json(self):
        return dict(self.__dict__)


def _sym(v):
    return O.symbol(v)


def _conj_checks(name, g, grid, zstars, xstars):
    out = []
    for zs in zstars:
        phi_k = scalarize(g, zs)
        phi_o = O.grid_scalarize(grid, zs)
        for x, vo in phi_o.items():
            vk = _sym(phi_k.eval(x))
            out.append(AgreementCheck(name, "scalarization", "equal", f"z*={zs} x={x}",
                                      str(vk), str(vo), vk == vo))
        psi = scalar_conjugate(g, zs)
        for xs in xstars:
            vk = _sym(psi.eval(xs))
            vo = O.grid_conjugate(phi_o, xs)
            ok = O._le(vo, vk) and (vk in (O.PINF, O.NINF) or vk == vo)
            out.append(AgreementCheck(name, "scalar conjugate", "lower, attained if finite",
                                      f"z*={zs} x*={xs}", str(vk), str(vo), ok))
    return out


def _vertex_checks(name, P: Polyhedron, ws):
    out = []
    h = P.hrep
    verts_o = O.brute_vertices(h.A, h.b)
    verts_k = sorted(tuple(v) for v in P.vrep.vertices)
    out.append(AgreementCheck(name, "vertices", "equal", "all", str(verts_k), str(verts_o),
                              verts_k == verts_o))
    for w in ws:
        vk = _sym(P.support(w))
        vo = O.brute_support(h.A, h.b, w)
        out.append(AgreementCheck(name, "support", "equal", f"w={w}", str(vk), str(vo),
                                  vk == vo))
    return out


def _residual_checks(name, A: UpperSet, B_points, lo=-3, hi=3):
    sp = A.space
    B = UpperSet.generated(sp, B_points)
    R = residual(A, B)
    h = A.body.hrep
    member = O.halfspace_member(list(zip(h.A, h.b)))
    pts = list(O.lattice(lo, hi, sp.m))
    inside = set(O.grid_residual(member, [tuple(map(Fraction, p)) for p in B_points], pts))
    out = []
    for z in pts:
        z = tuple(Fraction(v) for v in z)
        k = R.body.contains_point(z)
        out.append(AgreementCheck(name, "residual membership", "equal", f"z={z}",
                                  str(k), str(z in inside), k == (z in inside)))
    S = closure_sum(A, B)
    for p in O.grid_minkowski(A.body.vrep.vertices, B_points):
        k = S.body.contains_point(p)
        out.append(AgreementCheck(name, "minkowski", "inner", f"p={p}", str(k), "True", k))
    return out


def run() -> list[AgreementCheck]:
    """All agreement checks over the built-in fixtures."""
    F = Fraction
    xstars = [(F(k, 2),) for k in range(-6, 7)]
    out = []
    out += _conj_checks("abs2", I.abs2(), I.abs2_grid(),
                        [(0, -1), (-1, 0), (-1, -1), (-1, -2)], xstars)
    out += _conj_checks("staircase", I.staircase(), I.staircase_grid(),
                        [(0, -1), (-1, 0), (-1, -1), (-2, -1)], xstars)
    graph = Polyhedron.from_vrep([(0, 0, 1), (1, 1, 0)])
    box = Polyhedron.box([0, 0, 0], [1, 2, 1])
    out += _vertex_checks("staircase graph", graph, [(1, 0, 0), (0, -1, 1), (1, 1, 1)])
    out += _vertex_checks("box", box, [(1, -1, 2), (-1, 0, 0), (0, 0, 0)])
    sp = I.orthant2()
    A = UpperSet.generated(sp, [(0, 1), (1, 0)])
    out += _residual_checks("staircase value", A, [(0, 0), (1, -1)])
    out += _residual_checks("orthant", UpperSet.generated(sp, [(0, 0)]), [(1, 2)])
    return out
