"""Command-line front end.

Every command prints a JSON report on stdout.  Exit status: 0 when every
asserted check passed, 2 when a check that must hold failed (a kernel bug),
1 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import agreement, duality, fileio
from . import instances as I
from . import oracle as O
from . import scalar_fn as sf
from . import upperset_fn as U
from . import xreal as X
from .errors import InputError, PremiseViolation, TheoremViolation
from .fileio import E_USAGE

COMMANDS = ("scalarize", "setify", "conjugate", "biconj", "residuate", "minkowski",
            "chain", "sandwich", "fr", "fundamental", "oracle", "selftest")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(E_USAGE, message)


def max_dim() -> int:
    raw = os.environ.get("SVCONVEX_MAX_DIM", "6")
    try:
        return int(raw)
    except ValueError:
        raise InputError(E_USAGE, f"SVCONVEX_MAX_DIM must be an integer, got {raw!r}") from None


# -- argument helpers ---------------------------------------------------------

def parse_vector(text: str, flag: str) -> list:
    if text.strip() == "":
        return []
    try:
        return [X.parse_rational(t) for t in text.split(",")]
    except ValueError as e:
        raise InputError(fileio.E_RAT, f"{flag}: {e}") from None


def parse_xreal(text: str, flag: str) -> X.XReal:
    if text in ("+inf", "inf", "-inf"):
        return X.xr("+inf" if text != "-inf" else "-inf")
    return X.xr(parse_vector(text, flag)[0])


def parse_matrix(text: str, rows: int, cols: int) -> list:
    """``id``, ``zero``, ``"1,0;0,1"`` or a problem file holding a linmap."""
    if text == "id":
        if rows != cols:
            raise InputError(fileio.E_DIM, f"--T id needs equal dimensions, got {rows} and {cols}")
        return [[Fraction(int(i == j)) for j in range(cols)] for i in range(rows)]
    if text == "zero":
        return [[Fraction(0)] * cols for _ in range(rows)]
    if text.endswith(".json"):
        lm = fileio.load(text, max_dim()).get("linmap")
        M = lm.matrix
    else:
        M = [parse_vector(r, "--T") for r in text.split(";")]
    if len(M) != rows or any(len(r) != cols for r in M):
        raise InputError(fileio.E_DIM, f"--T must be {rows} x {cols}")
    return M


def load_obj(path: str, kind: str, name=None):
    if ":" in path and not os.path.exists(path):
        path, name = path.rsplit(":", 1)
    return fileio.load(path, max_dim()).get(kind, name)


def _check_space(sp, vec, flag):
    try:
        return sp.check_zstar(vec)
    except ValueError as e:
        raise InputError(fileio.E_DIM if "entries" in str(e) else fileio.E_CONE,
                         f"{flag}: {e}") from None


# -- report -------------------------------------------------------------------

class Report:
    def __init__(self, command, args):
        self.doc = {"command": command,
                    "args": {k: v for k, v in sorted(vars(args).items())
                             if k not in ("command", "func", "output") and v is not None},
                    "checks": [], "result": {}}

    def check(self, name, statement, verdict, asserted=True, **extra):
        entry = {"name": name, "statement": statement, "verdict": verdict,
                 "asserted": asserted}
        entry.update(extra)
        self.doc["checks"].append(entry)

    def boolean(self, name, statement, ok, kind="equal", **extra):
        self.check(name, statement, kind if ok else "failed", **extra)

    @property
    def ok(self):
        return all(c["verdict"] != "failed" for c in self.doc["checks"] if c["asserted"])

    def finish(self):
        self.doc["ok"] = self.ok
        return self.doc


def set_json(p, emit):
    return fileio.poly_json(p, emit)


def relation(a, b) -> str:
    """Verdict for ``a`` against ``b`` as sets."""
    ab, ba = a.contains_poly(b), b.contains_poly(a)
    if ab and ba:
        return "equal"
    if ab or ba:
        return "strict"
    return "incomparable"


# -- commands -----------------------------------------------------------------

def cmd_scalarize(args, rep):
    g = load_obj(args.g, "setfn")
    zs = _check_space(g.space, parse_vector(args.zstar, "--zstar"), "--zstar")
    phi = U.scalarize(g, zs)
    rep.doc["result"]["phi_epi"] = set_json(phi.epi, args.emit)
    if args.at:
        x = parse_vector(args.at, "--at")
        v = phi.eval(x)
        rep.doc["result"]["value"] = v.to_json()
        direct = U.scalarize_set(g.eval_slice(x), zs)
        rep.boolean("value_matches_slice_support", "scalarization", direct == v)
    return rep


def cmd_setify(args, rep):
    prob = fileio.load(args.f, max_dim())
    f = prob.get("scalarfn")
    if prob.space is None:
        raise InputError(fileio.E_CONE, "setify needs a space block", "/space")
    zs = _check_space(prob.space, parse_vector(args.zstar, "--zstar"), "--zstar")
    if not any(zs):
        raise InputError(E_USAGE, "setify needs z* != 0")
    g = U.setify(f, zs, prob.space)
    rep.doc["result"]["epi"] = set_json(g.epi, args.emit)
    rep.boolean("scalarize_after_setify_is_identity", "setification",
                U.scalarize(g, zs) == f)
    return rep


def cmd_conjugate(args, rep):
    g = load_obj(args.g, "setfn")
    xs = parse_vector(args.xstar, "--xstar")
    if len(xs) != g.n:
        raise InputError(fileio.E_DIM, f"--xstar needs {g.n} entries")
    zs = _check_space(g.space, parse_vector(args.zstar, "--zstar"), "--zstar")
    r = parse_xreal(args.r, "--r")
    if any(zs):
        val = U.conjugate(g, xs, zs, r)
    else:
        val = U.conjugate_zero_direction(g, xs, r)
    rep.doc["result"]["alpha"] = val.alpha.to_json()
    rep.doc["result"]["kind"] = val.kind
    rep.doc["result"]["value"] = set_json(val.to_poly(), args.emit)
    if any(zs) and r.is_finite:
        a = U.Conaffine.make(xs, zs, r)
        hull = g.closed_convex_hull()
        again = U.conjugate(hull, xs, zs, r)
        rep.boolean("conjugate_of_hull", "conjugate_of_closed_convex_hull", again == val)
        rep.check("conaffine_is_minorant", "minorant_criterion",
                  "contained" if U.minorant_check(g.space, a, g) else "failed", asserted=False)
    return rep


def cmd_biconj(args, rep):
    g = load_obj(args.g, "setfn")
    r = U.biconjugate(g, report=True)
    rep.doc["result"]["biconjugate_epi"] = set_json(r.hull.epi, args.emit)
    rep.doc["result"]["directions"] = [[X.format_rational(v) for v in d] for d in r.directions]
    rep.boolean("hull_route_equals_conaffine_route", "biconjugation", r.agree)
    rep.boolean("biconjugate_below_g", "biconjugation", r.hull.epi.contains_poly(g.epi),
                kind="contained")
    return rep


def _two_sets(args):
    A = load_obj(args.A, "upperset")
    B = load_obj(args.B, "upperset")
    if A.space != B.space:
        raise InputError(fileio.E_CONE, "--A and --B use different ordering cones")
    return A, B


def cmd_residuate(args, rep):
    A, B = _two_sets(args)
    R = U.residual(A, B)
    rep.doc["result"]["residual"] = set_json(R.body, args.emit)
    # adjunction: B + (A (-) B) is inside A
    if not R.is_empty and not B.is_empty:
        rep.boolean("adjunction", "inf_residuation",
                    A.body.contains_poly(U.closure_sum(B, R).body), kind="contained")
    for zs in A.space.dual_rays:
        if any(zs):
            ident = U.review_identities(B, 0, zs)
            rep.boolean(f"residual_of_halfspace z*={list(map(str, zs))}", "halfspace_identities",
                        all(ident.values()))
    return rep


def cmd_minkowski(args, rep):
    A, B = _two_sets(args)
    S = U.closure_sum(A, B)
    rep.doc["result"]["sum"] = set_json(S.body, args.emit)
    for zs in A.space.dual_rays:
        lhs = S.support(zs)
        rhs = X.sup_add(A.support(zs), B.support(zs))
        rep.boolean(f"support_additive z*={list(map(str, zs))}", "minkowski_support",
                    lhs == rhs)
    return rep


def _gft(args):
    g = load_obj(args.g, "setfn")
    f = load_obj(args.f, "setfn")
    if g.space != f.space:
        raise InputError(fileio.E_CONE, "--g and --f use different ordering cones")
    T = parse_matrix(args.T, f.n, g.n)
    return g, f, T


def _triples(args, g):
    out = []
    if args.triples:
        prob = fileio.load(args.triples, max_dim())
        out += prob.triples
    if args.xstar is not None:
        out.append((parse_vector(args.xstar, "--xstar"), parse_vector(args.zstar, "--zstar"),
                    parse_xreal(args.r, "--r")))
    if not out:
        raise InputError(E_USAGE, "give --triples or --xstar/--zstar/--r")
    for xs, zs, _ in out:
        if len(xs) != g.n:
            raise InputError(fileio.E_DIM, f"x* needs {g.n} entries")
        _check_space(g.space, zs, "z*")
    return out


def cmd_chain(args, rep):
    g, f, T = _gft(args)
    S = parse_matrix(args.S, g.n, f.n) if args.S else [list(r) for r in zip(*T)] if T else []
    res = duality.set_chain_rule(g, f, T, S, _triples(args, g))
    for i, e in enumerate(res.entries):
        for k, v in e.equalities.items():
            if v == "not asserted":
                rep.check(f"{e.part}[{i}].{k}", f"chain_rule.{e.part}", relation(e.lhs, e.rhs),
                          asserted=False)
            else:
                rep.boolean(f"{e.part}[{i}].{k}", f"chain_rule.{e.part}", v)
        rep.boolean(f"{e.part}[{i}].ordering", f"chain_rule.{e.part}", e.chain_ok,
                    kind="contained")
    rep.doc["result"] = res.to_json()
    return rep


def cmd_sandwich(args, rep):
    g, f, T = _gft(args)
    zs = _check_space(g.space, parse_vector(args.zstar, "--zstar"), "--zstar")
    try:
        w = duality.sandwich(g, f, T, zs)
    except PremiseViolation as e:
        rep.check("premise", "sandwich", "failed", asserted=False, message=str(e),
                  witness={k: [str(v) for v in val] for k, val in (e.witness or {}).items()})
        raise _PremiseExit(rep) from None
    rep.boolean("lower_inclusion", "sandwich", w.lower_inclusion, kind="contained")
    rep.boolean("upper_inclusion", "sandwich", w.upper_inclusion, kind="contained")
    rep.boolean("z0_membership", "sandwich", w.z0_membership, kind="contained")
    for k, v in (w.conjugate_equalities or {}).items():
        rep.boolean(f"touching.{k}", "sandwich", v)
    rep.doc["result"] = w.to_json()
    return rep


class _PremiseExit(Exception):
    def __init__(self, rep):
        self.rep = rep


def _directions(args, space):
    if args.directions in (None, "auto"):
        return "auto"
    if args.directions.endswith(".json"):
        return fileio.load(args.directions, max_dim()).directions
    return [_check_space(space, parse_vector(d, "--directions"), "--directions")
            for d in args.directions.split(";")]


def cmd_fr(args, rep):
    g, f, T = _gft(args)
    res = duality.fenchel_rockafellar(g, f, T, _directions(args, g.space))
    for d in res.directions:
        tag = ",".join(map(str, d.zstar))
        rep.boolean(f"weak[{tag}]", "weak_duality", d.weak_ok, kind="contained")
        rep.boolean(f"sampled_dual_terms[{tag}]", "weak_duality", d.sampled_ok, kind="contained")
        if d.strong_asserted:
            rep.boolean(f"strong[{tag}]", "strong_duality", bool(d.strong_ok))
    if res.intersection_asserted:
        rep.boolean("intersection_equals_P", "strong_duality", bool(res.intersection_equals_P))
    out = res.to_json()
    out["P"] = set_json(res.P.body, args.emit)
    for d, dj in zip(res.directions, out["directions"]):
        dj["D"] = set_json(d.D.to_poly(), args.emit)
    rep.doc["result"] = out
    return rep


def cmd_fundamental(args, rep):
    h = load_obj(args.h, "setfn")
    if not 0 <= args.n <= h.n:
        raise InputError(fileio.E_DIM, f"--n must lie in [0, {h.n}]")
    xbar = parse_vector(args.xbar, "--xbar") if args.xbar else None
    res = duality.fundamental_duality(h, args.n, _directions(args, h.space), xbar)
    for i, e in enumerate(res.entries):
        if e.status == "checked":
            rep.boolean(f"entry[{i}]", "fundamental_duality", bool(e.equal))
        if e.attainment is not None:
            rep.boolean(f"attainment[{i}]", "fundamental_duality", e.attainment["consistent"])
    if res.hull_asserted:
        rep.boolean("hull", "fundamental_duality", bool(res.hull_equal))
    rep.doc["result"] = res.to_json()
    return rep


def cmd_oracle(args, rep):
    checks = agreement.run()
    for c in checks:
        rep.boolean(f"{c.fixture}: {c.quantity} @ {c.at}", "oracle_agreement", c.ok,
                    kind="equal" if c.direction == "equal" else "contained")
    demo = O.nonclosed_scalarization_demo()
    rep.boolean("nonclosed_scalarization", "oracle_example", demo.ok)
    rep.doc["result"] = {"checks": len(checks), "nonclosed": demo.to_json()}
    return rep


def cmd_selftest(args, rep):
    for name, ok in selftest(seed=args.seed, count=args.count):
        rep.boolean(name, "selftest", ok)
    return rep


def selftest(seed: int = 0, count: int = 5):
    """Invariant suite on the built-in fixtures plus a few seeded instances."""
    out = []
    grid = ["-inf", "-1", "0", "1", "+inf"]
    pairs = [(X.xr(a), X.xr(b)) for a in grid for b in grid]
    out.append(("xreal adjunction", all(
        (a <= X.inf_add(b, t)) == (X.idif(a, b) <= t)
        for a, b in pairs for t in map(X.xr, grid))))
    sp = I.orthant2()
    abs2 = I.abs2()
    out.append(("abs2 conjugate at (0, (0,-1), 0)",
                U.conjugate(abs2, [0], (0, -1), 0).to_poly()
                == U.UpperSet.generated(sp, [(0, 0)], [(1, 0), (-1, 0)]).body))
    out.append(("abs2 biconjugate", U.biconjugate(abs2) == abs2))
    out.append(("union biconjugate routes", U.biconjugate(I.two_point_union(), report=True).agree))
    fr = duality.fenchel_rockafellar(I.staircase(), I.constant_cone(), [[1]])
    out.append(("staircase strong duality", fr.ok and bool(fr.intersection_equals_P)))
    out.append(("sandwich fixture", duality.sandwich(abs2, I.linear_y(), [[1]], (0, -1)).ok))
    out.append(("fundamental fixture", duality.fundamental_duality(I.fundamental_h(), 1).ok))
    out.append(("nonclosed scalarization", O.nonclosed_scalarization_demo().ok))
    out.append(("oracle agreement", all(c.ok for c in agreement.run())))
    rng = random.Random(seed)
    for k in range(count):
        n, m = rng.randint(1, 2), rng.randint(1, 3)
        space = I.random_cone_space(rng, m)
        g = I.random_setfn(rng, n, space)
        out.append((f"random biconjugate #{k}", U.biconjugate(g, report=True).agree))
        A = I.random_upperset(rng, space)
        ident = U.review_identities(A, rng.randint(-2, 2), I.random_zstar(rng, space))
        out.append((f"random halfspace identities #{k}", all(ident.values())))
        f = I.random_setfn(rng, n, space)
        out.append((f"random weak duality #{k}",
                    duality.fenchel_rockafellar(g, f, I.random_matrix(rng, n, n)).weak_ok))
    return out


# -- entry point --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--emit", choices=("hrep", "vrep"), default="hrep",
                        help="representation of sets in the report")
    p = _Parser(prog="svconvex", description="Exact conjugate duality for polyhedral "
                "set-valued functions.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        s = sub.add_parser(name, help=help_, parents=[common])
        s.set_defaults(func=func)
        return s

    s = add("scalarize", cmd_scalarize, "scalarize a set-valued function along z*")
    s.add_argument("--g", required=True)
    s.add_argument("--zstar", required=True)
    s.add_argument("--at", help="also evaluate at this x")
    s = add("setify", cmd_setify, "turn a scalar function into a set-valued one")
    s.add_argument("--f", required=True)
    s.add_argument("--zstar", required=True)
    s = add("conjugate", cmd_conjugate, "evaluate the conjugate at (x*, z*, r)")
    s.add_argument("--g", required=True)
    s.add_argument("--xstar", required=True)
    s.add_argument("--zstar", required=True)
    s.add_argument("--r", default="0")
    s = add("biconj", cmd_biconj, "biconjugate by two independent routes")
    s.add_argument("--g", required=True)
    for name, func, help_ in (("residuate", cmd_residuate, "inf-residual A (-) B"),
                              ("minkowski", cmd_minkowski, "closed Minkowski sum A + B")):
        s = add(name, func, help_)
        s.add_argument("--A", required=True)
        s.add_argument("--B", required=True)
    s = add("chain", cmd_chain, "chain rule for conjugates")
    for flag in ("--g", "--f", "--T"):
        s.add_argument(flag, required=True)
    s.add_argument("--S", help="map for the infimal convolution part (default T^T)")
    s.add_argument("--triples", help="problem file with a triples list")
    s.add_argument("--xstar")
    s.add_argument("--zstar")
    s.add_argument("--r", default="0")
    s = add("sandwich", cmd_sandwich, "separating conaffine function")
    for flag in ("--g", "--f", "--T", "--zstar"):
        s.add_argument(flag, required=True)
    s = add("fr", cmd_fr, "Fenchel-Rockafellar duality")
    for flag in ("--g", "--f", "--T"):
        s.add_argument(flag, required=True)
    s.add_argument("--directions", default="auto",
                   help="auto, a problem file, or vectors separated by ';'")
    s = add("fundamental", cmd_fundamental, "perturbation duality for h(x, y)")
    s.add_argument("--h", required=True)
    s.add_argument("--n", type=int, required=True, help="dimension of the x block")
    s.add_argument("--directions", default="auto")
    s.add_argument("--xbar")
    add("oracle", cmd_oracle, "kernel against the brute-force grid oracle")
    s = add("selftest", cmd_selftest, "invariant suite on built-in fixtures")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=5)
    return p


def _write(doc, path):
    text = fileio.dumps(doc)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _glue_negative_values(argv):
    """``--zstar -1,0`` -> ``--zstar=-1,0`` so argparse does not read a flag."""
    out = []
    i = 0
    while i < len(argv):
        a = argv[i]
        if (a.startswith("--") and "=" not in a and i + 1 < len(argv)
                and argv[i + 1].startswith("-") and not argv[i + 1].startswith("--")
                and argv[i + 1] not in ("-", "-h")):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv=None) -> int:
    argv = _glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    output = None
    try:
        args = build_parser().parse_args(argv)
        output = args.output
        rep = Report(args.command, args)
        args.func(args, rep)
        doc = rep.finish()
        _write(doc, output)
        return 0 if rep.ok else 2
    except _PremiseExit as e:
        doc = e.rep.finish()
        doc["error"] = {"code": "E_PREMISE"}
        _write(doc, output)
        return 1
    except InputError as e:
        _write({"error": {"code": e.code, "pointer": e.pointer, "message": e.detail}}, output)
        return 1
    except TheoremViolation as e:
        _write({"error": {"code": "E_THEOREM", "message": str(e)}}, output)
        return 2


if __name__ == "__main__":
    sys.exit(main())
