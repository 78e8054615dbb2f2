"""Problem and report files.

A problem file is JSON with exact rationals written as strings::

    {"version": 1,
     "space": {"m": 2, "cone_rays": [["1", "0"], ["0", "1"]]},
     "objects": {"g": {"kind": "setfn", "n": 1,
                       "epi": {"dim": 3, "A": [...], "b": [...]}}},
     "triples": [{"xstar": ["0"], "zstar": ["0", "-1"], "r": "0"}]}

Polyhedra are given either as ``{"dim", "A", "b"}`` meaning ``A v >= b`` or
as ``{"dim", "vertices", "rays", "lines"}``.  A set-valued function may give
its ``graph`` instead of its ``epi``; the graph is lifted by ``{0} x C``.

:func:`emit` always writes the canonical H-representation, so a file produced
by :func:`emit` parses and re-emits to the same bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

import jsonschema

from .errors import InputError
from .polyhedra import Polyhedron
from .scalar_fn import ScalarFn
from .upperset_fn import OrderedSpace, SetFn, UpperSet
from .xreal import XReal, format_rational, parse_rational, xr

E_RAT = "E_RAT"
E_CONE = "E_CONE"
E_DIM = "E_DIM"
E_SCHEMA = "E_SCHEMA"
E_JSON = "E_JSON"
E_USAGE = "E_USAGE"


def schema() -> dict:
    text = resources.files("svconvex").joinpath("data/schema-v1.json").read_text("utf-8")
    return json.loads(text)


def _pointer(path) -> str:
    return "".join(f"/{p}" for p in path)


@dataclass
class LinMap:
    rows: int
    cols: int
    matrix: list


@dataclass
class Problem:
    space: OrderedSpace | None
    objects: dict
    triples: list = field(default_factory=list)
    directions: list = field(default_factory=list)

    def get(self, kind: str, name: str | None = None):
        """The object called ``name``, or the only object of ``kind``."""
        if name is not None:
            obj = self.objects.get(name)
            if obj is None:
                raise InputError(E_USAGE, f"no object named {name!r}", "/objects")
            return obj
        found = [o for o in self.objects.values() if _kind(o) == kind]
        if len(found) != 1:
            raise InputError(E_USAGE, f"expected exactly one {kind}, found {len(found)}",
                             "/objects")
        return found[0]


def _kind(o) -> str:
    if isinstance(o, SetFn):
        return "setfn"
    if isinstance(o, ScalarFn):
        return "scalarfn"
    if isinstance(o, UpperSet):
        return "upperset"
    return "linmap"


# -- parsing ----------------------------------------------------------------

def _rat(s, path) -> Fraction:
    try:
        return parse_rational(s)
    except ValueError as e:
        raise InputError(E_RAT, str(e), _pointer(path)) from None


def _xreal(s, path) -> XReal:
    if s in ("+inf", "-inf"):
        return xr(s)
    return xr(_rat(s, path))


def _vector(v, path, dim=None):
    if dim is not None and len(v) != dim:
        raise InputError(E_DIM, f"expected {dim} entries, got {len(v)}", _pointer(path))
    return [_rat(s, path + [i]) for i, s in enumerate(v)]


def _matrix(rows, path, dim):
    return [_vector(r, path + [i], dim) for i, r in enumerate(rows)]


def _body(d, path) -> Polyhedron:
    dim = d["dim"]
    if "A" in d:
        A = _matrix(d["A"], path + ["A"], dim)
        if len(d["b"]) != len(A):
            raise InputError(E_DIM, "A and b have different lengths", _pointer(path + ["b"]))
        b = _vector(d["b"], path + ["b"])
        return Polyhedron.from_hrep(A, b, dim=dim)
    return Polyhedron.from_vrep(_matrix(d["vertices"], path + ["vertices"], dim),
                                _matrix(d.get("rays", []), path + ["rays"], dim),
                                _matrix(d.get("lines", []), path + ["lines"], dim), dim=dim)


def _space(d, path) -> OrderedSpace:
    m = d["m"]
    rays = _matrix(d["cone_rays"], path + ["cone_rays"], m)
    lines = _matrix(d.get("cone_lines", []), path + ["cone_lines"], m)
    try:
        return OrderedSpace(m, rays, lines)
    except ValueError as e:
        raise InputError(E_CONE, str(e), _pointer(path)) from None


def _object(d, path, space, max_dim):
    kind = d["kind"]
    if kind == "linmap":
        M = _matrix(d["matrix"], path + ["matrix"], d["cols"])
        if len(M) != d["rows"]:
            raise InputError(E_DIM, f"expected {d['rows']} rows", _pointer(path + ["matrix"]))
        return LinMap(d["rows"], d["cols"], M)
    if kind == "scalarfn":
        body = _body(d["epi"], path + ["epi"])
        if body.dim != d["n"] + 1:
            raise InputError(E_DIM, "epi must live in n + 1 dimensions", _pointer(path + ["epi"]))
        try:
            return ScalarFn(d["n"], body)
        except ValueError as e:
            raise InputError(E_SCHEMA, str(e), _pointer(path + ["epi"])) from None
    if space is None:
        raise InputError(E_CONE, "set-valued objects need a space block with a cone", "/space")
    if kind == "upperset":
        body = _body(d["body"], path + ["body"])
        if body.dim != space.m:
            raise InputError(E_DIM, f"body must live in {space.m} dimensions",
                             _pointer(path + ["body"]))
        try:
            return UpperSet(space, body)
        except ValueError as e:
            raise InputError(E_SCHEMA, str(e), _pointer(path + ["body"])) from None
    n = d["n"]
    if n + space.m > max_dim:
        raise InputError(E_DIM, f"ambient dimension {n + space.m} exceeds the cap {max_dim}",
                         _pointer(path))
    key = "epi" if "epi" in d else "graph"
    body = _body(d[key], path + [key])
    if body.dim != n + space.m:
        raise InputError(E_DIM, f"{key} must live in n + m = {n + space.m} dimensions",
                         _pointer(path + [key]))
    if key == "graph":
        return SetFn.from_graph(n, space, body)
    try:
        return SetFn(n, space, body)
    except ValueError as e:
        raise InputError(E_SCHEMA, str(e), _pointer(path + ["epi"])) from None


def validate(doc) -> None:
    """Schema validation; the first error is reported with its JSON pointer."""
    validator = jsonschema.Draft202012Validator(schema())
    e = jsonschema.exceptions.best_match(validator.iter_errors(doc))
    if e is None:
        return
    # descend into oneOf/anyOf branches to the most specific location
    while e.context:
        e = max(e.context, key=lambda c: len(c.absolute_path))
    raise InputError(E_SCHEMA, e.message, _pointer(e.absolute_path))


def parse_doc(doc, max_dim: int = 6) -> Problem:
    validate(doc)
    space = _space(doc["space"], ["space"]) if "space" in doc else None
    objects = {name: _object(d, ["objects", name], space, max_dim)
               for name, d in doc["objects"].items()}
    triples = []
    for i, t in enumerate(doc.get("triples", [])):
        p = ["triples", i]
        zdim = space.m if space is not None else None
        triples.append((_vector(t["xstar"], p + ["xstar"]),
                        _vector(t["zstar"], p + ["zstar"], zdim),
                        _xreal(t["r"], p + ["r"])))
    directions = [_vector(v, ["directions", i], space.m if space else None)
                  for i, v in enumerate(doc.get("directions", []))]
    return Problem(space, objects, triples, directions)


def parse(text: str, max_dim: int = 6) -> Problem:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(E_JSON, f"invalid JSON: {e.msg} (line {e.lineno})") from None
    return parse_doc(doc, max_dim)


def load(path, max_dim: int = 6) -> Problem:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise InputError(E_USAGE, f"cannot read {path}: {e.strerror}") from None
    return parse(text, max_dim)


# -- emitting ---------------------------------------------------------------

def _fmt_vec(v):
    return [format_rational(x) for x in v]


def hrep_json(p: Polyhedron) -> dict:
    h = p.hrep
    return {"dim": p.dim, "A": [_fmt_vec(a) for a in h.A], "b": _fmt_vec(h.b)}


def vrep_json(p: Polyhedron) -> dict:
    v = p.vrep
    if v is None:
        return {"dim": p.dim, "vertices": [], "rays": [], "lines": []}
    return {"dim": p.dim, "vertices": [_fmt_vec(x) for x in v.vertices],
            "rays": [_fmt_vec(x) for x in v.rays], "lines": [_fmt_vec(x) for x in v.lines]}


def poly_json(p: Polyhedron, emit: str = "hrep") -> dict:
    return vrep_json(p) if emit == "vrep" else hrep_json(p)


def space_json(space: OrderedSpace) -> dict:
    v = space.C.vrep
    out = {"m": space.m, "cone_rays": [_fmt_vec(r) for r in v.rays]}
    if v.lines:
        out["cone_lines"] = [_fmt_vec(r) for r in v.lines]
    return out


def object_json(o, emit: str = "hrep") -> dict:
    if isinstance(o, SetFn):
        return {"kind": "setfn", "n": o.n, "epi": poly_json(o.epi, emit)}
    if isinstance(o, ScalarFn):
        return {"kind": "scalarfn", "n": o.n, "epi": poly_json(o.epi, emit)}
    if isinstance(o, UpperSet):
        return {"kind": "upperset", "body": poly_json(o.body, emit)}
    return {"kind": "linmap", "rows": o.rows, "cols": o.cols,
            "matrix": [_fmt_vec(r) for r in o.matrix]}


def problem_json(prob: Problem, emit: str = "hrep") -> dict:
    out = {"version": 1}
    if prob.space is not None:
        out["space"] = space_json(prob.space)
    out["objects"] = {k: object_json(v, emit) for k, v in prob.objects.items()}
    if prob.triples:
        out["triples"] = [{"xstar": _fmt_vec(x), "zstar": _fmt_vec(z), "r": r.to_json()}
                          for x, z, r in prob.triples]
    if prob.directions:
        out["directions"] = [_fmt_vec(d) for d in prob.directions]
    return out


def _render(v, indent: int) -> str:
    pad = " " * indent
    inner = " " * (indent + 2)
    if isinstance(v, dict):
        if not v:
            return "{}"
        items = [f"{inner}{json.dumps(k)}: {_render(x, indent + 2)}" for k, x in v.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(v, list):
        if all(not isinstance(x, (dict, list)) for x in v):
            return json.dumps(v, ensure_ascii=False)
        return "[\n" + ",\n".join(inner + _render(x, indent + 2) for x in v) + "\n" + pad + "]"
    return json.dumps(v, ensure_ascii=False, default=str)


def dumps(doc) -> str:
    """Indented JSON with flat lists (vectors) kept on one line."""
    return _render(doc, 0) + "\n"


def emit(prob: Problem, emit: str = "hrep") -> str:
    return dumps(problem_json(prob, emit))


def single(obj, space=None, name="g") -> str:
    """A problem file holding one object."""
    if space is None and isinstance(obj, (SetFn, UpperSet)):
        space = obj.space
    return emit(Problem(space, {name: obj}))
