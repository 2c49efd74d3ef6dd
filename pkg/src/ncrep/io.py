"""JSON schemas and (de)serialization for every exchanged type.

Rationals travel as "p/q" strings in lowest terms ("p" when q = 1); plain
JSON integers are accepted on input.  Floats and booleans are rejected.
Decoders validate against a schema first and then run the semantic checks
of the target constructor, so every failure surfaces as ValidationError.
"""
from __future__ import annotations

import json
from typing import Any, Mapping, Sequence

import jsonschema

from .errors import DimensionError, ValidationError
from .exact import Matrix, NcPolynomial, TracePolynomial, as_rational, format_rational
from .filtration import FiltrationProfile, FinDimAlgebra
from .local_structure import LocalData, SmoothnessReport
from .quiver import Arrow, Path, Quiver
from .rep_scheme import Presentation, QuiverRep, RepPoint, SemisimplePoint

RATIONAL = {
    "anyOf": [
        {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]+)?$"},
        {"type": "integer"},
    ]
}
MATRIX = {"type": "array", "items": {"type": "array", "items": RATIONAL}}
NAME = {"type": "string", "minLength": 1}
NAT = {"type": "integer", "minimum": 0}

QUIVER = {
    "type": "object",
    "required": ["vertices", "arrows"],
    "additionalProperties": False,
    "properties": {
        "vertices": NAT,
        "arrows": {"type": "array", "items": {
            "type": "object",
            "required": ["id", "source", "target"],
            "additionalProperties": False,
            "properties": {"id": NAME, "source": NAT, "target": NAT},
        }},
    },
}
PATH = {
    "anyOf": [
        {"type": "array", "items": NAME, "minItems": 1},
        {"type": "object", "required": ["vertex"], "additionalProperties": False, "properties": {"vertex": NAT}},
    ]
}
TERM = {
    "type": "object",
    "required": ["coeff", "word"],
    "additionalProperties": False,
    "properties": {"coeff": RATIONAL, "word": {"type": "array", "items": NAME}},
}
PRESENTATION = {
    "type": "object",
    "required": ["generators"],
    "additionalProperties": False,
    "properties": {
        "generators": {"type": "array", "items": NAME},
        "relations": {"type": "array", "items": {"type": "array", "items": TERM}},
    },
}
REP_POINT = {
    "type": "object",
    "required": ["n", "assignment"],
    "additionalProperties": False,
    "properties": {"n": NAT, "assignment": {"type": "object", "additionalProperties": MATRIX}},
}
QUIVER_REP = {
    "type": "object",
    "required": ["dim_vector"],
    "additionalProperties": False,
    "properties": {
        "quiver": QUIVER,
        "dim_vector": {"type": "array", "items": NAT},
        "arrow_matrices": {"type": "object", "additionalProperties": MATRIX},
    },
}
SIMPLES = {
    "type": "array",
    "minItems": 1,
    "items": {
        "type": "object",
        "required": ["rep", "multiplicity"],
        "additionalProperties": False,
        "properties": {
            "rep": {"anyOf": [REP_POINT, QUIVER_REP]},
            "multiplicity": {"type": "integer", "minimum": 1},
        },
    },
}
TRACE_POLY = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["monomial", "coeff"],
        "additionalProperties": False,
        "properties": {"monomial": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                       "coeff": RATIONAL},
    },
}
ALGEBRA = {
    "type": "object",
    "required": ["dim", "basis", "unit", "mul"],
    "additionalProperties": False,
    "properties": {
        "dim": NAT,
        "basis": {"type": "array", "items": NAME},
        "unit": {"type": "array", "items": RATIONAL},
        "mul": {"type": "array", "items": {"type": "array", "items": {"type": "array", "items": RATIONAL}}},
    },
}
LOCAL_DATA = {
    "type": "object",
    "required": ["vertices", "arrows", "alpha", "dims"],
    "additionalProperties": False,
    "properties": {
        "vertices": NAT,
        "arrows": QUIVER["properties"]["arrows"],
        "alpha": {"type": "array", "items": NAT},
        "dims": {"type": "array", "items": NAT},
    },
}

SCHEMAS = {
    "rational": RATIONAL, "matrix": MATRIX, "quiver": QUIVER, "path": PATH,
    "presentation": PRESENTATION, "rep_point": REP_POINT, "quiver_rep": QUIVER_REP,
    "simples": SIMPLES, "trace_polynomial": TRACE_POLY, "algebra": ALGEBRA, "local_data": LOCAL_DATA,
    "matrix_list": {"type": "array", "items": MATRIX},
    "rep_point_list": {"type": "array", "items": REP_POINT},
    "quiver_rep_list": {"type": "array", "items": QUIVER_REP},
}


def validate(obj: Any, schema: str) -> None:
    try:
        jsonschema.validate(obj, SCHEMAS[schema], cls=jsonschema.Draft202012Validator)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ValidationError(f"{schema} schema violation at {where}: {exc.message}") from None


def dumps(obj: Any) -> str:
    """Canonical JSON text: sorted keys, no whitespace, trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text, parse_float=_reject_float, parse_constant=_reject_float)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON: {exc.msg} at line {exc.lineno}") from None
    except RecursionError:
        raise ValidationError("JSON nesting too deep") from None


def _reject_float(token):
    raise ValidationError(f"floating-point literal {token!r} is not allowed; use \"p/q\"")


def load_file(path: str) -> Any:
    import sys
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from None
    return loads(text)


# ---------------------------------------------------------------------------
# scalars and matrices


def rational_to_json(q) -> str:
    return format_rational(q)


def rational_from_json(obj) -> Any:
    validate(obj, "rational")
    return as_rational(obj)


def matrix_to_json(m: Matrix) -> list:
    return [[format_rational(x) for x in m.row(i)] for i in range(m.rows)]


def matrix_from_json(obj, shape: tuple[int, int] | None = None) -> Matrix:
    validate(obj, "matrix")
    if not obj:
        rows, cols = (0, shape[1]) if shape else (0, 0)
        m = Matrix.zeros(rows, cols)
    else:
        m = Matrix.from_rows([[as_rational(x) for x in row] for row in obj])
    if shape is not None and m.shape != tuple(shape):
        raise DimensionError(f"expected a {shape[0]}x{shape[1]} matrix, got {m.shape[0]}x{m.shape[1]}")
    return m


def square_matrix_from_json(obj) -> Matrix:
    m = matrix_from_json(obj)
    if not m.is_square():
        raise DimensionError(f"expected a square matrix, got {m.rows}x{m.cols}")
    return m


# ---------------------------------------------------------------------------
# quivers and paths


def quiver_to_json(q: Quiver) -> dict:
    return {"vertices": q.vertex_count,
            "arrows": [{"id": a.id, "source": a.source, "target": a.target} for a in q.arrows]}


def quiver_from_json(obj) -> Quiver:
    validate(obj, "quiver")
    return Quiver(obj["vertices"], tuple(Arrow(a["id"], a["source"], a["target"]) for a in obj["arrows"]))


def path_to_json(q: Quiver, p: Path):
    if not p.arrows:
        return {"vertex": p.vertex}
    return p.ids(q)


def path_from_json(q: Quiver, obj) -> Path:
    validate(obj, "path")
    if isinstance(obj, dict):
        if obj["vertex"] >= q.vertex_count:
            raise ValidationError(f"vertex {obj['vertex']} out of range")
        return Path((), obj["vertex"])
    try:
        arrows = tuple(q.arrow_index(i) for i in obj)
    except (KeyError, ValueError) as exc:
        raise ValidationError(str(exc)) from None
    p = Path(arrows)
    if not p.is_valid(q):
        raise ValidationError(f"arrows {obj} do not compose to a path")
    return p


# ---------------------------------------------------------------------------
# polynomials


def trace_poly_to_json(tp: TracePolynomial) -> list:
    return [{"monomial": list(m), "coeff": format_rational(c)} for m, c in tp.items()]


def trace_poly_from_json(obj) -> TracePolynomial:
    validate(obj, "trace_polynomial")
    acc = TracePolynomial()
    for t in obj:
        acc = acc + TracePolynomial({tuple(t["monomial"]): as_rational(t["coeff"])})
    return acc


def nc_poly_to_json(p: NcPolynomial) -> list:
    return [{"coeff": format_rational(c), "word": p.word_names(w)} for w, c in p.items()]


def nc_poly_from_json(gens: Sequence[str], obj) -> NcPolynomial:
    known = set(gens)
    for t in obj:
        bad = [g for g in t["word"] if g not in known]
        if bad:
            raise ValidationError(f"relation uses unknown generators {sorted(set(bad))}")
    return NcPolynomial.from_words(gens, [(as_rational(t["coeff"]), t["word"]) for t in obj])


def presentation_to_json(p: Presentation) -> dict:
    return {"generators": list(p.generators), "relations": [nc_poly_to_json(r) for r in p.relations]}


def presentation_from_json(obj) -> Presentation:
    validate(obj, "presentation")
    gens = tuple(obj["generators"])
    if len(set(gens)) != len(gens):
        raise ValidationError("duplicate generator names")
    return Presentation(gens, tuple(nc_poly_from_json(gens, r) for r in obj.get("relations", [])))


# ---------------------------------------------------------------------------
# points


def rep_point_to_json(x: RepPoint) -> dict:
    return {"n": x.n, "assignment": {g: matrix_to_json(m) for g, m in x.assignment.items()}}


def rep_point_from_json(p: Presentation, obj, check: bool = True) -> RepPoint:
    validate(obj, "rep_point")
    n = obj["n"]
    mats = {g: matrix_from_json(v, (n, n)) for g, v in obj["assignment"].items()}
    return RepPoint(p, mats, n, check=check)


def quiver_rep_to_json(r: QuiverRep, with_quiver: bool = True) -> dict:
    out = {"dim_vector": list(r.dim_vector),
           "arrow_matrices": {k: matrix_to_json(m) for k, m in r.arrow_matrices.items()}}
    if with_quiver:
        out["quiver"] = quiver_to_json(r.quiver)
    return out


def quiver_rep_from_json(obj, quiver: Quiver | None = None) -> QuiverRep:
    validate(obj, "quiver_rep")
    q = quiver_from_json(obj["quiver"]) if "quiver" in obj else None
    if q is None:
        if quiver is None:
            raise ValidationError("quiver representation without a quiver")
        q = quiver
    elif quiver is not None and q != quiver:
        raise ValidationError("representation's quiver differs from the given quiver")
    alpha = q.check_dim_vector(obj["dim_vector"])
    mats = {}
    for k, v in obj.get("arrow_matrices", {}).items():
        try:
            a = q.arrows[q.arrow_index(k)]
        except (KeyError, ValueError):
            raise ValidationError(f"unknown arrow {k!r}") from None
        mats[k] = matrix_from_json(v, (alpha[a.target], alpha[a.source]))
    return QuiverRep(q, alpha, mats)


def simples_to_json(x: SemisimplePoint) -> list:
    out = []
    for s, m in x.simples:
        rep = quiver_rep_to_json(s) if isinstance(s, QuiverRep) else rep_point_to_json(s)
        out.append({"rep": rep, "multiplicity": m})
    return out


def simples_from_json(obj, presentation: Presentation | None = None,
                      quiver: Quiver | None = None) -> SemisimplePoint:
    validate(obj, "simples")
    items = []
    for entry in obj:
        rep = entry["rep"]
        if "assignment" in rep:
            if presentation is None:
                raise ValidationError("presented simples need a presentation")
            items.append((rep_point_from_json(presentation, rep), entry["multiplicity"]))
        else:
            items.append((quiver_rep_from_json(rep, quiver), entry["multiplicity"]))
    return SemisimplePoint(tuple(items))


# ---------------------------------------------------------------------------
# algebras and reports


def algebra_to_json(a: FinDimAlgebra) -> dict:
    return {"dim": a.dim, "basis": list(a.basis), "unit": [format_rational(c) for c in a.unit],
            "mul": [[[format_rational(c) for c in v] for v in row] for row in a.mul]}


def algebra_from_json(obj) -> FinDimAlgebra:
    validate(obj, "algebra")
    d = obj["dim"]
    if len(obj["basis"]) != d:
        raise DimensionError(f"basis has {len(obj['basis'])} names for dimension {d}")
    mul = obj["mul"]
    if len(mul) != d or any(len(row) != d for row in mul) or any(len(v) != d for row in mul for v in row):
        raise DimensionError(f"mul must be a {d}x{d}x{d} array")
    return FinDimAlgebra(tuple(obj["basis"]), mul, tuple(obj["unit"]))


def local_data_to_json(ld: LocalData) -> dict:
    q = quiver_to_json(ld.local_quiver)
    return {"vertices": q["vertices"], "arrows": q["arrows"], "alpha": list(ld.alpha_x),
            "dims": list(ld.simple_dims)}


def local_data_from_json(obj) -> LocalData:
    validate(obj, "local_data")
    q = quiver_from_json({"vertices": obj["vertices"], "arrows": obj["arrows"]})
    return LocalData(q, tuple(obj["alpha"]), tuple(obj["dims"]))


def smoothness_to_json(r: SmoothnessReport) -> dict:
    return {"tangent_dimension": r.tangent_dimension, "predicted_dimension": r.predicted_dimension,
            "verdict": r.verdict, "local_quiver_dimension": r.local_quiver_dimension,
            "lower_bound": r.lower_bound, "certified": r.certified}


def profile_to_json(p: FiltrationProfile) -> dict:
    return {"dims": list(p.dims), "nil_d": p.nil_d}


def matrices_from_json(obj) -> list[Matrix]:
    validate(obj, "matrix_list")
    return [matrix_from_json(m) for m in obj]


def to_plain(obj: Mapping) -> dict:
    """Round-trip through canonical text (handy for comparisons in tests)."""
    return json.loads(dumps(obj))
