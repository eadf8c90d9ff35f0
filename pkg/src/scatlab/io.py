"""JSON interchange for matrices, series, diagrams, fans and Laurent polynomials.

Rationals are always written as "p/q" strings.  Output is canonical: keys
sorted, lists in a deterministic order, two-space indent, trailing newline.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .cones import Cone
from .diagram import ScatteringDiagram, Wall
from .errors import ParseError, ScatError
from .fans import Fan
from .lattice import ExchangeMatrix, InitialData
from .series import LaurentPolynomial, TruncatedSeries, WallFunction
from .transport import ChamberFan


def rat(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rat(s) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise ParseError(f"expected a rational string, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {s!r}") from exc


def _ints(v, what="vector") -> list[int]:
    if not isinstance(v, list) or any(isinstance(x, bool) or not isinstance(x, int) for x in v):
        raise ParseError(f"{what} must be a list of integers")
    return list(v)


def _field(doc, key):
    if not isinstance(doc, dict) or key not in doc:
        raise ParseError(f"missing field {key!r}")
    return doc[key]


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


# matrices ---------------------------------------------------------------------------


def matrix_to_doc(B) -> dict:
    B = InitialData.of(B).exchange
    return {"n_uf": B.n_uf, "n_total": B.n_total, "rows": [list(r) for r in B.rows]}


def matrix_from_doc(doc) -> ExchangeMatrix:
    rows = _field(doc, "rows")
    if not isinstance(rows, list):
        raise ParseError("rows must be a list")
    rows = [_ints(r, "matrix row") for r in rows]
    n_uf, n_total = _field(doc, "n_uf"), _field(doc, "n_total")
    try:
        return ExchangeMatrix(n_uf, n_total, tuple(tuple(r) for r in rows))
    except (ValueError, TypeError, ScatError) as exc:
        raise ParseError(f"bad exchange matrix: {exc}") from exc


# series -----------------------------------------------------------------------------


def series_to_doc(s: TruncatedSeries) -> dict:
    terms = []
    for e, c in s.sorted_terms():
        c = Fraction(c)
        terms.append({"exp": list(e), "num": str(c.numerator), "den": str(c.denominator)})
    return {"nvars": s.nvars, "order": s.order, "terms": terms}


def series_from_doc(doc) -> TruncatedSeries:
    order = _field(doc, "order")
    terms = {}
    for t in _field(doc, "terms"):
        e = tuple(_ints(_field(t, "exp"), "exponent"))
        try:
            c = Fraction(int(_field(t, "num")), int(_field(t, "den")))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError("bad series coefficient") from exc
        terms[e] = terms.get(e, 0) + c
    nvars = doc.get("nvars")
    if nvars is None:
        if not terms:
            raise ParseError("cannot infer the number of variables of an empty series")
        nvars = len(next(iter(terms)))
    return TruncatedSeries(nvars, order, terms)


# diagrams ---------------------------------------------------------------------------


def _gens_doc(cone: Cone) -> list:
    return [[rat(x) for x in g] for g in cone.generators]


def _cone_from(gens, dim) -> Cone:
    if not isinstance(gens, list):
        raise ParseError("generators must be a list")
    vecs = []
    for g in gens:
        if not isinstance(g, list) or len(g) != dim:
            raise ParseError(f"generator {g!r} has the wrong length")
        vecs.append(tuple(parse_rat(x) for x in g))
    return Cone.from_generators(vecs, dim)


def diagram_to_doc(D: ScatteringDiagram) -> dict:
    walls = []
    for w in D.walls:
        coeffs = list(w.fn.coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        walls.append({"normal": list(w.normal), "cone": {"generators": _gens_doc(w.cone)},
                      "coeffs": [rat(c) for c in coeffs]})
    return {"order": D.order, "matrix": matrix_to_doc(D.data.exchange), "walls": walls}


def diagram_from_doc(doc) -> ScatteringDiagram:
    data = InitialData.of(matrix_from_doc(_field(doc, "matrix")))
    order = _field(doc, "order")
    if isinstance(order, bool) or not isinstance(order, int) or order < 0:
        raise ParseError("order must be a nonnegative integer")
    walls = []
    for w in _field(doc, "walls"):
        normal = _ints(_field(w, "normal"), "normal")
        cone = _cone_from(_field(_field(w, "cone"), "generators"), data.n_uf)
        coeffs = [parse_rat(c) for c in _field(w, "coeffs")]
        try:
            walls.append(Wall(cone, WallFunction(normal, coeffs, order)))
        except ValueError as exc:
            raise ParseError(f"bad wall: {exc}") from exc
    try:
        return ScatteringDiagram(data, order, walls)
    except ValueError as exc:
        raise ParseError(f"bad diagram: {exc}") from exc


# fans -------------------------------------------------------------------------------


def chamber_fan_to_doc(fan: ChamberFan) -> list:
    out = []
    for c in fan.chambers:
        out.append({"sequence": list(c.sequence), "generators": _gens_doc(c.cone),
                    "facet_normals": sorted(list(n) for n in c.facet_normals)})
    return out


def chamber_fan_from_doc(doc) -> list:
    """Validated, normalized chamber list (sequence, cone, facet normals)."""
    if not isinstance(doc, list):
        raise ParseError("a chamber fan is a list of chambers")
    out = []
    for c in doc:
        seq = tuple(_ints(_field(c, "sequence"), "sequence"))
        gens = _field(c, "generators")
        dim = len(gens[0]) if gens else 0
        cone = _cone_from(gens, dim)
        normals = tuple(tuple(_ints(n, "facet normal")) for n in _field(c, "facet_normals"))
        out.append((seq, cone, normals))
    return out


def _chambers_doc(chambers) -> list:
    return [{"sequence": list(s), "generators": _gens_doc(c), "facet_normals": sorted(list(n) for n in ns)}
            for s, c, ns in chambers]


def fan_to_doc(fan: Fan) -> dict:
    doc = {"dim": fan.dim, "cones": [{"generators": _gens_doc(c)} for c in fan.cones],
           "edges": [list(e) for e in fan.face_edges()]}
    if fan.stable is not None:
        doc["stable"] = fan.stable
    if fan.depth is not None:
        doc["depth"] = fan.depth
    return doc


def fan_from_doc(doc) -> Fan:
    dim = _field(doc, "dim")
    cones = [_cone_from(_field(c, "generators"), dim) for c in _field(doc, "cones")]
    return Fan(dim, cones, stable=doc.get("stable"), depth=doc.get("depth"))


# Laurent polynomials ----------------------------------------------------------------


def laurent_to_doc(p: LaurentPolynomial) -> list:
    return [{"exp": list(e), "coeff": rat(c)} for e, c in p.sorted_terms()]


def laurent_from_doc(doc) -> LaurentPolynomial:
    if not isinstance(doc, list):
        raise ParseError("a Laurent polynomial is a list of terms")
    terms = {}
    for t in doc:
        e = tuple(_ints(_field(t, "exp"), "exponent"))
        terms[e] = terms.get(e, 0) + parse_rat(_field(t, "coeff"))
    return LaurentPolynomial(terms)


# files and round trips --------------------------------------------------------------


def kind_of(doc) -> str:
    if isinstance(doc, dict):
        if "walls" in doc:
            return "diagram"
        if "rows" in doc:
            return "matrix"
        if "cones" in doc:
            return "fan"
        if "terms" in doc:
            return "series"
    if isinstance(doc, list):
        if not doc:
            return "laurent"
        if isinstance(doc[0], dict) and "sequence" in doc[0]:
            return "chambers"
        if isinstance(doc[0], dict) and "exp" in doc[0]:
            return "laurent"
    raise ParseError("unrecognized interchange document")


_PARSE = {"matrix": matrix_from_doc, "series": series_from_doc, "diagram": diagram_from_doc,
          "fan": fan_from_doc, "laurent": laurent_from_doc, "chambers": chamber_fan_from_doc}
_EMIT = {"matrix": matrix_to_doc, "series": series_to_doc, "diagram": diagram_to_doc,
         "fan": fan_to_doc, "laurent": laurent_to_doc, "chambers": _chambers_doc}


def parse(text: str):
    """Parse any interchange document, returning (kind, object)."""
    doc = loads(text)
    kind = kind_of(doc)
    return kind, _PARSE[kind](doc)


def serialize(kind: str, obj) -> str:
    return dumps(_EMIT[kind](obj))


def normalize(text: str) -> str:
    kind, obj = parse(text)
    return serialize(kind, obj)


def roundtrip_text(text: str) -> bool:
    """parse, serialize, parse, serialize: the two serializations agree byte for byte."""
    once = normalize(text)
    return normalize(once) == once


def roundtrip(path) -> bool:
    return roundtrip_text(Path(path).read_text())


def read_matrix(path) -> ExchangeMatrix:
    return matrix_from_doc(loads(Path(path).read_text()))


def read_diagram(path) -> ScatteringDiagram:
    return diagram_from_doc(loads(Path(path).read_text()))


def write_text(path, text: str) -> None:
    Path(path).write_text(text)
