"""JSON documents for algebras and relational structures, plus text renderers."""
from __future__ import annotations

import json

import jsonschema

from .algebra import AlgebraError, FiniteAlgebra, Signature, parse_term
from .relational import (
    SCHEMES,
    IdentityScheme,
    RelationalStructure,
    hasse_cover_edges,
    make_poset,
    order_of,
    validate_structure,
)


class DocumentError(AlgebraError):
    """Input text that is not a valid document."""


_SIGNATURE = {
    "type": "array", "minItems": 1,
    "items": {"type": "object", "required": ["name", "arity"], "additionalProperties": False,
              "properties": {"name": {"type": "string", "minLength": 1},
                             "arity": {"type": "integer", "minimum": 0}}},
}
_LABELS = {"type": "array", "items": {"type": "string"}}
_SCHEMA = {
    "algebra": {
        "type": "object", "required": ["kind", "signature", "size", "tables"],
        "additionalProperties": False,
        "properties": {"kind": {"const": "algebra"}, "signature": _SIGNATURE,
                       "size": {"type": "integer", "minimum": 1}, "labels": _LABELS,
                       "tables": {"type": "object"}},
    },
    "relational": {
        "type": "object", "required": ["kind", "size", "scheme", "tuples"],
        "additionalProperties": False,
        "properties": {
            "kind": {"const": "relational"},
            "size": {"type": "integer", "minimum": 1},
            "labels": _LABELS,
            "tuples": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
            "scheme": {"oneOf": [
                {"type": "string"},
                {"type": "object", "required": ["arity", "base-signature", "identities"],
                 "additionalProperties": False,
                 "properties": {
                     "name": {"type": "string"},
                     "arity": {"type": "integer", "minimum": 1},
                     "base-signature": _SIGNATURE,
                     "identities": {"type": "array", "minItems": 1, "items": {
                         "type": "object", "required": ["lhs", "rhs"], "additionalProperties": False,
                         "properties": {"lhs": {"type": "string"}, "rhs": {"type": "string"}}}}}},
            ]},
        },
    },
    "poset-shorthand": {
        "type": "object", "required": ["kind", "elements", "covers"], "additionalProperties": False,
        "properties": {
            "kind": {"const": "poset-shorthand"},
            "elements": {"type": "array", "minItems": 1, "items": {"type": "string"}},
            "covers": {"type": "array", "items": {
                "type": "array", "minItems": 2, "maxItems": 2, "items": {"type": "string"}}},
        },
    },
}


def _validate(doc, kind):
    try:
        jsonschema.validate(doc, _SCHEMA[kind])
    except jsonschema.ValidationError as e:
        where = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise DocumentError(f"schema violation at {where}: {e.message}") from None


def _scheme_from_json(data) -> IdentityScheme:
    if isinstance(data, str):
        if data not in SCHEMES:
            raise DocumentError(f"unknown scheme {data!r}; expected one of {sorted(SCHEMES)}")
        return SCHEMES[data]
    pairs = tuple((parse_term(p["lhs"]), parse_term(p["rhs"])) for p in data["identities"])
    return IdentityScheme(Signature.from_json(data["base-signature"]), data["arity"], pairs,
                          data.get("name"))


def _scheme_to_json(scheme: IdentityScheme):
    if scheme.name in SCHEMES and SCHEMES[scheme.name] == scheme:
        return scheme.name
    out = {"arity": scheme.arity, "base-signature": scheme.signature.to_json(),
           "identities": [{"lhs": str(t), "rhs": str(s)} for t, s in scheme.pairs]}
    if scheme.name is not None:
        out = {"name": scheme.name, **out}
    return out


def from_document(doc):
    if not isinstance(doc, dict) or doc.get("kind") not in _SCHEMA:
        raise DocumentError(f"document kind must be one of {sorted(_SCHEMA)}")
    kind = doc["kind"]
    _validate(doc, kind)
    try:
        if kind == "algebra":
            return FiniteAlgebra(Signature.from_json(doc["signature"]), doc["size"],
                                 doc["tables"], doc.get("labels"))
        if kind == "relational":
            return RelationalStructure(doc["size"], _scheme_from_json(doc["scheme"]),
                                       [tuple(t) for t in doc["tuples"]], doc.get("labels"))
        names = doc["elements"]
        if len(set(names)) != len(names):
            raise DocumentError("duplicate element names")
        index = {s: i for i, s in enumerate(names)}
        missing = [s for pair in doc["covers"] for s in pair if s not in index]
        if missing:
            raise DocumentError(f"cover mentions unknown element {missing[0]!r}")
        return make_poset(len(names), [(index[lo], index[hi]) for lo, hi in doc["covers"]], names)
    except DocumentError:
        raise
    except (AlgebraError, TypeError, IndexError, KeyError) as e:
        raise DocumentError(f"invalid {kind} document: {e}") from None


def parse_document(text: str):
    """Parse and validate a JSON document into an algebra or relational structure."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"syntax error at line {e.lineno}, column {e.colno}: {e.msg}") from None
    return from_document(doc)


def to_document(obj) -> dict:
    if isinstance(obj, FiniteAlgebra):
        doc = {"kind": "algebra", "signature": obj.signature.to_json(), "size": obj.size}
        if obj.labels is not None:
            doc["labels"] = list(obj.labels)
        doc["tables"] = obj.tables_as_lists()
        return doc
    if isinstance(obj, RelationalStructure):
        doc = {"kind": "relational", "size": obj.size, "scheme": _scheme_to_json(obj.scheme)}
        if obj.labels is not None:
            doc["labels"] = list(obj.labels)
        doc["tuples"] = [list(t) for t in obj.tuples]
        return doc
    raise AlgebraError(f"cannot serialise {type(obj).__name__}")


def _dump(value) -> str:
    return json.dumps(value, ensure_ascii=False, separators=(", ", ": "))


def render_json(obj) -> str:
    doc = to_document(obj)
    lines = []
    for key, value in doc.items():
        if isinstance(value, dict) and key == "tables":
            inner = [f'    {_dump(k)}: {_dump(v)}' for k, v in value.items()]
            lines.append(f'  "tables": {{\n' + ",\n".join(inner) + "\n  }")
        else:
            lines.append(f"  {_dump(key)}: {_dump(value)}")
    return "{\n" + ",\n".join(lines) + "\n}\n"


# ---------------------------------------------------------------------------
# DOT


def _node_lines(obj, annotate):
    out = []
    for e in range(obj.size):
        label = obj.label(e)
        if annotate and e in annotate:
            label = f"{label} {annotate[e]}"
        out.append(f"  n{e} [label={json.dumps(label, ensure_ascii=False)}];")
    return out


def render_dot(obj, annotate: dict | None = None) -> str:
    """Hasse diagram (edges lower -> upper) for orders, undirected edges for graphs."""
    if isinstance(obj, FiniteAlgebra):
        try:
            obj = order_of(obj)
        except AlgebraError:
            raise AlgebraError("dot output needs an algebra with an underlying order") from None
    if not isinstance(obj, RelationalStructure) or obj.scheme.arity != 2:
        raise AlgebraError("dot output needs a poset, a graph or an ordered algebra")
    if validate_structure(obj, "poset"):
        lines = ["digraph {", "  rankdir=BT;", "  node [shape=plaintext];"]
        lines += _node_lines(obj, annotate)
        lines += [f"  n{a} -> n{b};" for a, b in hasse_cover_edges(obj)]
    elif validate_structure(obj, "graph", irreflexive=True):
        lines = ["graph {", "  node [shape=circle];"]
        lines += _node_lines(obj, annotate)
        lines += [f"  n{a} -- n{b};" for a, b in obj.tuples if a < b]
    else:
        raise AlgebraError("dot output needs a poset or a loop-free symmetric relation")
    return "\n".join(lines + ["}"]) + "\n"


# ---------------------------------------------------------------------------
# Tables

_GLYPH = {"mul": "·", "meet": "∧", "join": "∨"}


def _grid(corner, cols, rows):
    w = max(len(s) for s in [corner, *cols, *(r for r, _ in rows), *(c for _, cs in rows for c in cs)])
    head = corner.rjust(w) + " | " + " ".join(c.rjust(w) for c in cols)
    out = [head, "-" * (w + 1) + "+" + "-" * (len(head) - w - 2)]
    out += [r.rjust(w) + " | " + " ".join(c.rjust(w) for c in cs) for r, cs in rows]
    return out


def render_table(obj) -> str:
    if isinstance(obj, FiniteAlgebra):
        names = [obj.label(e) for e in obj.universe]
        blocks = []
        for name, arity in obj.signature.symbols:
            t = obj.table(name)
            glyph = _GLYPH.get(name, name)
            if arity == 0:
                blocks.append([f"{name} = {names[t]}"])
            elif arity == 1:
                blocks.append([f"{glyph}({names[a]}) = {names[t[a]]}" for a in obj.universe])
            elif arity == 2:
                blocks.append(_grid(glyph, names,
                                    [(names[a], [names[t[a][b]] for b in obj.universe])
                                     for a in obj.universe]))
            else:
                blocks.append([f"{name}({', '.join(names[x] for x in args)}) = "
                               f"{names[obj.apply(name, args)]}" for args in obj.arg_tuples(name)])
        return "\n\n".join("\n".join(b) for b in blocks) + "\n"
    if isinstance(obj, RelationalStructure):
        names = [obj.label(e) for e in obj.universe]
        if obj.scheme.arity == 2:
            lines = _grid("R", names, [(names[a], ["1" if obj.leq(a, b) else "." for b in obj.universe])
                                       for a in obj.universe])
        else:
            lines = ["(" + ", ".join(names[e] for e in t) + ")" for t in obj.tuples]
        return "\n".join(lines) + "\n"
    raise AlgebraError(f"cannot tabulate {type(obj).__name__}")


def render(obj, fmt: str, annotate: dict | None = None) -> str:
    if fmt == "json":
        return render_json(obj)
    if fmt == "dot":
        return render_dot(obj, annotate)
    if fmt == "table":
        return render_table(obj)
    raise AlgebraError(f"unknown format {fmt!r}")
