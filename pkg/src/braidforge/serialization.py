"""JSON documents for every object kind the tool exchanges.

Scalars are "p/q" strings in exact mode and plain numbers in float
mode; keys are emitted sorted and entry lists in (row, col) order, so
identical objects serialize byte-identically.
"""

from __future__ import annotations

import itertools
import json

from . import scalars, tensor
from .errors import SchemaError
from .linrack import Coalgebra, LinearNRack, LinearRack
from .nleibniz import CentralNLeibnizAlgebra, NLeibnizAlgebra
from .nrack import FiniteGroup, FiniteNRack
from .setsol import SetNMap
from .tensor import TensorOperator, TensorShape

KINDS = ("nleibniz", "nrack", "group", "coalgebra", "linear_nrack", "operator", "set_map")


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def _require(doc, key, kind):
    if key not in doc:
        raise SchemaError(f"{kind} document is missing {key!r}")
    return doc[key]


def _mode_of(doc) -> str:
    return scalars.check_mode(doc.get("scalars", scalars.EXACT))


def _entries_to_json(op: TensorOperator):
    return [
        [r, c, scalars.format_scalar(v, op.mode)]
        for (r, c), v in sorted(op.entries.items())
    ]


def _entries_from_json(raw, mode):
    out = {}
    for item in raw:
        if len(item) != 3:
            raise SchemaError(f"operator entry {item!r} must be [row, col, value]")
        r, c, v = item
        out[(int(r), int(c))] = scalars.parse_scalar(v, mode)
    return out


def operator_to_document(op: TensorOperator, provenance=None) -> dict:
    doc = {
        "kind": "operator",
        "scalars": op.mode,
        "shape": list(op.domain_shape.factor_dims),
        "codomain_shape": list(op.codomain_shape.factor_dims),
        "entries": _entries_to_json(op),
    }
    if provenance:
        doc["provenance"] = list(provenance)
    return doc


def operator_from_document(doc) -> TensorOperator:
    mode = _mode_of(doc)
    dom = TensorShape(tuple(_require(doc, "shape", "operator")))
    cod = TensorShape(tuple(_require(doc, "codomain_shape", "operator")))
    return TensorOperator(dom, cod, _entries_from_json(doc["entries"], mode), mode)


def nleibniz_to_document(a, provenance=None) -> dict:
    central = None
    if isinstance(a, CentralNLeibnizAlgebra):
        central = a.central
        a = a.algebra
    doc = {
        "kind": "nleibniz",
        "arity": a.arity,
        "dim": a.dim,
        "scalars": a.mode,
        "certified": a.certified,
        "bracket": [
            {
                "in": list(key),
                "out": {str(j): scalars.format_scalar(v, a.mode) for j, v in sorted(out.items())},
            }
            for key, out in sorted(a.bracket.items())
        ],
    }
    if central is not None:
        zero = scalars.format_scalar(scalars.zero(a.mode), a.mode)
        dense = [zero] * a.dim
        for j, v in central.items():
            dense[j] = scalars.format_scalar(v, a.mode)
        doc["central"] = dense
    if provenance:
        doc["provenance"] = list(provenance)
    return doc


def nleibniz_from_document(doc):
    mode = _mode_of(doc)
    bracket = {}
    for item in _require(doc, "bracket", "nleibniz"):
        key = tuple(int(i) for i in _require(item, "in", "bracket term"))
        out = {int(j): scalars.parse_scalar(v, mode) for j, v in _require(item, "out", "bracket term").items()}
        if key in bracket:
            raise SchemaError(f"duplicate bracket key {key}")
        bracket[key] = out
    a = NLeibnizAlgebra(
        int(_require(doc, "arity", "nleibniz")),
        int(_require(doc, "dim", "nleibniz")),
        bracket,
        mode,
        bool(doc.get("certified", False)),
    )
    if "central" in doc:
        central = {
            j: scalars.parse_scalar(v, mode)
            for j, v in enumerate(doc["central"])
        }
        return CentralNLeibnizAlgebra(a, central)
    return a


def nrack_to_document(t: FiniteNRack, provenance=None) -> dict:
    rows = [
        list(args) + [t.apply(args)]
        for args in itertools.product(range(t.size), repeat=t.arity)
    ]
    doc = {
        "kind": "nrack",
        "size": t.size,
        "arity": t.arity,
        "side": t.side,
        "certified": t.certified,
        "table": rows,
    }
    if provenance:
        doc["provenance"] = list(provenance)
    return doc


def nrack_from_document(doc) -> FiniteNRack:
    size = int(_require(doc, "size", "nrack"))
    arity = int(_require(doc, "arity", "nrack"))
    rows = _require(doc, "table", "nrack")
    if len(rows) != size**arity:
        raise SchemaError(
            f"nrack table must be total: expected {size**arity} rows, got {len(rows)}"
        )
    table = [None] * (size**arity)
    for row in rows:
        if len(row) != arity + 1:
            raise SchemaError(f"nrack table row {row!r} must be [x_1..x_n, value]")
        args, value = row[:-1], row[-1]
        idx = 0
        for a in args:
            if not 0 <= int(a) < size:
                raise SchemaError(f"table argument {a} out of range")
            idx = idx * size + int(a)
        if table[idx] is not None:
            raise SchemaError(f"duplicate table row for {args}")
        table[idx] = int(value)
    return FiniteNRack(
        size, arity, tuple(table), doc.get("side", "right"), bool(doc.get("certified", False))
    )


def group_to_document(g: FiniteGroup, provenance=None) -> dict:
    doc = {"kind": "group", "size": g.size, "mul": [list(row) for row in g.mul]}
    if provenance:
        doc["provenance"] = list(provenance)
    return doc


def group_from_document(doc) -> FiniteGroup:
    return FiniteGroup(int(_require(doc, "size", "group")), tuple(map(tuple, _require(doc, "mul", "group"))))


def coalgebra_to_document(c: Coalgebra, provenance=None) -> dict:
    doc = {
        "kind": "coalgebra",
        "dim": c.dim,
        "scalars": c.mode,
        "delta": _entries_to_json(c.delta),
        "epsilon": _entries_to_json(c.counit),
    }
    if provenance:
        doc["provenance"] = list(provenance)
    return doc


def coalgebra_from_document(doc) -> Coalgebra:
    mode = _mode_of(doc)
    dim = int(_require(doc, "dim", "coalgebra"))
    delta = TensorOperator(
        TensorShape((dim,)),
        tensor.power_shape(dim, 2),
        _entries_from_json(_require(doc, "delta", "coalgebra"), mode),
        mode,
    )
    counit = TensorOperator(
        TensorShape((dim,)),
        TensorShape((1,)),
        _entries_from_json(_require(doc, "epsilon", "coalgebra"), mode),
        mode,
    )
    return Coalgebra(dim, delta, counit, mode)


def linear_nrack_to_document(l: LinearNRack, provenance=None) -> dict:
    doc = {
        "kind": "linear_nrack",
        "arity": l.arity,
        "scalars": l.base.mode,
        "base": coalgebra_to_document(l.base),
        "bracket": _entries_to_json(l.bracket),
        "inv_bracket": _entries_to_json(l.inv_bracket),
    }
    if provenance:
        doc["provenance"] = list(provenance)
    return doc


def linear_nrack_from_document(doc) -> LinearNRack:
    base = coalgebra_from_document(_require(doc, "base", "linear_nrack"))
    arity = int(_require(doc, "arity", "linear_nrack"))
    mode = base.mode
    dom = tensor.power_shape(base.dim, arity)
    cod = TensorShape((base.dim,))
    bracket = TensorOperator(dom, cod, _entries_from_json(_require(doc, "bracket", "linear_nrack"), mode), mode)
    inv = TensorOperator(dom, cod, _entries_from_json(_require(doc, "inv_bracket", "linear_nrack"), mode), mode)
    return LinearNRack(base, arity, bracket, inv)


def set_map_to_document(s: SetNMap, provenance=None) -> dict:
    rows = [
        list(args) + list(s.apply(args))
        for args in itertools.product(range(s.size), repeat=s.arity)
    ]
    doc = {"kind": "set_map", "size": s.size, "arity": s.arity, "side": s.side, "map": rows}
    if provenance:
        doc["provenance"] = list(provenance)
    return doc


def set_map_from_document(doc) -> SetNMap:
    size = int(_require(doc, "size", "set_map"))
    arity = int(_require(doc, "arity", "set_map"))
    rows = _require(doc, "map", "set_map")
    outputs = [None] * (size**arity)
    for row in rows:
        if len(row) != 2 * arity:
            raise SchemaError(f"set_map row {row!r} must be [x_1..x_n, y_1..y_n]")
        args, out = row[:arity], row[arity:]
        idx = 0
        for a in args:
            idx = idx * size + int(a)
        if outputs[idx] is not None:
            raise SchemaError(f"duplicate set_map row for {args}")
        outputs[idx] = tuple(int(v) for v in out)
    if any(o is None for o in outputs):
        raise SchemaError("set_map must be total")
    return SetNMap(size, arity, tuple(outputs), doc.get("side", "right"))


def _linear_rack_to_document(r, provenance=None):
    return linear_nrack_to_document(r.as_nrack(), provenance)


_TO_DOCUMENT = {
    TensorOperator: operator_to_document,
    LinearRack: _linear_rack_to_document,
    NLeibnizAlgebra: nleibniz_to_document,
    CentralNLeibnizAlgebra: nleibniz_to_document,
    FiniteNRack: nrack_to_document,
    FiniteGroup: group_to_document,
    Coalgebra: coalgebra_to_document,
    LinearNRack: linear_nrack_to_document,
    SetNMap: set_map_to_document,
}

_FROM_DOCUMENT = {
    "operator": operator_from_document,
    "nleibniz": nleibniz_from_document,
    "nrack": nrack_from_document,
    "group": group_from_document,
    "coalgebra": coalgebra_from_document,
    "linear_nrack": linear_nrack_from_document,
    "set_map": set_map_from_document,
}


def to_document(obj, provenance=None) -> dict:
    for cls, fn in _TO_DOCUMENT.items():
        if isinstance(obj, cls):
            return fn(obj, provenance)
    raise SchemaError(f"no document form for {type(obj).__name__}")


def from_document(doc):
    if not isinstance(doc, dict):
        raise SchemaError("a document must be a JSON object")
    kind = doc.get("kind")
    if kind not in _FROM_DOCUMENT:
        raise SchemaError(f"unknown document kind {kind!r}; expected one of {KINDS}")
    return _FROM_DOCUMENT[kind](doc)
