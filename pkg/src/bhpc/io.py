"""JSON algebra and operator files.

Scalars are always strings in the scalar grammar, never JSON numbers, so
files stay exact.  :func:`dump_algebra` is canonical: one fixed key order,
structure constants in lexicographic (i, j, k) order, one matrix row or
constant per line.  Parsing then dumping a canonical file reproduces it byte
for byte.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from .axioms import ColorAlgebraBundle
from .constructions import OperatorWitness
from .errors import BhpcError, DimensionMismatch, ParseError, ScalarError, ValidationError
from .glinalg import BilinearMap, EvenMap, GradedSpace
from .grading import Bicharacter, FiniteAbelianGroup, Multiplier, builtin_bicharacter
from .scalars import FieldSpec

ALGEBRA_FORMAT = "bhpc-algebra"
OPERATOR_FORMAT = "bhpc-operator"
FORMAT_VERSION = 1

OPERATOR_KINDS = ("rota_baxter", "averaging", "centroid", "multiplier", "map")


@dataclass
class AlgebraFile:
    bundle: ColorAlgebraBundle
    meta: dict[str, Any] = field(default_factory=dict)


@dataclass
class OperatorFile:
    kind: str
    matrix: Any = None
    weight: Any = None
    k: int = 0
    l: int = 0
    meta: dict[str, Any] = field(default_factory=dict)

    def witness(self) -> OperatorWitness:
        if self.kind not in ("rota_baxter", "averaging", "centroid"):
            raise ValueError(f"{self.kind} files do not describe an operator witness")
        return OperatorWitness(self.kind, self.matrix, weight=self.weight, k=self.k, l=self.l)


# -- locating errors ----------------------------------------------------------

def _line_of(text: str, key: str) -> int | None:
    m = re.search(r'"%s"\s*:' % re.escape(key), text)
    if m is None:
        return None
    return text.count("\n", 0, m.start()) + 1


def _loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, exc.msg) from None
    if not isinstance(doc, dict):
        raise ParseError(1, "top level must be an object")
    return doc


class _Reader:
    def __init__(self, text: str, doc: dict):
        self.text = text
        self.doc = doc

    def fail(self, key: str, message: str):
        raise ParseError(_line_of(self.text, key), f"{key}: {message}")

    def get(self, key: str, default=KeyError):
        if key not in self.doc:
            if default is KeyError:
                raise ParseError(None, f"missing section {key!r}")
            return default
        return self.doc[key]

    def scalar(self, key: str, F: FieldSpec, value):
        if not isinstance(value, str):
            self.fail(key, f"scalars must be strings, got {value!r}")
        try:
            return F.parse(value)
        except ScalarError as exc:
            self.fail(key, str(exc))

    def matrix(self, key: str, F: FieldSpec, rows, shape):
        if not isinstance(rows, list) or len(rows) != shape[0]:
            self.fail(key, f"expected {shape[0]} rows")
        out = F.zeros(shape)
        for i, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != shape[1]:
                self.fail(key, f"row {i} must have {shape[1]} entries")
            for j, v in enumerate(row):
                out[i, j] = self.scalar(key, F, v)
        return out


def _parse_field(r: _Reader) -> FieldSpec:
    spec = r.get("field")
    if not isinstance(spec, dict) or spec.get("kind") not in ("rational", "prime"):
        r.fail("field", 'expected {"kind": "rational"} or {"kind": "prime", "p": P}')
    try:
        if spec["kind"] == "rational":
            return FieldSpec.rational()
        return FieldSpec.prime(int(spec["p"]))
    except (KeyError, TypeError, ValueError) as exc:
        r.fail("field", str(exc))


def _parse_group(r: _Reader) -> FiniteAbelianGroup:
    spec = r.get("group")
    orders = spec.get("orders") if isinstance(spec, dict) else None
    if not isinstance(orders, list) or not all(isinstance(n, int) for n in orders):
        r.fail("group", 'expected {"orders": [n1, n2, ...]}')
    try:
        return FiniteAbelianGroup(tuple(orders))
    except ValueError as exc:
        r.fail("group", str(exc))


def _parse_bicharacter(r: _Reader, G, F) -> Bicharacter:
    spec = r.get("bicharacter")
    if not isinstance(spec, dict):
        r.fail("bicharacter", "expected an object")
    if spec.get("kind") == "builtin":
        try:
            return builtin_bicharacter(spec.get("name"), G, F)
        except BhpcError as exc:
            r.fail("bicharacter", str(exc))
    if spec.get("kind") == "table":
        table = r.matrix("bicharacter", F, spec.get("entries"), (G.order, G.order))
        return Bicharacter(G, F, table)
    r.fail("bicharacter", 'kind must be "builtin" or "table"')


def _parse_constants(r: _Reader, key: str, space: GradedSpace) -> BilinearMap:
    items = r.get(key, [])
    if not isinstance(items, list):
        r.fail(key, "expected a list of [i, j, k, value]")
    entries = []
    n = space.dim
    for item in items:
        if not (isinstance(item, list) and len(item) == 4 and all(isinstance(v, int) for v in item[:3])):
            r.fail(key, f"malformed constant {item!r}")
        i, j, k = item[:3]
        if not all(0 <= v < n for v in (i, j, k)):
            r.fail(key, f"index out of range in {item!r}")
        entries.append((i, j, k, r.scalar(key, space.field, item[3])))
    try:
        return BilinearMap.from_entries(space, entries)
    except ValidationError as exc:
        raise ValidationError(exc.law, exc.witness, f"{key} constants are not even") from None


def loads_algebra(text: str) -> AlgebraFile:
    doc = _loads(text)
    r = _Reader(text, doc)
    if doc.get("format", ALGEBRA_FORMAT) != ALGEBRA_FORMAT:
        r.fail("format", f"expected {ALGEBRA_FORMAT!r}")
    F = _parse_field(r)
    G = _parse_group(r)
    eps = _parse_bicharacter(r, G, F)
    basis = r.get("basis")
    if not isinstance(basis, list) or not basis:
        r.fail("basis", "expected a nonempty list of degrees")
    degrees = []
    for d in basis:
        if not isinstance(d, list) or not G.is_element(tuple(d)):
            r.fail("basis", f"{d!r} is not an element of {G}")
        degrees.append(tuple(d))
    space = GradedSpace(F, G, tuple(degrees))
    n = space.dim
    mu = _parse_constants(r, "mu", space)
    bracket = _parse_constants(r, "bracket", space)
    maps = {}
    for key in ("alpha", "beta"):
        if key in doc:
            M = r.matrix(key, F, doc[key], (n, n))
            maps[key] = EvenMap(space, M)
        else:
            maps[key] = EvenMap.identity(space)
    bundle = ColorAlgebraBundle(space=space, eps=eps, mu=mu, bracket=bracket, **maps)
    meta = doc.get("meta", {})
    if not isinstance(meta, dict):
        r.fail("meta", "expected an object")
    return AlgebraFile(bundle, meta)


def load_algebra(path) -> AlgebraFile:
    return loads_algebra(Path(path).read_text())


def parse_algebra(path) -> ColorAlgebraBundle:
    return load_algebra(path).bundle


# -- writing --------------------------------------------------------------------

def _j(value) -> str:
    return json.dumps(value, ensure_ascii=False)


def _render_matrix(F: FieldSpec, M) -> list[list[str]]:
    return [[F.render(x) for x in row] for row in np.asarray(M)]


def _block(lines: list[str], indent: str = "  ") -> str:
    if not lines:
        return "[]"
    inner = (",\n" + indent + "  ").join(lines)
    return "[\n" + indent + "  " + inner + "\n" + indent + "]"


def _field_doc(F: FieldSpec) -> dict:
    return {"kind": "rational"} if not F.is_prime else {"kind": "prime", "p": F.p}


def algebra_document(bundle: ColorAlgebraBundle, meta: dict | None = None) -> dict:
    """The plain-data form written by :func:`dump_algebra`."""
    F = bundle.field
    name = bundle.eps.builtin_name
    if name is not None:
        eps = {"kind": "builtin", "name": name}
    else:
        eps = {"kind": "table", "entries": _render_matrix(F, bundle.eps.table)}
    doc = {
        "format": ALGEBRA_FORMAT,
        "version": FORMAT_VERSION,
        "field": _field_doc(F),
        "group": {"orders": list(bundle.group.orders)},
        "bicharacter": eps,
        "basis": [list(d) for d in bundle.space.degrees],
        "mu": [[i, j, k, F.render(c)] for i, j, k, c in bundle.mu.entries()],
        "bracket": [[i, j, k, F.render(c)] for i, j, k, c in bundle.bracket.entries()],
        "alpha": _render_matrix(F, bundle.alpha.matrix),
        "beta": _render_matrix(F, bundle.beta.matrix),
    }
    if meta:
        doc["meta"] = meta
    return doc


def dumps_algebra(bundle: ColorAlgebraBundle, meta: dict | None = None) -> str:
    doc = algebra_document(bundle, meta)
    parts = []
    for key, value in doc.items():
        if key in ("basis", "mu", "bracket", "alpha", "beta"):
            parts.append(f"  {_j(key)}: {_block([_j(v) for v in value])}")
        elif key == "bicharacter" and value["kind"] == "table":
            rows = _block([_j(v) for v in value["entries"]], "    ")
            parts.append(f'  "bicharacter": {{\n    "kind": "table",\n    "entries": {rows}\n  }}')
        elif key == "meta":
            body = json.dumps(value, indent=2, sort_keys=True, ensure_ascii=False).replace("\n", "\n  ")
            parts.append(f'  "meta": {body}')
        else:
            parts.append(f"  {_j(key)}: {_j(value)}")
    return "{\n" + ",\n".join(parts) + "\n}\n"


def dump_algebra(bundle: ColorAlgebraBundle, path, meta: dict | None = None) -> None:
    Path(path).write_text(dumps_algebra(bundle, meta))


# -- operator files -------------------------------------------------------------

def loads_operator(text: str, algebra: ColorAlgebraBundle) -> OperatorFile:
    """Parse an operator file against the algebra it acts on."""
    doc = _loads(text)
    r = _Reader(text, doc)
    if doc.get("format", OPERATOR_FORMAT) != OPERATOR_FORMAT:
        r.fail("format", f"expected {OPERATOR_FORMAT!r}")
    kind = doc.get("kind")
    if kind not in OPERATOR_KINDS:
        r.fail("kind", f"must be one of {', '.join(OPERATOR_KINDS)}")
    F, space = algebra.field, algebra.space
    meta = doc.get("meta", {})
    if kind == "multiplier":
        G = algebra.group
        table = r.matrix("table", F, r.get("table"), (G.order, G.order))
        return OperatorFile(kind, Multiplier(G, F, table), meta=meta)
    rows = r.get("matrix")
    n = space.dim
    if not isinstance(rows, list) or len(rows) != n or any(not isinstance(x, list) or len(x) != n for x in rows):
        raise DimensionMismatch(f"operator matrix must be {n} x {n} to act on this algebra")
    M = EvenMap(space, r.matrix("matrix", F, rows, (n, n)))
    weight = r.scalar("weight", F, doc["weight"]) if "weight" in doc else F.zero
    k, l = doc.get("k", 0), doc.get("l", 0)
    if not (isinstance(k, int) and isinstance(l, int)):
        r.fail("k", "exponents must be integers")
    return OperatorFile(kind, M, weight, k, l, meta)


def load_operator(path, algebra: ColorAlgebraBundle) -> OperatorFile:
    return loads_operator(Path(path).read_text(), algebra)


def dumps_operator(op: OperatorFile, field: FieldSpec) -> str:
    parts = [f'  "format": {_j(OPERATOR_FORMAT)}', f'  "version": {FORMAT_VERSION}', f'  "kind": {_j(op.kind)}']
    if op.kind == "multiplier":
        parts.append(f'  "table": {_block([_j(v) for v in _render_matrix(field, op.matrix.table)])}')
    else:
        parts.append(f'  "matrix": {_block([_j(v) for v in _render_matrix(field, op.matrix.matrix)])}')
        if op.kind == "rota_baxter":
            weight = field.zero if op.weight is None else op.weight
            parts.append(f'  "weight": {_j(field.render(weight))}')
        if op.kind in ("averaging", "centroid"):
            parts.append(f'  "k": {op.k}')
            parts.append(f'  "l": {op.l}')
    return "{\n" + ",\n".join(parts) + "\n}\n"


def dump_operator(op: OperatorFile, field: FieldSpec, path) -> None:
    Path(path).write_text(dumps_operator(op, field))
