"""Algebra and matrix file formats.

Algebra files are JSON documents with fields dim, basis, products,
constraints, label and an optional blocks list (canonical block names for
entries produced by the classifier).  Matrix files are plain text: rows
separated by ';', entries by ',', each entry in the scalar grammar.
Serialization is canonical so files round-trip byte-exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .algebra import StructureConstants
from .errors import MalformedFile, ScalarSyntaxError
from .scalars import ParameterConstraint, Scalar, parse_scalar


def dumps_canonical(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


@dataclass(frozen=True)
class AlgebraDocument:
    algebra: StructureConstants
    blocks: tuple | None = None  # block-name strings, classifier provenance


def algebra_to_doc(A: StructureConstants, blocks=None) -> dict:
    prods = []
    for (i, j), terms in sorted(A.products().items()):
        prods.append(
            {
                "left": i,
                "right": j,
                "result": [[k, str(c)] for k, c in sorted(terms)],
            }
        )
    doc = {
        "dim": A.dim,
        "basis": list(A.basis_names()),
        "products": prods,
        "constraints": [
            {
                "param": con.name,
                "excluded": sorted(str(Scalar.const(v)) for v in con.excluded),
            }
            for con in sorted(A.constraints, key=lambda c: c.name)
        ],
        "label": A.label,
    }
    if blocks is not None:
        doc["blocks"] = list(blocks)
    return doc


def doc_to_algebra(doc) -> AlgebraDocument:
    try:
        dim = doc["dim"]
        if not isinstance(dim, int) or dim < 1:
            raise MalformedFile(f"bad dim {dim!r}")
        basis = doc.get("basis") or [f"x{k + 1}" for k in range(dim)]
        if len(basis) != dim:
            raise MalformedFile("basis length does not match dim")
        products = {}
        for entry in doc.get("products", []):
            i, j = entry["left"], entry["right"]
            if not (1 <= i <= dim and 1 <= j <= dim):
                raise MalformedFile(f"product index ({i},{j}) out of range")
            terms = []
            for k, text in entry["result"]:
                if not 1 <= k <= dim:
                    raise MalformedFile(f"result index {k} out of range")
                terms.append((k, parse_scalar(text)))
            products[(i, j)] = terms
        constraints = []
        for entry in doc.get("constraints", []):
            vals = [parse_scalar(t).as_qi() for t in entry["excluded"]]
            constraints.append(
                ParameterConstraint(entry["param"], frozenset(vals))
            )
        label = doc.get("label")
        blocks = tuple(doc["blocks"]) if "blocks" in doc else None
        A = StructureConstants.from_products(
            dim, products, constraints=constraints, label=label, basis=basis
        )
        return AlgebraDocument(A, blocks)
    except MalformedFile:
        raise
    except ScalarSyntaxError as exc:
        raise MalformedFile(f"bad scalar: {exc}") from exc
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedFile(f"bad algebra document: {exc}") from exc


def store_algebra(A: StructureConstants, blocks=None) -> str:
    return dumps_canonical(algebra_to_doc(A, blocks))


def load_algebra(text: str) -> AlgebraDocument:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedFile(exc.msg, line=exc.lineno, column=exc.colno) from exc
    return doc_to_algebra(doc)


def store_table(entries_docs) -> str:
    return dumps_canonical(entries_docs)


def load_table(text: str):
    try:
        docs = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedFile(exc.msg, line=exc.lineno, column=exc.colno) from exc
    if not isinstance(docs, list):
        raise MalformedFile("table file must hold a JSON list")
    return [doc_to_algebra(d) for d in docs]


def store_matrix(M) -> str:
    return ";".join(",".join(str(x) for x in row) for row in M) + "\n"


def load_matrix(text: str):
    text = text.strip()
    if not text:
        return ()
    rows = []
    for li, row_text in enumerate(text.split(";")):
        row = []
        for ci, cell in enumerate(row_text.split(",")):
            try:
                row.append(parse_scalar(cell.strip()))
            except ScalarSyntaxError as exc:
                raise MalformedFile(
                    f"bad matrix entry {cell.strip()!r}: {exc}",
                    line=li + 1,
                    column=ci + 1,
                ) from exc
        rows.append(tuple(row))
    if any(len(r) != len(rows) for r in rows):
        raise MalformedFile("matrix is not square" if rows else "empty matrix")
    return tuple(rows)
