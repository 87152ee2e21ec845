"""JSON matrix and tuple documents.

MatrixFile::

    {"rows": 2, "cols": 2, "data": [[re, im], ...]}   # row-major

TupleFile::

    {"entries": [MatrixFile, ...],
     "marks": ["plain" | "adjoint" | "dagger" | "dagger_adjoint", ...],  # optional
     "perm": [1-based indices],                                          # optional
     "exponents": [non-negative integers]}                                # optional

Floats are written with ``repr``, the shortest string that reads back to
the identical double.
"""

from __future__ import annotations

import json
import math
from numbers import Real
from pathlib import Path
from typing import Any

from .commute import Mark, TupleSpec
from .errors import MatrixError
from .laws import PowerSpec
from .matcore import ComplexMatrix


class ParseError(MatrixError, ValueError):
    """A document is not a well-formed MatrixFile or TupleFile."""


def _reject_constant(name):
    raise ParseError(f"non-finite literal {name} is not allowed")


def loads(text: str) -> Any:
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


def _number(x, where: str) -> float:
    if isinstance(x, bool) or not isinstance(x, Real):
        raise ParseError(f"{where}: expected a number, got {x!r}")
    x = float(x)
    if not math.isfinite(x):
        raise ParseError(f"{where}: non-finite value")
    return x


def _positive_int(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int) or x < 1:
        raise ParseError(f"{where}: expected a positive integer, got {x!r}")
    return x


def matrix_from_doc(doc: Any, where: str = "matrix") -> ComplexMatrix:
    if not isinstance(doc, dict):
        raise ParseError(f"{where}: expected an object")
    for key in ("rows", "cols", "data"):
        if key not in doc:
            raise ParseError(f"{where}: missing field {key!r}")
    rows = _positive_int(doc["rows"], f"{where}.rows")
    cols = _positive_int(doc["cols"], f"{where}.cols")
    data = doc["data"]
    if not isinstance(data, list) or len(data) != rows * cols:
        raise ParseError(f"{where}.data: expected {rows * cols} [re, im] pairs")
    pairs = []
    for k, item in enumerate(data):
        if not isinstance(item, list) or len(item) != 2:
            raise ParseError(f"{where}.data[{k}]: expected an [re, im] pair")
        pairs.append((_number(item[0], f"{where}.data[{k}]"), _number(item[1], f"{where}.data[{k}]")))
    return ComplexMatrix.from_pairs(rows, cols, pairs)


def matrix_to_doc(m: ComplexMatrix) -> dict:
    return {"rows": m.rows, "cols": m.cols, "data": m.to_pairs()}


def tuple_from_doc(doc: Any) -> tuple[TupleSpec, PowerSpec | None]:
    """Parse a TupleFile; a bare MatrixFile is read as a one-entry tuple."""
    if isinstance(doc, dict) and "entries" not in doc and "rows" in doc:
        doc = {"entries": [doc]}
    if not isinstance(doc, dict) or not isinstance(doc.get("entries"), list):
        raise ParseError("tuple: expected an object with an 'entries' array")
    entries = [matrix_from_doc(e, f"entries[{k}]") for k, e in enumerate(doc["entries"])]
    n = len(entries)

    marks = doc.get("marks")
    if marks is not None:
        if not isinstance(marks, list) or len(marks) != n:
            raise ParseError(f"marks: expected {n} strings")
        try:
            marks = tuple(Mark(m) for m in marks)
        except ValueError as exc:
            raise ParseError(f"marks: {exc}") from exc

    perm = doc.get("perm")
    if perm is not None:
        if not isinstance(perm, list) or len(perm) != n:
            raise ParseError(f"perm: expected {n} indices")
        if any(isinstance(i, bool) or not isinstance(i, int) for i in perm) or sorted(perm) != list(range(1, n + 1)):
            raise ParseError(f"perm: {perm} is not a permutation of 1..{n}")
        perm = tuple(i - 1 for i in perm)

    powers = None
    exps = doc.get("exponents")
    if exps is not None:
        if not isinstance(exps, list) or len(exps) != n:
            raise ParseError(f"exponents: expected {n} non-negative integers")
        if any(isinstance(m, bool) or not isinstance(m, int) or m < 0 for m in exps):
            raise ParseError("exponents: expected non-negative integers")
        powers = PowerSpec(tuple(exps))

    try:
        tup = TupleSpec(tuple(entries), marks or (), perm or ())
    except MatrixError as exc:
        raise ParseError(str(exc)) from exc
    return tup, powers


def tuple_to_doc(t: TupleSpec, powers: PowerSpec | None = None) -> dict:
    doc: dict[str, Any] = {"entries": [matrix_to_doc(e) for e in t.entries]}
    if any(m is not Mark.PLAIN for m in t.marks):
        doc["marks"] = [m.value for m in t.marks]
    if t.perm != tuple(range(len(t))):
        doc["perm"] = [i + 1 for i in t.perm]
    if powers is not None:
        doc["exponents"] = list(powers.exponents)
    return doc


def dumps(doc: Any) -> str:
    return json.dumps(doc, allow_nan=False) + "\n"


def read_doc(path: str | Path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return loads(text)


def read_matrix(path: str | Path) -> ComplexMatrix:
    return matrix_from_doc(read_doc(path))


def read_tuple(path: str | Path) -> tuple[TupleSpec, PowerSpec | None]:
    return tuple_from_doc(read_doc(path))


def write_doc(path: str | Path, doc: Any) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")
