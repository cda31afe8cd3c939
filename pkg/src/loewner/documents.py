"""The matrix-set document: a JSON interchange format for finite Hermitian
families.

Schema (one JSON object):

* ``dim``: positive integer, the shared matrix dimension;
* ``field_tag``: ``"real"`` or ``"complex"``;
* ``matrices``: nonempty list of dim x dim entry grids -- plain numbers when
  real, ``[re, im]`` pairs when complex;
* ``labels`` (optional): one string per matrix.

Parsing is strict: structural problems raise ``ParseError`` with a field
locator, semantic problems (shape, hermiticity, label count) raise
``ValidationError``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import NotHermitianWithinTolerance, ParseError, ValidationError
from .linalg import DEFAULT_TOL, HermitianMatrix, MatrixSet, Tolerances, hermitize

__all__ = [
    "MatrixSetDocument",
    "parse_document",
    "emit_document",
    "document_from_set",
]

_FIELD_TAGS = ("real", "complex")
_TOP_LEVEL_KEYS = {"dim", "field_tag", "matrices", "labels"}


@dataclass(frozen=True)
class MatrixSetDocument:
    """A validated matrix set plus its interchange metadata."""

    dim: int
    field_tag: str
    matrix_set: MatrixSet
    labels: tuple[str, ...] | None = None

    def label_of(self, index: int) -> str:
        if self.labels is not None:
            return self.labels[index]
        return str(index)


def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"{where}: expected a number, got {value!r}")
    return float(value)


def _entry(value, field_tag: str, where: str) -> complex:
    if field_tag == "real":
        return complex(_number(value, where), 0.0)
    if not isinstance(value, list) or len(value) != 2:
        raise ParseError(f"{where}: expected an [re, im] pair")
    return complex(_number(value[0], where + "[0]"), _number(value[1], where + "[1]"))


def parse_document(text: str, tol: Tolerances = DEFAULT_TOL) -> MatrixSetDocument:
    """Parse and validate a matrix-set document from JSON text."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"invalid JSON: {exc.msg} at line {exc.lineno} column {exc.colno}"
        ) from exc
    if not isinstance(payload, dict):
        raise ParseError("document must be a JSON object")
    unknown = set(payload) - _TOP_LEVEL_KEYS
    if unknown:
        raise ParseError(f"unknown top-level fields: {sorted(unknown)}")
    for required in ("dim", "field_tag", "matrices"):
        if required not in payload:
            raise ParseError(f"missing required field {required!r}")

    dim = payload["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int):
        raise ParseError("field 'dim': expected an integer")
    if dim < 1:
        raise ValidationError(f"field 'dim': must be at least 1, got {dim}")

    field_tag = payload["field_tag"]
    if field_tag not in _FIELD_TAGS:
        raise ParseError(f"field 'field_tag': expected one of {_FIELD_TAGS}, got {field_tag!r}")

    grids = payload["matrices"]
    if not isinstance(grids, list) or not grids:
        raise ParseError("field 'matrices': expected a nonempty list")

    members = []
    for i, grid in enumerate(grids):
        where = f"matrices[{i}]"
        if not isinstance(grid, list):
            raise ParseError(f"{where}: expected a list of rows")
        if len(grid) != dim:
            raise ValidationError(f"{where}: has {len(grid)} rows, expected {dim}")
        arr = np.zeros((dim, dim), dtype=np.complex128)
        for r, row in enumerate(grid):
            if not isinstance(row, list):
                raise ParseError(f"{where}[{r}]: expected a list of entries")
            if len(row) != dim:
                raise ValidationError(f"{where}[{r}]: has {len(row)} entries, expected {dim}")
            for c, value in enumerate(row):
                arr[r, c] = _entry(value, field_tag, f"{where}[{r}][{c}]")
        try:
            members.append(hermitize(arr, tol))
        except NotHermitianWithinTolerance as exc:
            raise ValidationError(f"{where}: {exc}") from exc

    labels = payload.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or not all(isinstance(s, str) for s in labels):
            raise ParseError("field 'labels': expected a list of strings")
        if len(labels) != len(members):
            raise ValidationError(
                f"field 'labels': has {len(labels)} entries, expected {len(members)}"
            )
        labels = tuple(labels)

    return MatrixSetDocument(dim, field_tag, MatrixSet(members), labels)


def _emit_entry(value: complex, field_tag: str):
    if field_tag == "real":
        return float(value.real)
    return [float(value.real), float(value.imag)]


def emit_document(document: MatrixSetDocument, indent: int | None = None) -> str:
    """Serialize a document back to JSON text (deterministically)."""
    grids = []
    for member in document.matrix_set:
        grids.append(
            [
                [_emit_entry(complex(member.mat[r, c]), document.field_tag) for c in range(document.dim)]
                for r in range(document.dim)
            ]
        )
    payload: dict = {
        "dim": document.dim,
        "field_tag": document.field_tag,
        "matrices": grids,
    }
    if document.labels is not None:
        payload["labels"] = list(document.labels)
    return json.dumps(payload, indent=indent) + "\n"


def document_from_set(mset: MatrixSet, labels=None) -> MatrixSetDocument:
    """Wrap a matrix set as a document, choosing the narrowest field tag."""
    has_imag = any(float(np.abs(member.mat.imag).max()) > 0.0 for member in mset)
    tag = "complex" if has_imag else "real"
    if labels is not None:
        labels = tuple(str(s) for s in labels)
        if len(labels) != len(mset):
            raise ValidationError(f"{len(labels)} labels for {len(mset)} matrices")
    return MatrixSetDocument(mset.dim, tag, mset, labels)
