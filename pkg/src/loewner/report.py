"""Structured run reports with a human rendering and a byte-stable JSON
rendering.

The JSON form deliberately omits wall-clock time: identical inputs must
produce identical bytes, and elapsed time is the one nondeterministic field.
The human rendering shows it.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

import numpy as np

from .linalg import HermitianMatrix, MatrixSet, Tolerances

__all__ = [
    "RunReport",
    "encode_matrix",
    "encode_matrix_or_none",
    "encode_set",
    "encode_certificate",
    "canonical_digest",
]


def _component(value: float) -> float:
    # + 0.0 folds negative zero into plain zero for stable, tidy output
    return float(value) + 0.0


def encode_matrix(m: HermitianMatrix) -> list:
    """Rows of [re, im] pairs; the uniform machine encoding for matrices."""
    return [
        [[_component(entry.real), _component(entry.imag)] for entry in row]
        for row in np.asarray(m.mat)
    ]


def encode_matrix_or_none(m: HermitianMatrix | None):
    return None if m is None else encode_matrix(m)


def encode_set(mset: MatrixSet) -> list:
    return [encode_matrix(member) for member in mset]


def encode_array(arr: np.ndarray) -> list:
    grid = np.atleast_2d(np.asarray(arr, dtype=np.complex128))
    return [[[_component(e.real), _component(e.imag)] for e in row] for row in grid]


def encode_certificate(cert) -> dict:
    return {
        "per_member_nullspace_dims": list(cert.per_member_nullspace_dims),
        "span_dim": cert.span_dim,
        "is_lower_bound": cert.is_lower_bound,
        "is_maximal": cert.is_maximal,
    }


def canonical_digest(*parts) -> str:
    """Short stable digest of the canonicalized inputs of a run."""
    blob = json.dumps(parts, sort_keys=True, default=str).encode()
    return hashlib.sha256(blob).hexdigest()[:12]


def _looks_like_matrix(value) -> bool:
    if not isinstance(value, list) or not value:
        return False
    if not all(isinstance(row, list) and len(row) == len(value[0]) and row for row in value):
        return False
    return all(
        isinstance(e, list) and len(e) == 2 and all(isinstance(x, (int, float)) for x in e)
        for row in value
        for e in row
    )


def _format_entry(pair) -> str:
    re_part, im_part = pair
    if im_part == 0.0:
        return f"{re_part:.10g}"
    sign = "+" if im_part >= 0 else "-"
    return f"{re_part:.10g}{sign}{abs(im_part):.10g}i"


def _render_matrix(rows, indent: str) -> list[str]:
    cells = [[_format_entry(e) for e in row] for row in rows]
    widths = [max(len(cells[r][c]) for r in range(len(cells))) for c in range(len(cells[0]))]
    return [
        indent + "  ".join(cell.rjust(widths[c]) for c, cell in enumerate(row))
        for row in cells
    ]


def _render_value(key: str, value, indent: str = "  ") -> list[str]:
    if _looks_like_matrix(value):
        return [f"{indent}{key}:"] + _render_matrix(value, indent + "    ")
    if isinstance(value, dict):
        lines = [f"{indent}{key}:"]
        for sub_key, sub_value in value.items():
            lines.extend(_render_value(sub_key, sub_value, indent + "  "))
        return lines
    if isinstance(value, list) and value and all(_looks_like_matrix(v) for v in value):
        lines = [f"{indent}{key}:"]
        for i, sub in enumerate(value):
            lines.append(f"{indent}  [{i}]")
            lines.extend(_render_matrix(sub, indent + "    "))
        return lines
    if isinstance(value, float):
        return [f"{indent}{key}: {value:.12g}"]
    return [f"{indent}{key}: {value}"]


@dataclass
class RunReport:
    """Outcome of one CLI invocation or ensemble run."""

    command: str
    digest: str
    tolerances: Tolerances
    seed: int | None
    verdicts: dict
    notes: tuple[str, ...] = ()
    elapsed_ms: float = 0.0

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "digest": self.digest,
            "seed": self.seed,
            "tolerances": self.tolerances.as_dict(),
            "verdicts": self.verdicts,
            "notes": list(self.notes),
        }
        # elapsed_ms stays out: the JSON rendering is byte-stable.
        return json.dumps(payload, sort_keys=True) + "\n"

    def render_text(self) -> str:
        tolerances = "  ".join(f"{k}={v:g}" for k, v in self.tolerances.as_dict().items())
        lines = [
            f"= {self.command} =",
            f"  digest: {self.digest}",
            f"  tolerances: {tolerances}",
        ]
        if self.seed is not None:
            lines.append(f"  seed: {self.seed}")
        for key, value in self.verdicts.items():
            lines.extend(_render_value(key, value))
        for note in self.notes:
            lines.append(f"  note: {note}")
        lines.append(f"  elapsed: {self.elapsed_ms:.1f} ms")
        return "\n".join(lines) + "\n"
