"""Hermitian matrix values, spectral machinery, subspace algebra, and the
Loewner-order predicates everything else builds on.

All values are immutable after construction (arrays are frozen) and every
operation is a pure function of its inputs.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import (
    AmbientMismatch,
    ConvergenceFailure,
    DimensionMismatch,
    NonSquare,
    NotHermitianWithinTolerance,
    NotPositiveSemidefinite,
    ValidationError,
)

__all__ = [
    "Tolerances",
    "DEFAULT_TOL",
    "HermitianMatrix",
    "MatrixSet",
    "EigDecomposition",
    "Subspace",
    "RangeNullspace",
    "Comparability",
    "identity",
    "zero",
    "hermitize",
    "spectral",
    "fix_column_phases",
    "matrix_function",
    "sqrt_psd",
    "matrix_abs",
    "pinv",
    "polar_abs",
    "range_nullspace",
    "subspace_sum",
    "subspace_intersect",
    "compare",
    "loewner_leq",
    "is_psd",
]


@dataclass(frozen=True)
class Tolerances:
    """Relative thresholds governing rank, positivity, and equality decisions.

    ``rank_rel`` drives range/null-space splits (relative to the largest
    eigenvalue or singular value), ``psd_rel`` drives order decisions, and
    ``eq_rel`` drives equality of values.  Rank and order decisions fail in
    different ways, hence the separate knobs.
    """

    rank_rel: float = 1e-10
    psd_rel: float = 1e-9
    eq_rel: float = 1e-8

    def __post_init__(self) -> None:
        for name in ("rank_rel", "psd_rel", "eq_rel"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or value < 0.0:
                raise ValueError(f"tolerance {name} must be finite and >= 0, got {value!r}")
            object.__setattr__(self, name, value)

    def as_dict(self) -> dict:
        return {"rank_rel": self.rank_rel, "psd_rel": self.psd_rel, "eq_rel": self.eq_rel}


DEFAULT_TOL = Tolerances()


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _sym(arr: np.ndarray) -> np.ndarray:
    return (arr + arr.conj().T) / 2.0


class HermitianMatrix:
    """Dense complex Hermitian matrix, symmetrized exactly at construction.

    Symmetrizing via (A + A*)/2 makes ``mat[i, j] == conj(mat[j, i])`` hold
    exactly in floating point, so downstream code never needs to re-check.
    """

    __slots__ = ("mat", "_norm")

    def __init__(self, entries) -> None:
        arr = np.asarray(entries, dtype=np.complex128)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise NonSquare(f"expected a square matrix, got shape {arr.shape}")
        if arr.shape[0] == 0:
            raise NonSquare("matrix dimension must be at least 1")
        self.mat = _freeze(_sym(arr))
        self._norm = None

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def norm(self) -> float:
        """Spectral norm, i.e. the largest eigenvalue magnitude."""
        if self._norm is None:
            w = np.linalg.eigvalsh(self.mat)
            self._norm = float(max(abs(w[0]), abs(w[-1])))
        return self._norm

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.mat)[0])

    def distance(self, other: "HermitianMatrix") -> float:
        return (self - other).norm()

    def _require_same_dim(self, other: "HermitianMatrix") -> None:
        if self.dim != other.dim:
            raise DimensionMismatch(f"dimensions differ: {self.dim} vs {other.dim}")

    def __add__(self, other: "HermitianMatrix") -> "HermitianMatrix":
        self._require_same_dim(other)
        return HermitianMatrix(self.mat + other.mat)

    def __sub__(self, other: "HermitianMatrix") -> "HermitianMatrix":
        self._require_same_dim(other)
        return HermitianMatrix(self.mat - other.mat)

    def __neg__(self) -> "HermitianMatrix":
        return HermitianMatrix(-self.mat)

    def __mul__(self, scalar) -> "HermitianMatrix":
        if abs(complex(scalar).imag) > 0.0:
            raise ValueError("only real scalars preserve hermiticity")
        return HermitianMatrix(float(np.real(scalar)) * self.mat)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"HermitianMatrix(dim={self.dim})"


def identity(n: int) -> HermitianMatrix:
    return HermitianMatrix(np.eye(n))


def zero(n: int) -> HermitianMatrix:
    return HermitianMatrix(np.zeros((n, n)))


def hermitize(raw, tol: Tolerances = DEFAULT_TOL) -> HermitianMatrix:
    """Validate that ``raw`` is Hermitian within tolerance and wrap it.

    The Hermitian defect must satisfy ``|raw - raw*| <= eq_rel * (1 + |raw|)``
    in spectral norm; anything beyond that is rejected rather than silently
    symmetrized away.
    """
    arr = np.asarray(raw, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise NonSquare(f"expected a square matrix, got shape {arr.shape}")
    if arr.shape[0] == 0:
        raise NonSquare("matrix dimension must be at least 1")
    defect = float(np.linalg.norm(arr - arr.conj().T, 2))
    scale = 1.0 + float(np.linalg.norm(arr, 2))
    if defect > tol.eq_rel * scale:
        raise NotHermitianWithinTolerance(
            f"Hermitian defect {defect:.3e} exceeds {tol.eq_rel * scale:.3e}"
        )
    return HermitianMatrix(arr)


class MatrixSet:
    """Nonempty ordered collection of Hermitian matrices of one dimension."""

    __slots__ = ("members",)

    def __init__(self, members: Iterable[HermitianMatrix]) -> None:
        tup = tuple(members)
        if not tup:
            raise ValidationError("a matrix set must contain at least one member")
        dim = tup[0].dim
        for i, member in enumerate(tup):
            if member.dim != dim:
                raise DimensionMismatch(
                    f"member {i} has dimension {member.dim}, expected {dim}"
                )
        self.members = tup

    @classmethod
    def from_arrays(cls, arrays: Iterable) -> "MatrixSet":
        return cls(HermitianMatrix(a) for a in arrays)

    @property
    def dim(self) -> int:
        return self.members[0].dim

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, index: int) -> HermitianMatrix:
        return self.members[index]

    def max_norm(self) -> float:
        return max(m.norm() for m in self.members)

    def minus(self, shift: HermitianMatrix) -> "MatrixSet":
        return MatrixSet(m - shift for m in self.members)

    def __repr__(self) -> str:
        return f"MatrixSet(size={len(self)}, dim={self.dim})"


def fix_column_phases(vectors: np.ndarray) -> np.ndarray:
    """Rephase each column so its largest-modulus entry is real positive.

    Ties in modulus are broken by the lowest row index (argmax convention),
    which makes eigenbases deterministic across runs.
    """
    out = np.array(vectors, dtype=np.complex128)
    for j in range(out.shape[1]):
        col = out[:, j]
        pivot = col[int(np.argmax(np.abs(col)))]
        if abs(pivot) > 0.0:
            out[:, j] = col * (pivot.conjugate() / abs(pivot))
    return out


@dataclass(frozen=True)
class EigDecomposition:
    """Ascending eigenvalues plus a phase-fixed unitary of eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> HermitianMatrix:
        v = self.eigenvectors
        return HermitianMatrix((v * self.eigenvalues) @ v.conj().T)


def spectral(s: HermitianMatrix) -> EigDecomposition:
    """Eigendecomposition with ascending eigenvalues and deterministic phases."""
    try:
        w, v = np.linalg.eigh(s.mat)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"eigensolver did not converge: {exc}") from exc
    return EigDecomposition(_freeze(w), _freeze(fix_column_phases(v)))


_MATRIX_FUNCTIONS = ("sqrt_psd", "abs", "pinv")


def matrix_function(s: HermitianMatrix, kind: str, tol: Tolerances = DEFAULT_TOL) -> HermitianMatrix:
    """Apply ``sqrt_psd``, ``abs``, or ``pinv`` to ``s`` through its eigenvalues.

    ``pinv`` zeroes eigenvalues within ``rank_rel`` of zero (relative to the
    largest magnitude) before inverting, so numerically rank-deficient inputs
    do not blow up.  ``sqrt_psd`` clamps within-tolerance negative eigenvalues
    to zero and rejects anything more negative.
    """
    if kind not in _MATRIX_FUNCTIONS:
        raise ValueError(f"unknown matrix function {kind!r}, expected one of {_MATRIX_FUNCTIONS}")
    eig = spectral(s)
    w = eig.eigenvalues
    scale = max(abs(float(w[0])), abs(float(w[-1])))
    if kind == "abs":
        fw = np.abs(w)
    elif kind == "sqrt_psd":
        if w[0] < -tol.psd_rel * (1.0 + scale):
            raise NotPositiveSemidefinite(
                f"sqrt_psd needs a PSD input; smallest eigenvalue is {w[0]:.3e}"
            )
        fw = np.sqrt(np.maximum(w, 0.0))
    else:
        cut = tol.rank_rel * scale
        small = np.abs(w) <= cut
        fw = np.where(small, 0.0, 1.0 / np.where(small, 1.0, w))
    v = eig.eigenvectors
    return HermitianMatrix((v * fw) @ v.conj().T)


def sqrt_psd(s: HermitianMatrix, tol: Tolerances = DEFAULT_TOL) -> HermitianMatrix:
    return matrix_function(s, "sqrt_psd", tol)


def matrix_abs(s: HermitianMatrix, tol: Tolerances = DEFAULT_TOL) -> HermitianMatrix:
    return matrix_function(s, "abs", tol)


def pinv(s: HermitianMatrix, tol: Tolerances = DEFAULT_TOL) -> HermitianMatrix:
    return matrix_function(s, "pinv", tol)


def polar_abs(t: np.ndarray) -> np.ndarray:
    """|T| = (T* T)^(1/2) for an arbitrary square matrix, via the SVD."""
    arr = np.asarray(t, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise NonSquare(f"expected a square matrix, got shape {arr.shape}")
    _, sing, vh = np.linalg.svd(arr)
    v = vh.conj().T
    return (v * sing) @ v.conj().T


class Subspace:
    """Subspace of C^n held as an n x k matrix with orthonormal columns.

    ``k`` may be zero (the trivial subspace).  The constructor expects an
    already orthonormal basis; use ``from_span`` to orthonormalize arbitrary
    spanning columns.
    """

    __slots__ = ("basis",)

    def __init__(self, basis) -> None:
        arr = np.asarray(basis, dtype=np.complex128)
        if arr.ndim != 2:
            raise ValueError("a basis must be a 2-d array of column vectors")
        n, k = arr.shape
        if n < 1 or k > n:
            raise ValueError(f"invalid basis shape {arr.shape}")
        if k:
            gram = arr.conj().T @ arr
            if float(np.linalg.norm(gram - np.eye(k), 2)) > 1e-6:
                raise ValueError("basis columns are not orthonormal")
        self.basis = _freeze(np.array(arr))

    @classmethod
    def zero_subspace(cls, n: int) -> "Subspace":
        return cls(np.zeros((n, 0)))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(np.eye(n))

    @classmethod
    def from_span(cls, columns, tol: Tolerances = DEFAULT_TOL) -> "Subspace":
        """Orthonormal basis of the span of the given columns (rank-revealing)."""
        arr = np.asarray(columns, dtype=np.complex128)
        if arr.ndim == 1:
            arr = arr[:, None]
        n, m = arr.shape
        if m == 0:
            return cls.zero_subspace(n)
        u, sing, _ = np.linalg.svd(arr, full_matrices=False)
        if sing.size == 0 or sing[0] == 0.0:
            return cls.zero_subspace(n)
        rank = int(np.sum(sing > tol.rank_rel * sing[0]))
        return cls(u[:, :rank])

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[0]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def projector(self) -> np.ndarray:
        if self.dim == 0:
            return np.zeros((self.ambient_dim, self.ambient_dim), dtype=np.complex128)
        return self.basis @ self.basis.conj().T

    def complement(self) -> "Subspace":
        """Orthogonal complement, derived deterministically from the basis."""
        n, k = self.basis.shape
        if k == 0:
            return Subspace.full(n)
        if k == n:
            return Subspace.zero_subspace(n)
        u, _, _ = np.linalg.svd(self.basis, full_matrices=True)
        return Subspace(u[:, k:])

    def contains_vector(self, v: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> bool:
        vec = np.asarray(v, dtype=np.complex128).reshape(-1)
        residual = vec - self.projector() @ vec
        return float(np.linalg.norm(residual)) <= tol.eq_rel * (1.0 + float(np.linalg.norm(vec)))

    def __repr__(self) -> str:
        return f"Subspace(ambient={self.ambient_dim}, dim={self.dim})"


def _same_ambient(subspaces: Sequence[Subspace]) -> int:
    subs = list(subspaces)
    if not subs:
        raise AmbientMismatch("need at least one subspace")
    n = subs[0].ambient_dim
    for s in subs[1:]:
        if s.ambient_dim != n:
            raise AmbientMismatch(f"ambient dimensions differ: {s.ambient_dim} vs {n}")
    return n


def subspace_sum(subspaces: Sequence[Subspace], tol: Tolerances = DEFAULT_TOL) -> Subspace:
    """Orthonormal basis of the sum (joint span) of the given subspaces."""
    n = _same_ambient(subspaces)
    stacked = np.hstack([s.basis for s in subspaces]) if subspaces else np.zeros((n, 0))
    return Subspace.from_span(stacked, tol)


def _intersect_pair(a: Subspace, b: Subspace, tol: Tolerances) -> Subspace:
    # Principal angles: directions with cosine within rank_rel of 1 are common.
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero_subspace(a.ambient_dim)
    g = a.basis.conj().T @ b.basis
    u, sing, _ = np.linalg.svd(g, full_matrices=False)
    keep = sing >= 1.0 - tol.rank_rel
    if not bool(keep.any()):
        return Subspace.zero_subspace(a.ambient_dim)
    return Subspace.from_span(a.basis @ u[:, keep], tol)


def subspace_intersect(subspaces: Sequence[Subspace], tol: Tolerances = DEFAULT_TOL) -> Subspace:
    """Intersection of the given subspaces, folded pairwise."""
    _same_ambient(subspaces)
    result = subspaces[0]
    for s in subspaces[1:]:
        result = _intersect_pair(result, s, tol)
    return result


class RangeNullspace(NamedTuple):
    range: Subspace
    nullspace: Subspace


def range_nullspace(
    s: HermitianMatrix, tol: Tolerances = DEFAULT_TOL, scale: float | None = None
) -> RangeNullspace:
    """Orthonormal bases of range and null space from the eigendecomposition.

    Eigenvalues within ``rank_rel`` of zero, relative to the largest
    magnitude, count as zero; the two bases always partition the
    eigenvector basis, so their dimensions sum to n exactly.  ``scale``
    anchors the cut to an external magnitude instead, for matrices formed
    as differences whose own norm may be pure rounding noise.
    """
    eig = spectral(s)
    w = eig.eigenvalues
    anchor = max(abs(float(w[0])), abs(float(w[-1]))) if scale is None else float(scale)
    cut = tol.rank_rel * anchor
    mask = np.abs(w) > cut
    v = eig.eigenvectors
    return RangeNullspace(Subspace(v[:, mask]), Subspace(v[:, ~mask]))


class Comparability(enum.Enum):
    LESS_EQUAL = "S<=T"
    GREATER_EQUAL = "T<=S"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def compare(s: HermitianMatrix, t: HermitianMatrix, tol: Tolerances = DEFAULT_TOL) -> Comparability:
    """Two-sided Loewner comparison of ``s`` and ``t``.

    ``s <= t`` holds when the smallest eigenvalue of ``t - s`` is no less
    than ``-psd_rel * (1 + |t - s|)``; the reverse direction mirrors that,
    and both together mean equality at tolerance.
    """
    if s.dim != t.dim:
        raise DimensionMismatch(f"dimensions differ: {s.dim} vs {t.dim}")
    w = np.linalg.eigvalsh((t - s).mat)
    margin = tol.psd_rel * (1.0 + max(abs(float(w[0])), abs(float(w[-1]))))
    leq = w[0] >= -margin
    geq = w[-1] <= margin
    if leq and geq:
        return Comparability.EQUAL
    if leq:
        return Comparability.LESS_EQUAL
    if geq:
        return Comparability.GREATER_EQUAL
    return Comparability.INCOMPARABLE


def loewner_leq(s: HermitianMatrix, t: HermitianMatrix, tol: Tolerances = DEFAULT_TOL) -> bool:
    return compare(s, t, tol) in (Comparability.LESS_EQUAL, Comparability.EQUAL)


def is_psd(s: HermitianMatrix, tol: Tolerances = DEFAULT_TOL) -> bool:
    return loewner_leq(zero(s.dim), s, tol)
