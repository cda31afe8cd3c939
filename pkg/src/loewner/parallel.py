"""Parallel sums, the range-shrinking limit [A]B, and greatest positive
lower bounds of pairs of PSD matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotPositiveSemidefinite
from .linalg import (
    DEFAULT_TOL,
    Comparability,
    HermitianMatrix,
    MatrixSet,
    Subspace,
    Tolerances,
    compare,
    is_psd,
    pinv,
    range_nullspace,
    spectral,
    sqrt_psd,
)

__all__ = [
    "parallel_sum",
    "parallel_sum_family",
    "ando_limit",
    "TwoOpGlbResult",
    "two_op_positive_glb",
]


def _require_psd(m: HermitianMatrix, tol: Tolerances, what: str) -> None:
    if not is_psd(m, tol):
        raise NotPositiveSemidefinite(f"{what} must be positive semidefinite")


def parallel_sum(a: HermitianMatrix, b: HermitianMatrix, tol: Tolerances = DEFAULT_TOL) -> HermitianMatrix:
    """Parallel sum ``a : b = a (a + b)^# b`` of two PSD matrices.

    The result is PSD, bounded by both arguments, and its range is the
    intersection of the ranges of the arguments; downstream code relies on
    that range identity.  Eigenvalues of the product below ``rank_rel``
    relative to the inputs' scale are rounded to exact zero: when the
    ranges meet only at the origin the product is pure rounding noise, and
    ranking it against its own largest eigenvalue would hand a zero matrix
    a full-dimensional range.
    """
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimensions differ: {a.dim} vs {b.dim}")
    _require_psd(a, tol, "first argument")
    _require_psd(b, tol, "second argument")
    inverse = pinv(a + b, tol)
    raw = HermitianMatrix(a.mat @ inverse.mat @ b.mat)
    eig = spectral(raw)
    cut = tol.rank_rel * max(a.norm(), b.norm())
    values = np.where(np.abs(eig.eigenvalues) > cut, eig.eigenvalues, 0.0)
    v = eig.eigenvectors
    return HermitianMatrix((v * values) @ v.conj().T)


def parallel_sum_family(mset: MatrixSet, tol: Tolerances = DEFAULT_TOL) -> HermitianMatrix:
    """Left fold of the parallel sum over a family; a singleton folds to itself."""
    result = mset[0]
    _require_psd(result, tol, "member 0")
    for i, member in enumerate(mset.members[1:], start=1):
        _require_psd(member, tol, f"member {i}")
        result = parallel_sum(result, member, tol)
    return result


def ando_limit(a: HermitianMatrix, b: HermitianMatrix, tol: Tolerances = DEFAULT_TOL) -> HermitianMatrix:
    """The limit [a]b of the decreasing sequence b : (n a) as n grows.

    In finite dimension the limit collapses to ``b^(1/2) P b^(1/2)`` where P
    projects onto the vectors whose image under ``b^(1/2)`` lies in the range
    of ``a``.  [a]b is the largest PSD matrix below b whose square root's
    range lies inside the range of ``a^(1/2)``; when the range of ``b^(1/2)``
    is already inside, [a]b equals b.
    """
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimensions differ: {a.dim} vs {b.dim}")
    _require_psd(a, tol, "first argument")
    _require_psd(b, tol, "second argument")
    broot = sqrt_psd(b, tol)
    p_range_a = range_nullspace(a, tol).range.projector()
    residual_map = broot.mat - p_range_a @ broot.mat
    # The zero decision is relative to |b^(1/2)|, the largest value the
    # residual map could take, not to the residual's own largest singular
    # value; a pure-noise residual must produce the full null space.
    scale = broot.norm()
    _, sing, vh = np.linalg.svd(residual_map)
    rank = int(np.sum(sing > tol.rank_rel * scale))
    v = Subspace(vh[rank:].conj().T)
    return HermitianMatrix(broot.mat @ v.projector() @ broot.mat)


@dataclass(frozen=True)
class TwoOpGlbResult:
    """Existence analysis of the greatest positive lower bound of a pair.

    The bound exists exactly when [a]b and [b]a are comparable, and then it
    is the smaller of the two.
    """

    exists: bool
    glb: HermitianMatrix | None
    ando_ab: HermitianMatrix
    ando_ba: HermitianMatrix
    comparability: Comparability


def two_op_positive_glb(a: HermitianMatrix, b: HermitianMatrix, tol: Tolerances = DEFAULT_TOL) -> TwoOpGlbResult:
    """Greatest positive lower bound of two PSD matrices, when it exists."""
    ab = ando_limit(a, b, tol)
    ba = ando_limit(b, a, tol)
    verdict = compare(ab, ba, tol)
    if verdict in (Comparability.LESS_EQUAL, Comparability.EQUAL):
        return TwoOpGlbResult(True, ab, ab, ba, verdict)
    if verdict is Comparability.GREATER_EQUAL:
        return TwoOpGlbResult(True, ba, ab, ba, verdict)
    return TwoOpGlbResult(False, None, ab, ba, verdict)
