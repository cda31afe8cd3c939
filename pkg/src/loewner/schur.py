"""Block partitioning, the three-part positivity test, generalized Schur
complements, shorted operators, and member-wise quotient sets."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, RangeConditionViolated, TrivialSubspace
from .linalg import (
    DEFAULT_TOL,
    HermitianMatrix,
    MatrixSet,
    Subspace,
    Tolerances,
    _sym,
    is_psd,
    spectral,
)

__all__ = [
    "BlockPartition",
    "AlbertReport",
    "SchurResult",
    "partition_blocks",
    "albert_is_psd",
    "schur_complement",
    "quotient_set",
]


@dataclass(frozen=True)
class BlockPartition:
    """Blocks of a Hermitian matrix in coordinates adapted to (h1, h2).

    ``rotation`` is the unitary ``[basis(h1) | basis(h2)]``; ``reassemble``
    rotates the blocks back to standard coordinates.
    """

    h1: Subspace
    h2: Subspace
    s1: np.ndarray
    s12: np.ndarray
    s2: np.ndarray
    rotation: np.ndarray

    @property
    def dim(self) -> int:
        return self.rotation.shape[0]

    def block_matrix(self) -> np.ndarray:
        top = np.hstack([self.s1, self.s12])
        bottom = np.hstack([self.s12.conj().T, self.s2])
        return np.vstack([top, bottom])

    def reassemble(self) -> HermitianMatrix:
        r = self.rotation
        return HermitianMatrix(r @ self.block_matrix() @ r.conj().T)

    def embed_h2(self, block: np.ndarray) -> HermitianMatrix:
        """Rotate ``[[0, 0], [0, block]]`` back to standard coordinates."""
        k = self.h1.dim
        full = np.zeros((self.dim, self.dim), dtype=np.complex128)
        full[k:, k:] = block
        r = self.rotation
        return HermitianMatrix(r @ full @ r.conj().T)


def partition_blocks(s: HermitianMatrix, h1: Subspace, tol: Tolerances = DEFAULT_TOL) -> BlockPartition:
    """Express ``s`` in block form over h1 and its orthogonal complement."""
    if h1.ambient_dim != s.dim:
        raise DimensionMismatch(
            f"subspace ambient dimension {h1.ambient_dim} does not match matrix dimension {s.dim}"
        )
    if not 0 < h1.dim < s.dim:
        raise TrivialSubspace(
            f"need a proper nontrivial subspace, got dimension {h1.dim} of {s.dim}"
        )
    u1 = h1.basis
    h2 = h1.complement()
    u2 = h2.basis
    s1 = _sym(u1.conj().T @ s.mat @ u1)
    s2 = _sym(u2.conj().T @ s.mat @ u2)
    s12 = u1.conj().T @ s.mat @ u2
    return BlockPartition(h1, h2, s1, s12, s2, np.hstack([u1, u2]))


# Rank decisions on the corner block are floored at the machine-noise level
# of the parent matrix: when the split subspace is a null direction of the
# parent, the corner and coupling blocks are pure rounding noise, and treating
# that noise as invertible would inject arbitrarily large errors into the
# complement.
_NOISE_FLOOR = 64.0 * float(np.finfo(np.float64).eps)


def _corner_analysis(
    part: BlockPartition, tol: Tolerances, anchor: float
) -> tuple[float, float, HermitianMatrix]:
    """Range-condition residual, its threshold, and the complement block.

    A single eigendecomposition of the corner block drives both decisions, so
    the directions the range test treats as null are exactly the directions
    the inversion drops.  Range inclusion is a rank decision, so the threshold
    uses ``rank_rel``; ``anchor`` is the parent matrix's scale.
    """
    eig = spectral(HermitianMatrix(part.s1))
    w = eig.eigenvalues
    v = eig.eigenvectors
    own = max(abs(float(w[0])), abs(float(w[-1])))
    cut = max(tol.rank_rel * own, _NOISE_FLOOR * anchor)
    mask = np.abs(w) > cut
    vr = v[:, mask]
    residual = float(np.linalg.norm(part.s12 - vr @ (vr.conj().T @ part.s12), 2))
    threshold = tol.rank_rel * (1.0 + float(np.linalg.norm(part.s12, 2))) + _NOISE_FLOOR * anchor
    inv_w = np.where(mask, 1.0 / np.where(mask, w, 1.0), 0.0)
    correction = part.s12.conj().T @ ((v * inv_w) @ v.conj().T) @ part.s12
    return residual, threshold, HermitianMatrix(part.s2 - correction)


@dataclass(frozen=True)
class AlbertReport:
    """Outcome of the three-part positivity test over a block split.

    ``failing_condition`` is ``"(i)"`` when the corner block is not PSD,
    ``"(ii)"`` when the coupling block leaves its range, ``"(iii)"`` when the
    generalized Schur complement is not PSD, and ``None`` when all pass.
    """

    is_psd: bool
    failing_condition: str | None


def albert_is_psd(s: HermitianMatrix, h1: Subspace, tol: Tolerances = DEFAULT_TOL) -> AlbertReport:
    """Decide positivity of ``s`` from its blocks over (h1, complement).

    ``s`` is PSD exactly when the corner block is PSD, the coupling block
    stays inside the corner block's range, and the generalized Schur
    complement is PSD.
    """
    part = partition_blocks(s, h1, tol)
    if not is_psd(HermitianMatrix(part.s1), tol):
        return AlbertReport(False, "(i)")
    residual, threshold, complement = _corner_analysis(part, tol, s.norm())
    if residual > threshold:
        return AlbertReport(False, "(ii)")
    if not is_psd(complement, tol):
        return AlbertReport(False, "(iii)")
    return AlbertReport(True, None)


class SchurResult(NamedTuple):
    complement: HermitianMatrix
    shorted: HermitianMatrix


def schur_complement(s: HermitianMatrix, h1: Subspace, tol: Tolerances = DEFAULT_TOL) -> SchurResult:
    """Generalized Schur complement of ``s`` over h1, plus the shorted operator.

    The complement ``s2 - s12* s1^# s12`` lives on the orthogonal complement
    of h1; the shorted operator embeds it back into the full space as
    ``[[0, 0], [0, complement]]`` in (h1, h2) coordinates.  Requires the
    coupling block to stay inside the corner block's range.
    """
    part = partition_blocks(s, h1, tol)
    residual, threshold, complement = _corner_analysis(part, tol, s.norm())
    if residual > threshold:
        raise RangeConditionViolated(
            f"coupling block leaves the range of the corner block "
            f"(residual {residual:.3e} > {threshold:.3e})"
        )
    return SchurResult(complement, part.embed_h2(complement.mat))


def quotient_set(mset: MatrixSet, h1: Subspace, tol: Tolerances = DEFAULT_TOL) -> MatrixSet:
    """Member-wise generalized Schur complements over a shared subspace."""
    complements = []
    for i, member in enumerate(mset):
        try:
            complements.append(schur_complement(member, h1, tol).complement)
        except RangeConditionViolated as exc:
            raise RangeConditionViolated(f"member {i}: {exc}") from exc
    return MatrixSet(complements)
