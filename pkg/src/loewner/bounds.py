"""Lower-bound predicates, maximality certificates, the explicit M_T family
of maximal lower bounds, and the contraction parametrization of the maximal
lower bounds of {J, 0}."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import (
    AngularExtractionFailed,
    ConsistencyError,
    DimensionMismatch,
    NotMaximalForJZero,
    SingularTransform,
)
from .linalg import (
    DEFAULT_TOL,
    HermitianMatrix,
    MatrixSet,
    Subspace,
    Tolerances,
    _freeze,
    loewner_leq,
    matrix_abs,
    range_nullspace,
    spectral,
    sqrt_psd,
    subspace_intersect,
    subspace_sum,
    zero,
)

__all__ = [
    "is_lower_bound",
    "MaximalityCertificate",
    "certify_maximal",
    "is_extreme_certified",
    "mlb_mt",
    "signature_matrix",
    "StottParam",
    "StottPair",
    "stott_mx",
    "stott_recover_x",
    "PairNormalization",
    "normalize_pair",
]


def is_lower_bound(l: HermitianMatrix, mset: MatrixSet, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True when ``l`` is below every member of the set."""
    return all(loewner_leq(l, member, tol) for member in mset)


@dataclass(frozen=True)
class MaximalityCertificate:
    """Null-space spanning certificate for maximality among lower bounds.

    ``per_member_nullspace_dims`` holds dim(null(A - M)) per member; M is
    maximal exactly when it is a lower bound and those null spaces jointly
    span the whole space (``span_dim`` equals the ambient dimension).
    """

    per_member_nullspace_dims: tuple[int, ...]
    span_dim: int
    is_lower_bound: bool
    is_maximal: bool


def certify_maximal(m: HermitianMatrix, mset: MatrixSet, tol: Tolerances = DEFAULT_TOL) -> MaximalityCertificate:
    """Certify whether ``m`` is a maximal lower bound of the set.

    The primal test sums the null spaces of the differences A - M; the dual
    test intersects their ranges and must find only the zero vector.  Both
    are evaluated and must agree, which guards the rank decisions.
    """
    if m.dim != mset.dim:
        raise DimensionMismatch(f"dimensions differ: {m.dim} vs {mset.dim}")
    # the gaps A - M are ranked against the family scale, not their own norm:
    # a gap that is pure rounding noise must count as zero, not full rank
    scale = max(m.norm(), mset.max_norm())
    splits = [range_nullspace(member - m, tol, scale=scale) for member in mset]
    span = subspace_sum([s.nullspace for s in splits], tol)
    meet = subspace_intersect([s.range for s in splits], tol)
    spanning = span.dim == m.dim
    if spanning != (meet.dim == 0):
        raise ConsistencyError(
            "null-space spanning and range-intersection tests disagree "
            f"(span {span.dim} of {m.dim}, intersection {meet.dim})"
        )
    lower = is_lower_bound(m, mset, tol)
    return MaximalityCertificate(
        per_member_nullspace_dims=tuple(s.nullspace.dim for s in splits),
        span_dim=span.dim,
        is_lower_bound=lower,
        is_maximal=lower and spanning,
    )


def is_extreme_certified(m: HermitianMatrix, mset: MatrixSet, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Certified-extreme test for the set of lower bounds.

    A bound passing the spanning certificate is an extreme point of the set
    of lower bounds, and a bound failing it is not maximal, hence not
    extreme.  The test is exactly the maximality certificate.
    """
    return certify_maximal(m, mset, tol).is_maximal


def mlb_mt(a: HermitianMatrix, b: HermitianMatrix, t, tol: Tolerances = DEFAULT_TOL) -> HermitianMatrix:
    """Explicit maximal lower bound of {a, b} attached to an invertible T:

        M_T = (a + b - T* |T^-* (a - b) T^-1| T) / 2.

    M_T depends on T only through |T|, commutes with congruences, and shifts
    along with the pair.
    """
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimensions differ: {a.dim} vs {b.dim}")
    t_arr = np.asarray(t, dtype=np.complex128)
    if t_arr.shape != (a.dim, a.dim):
        raise DimensionMismatch(f"transform has shape {t_arr.shape}, expected {(a.dim, a.dim)}")
    sing = np.linalg.svd(t_arr, compute_uv=False)
    if sing[0] == 0.0 or sing[-1] <= tol.rank_rel * sing[0]:
        raise SingularTransform("the congruence transform must be invertible")
    t_inv = np.linalg.inv(t_arr)
    core = HermitianMatrix(t_inv.conj().T @ (a - b).mat @ t_inv)
    absolute = matrix_abs(core, tol)
    return HermitianMatrix(0.5 * (a.mat + b.mat - t_arr.conj().T @ absolute.mat @ t_arr))


def signature_matrix(p: int, q: int) -> HermitianMatrix:
    """J = diag(I_p, -I_q)."""
    if p < 1 or q < 1:
        raise ValueError("both signature blocks must be nonempty")
    return HermitianMatrix(np.diag(np.concatenate([np.ones(p), -np.ones(q)])))


@dataclass(frozen=True)
class StottParam:
    """A p x q contraction-free parameter X for the {J, 0} family."""

    p: int
    q: int
    x: np.ndarray

    def __post_init__(self) -> None:
        if self.p < 1 or self.q < 1:
            raise ValueError("both blocks must be nonempty")
        arr = np.asarray(self.x, dtype=np.complex128)
        if arr.shape != (self.p, self.q):
            raise DimensionMismatch(f"parameter has shape {arr.shape}, expected {(self.p, self.q)}")
        object.__setattr__(self, "x", _freeze(np.array(arr)))


class StottPair(NamedTuple):
    sx: HermitianMatrix
    mx: HermitianMatrix


def stott_mx(param: StottParam, tol: Tolerances = DEFAULT_TOL) -> StottPair:
    """Maximal lower bound M(X) = J - S(X) of {J, 0} built from X, where

        S(X) = [[I + XX*,          (I + XX*)^(1/2) X],
                [X* (I + XX*)^(1/2), X* X          ]].

    S(X) is PSD with null space of dimension q, M(X) is a maximal lower
    bound of {J, 0}, and X -> M(X) is a bijection onto those bounds.
    """
    x = np.asarray(param.x, dtype=np.complex128)
    p, q = param.p, param.q
    gram = HermitianMatrix(np.eye(p) + x @ x.conj().T)
    root = sqrt_psd(gram, tol).mat
    top = np.hstack([gram.mat, root @ x])
    bottom = np.hstack([x.conj().T @ root, x.conj().T @ x])
    sx = HermitianMatrix(np.vstack([top, bottom]))
    mx = signature_matrix(p, q) - sx
    return StottPair(sx, mx)


def stott_recover_x(m: HermitianMatrix, p: int, q: int, tol: Tolerances = DEFAULT_TOL) -> StottParam:
    """Invert the parametrization: recover X from a maximal lower bound of {J, 0}.

    The null space of M is a graph over the first block with angular
    operator K, a strict contraction, and X = -(I - K*K)^(-1/2) K*.
    The round trip through ``stott_mx`` is verified before returning.
    """
    n = p + q
    if p < 1 or q < 1:
        raise ValueError("both blocks must be nonempty")
    if m.dim != n:
        raise DimensionMismatch(f"matrix has dimension {m.dim}, expected {n}")
    j = signature_matrix(p, q)
    cert = certify_maximal(m, MatrixSet([j, zero(n)]), tol)
    if not cert.is_maximal:
        raise NotMaximalForJZero(
            "the matrix is not a certified maximal lower bound of {J, 0} "
            f"(lower bound: {cert.is_lower_bound}, span {cert.span_dim} of {n})"
        )
    null = range_nullspace(m, tol).nullspace
    if null.dim != p:
        raise AngularExtractionFailed(
            f"null space has dimension {null.dim}, expected {p}"
        )
    v1 = null.basis[:p, :]
    v2 = null.basis[p:, :]
    sing = np.linalg.svd(v1, compute_uv=False)
    if sing.size == 0 or sing[-1] <= tol.rank_rel * max(float(sing[0]), 1.0):
        raise AngularExtractionFailed("null space is not a graph over the positive block")
    k = v2 @ np.linalg.inv(v1)
    c = HermitianMatrix(np.eye(p) - k.conj().T @ k)
    eig = spectral(c)
    w = eig.eigenvalues
    if w[0] <= tol.rank_rel * max(1.0, float(w[-1])):
        raise AngularExtractionFailed("angular operator is not a strict contraction")
    v = eig.eigenvectors
    inv_root = (v * (1.0 / np.sqrt(w))) @ v.conj().T
    param = StottParam(p, q, -(inv_root @ k.conj().T))
    rebuilt = stott_mx(param, tol).mx
    if (rebuilt - m).norm() > tol.eq_rel * (1.0 + m.norm()):
        raise ConsistencyError("recovered parameter does not reproduce the input bound")
    return param


@dataclass(frozen=True)
class PairNormalization:
    """Reduction of a pair {a, b} to the normal form {J, 0}.

    When a - b is invertible, ``transform`` holds a T whose inverse
    congruence takes a - b to the signature matrix:
    ``T^-* (a - b) T^-1 = diag(I_p, -I_q)``.  ``inertia`` counts the
    (positive, zero, negative) eigenvalues of a - b at the rank tolerance;
    a singular difference has no J-form and ``transform`` is None.
    """

    has_j_form: bool
    transform: np.ndarray | None
    inertia: tuple[int, int, int]


def normalize_pair(a: HermitianMatrix, b: HermitianMatrix, tol: Tolerances = DEFAULT_TOL) -> PairNormalization:
    """Shift {a, b} to {a - b, 0} and diagonalize the difference to J-form."""
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimensions differ: {a.dim} vs {b.dim}")
    eig = spectral(a - b)
    w = eig.eigenvalues
    cut = tol.rank_rel * max(abs(float(w[0])), abs(float(w[-1])))
    positives = int(np.sum(w > cut))
    negatives = int(np.sum(w < -cut))
    zeros = a.dim - positives - negatives
    inertia = (positives, zeros, negatives)
    if zeros:
        return PairNormalization(False, None, inertia)
    order = np.argsort(-w, kind="stable")
    lam = w[order]
    u = eig.eigenvectors[:, order]
    transform = (np.sqrt(np.abs(lam))[:, None]) * u.conj().T
    return PairNormalization(True, _freeze(transform), inertia)
