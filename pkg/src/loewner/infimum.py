"""Infima of finite sets, greatest lower bounds under commutation, the
positive maximal lower bound recursion, maximal extensions, distinct
maximal lower bounds, and greatest positive lower bounds of families."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bounds import certify_maximal, is_lower_bound, mlb_mt
from .errors import (
    ConsistencyError,
    DistinctnessFailure,
    InfimumExists,
    NotCommutingFamily,
    NotLowerBound,
    NotPositiveSemidefinite,
    RangeConditionViolated,
    SchurRangeViolation,
    UsageError,
)
from .linalg import (
    DEFAULT_TOL,
    HermitianMatrix,
    MatrixSet,
    Subspace,
    Tolerances,
    _sym,
    fix_column_phases,
    identity,
    is_psd,
    loewner_leq,
    matrix_abs,
    range_nullspace,
    spectral,
)
from .parallel import ando_limit, parallel_sum_family
from .sampling import random_invertible, random_psd
from .schur import quotient_set

__all__ = [
    "InfimumReport",
    "finite_infimum",
    "pairwise_commuting",
    "simultaneous_eigenbasis",
    "commuting_glb",
    "commuting_glb_two_routes",
    "commutant_basis",
    "positive_maximal_lb",
    "extend_to_maximal",
    "distinct_maximals",
    "PositiveGlbReport",
    "positive_glb_family",
]


@dataclass(frozen=True)
class InfimumReport:
    """Existence analysis for the infimum of a finite set.

    Two Hermitian matrices have an infimum only when they are comparable, so
    a finite set has one exactly when some member is below every other
    member; that member is the infimum.
    """

    exists: bool
    infimum: HermitianMatrix | None
    minimizing_index: int | None


def finite_infimum(mset: MatrixSet, tol: Tolerances = DEFAULT_TOL) -> InfimumReport:
    """Scan for a member below all others; first such member wins."""
    for i, candidate in enumerate(mset):
        if all(loewner_leq(candidate, member, tol) for member in mset):
            return InfimumReport(True, candidate, i)
    return InfimumReport(False, None, None)


def pairwise_commuting(mset: MatrixSet, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True when every pair of members commutes within tolerance."""
    try:
        _check_commuting(mset, tol)
    except NotCommutingFamily:
        return False
    return True


def _check_commuting(mset: MatrixSet, tol: Tolerances) -> None:
    for i in range(len(mset)):
        for j in range(i + 1, len(mset)):
            a, b = mset[i].mat, mset[j].mat
            gap = float(np.linalg.norm(a @ b - b @ a, 2))
            bound = tol.eq_rel * (1.0 + mset[i].norm() * mset[j].norm())
            if gap > bound:
                raise NotCommutingFamily(
                    f"members {i} and {j} do not commute (commutator norm {gap:.3e})"
                )


# Eigenvalues closer than this (relative to the family scale) are kept in one
# cluster and left for later members to refine; splitting near-degenerate
# pairs is what destabilizes a joint eigenbasis, merging them never does.
_CLUSTER_REL = 1e-5


def simultaneous_eigenbasis(mset: MatrixSet, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Common unitary eigenbasis of a pairwise commuting family.

    Starts from the whole space as one cluster and refines member by member:
    each member is diagonalized inside the current clusters, and a cluster
    splits wherever consecutive eigenvalues jump by more than the clustering
    width.
    """
    n = mset.dim
    basis = np.eye(n, dtype=np.complex128)
    clusters: list[list[int]] = [list(range(n))]
    width = _CLUSTER_REL * (1.0 + mset.max_norm())
    for member in mset:
        refined: list[list[int]] = []
        for idx in clusters:
            if len(idx) == 1:
                refined.append(idx)
                continue
            cols = basis[:, idx]
            w, v = np.linalg.eigh(_sym(cols.conj().T @ member.mat @ cols))
            basis[:, idx] = cols @ v
            start = 0
            for t in range(1, len(idx)):
                if w[t] - w[t - 1] > width:
                    refined.append(idx[start:t])
                    start = t
            refined.append(idx[start:])
        clusters = refined
    return fix_column_phases(basis)


def commuting_glb_two_routes(
    mset: MatrixSet, tol: Tolerances = DEFAULT_TOL
) -> tuple[HermitianMatrix, HermitianMatrix]:
    """Both routes to the commuting greatest lower bound, without the
    agreement assertion: the pairwise fold M <- (M + A - |M - A|)/2 and the
    entrywise diagonal minimum in a joint eigenbasis."""
    _check_commuting(mset, tol)
    folded = mset[0]
    for member in mset.members[1:]:
        gap = matrix_abs(folded - member, tol)
        folded = HermitianMatrix(0.5 * (folded.mat + member.mat - gap.mat))
    basis = simultaneous_eigenbasis(mset, tol)
    diagonals = np.stack(
        [np.real(np.diagonal(basis.conj().T @ member.mat @ basis)) for member in mset]
    )
    joint = HermitianMatrix((basis * diagonals.min(axis=0)) @ basis.conj().T)
    return folded, joint


# Two independent routes to the same matrix must agree this tightly,
# relative to the family scale.
_TWO_ROUTE_REL = 1e-10


def commuting_glb(mset: MatrixSet, tol: Tolerances = DEFAULT_TOL) -> HermitianMatrix:
    """Greatest lower bound among matrices commuting with every member.

    For a pairwise commuting family the bound is simultaneously
    diagonalizable with the members and carries the entrywise minimum of
    their joint diagonals.  The pairwise fold and the joint-diagonal routes
    are both evaluated and must agree; the fold is returned.
    """
    folded, joint = commuting_glb_two_routes(mset, tol)
    scale = 1.0 + mset.max_norm()
    gap = (folded - joint).norm()
    if gap > _TWO_ROUTE_REL * scale:
        raise ConsistencyError(
            f"pairwise fold and joint diagonalization disagree by {gap:.3e}"
        )
    return folded


def commutant_basis(mset: MatrixSet, tol: Tolerances = DEFAULT_TOL) -> list[np.ndarray]:
    """Basis of the algebra of matrices commuting with every member.

    Solves A X - X A = 0 for all members jointly, as one stacked linear
    system on vectorized X.  The identity is always present, so the result
    has at least one element.
    """
    n = mset.dim
    eye = np.eye(n)
    rows = []
    for member in mset:
        a = member.mat
        rows.append(np.kron(a, eye) - np.kron(eye, a.T))
    system = np.vstack(rows)
    _, sing, vh = np.linalg.svd(system)
    cut = tol.rank_rel * (float(sing[0]) if sing.size and sing[0] > 0 else 1.0)
    rank = int(np.sum(sing > cut))
    null = vh[rank:].conj().T
    return [null[:, j].reshape(n, n) for j in range(null.shape[1])]


def positive_maximal_lb(mset: MatrixSet, tol: Tolerances = DEFAULT_TOL) -> HermitianMatrix:
    """Positive maximal lower bound of a finite family of PSD matrices.

    Recursion on the dimension: shift the family so its smallest member
    eigenvalue is zero, split off the eigenvector attaining it, take
    generalized Schur complements of the shifted members over that line,
    recurse on the quotient family, and lift the result back.  The output
    is PSD, a lower bound, and certified maximal.
    """
    for i, member in enumerate(mset):
        if not is_psd(member, tol):
            raise NotPositiveSemidefinite(f"member {i} is not positive semidefinite")
    return _positive_mlb(mset, tol)


def _positive_mlb(mset: MatrixSet, tol: Tolerances) -> HermitianMatrix:
    n = mset.dim
    eigs = [spectral(member) for member in mset]
    minima = [float(e.eigenvalues[0]) for e in eigs]
    k = int(np.argmin(minima))
    gamma = minima[k]
    if n == 1:
        return HermitianMatrix([[gamma]])
    shift = gamma * identity(n)
    shifted = MatrixSet(member - shift for member in mset)
    pivot = eigs[k].eigenvectors[:, 0]
    line = Subspace(pivot[:, None])
    try:
        reduced = quotient_set(shifted, line, tol)
    except RangeConditionViolated as exc:
        raise SchurRangeViolation(
            f"splitting at the minimizing eigenvector broke down: {exc}"
        ) from exc
    inner = _positive_mlb(reduced, tol)
    rotation = np.hstack([pivot[:, None], line.complement().basis])
    lifted = np.zeros((n, n), dtype=np.complex128)
    lifted[1:, 1:] = inner.mat
    return HermitianMatrix(rotation @ lifted @ rotation.conj().T + gamma * np.eye(n))


def extend_to_maximal(l: HermitianMatrix, mset: MatrixSet, tol: Tolerances = DEFAULT_TOL) -> HermitianMatrix:
    """Extend a lower bound to a maximal one above it.

    Shifting the family by L reduces the problem to the positive maximal
    lower bound of the shifted family; adding L back gives a maximal lower
    bound dominating L.  A maximal L is its own extension.
    """
    if l.dim != mset.dim:
        raise NotLowerBound(f"dimensions differ: {l.dim} vs {mset.dim}")
    if not is_lower_bound(l, mset, tol):
        raise NotLowerBound("the given matrix is not a lower bound of the set")
    return l + _positive_mlb(mset.minus(l), tol)


# Constructed maximal bounds count as distinct only when separated by at
# least this much, relative to the family scale.
_DISTINCT_REL = 1e-6

_MAX_ROUTE_TRIES = 24


def _floor_bound(mset: MatrixSet) -> HermitianMatrix:
    gamma = min(member.min_eigenvalue() for member in mset)
    return gamma * identity(mset.dim)


def distinct_maximals(
    mset: MatrixSet,
    count: int,
    tol: Tolerances = DEFAULT_TOL,
    seed: int | tuple[int, ...] = 0,
) -> list[HermitianMatrix]:
    """``count`` pairwise distinct certified maximal lower bounds.

    Requires a set without an infimum (otherwise the infimum is the only
    maximal lower bound).  The first bound comes from the explicit pair
    formula or a maximal extension; the second from a randomized route
    (random congruence transform, or a jittered starting bound); later ones
    extend convex combinations of earlier bounds, which always lands on a
    fresh maximal element.
    """
    if count < 2:
        raise UsageError("count must be at least 2")
    if finite_infimum(mset, tol).exists:
        raise InfimumExists("the set has an infimum; it is the only maximal lower bound")
    seed_key = [int(s) for s in (seed if isinstance(seed, tuple) else (seed,))]
    rng = np.random.default_rng(np.random.SeedSequence(seed_key))
    n = mset.dim
    scale = 1.0 + mset.max_norm()
    separation = max(tol.eq_rel, _DISTINCT_REL) * scale
    floor = _floor_bound(mset)

    def certified(candidate: HermitianMatrix) -> HermitianMatrix:
        cert = certify_maximal(candidate, mset, tol)
        if not cert.is_maximal:
            raise ConsistencyError("a constructed bound failed its maximality certificate")
        return candidate

    def separated(candidate: HermitianMatrix, chosen: list[HermitianMatrix]) -> bool:
        return all((candidate - other).norm() > separation for other in chosen)

    if len(mset) == 2:
        first = mlb_mt(mset[0], mset[1], np.eye(n), tol)
    else:
        first = extend_to_maximal(floor, mset, tol)
    out = [certified(first)]

    for _ in range(_MAX_ROUTE_TRIES):
        if len(mset) == 2:
            candidate = mlb_mt(mset[0], mset[1], random_invertible(rng, n), tol)
        else:
            jitter = random_psd(rng, n)
            jitter = (0.25 * scale / (1.0 + jitter.norm())) * jitter
            candidate = extend_to_maximal(floor - jitter, mset, tol)
        if separated(candidate, out):
            out.append(certified(candidate))
            break
    else:
        raise DistinctnessFailure("randomized routes kept reproducing the first bound")

    while len(out) < count:
        thetas = [0.5] + [float(rng.uniform(0.25, 0.75)) for _ in range(_MAX_ROUTE_TRIES)]
        for theta in thetas:
            blend = HermitianMatrix(theta * out[0].mat + (1.0 - theta) * out[-1].mat)
            candidate = extend_to_maximal(blend, mset, tol)
            if separated(candidate, out):
                out.append(certified(candidate))
                break
        else:
            raise DistinctnessFailure(
                f"could not separate bound {len(out) + 1} from the earlier ones"
            )
    return out


@dataclass(frozen=True)
class PositiveGlbReport:
    """Greatest positive lower bound analysis for a finite PSD family.

    ``s_parallel`` is the fold of the parallel sum over the family and
    ``k_subspace`` its range, the intersection of the members' square-root
    ranges.  ``tilde_set`` holds [S]A per member A; the greatest positive
    lower bound exists exactly when that set has an infimum, and then equals
    it.
    """

    k_subspace: Subspace
    s_parallel: HermitianMatrix
    tilde_set: MatrixSet
    exists: bool
    glb: HermitianMatrix | None
    minimizing_index: int | None


def positive_glb_family(mset: MatrixSet, tol: Tolerances = DEFAULT_TOL) -> PositiveGlbReport:
    """Existence and value of the greatest positive lower bound of a family."""
    for i, member in enumerate(mset):
        if not is_psd(member, tol):
            raise NotPositiveSemidefinite(f"member {i} is not positive semidefinite")
    s = parallel_sum_family(mset, tol)
    k = range_nullspace(s, tol).range
    tilde = MatrixSet(ando_limit(s, member, tol) for member in mset)
    report = finite_infimum(tilde, tol)
    if report.exists:
        glb = report.infimum
        projector = k.projector()
        leak = float(np.linalg.norm(glb.mat - projector @ glb.mat @ projector, 2))
        if leak > tol.eq_rel * (1.0 + glb.norm()):
            raise ConsistencyError(
                f"the bound leaks outside the common range subspace by {leak:.3e}"
            )
    return PositiveGlbReport(k, s, tilde, report.exists, report.infimum, report.minimizing_index)
