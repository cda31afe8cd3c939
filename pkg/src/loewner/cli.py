"""Command-line interface for the Loewner-order toolkit.

Every subcommand reads matrix sets as JSON documents (see ``documents``),
emits an annotated human report by default or a byte-stable JSON report with
``--json``, and exits with 0 on success, 1 on usage errors, 2 on validation
or parse errors, and 3 on numerical failures.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from .bounds import (
    StottParam,
    certify_maximal,
    is_extreme_certified,
    is_lower_bound,
    mlb_mt,
    signature_matrix,
    stott_mx,
    stott_recover_x,
)
from .constrained import constrained_at_vector, maximal_in_lu
from .documents import MatrixSetDocument, emit_document, parse_document
from .ensembles import DEFAULT_DIMS, SUITE_NAMES, ensemble_run
from .errors import (
    LoewnerError,
    NotCommutingFamily,
    NumericalFailure,
    ParseError,
    UsageError,
    ValidationError,
)
from .fixtures import FIXTURE_NAMES, fixture
from .infimum import (
    commutant_basis,
    commuting_glb,
    finite_infimum,
    pairwise_commuting,
    positive_glb_family,
    positive_maximal_lb,
)
from .linalg import (
    DEFAULT_TOL,
    HermitianMatrix,
    MatrixSet,
    Tolerances,
    compare,
    hermitize,
    identity,
    loewner_leq,
    range_nullspace,
    subspace_intersect,
)
from .parallel import parallel_sum_family, two_op_positive_glb
from .report import (
    RunReport,
    canonical_digest,
    encode_array,
    encode_certificate,
    encode_matrix,
    encode_matrix_or_none,
    encode_set,
)
from .infimum import extend_to_maximal

__all__ = ["main"]


def _fail(exc: Exception) -> None:
    print(f"error: {exc}", file=sys.stderr)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _read_document(args, tol: Tolerances) -> MatrixSetDocument:
    return parse_document(_read_text(args.input), tol)


def _require_arity(doc: MatrixSetDocument, count: int, command: str) -> None:
    if len(doc.matrix_set) != count:
        raise UsageError(
            f"{command} needs exactly {count} matrices, got {len(doc.matrix_set)}"
        )


def _entry_value(value, where: str) -> complex:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(float(value), 0.0)
    if (
        isinstance(value, list)
        and len(value) == 2
        and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in value)
    ):
        return complex(float(value[0]), float(value[1]))
    raise ParseError(f"{where}: expected a number or an [re, im] pair")


def _arg_payload(value: str, name: str):
    text = value
    if value.startswith("@"):
        text = _read_text(value[1:])
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{name}: invalid JSON: {exc.msg}") from exc


def _parse_matrix_arg(value: str, name: str) -> np.ndarray:
    payload = _arg_payload(value, name)
    if not isinstance(payload, list) or not payload or not all(isinstance(r, list) for r in payload):
        raise ParseError(f"{name}: expected a 2-d array")
    width = len(payload[0])
    if width == 0 or any(len(r) != width for r in payload):
        raise ValidationError(f"{name}: rows have unequal lengths")
    out = np.zeros((len(payload), width), dtype=np.complex128)
    for r, row in enumerate(payload):
        for c, entry in enumerate(row):
            out[r, c] = _entry_value(entry, f"{name}[{r}][{c}]")
    return out


def _parse_vector_arg(value: str, name: str) -> np.ndarray:
    payload = _arg_payload(value, name)
    if not isinstance(payload, list) or not payload:
        raise ParseError(f"{name}: expected a nonempty 1-d array")
    return np.array([_entry_value(e, f"{name}[{i}]") for i, e in enumerate(payload)])


def _parse_dims(text: str) -> tuple[int, int]:
    try:
        if ":" in text:
            lo, hi = text.split(":", 1)
            return int(lo), int(hi)
        single = int(text)
        return single, single
    except ValueError as exc:
        raise UsageError(f"--dims expects LO:HI or N, got {text!r}") from exc


def _doc_payload(doc: MatrixSetDocument) -> dict:
    return {
        "dim": doc.dim,
        "matrices": encode_set(doc.matrix_set),
        "labels": list(doc.labels) if doc.labels else None,
    }


# ---------------------------------------------------------------------------
# command handlers: each returns (verdicts, notes, digest_inputs, seed_or_None)


def _cmd_check_order(args, tol):
    doc = _read_document(args, tol)
    _require_arity(doc, 2, "check-order")
    s, t = doc.matrix_set[0], doc.matrix_set[1]
    verdict = compare(s, t, tol)
    verdicts = {
        "comparability": verdict.value,
        "first_below_second": loewner_leq(s, t, tol),
        "second_below_first": loewner_leq(t, s, tol),
    }
    notes = (
        "S <= T in the Loewner order exactly when T - S is positive semidefinite;"
        " eigenvalues above -psd_rel * (1 + |T - S|) count as nonnegative.",
    )
    return verdicts, notes, _doc_payload(doc), None


def _cmd_infimum(args, tol):
    doc = _read_document(args, tol)
    report = finite_infimum(doc.matrix_set, tol)
    verdicts = {
        "exists": report.exists,
        "minimizing_index": report.minimizing_index,
        "minimizing_label": (
            doc.label_of(report.minimizing_index) if report.exists else None
        ),
        "infimum": encode_matrix_or_none(report.infimum),
    }
    notes = (
        "a finite set has an infimum exactly when one member is a lower bound of"
        " all members; incomparable matrices never have one, so nonexistence is"
        " the generic outcome.",
    )
    return verdicts, notes, _doc_payload(doc), None


def _cmd_certify(args, tol):
    doc = _read_document(args, tol)
    candidate = hermitize(_parse_matrix_arg(args.candidate, "--candidate"), tol)
    cert = certify_maximal(candidate, doc.matrix_set, tol)
    verdicts = {
        "is_lower_bound": cert.is_lower_bound,
        "certificate": encode_certificate(cert),
        "is_maximal": cert.is_maximal,
        "extreme_certified": is_extreme_certified(candidate, doc.matrix_set, tol),
    }
    notes = (
        "maximality holds exactly when the null spaces of the gaps A - M jointly"
        " span the whole space; a passing certificate also marks M as an extreme"
        " point of the lower-bound set.",
    )
    digest = {"set": _doc_payload(doc), "candidate": encode_matrix(candidate)}
    return verdicts, notes, digest, None


def _cmd_maximal_extend(args, tol):
    doc = _read_document(args, tol)
    lower = hermitize(_parse_matrix_arg(args.lower, "--lower"), tol)
    extension = extend_to_maximal(lower, doc.matrix_set, tol)
    cert = certify_maximal(extension, doc.matrix_set, tol)
    verdicts = {
        "extension": encode_matrix(extension),
        "certificate": encode_certificate(cert),
        "dominates_input": loewner_leq(lower, extension, tol),
    }
    notes = (
        "the extension adds a positive maximal lower bound of the family shifted"
        " by the input, so it dominates the input and is itself maximal.",
    )
    digest = {"set": _doc_payload(doc), "lower": encode_matrix(lower)}
    return verdicts, notes, digest, None


def _cmd_commuting_glb(args, tol):
    doc = _read_document(args, tol)
    mset = doc.matrix_set
    commuting = pairwise_commuting(mset, tol)
    commutant = commutant_basis(mset, tol)
    notes: list[str] = []
    if commuting:
        glb = commuting_glb(mset, tol)
        notes.append(
            "for a pairwise commuting family the bound carries the entrywise"
            " minimum of the joint diagonals; a pairwise fold and a joint"
            " diagonalization were compared and agree."
        )
    elif len(commutant) == 1:
        gamma = min(member.min_eigenvalue() for member in mset)
        glb = gamma * identity(mset.dim)
        notes.append(
            "the members do not pairwise commute and only scalars commute with"
            " all of them, so the commuting lower bounds are c I with c at most"
            " every member's smallest eigenvalue; the greatest one is reported."
        )
    else:
        raise NotCommutingFamily(
            "members neither pairwise commute nor have a scalar-only commutant;"
            " the greatest commuting lower bound is not computed for this case"
        )
    cert = certify_maximal(glb, mset, tol)
    notes.append(
        "a commuting maximal lower bound exists exactly when this bound"
        " certifies maximal, and it is then the unique one."
    )
    verdicts = {
        "pairwise_commuting": commuting,
        "commutant_dimension": len(commutant),
        "glb": encode_matrix(glb),
        "certificate": encode_certificate(cert),
        "commuting_maximal_exists": cert.is_maximal,
    }
    return verdicts, tuple(notes), _doc_payload(doc), None


def _cmd_positive_mlb(args, tol):
    doc = _read_document(args, tol)
    bound = positive_maximal_lb(doc.matrix_set, tol)
    cert = certify_maximal(bound, doc.matrix_set, tol)
    verdicts = {
        "bound": encode_matrix(bound),
        "certificate": encode_certificate(cert),
        "smallest_member_eigenvalue": min(m.min_eigenvalue() for m in doc.matrix_set),
    }
    notes = (
        "built by recursive splitting at the eigenvector attaining the smallest"
        " member eigenvalue; the certificate re-checks maximality from scratch.",
    )
    return verdicts, notes, _doc_payload(doc), None


def _cmd_positive_glb(args, tol):
    doc = _read_document(args, tol)
    report = positive_glb_family(doc.matrix_set, tol)
    verdicts = {
        "exists": report.exists,
        "common_range_dim": report.k_subspace.dim,
        "parallel_sum": encode_matrix(report.s_parallel),
        "tilde_set": encode_set(report.tilde_set),
        "glb": encode_matrix_or_none(report.glb),
        "minimizing_index": report.minimizing_index,
        "minimizing_label": (
            doc.label_of(report.minimizing_index) if report.exists else None
        ),
    }
    notes = (
        "S is the parallel-sum fold of the family and its range K the common"
        " effective subspace; the greatest positive lower bound exists exactly"
        " when the compressed family {[S]A} has a minimum member, and equals it.",
    )
    return verdicts, notes, _doc_payload(doc), None


def _cmd_mlb_mt(args, tol):
    doc = _read_document(args, tol)
    _require_arity(doc, 2, "mlb-mt")
    a, b = doc.matrix_set[0], doc.matrix_set[1]
    if args.transform is None:
        transform = np.eye(doc.dim, dtype=np.complex128)
    else:
        transform = _parse_matrix_arg(args.transform, "--transform")
    bound = mlb_mt(a, b, transform, tol)
    cert = certify_maximal(bound, doc.matrix_set, tol)
    verdicts = {
        "bound": encode_matrix(bound),
        "certificate": encode_certificate(cert),
    }
    notes = (
        "M_T = (A + B - T*|T^-*(A - B)T^-1|T) / 2 is a maximal lower bound of"
        " {A, B} for every invertible T and depends on T only through |T|.",
    )
    digest = {"set": _doc_payload(doc), "transform": encode_array(transform)}
    return verdicts, notes, digest, None


def _cmd_stott(args, tol):
    p, q = args.p, args.q
    if p < 1 or q < 1:
        raise UsageError("--p and --q must both be at least 1")
    if (args.x is None) == (args.matrix is None):
        raise UsageError("stott needs exactly one of --x or --matrix")
    if args.x is not None:
        x = _parse_matrix_arg(args.x, "--x")
        pair = stott_mx(StottParam(p, q, x), tol)
        mset = MatrixSet([signature_matrix(p, q), HermitianMatrix(np.zeros((p + q, p + q)))])
        cert = certify_maximal(pair.mx, mset, tol)
        verdicts = {
            "mode": "build",
            "s_matrix": encode_matrix(pair.sx),
            "m_matrix": encode_matrix(pair.mx),
            "certificate": encode_certificate(cert),
            "nullspace_dim_s": range_nullspace(pair.sx, tol).nullspace.dim,
            "nullspace_dim_m": range_nullspace(pair.mx, tol).nullspace.dim,
        }
        notes = (
            "M(X) = J - S(X) runs over all maximal lower bounds of {J, 0}"
            " exactly once as X runs over p x q matrices.",
        )
        digest = {"p": p, "q": q, "x": encode_array(x)}
        return verdicts, notes, digest, None
    m = hermitize(_parse_matrix_arg(args.matrix, "--matrix"), tol)
    param = stott_recover_x(m, p, q, tol)
    rebuilt = stott_mx(param, tol).mx
    verdicts = {
        "mode": "recover",
        "x": encode_array(param.x),
        "roundtrip_error": (rebuilt - m).norm(),
    }
    notes = (
        "X is recovered from the angular operator of the null space of M, which"
        " is a graph over the positive block whenever M is maximal for {J, 0}.",
    )
    digest = {"p": p, "q": q, "matrix": encode_matrix(m)}
    return verdicts, notes, digest, None


def _cmd_constrained(args, tol):
    doc = _read_document(args, tol)
    u = _parse_vector_arg(args.u, "--u")
    report = constrained_at_vector(doc.matrix_set, u, tol)
    element = maximal_in_lu(doc.matrix_set, u, tol)
    verdicts = {
        "alpha": report.alpha,
        "attaining_indices": list(report.mu_indices),
        "attaining_labels": [doc.label_of(i) for i in report.mu_indices],
        "attainers_agree": report.attainers_agree,
        "constrained_family_empty": not report.attainers_agree,
        "reduced_set": (
            encode_set(report.reduced_set) if report.reduced_set is not None else None
        ),
        "witness_row": (
            encode_array(report.witness_row) if report.witness_row is not None else None
        ),
        "maximal_element": encode_matrix_or_none(element),
        "certificate": (
            encode_certificate(certify_maximal(element, doc.matrix_set, tol))
            if element is not None
            else None
        ),
    }
    notes = (
        "a lower bound matching the set minimum alpha at u exists exactly when"
        " every member attaining alpha sends u to one common vector; the problem"
        " then reduces to lower bounds of a smaller family on the complement of u.",
    )
    digest = {"set": _doc_payload(doc), "u": encode_array(u)}
    return verdicts, notes, digest, None


def _cmd_parallel_sum(args, tol):
    doc = _read_document(args, tol)
    total = parallel_sum_family(doc.matrix_set, tol)
    ranges = [range_nullspace(m, tol).range for m in doc.matrix_set]
    meet = subspace_intersect(ranges, tol)
    verdicts = {
        "parallel_sum": encode_matrix(total),
        "rank": range_nullspace(total, tol).range.dim,
        "common_range_dim": meet.dim,
        "below_every_member": is_lower_bound(total, doc.matrix_set, tol),
    }
    notes = (
        "the parallel sum is the matrix analogue of resistors in parallel; its"
        " range is the intersection of the member ranges.",
    )
    return verdicts, notes, _doc_payload(doc), None


def _cmd_ando(args, tol):
    doc = _read_document(args, tol)
    _require_arity(doc, 2, "ando")
    a, b = doc.matrix_set[0], doc.matrix_set[1]
    result = two_op_positive_glb(a, b, tol)
    verdicts = {
        "ando_ab": encode_matrix(result.ando_ab),
        "ando_ba": encode_matrix(result.ando_ba),
        "comparability": result.comparability.value,
        "exists": result.exists,
        "glb": encode_matrix_or_none(result.glb),
    }
    notes = (
        "[A]B is the largest part of B supported inside the range of A; the"
        " greatest positive lower bound of the pair exists exactly when [A]B"
        " and [B]A are comparable, and is then the smaller of the two.",
    )
    return verdicts, notes, _doc_payload(doc), None


def _cmd_ensemble(args, tol):
    dims = _parse_dims(args.dims) if args.dims else DEFAULT_DIMS.get(args.suite)
    verdicts = ensemble_run(args.suite, args.trials, dims, args.seed, tol)
    verdicts = {"suite": args.suite, "dims": list(dims) if dims else None, **verdicts}
    notes = (
        "seeded suite: identical seed, trials, dims, and tolerances reproduce"
        " this report byte for byte.",
    )
    digest = {"suite": args.suite, "trials": args.trials, "dims": list(dims) if dims else None}
    return verdicts, notes, digest, args.seed


_HANDLERS = {
    "check-order": _cmd_check_order,
    "infimum": _cmd_infimum,
    "certify": _cmd_certify,
    "maximal-extend": _cmd_maximal_extend,
    "commuting-glb": _cmd_commuting_glb,
    "positive-mlb": _cmd_positive_mlb,
    "positive-glb": _cmd_positive_glb,
    "mlb-mt": _cmd_mlb_mt,
    "stott": _cmd_stott,
    "constrained": _cmd_constrained,
    "parallel-sum": _cmd_parallel_sum,
    "ando": _cmd_ando,
    "ensemble": _cmd_ensemble,
}


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol-rank", type=float, default=DEFAULT_TOL.rank_rel,
                        help="relative rank threshold")
    common.add_argument("--tol-psd", type=float, default=DEFAULT_TOL.psd_rel,
                        help="relative positivity threshold")
    common.add_argument("--tol-eq", type=float, default=DEFAULT_TOL.eq_rel,
                        help="relative equality threshold")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized runs")
    common.add_argument("--json", action="store_true",
                        help="emit the byte-stable JSON report instead of text")

    reader = argparse.ArgumentParser(add_help=False)
    reader.add_argument("-i", "--input", default="-",
                        help="matrix-set document path, or - for stdin (default)")

    parser = argparse.ArgumentParser(
        prog="loewner",
        description="Infima, maximal lower bounds, and greatest positive lower"
        " bounds of finite Hermitian matrix families.",
    )
    sub = parser.add_subparsers(dest="command")

    sub.add_parser("check-order", parents=[common, reader],
                   help="compare two matrices in the Loewner order")
    sub.add_parser("infimum", parents=[common, reader],
                   help="decide whether the set has an infimum")
    p = sub.add_parser("certify", parents=[common, reader],
                       help="certify a candidate maximal lower bound")
    p.add_argument("--candidate", required=True,
                   help="candidate matrix as inline JSON or @file")
    p = sub.add_parser("maximal-extend", parents=[common, reader],
                       help="extend a lower bound to a maximal one")
    p.add_argument("--lower", required=True,
                   help="starting lower bound as inline JSON or @file")
    sub.add_parser("commuting-glb", parents=[common, reader],
                   help="greatest lower bound among commuting matrices")
    sub.add_parser("positive-mlb", parents=[common, reader],
                   help="positive maximal lower bound of a PSD family")
    sub.add_parser("positive-glb", parents=[common, reader],
                   help="greatest positive lower bound of a PSD family")
    p = sub.add_parser("mlb-mt", parents=[common, reader],
                       help="explicit maximal lower bound of a pair")
    p.add_argument("--transform", default=None,
                   help="invertible transform T as inline JSON or @file (default identity)")
    p = sub.add_parser("stott", parents=[common],
                       help="parametrize maximal lower bounds of {J, 0}")
    p.add_argument("--p", type=int, required=True, help="positive block size")
    p.add_argument("--q", type=int, required=True, help="negative block size")
    p.add_argument("--x", default=None, help="p x q parameter as inline JSON or @file")
    p.add_argument("--matrix", default=None,
                   help="maximal lower bound of {J, 0} to invert, inline JSON or @file")
    p = sub.add_parser("constrained", parents=[common, reader],
                       help="lower bounds pinned to the set minimum at a vector")
    p.add_argument("--u", required=True, help="unit vector as inline JSON or @file")
    sub.add_parser("parallel-sum", parents=[common, reader],
                   help="parallel sum of a PSD family")
    sub.add_parser("ando", parents=[common, reader],
                   help="range-limited parts [A]B, [B]A and the pair's positive glb")
    p = sub.add_parser("fixture", parents=[common],
                       help="emit a bundled example family as a document")
    p.add_argument("name", choices=sorted(FIXTURE_NAMES), metavar="name",
                   help=f"one of: {', '.join(sorted(FIXTURE_NAMES))}")
    p.add_argument("--truncate-n", type=int, default=None,
                   help="members to draw from a countable family (default 8)")
    p = sub.add_parser("ensemble", parents=[common],
                       help="run a named seeded invariant suite")
    p.add_argument("--suite", required=True, choices=sorted(SUITE_NAMES), metavar="SUITE",
                   help=f"one of: {', '.join(sorted(SUITE_NAMES))}")
    p.add_argument("--trials", type=int, default=100, help="number of trials")
    p.add_argument("--dims", default=None, help="dimension range LO:HI (or a single N)")
    return parser


def _cmd_fixture(args) -> int:
    fx = fixture(args.name, args.truncate_n)
    if args.json:
        sys.stdout.write(emit_document(fx.document))
    else:
        sys.stdout.write(emit_document(fx.document, indent=2))
        for note in fx.notes:
            sys.stdout.write(f"note: {note}\n")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 1
    try:
        try:
            tol = Tolerances(rank_rel=args.tol_rank, psd_rel=args.tol_psd, eq_rel=args.tol_eq)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        if args.command == "fixture":
            return _cmd_fixture(args)
        handler = _HANDLERS[args.command]
        started = time.perf_counter()
        verdicts, notes, digest_inputs, seed = handler(args, tol)
        elapsed = (time.perf_counter() - started) * 1000.0
        report = RunReport(
            command=args.command,
            digest=canonical_digest(args.command, digest_inputs, tol.as_dict(), seed),
            tolerances=tol,
            seed=seed,
            verdicts=verdicts,
            notes=tuple(notes),
            elapsed_ms=elapsed,
        )
        sys.stdout.write(report.to_json() if args.json else report.render_text())
        return 0
    except UsageError as exc:
        _fail(exc)
        return 1
    except ValidationError as exc:
        _fail(exc)
        return 2
    except NumericalFailure as exc:
        _fail(exc)
        return 3
    except LoewnerError as exc:
        _fail(exc)
        return 3


if __name__ == "__main__":
    sys.exit(main())
