"""Command-line interface: exit codes, report shape, byte stability."""

import io
import json

import numpy as np
import pytest

from loewner import cli
from loewner.cli import main
from loewner.errors import ConvergenceFailure


EX62 = json.dumps(
    {
        "dim": 2,
        "field_tag": "real",
        "matrices": [[[1.0, 0.0], [0.0, 0.0]], [[1.0, 1.0], [1.0, 2.0]]],
        "labels": ["A", "B"],
    }
)

COMMUTING_PAIR = json.dumps(
    {
        "dim": 2,
        "field_tag": "real",
        "matrices": [[[1.0, 0.0], [0.0, 2.0]], [[2.0, 0.0], [0.0, 1.0]]],
    }
)

# members neither pairwise commute nor have a scalar-only commutant: the
# degenerate eigenvalue 3 of the first leaves a 2 x 2 block free
AWKWARD_FAMILY = json.dumps(
    {
        "dim": 4,
        "field_tag": "real",
        "matrices": [
            [
                [1.0, 0.0, 0.0, 0.0],
                [0.0, 2.0, 0.0, 0.0],
                [0.0, 0.0, 3.0, 0.0],
                [0.0, 0.0, 0.0, 3.0],
            ],
            [
                [0.0, 1.0, 0.0, 0.0],
                [1.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, 0.0, 0.0],
            ],
        ],
    }
)


def run(argv, capsys, monkeypatch=None, stdin_text=None):
    if stdin_text is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin_text))
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_doc(tmp_path, text, name="set.json"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def matrix_from_pairs(grid):
    return np.array([[complex(e[0], e[1]) for e in row] for row in grid])


class TestExitCodes:
    def test_no_command(self, capsys):
        code, _, err = run([], capsys)
        assert code == 1
        assert "usage" in err

    def test_help(self, capsys):
        code, out, _ = run(["--help"], capsys)
        assert code == 0
        assert "check-order" in out

    def test_unknown_command(self, capsys):
        code, _, _ = run(["frobnicate"], capsys)
        assert code == 1

    def test_parse_error_is_exit_2(self, tmp_path, capsys):
        path = write_doc(tmp_path, "{broken")
        code, _, err = run(["infimum", "-i", path], capsys)
        assert code == 2
        assert "error:" in err

    def test_validation_error_is_exit_2(self, tmp_path, capsys):
        nonherm = json.dumps(
            {"dim": 2, "field_tag": "real", "matrices": [[[1.0, 5.0], [0.0, 1.0]]]}
        )
        path = write_doc(tmp_path, nonherm)
        code, _, err = run(["infimum", "-i", path], capsys)
        assert code == 2
        assert "Hermitian" in err

    def test_bad_tolerance_is_exit_1(self, tmp_path, capsys):
        path = write_doc(tmp_path, EX62)
        code, _, _ = run(["infimum", "-i", path, "--tol-psd", "-1"], capsys)
        assert code == 1

    def test_wrong_arity_is_exit_1(self, tmp_path, capsys):
        one = json.dumps({"dim": 1, "field_tag": "real", "matrices": [[[1.0]]]})
        path = write_doc(tmp_path, one)
        code, _, err = run(["check-order", "-i", path], capsys)
        assert code == 1
        assert "exactly 2" in err

    def test_missing_input_file_is_exit_1(self, capsys):
        code, _, err = run(["infimum", "-i", "/no/such/file.json"], capsys)
        assert code == 1
        assert "cannot read" in err

    def test_numerical_failure_is_exit_3(self, tmp_path, capsys, monkeypatch):
        def boom(args, tol):
            raise ConvergenceFailure("eigensolver stalled")

        monkeypatch.setitem(cli._HANDLERS, "infimum", boom)
        path = write_doc(tmp_path, EX62)
        code, _, err = run(["infimum", "-i", path], capsys)
        assert code == 3
        assert "stalled" in err

    def test_singular_transform_is_exit_2(self, tmp_path, capsys):
        path = write_doc(tmp_path, EX62)
        code, _, _ = run(
            ["mlb-mt", "-i", path, "--transform", "[[0, 0], [0, 0]]", "--json"], capsys
        )
        assert code == 2


class TestStdinAndFiles:
    def test_stdin_is_default_input(self, capsys, monkeypatch):
        code, out, _ = run(["infimum", "--json"], capsys, monkeypatch, stdin_text=EX62)
        assert code == 0
        assert json.loads(out)["verdicts"]["exists"] is False

    def test_at_file_matrix_argument(self, tmp_path, capsys):
        doc = write_doc(tmp_path, EX62)
        cand = tmp_path / "cand.json"
        cand.write_text("[[0.5, 0.0], [0.0, 0.0]]")
        code, out, _ = run(
            ["certify", "-i", doc, "--candidate", f"@{cand}", "--json"], capsys
        )
        assert code == 0
        assert json.loads(out)["verdicts"]["is_maximal"] is True

    def test_at_file_missing_is_exit_1(self, tmp_path, capsys):
        doc = write_doc(tmp_path, EX62)
        code, _, _ = run(
            ["certify", "-i", doc, "--candidate", "@/no/such/cand.json", "--json"],
            capsys,
        )
        assert code == 1

    def test_inline_matrix_bad_json_is_exit_2(self, tmp_path, capsys):
        doc = write_doc(tmp_path, EX62)
        code, _, err = run(["certify", "-i", doc, "--candidate", "[[1,", "--json"], capsys)
        assert code == 2
        assert "invalid JSON" in err


class TestReports:
    def test_json_report_shape(self, tmp_path, capsys):
        path = write_doc(tmp_path, EX62)
        code, out, _ = run(["check-order", "-i", path, "--json"], capsys)
        assert code == 0
        payload = json.loads(out)
        assert set(payload) == {"command", "digest", "seed", "tolerances", "verdicts", "notes"}
        assert payload["command"] == "check-order"
        assert payload["seed"] is None
        assert payload["verdicts"]["comparability"] == "incomparable"
        assert payload["notes"]

    def test_json_is_byte_stable(self, tmp_path, capsys):
        path = write_doc(tmp_path, EX62)
        _, first, _ = run(["positive-mlb", "-i", path, "--json"], capsys)
        _, second, _ = run(["positive-mlb", "-i", path, "--json"], capsys)
        assert first == second
        assert "elapsed" not in first

    def test_no_negative_zero_in_json(self, tmp_path, capsys):
        path = write_doc(tmp_path, EX62)
        _, out, _ = run(["positive-mlb", "-i", path, "--json"], capsys)
        assert "-0.0" not in out

    def test_digest_tracks_input(self, tmp_path, capsys):
        a = write_doc(tmp_path, EX62, "a.json")
        b = write_doc(tmp_path, COMMUTING_PAIR, "b.json")
        _, out_a, _ = run(["check-order", "-i", a, "--json"], capsys)
        _, out_b, _ = run(["check-order", "-i", b, "--json"], capsys)
        assert json.loads(out_a)["digest"] != json.loads(out_b)["digest"]

    def test_digest_tracks_tolerances(self, tmp_path, capsys):
        path = write_doc(tmp_path, EX62)
        _, out_a, _ = run(["check-order", "-i", path, "--json"], capsys)
        _, out_b, _ = run(
            ["check-order", "-i", path, "--tol-eq", "1e-7", "--json"], capsys
        )
        assert json.loads(out_a)["digest"] != json.loads(out_b)["digest"]

    def test_human_report(self, tmp_path, capsys):
        path = write_doc(tmp_path, EX62)
        code, out, _ = run(["positive-mlb", "-i", path], capsys)
        assert code == 0
        assert out.startswith("= positive-mlb =")
        assert "note:" in out
        assert "elapsed:" in out


class TestCommands:
    def test_infimum_of_comparable_chain(self, tmp_path, capsys):
        chain = json.dumps(
            {
                "dim": 2,
                "field_tag": "real",
                "matrices": [[[1.0, 0.0], [0.0, 1.0]], [[2.0, 0.0], [0.0, 3.0]]],
                "labels": ["small", "big"],
            }
        )
        path = write_doc(tmp_path, chain)
        code, out, _ = run(["infimum", "-i", path, "--json"], capsys)
        verdicts = json.loads(out)["verdicts"]
        assert code == 0
        assert verdicts["exists"] is True
        assert verdicts["minimizing_index"] == 0
        assert verdicts["minimizing_label"] == "small"

    def test_positive_mlb_oracle(self, tmp_path, capsys):
        path = write_doc(tmp_path, EX62)
        code, out, _ = run(["positive-mlb", "-i", path, "--json"], capsys)
        assert code == 0
        verdicts = json.loads(out)["verdicts"]
        bound = matrix_from_pairs(verdicts["bound"])
        np.testing.assert_allclose(bound, np.diag([0.5, 0.0]), atol=1e-12)
        assert verdicts["certificate"]["is_maximal"] is True

    def test_certify_non_maximal(self, tmp_path, capsys):
        path = write_doc(tmp_path, EX62)
        code, out, _ = run(
            ["certify", "-i", path, "--candidate", "[[0, 0], [0, 0]]", "--json"], capsys
        )
        verdicts = json.loads(out)["verdicts"]
        assert code == 0
        assert verdicts["is_lower_bound"] is True
        assert verdicts["is_maximal"] is False
        assert verdicts["extreme_certified"] is False

    def test_maximal_extend(self, tmp_path, capsys):
        path = write_doc(tmp_path, EX62)
        code, out, _ = run(
            ["maximal-extend", "-i", path, "--lower", "[[0, 0], [0, 0]]", "--json"],
            capsys,
        )
        verdicts = json.loads(out)["verdicts"]
        assert code == 0
        extension = matrix_from_pairs(verdicts["extension"])
        np.testing.assert_allclose(extension, np.diag([0.5, 0.0]), atol=1e-10)
        assert verdicts["dominates_input"] is True
        assert verdicts["certificate"]["is_maximal"] is True

    def test_commuting_glb_commuting_family(self, tmp_path, capsys):
        path = write_doc(tmp_path, COMMUTING_PAIR)
        code, out, _ = run(["commuting-glb", "-i", path, "--json"], capsys)
        verdicts = json.loads(out)["verdicts"]
        assert code == 0
        assert verdicts["pairwise_commuting"] is True
        glb = matrix_from_pairs(verdicts["glb"])
        np.testing.assert_allclose(glb, np.eye(2), atol=1e-12)
        assert verdicts["commuting_maximal_exists"] is True

    def test_commuting_glb_scalar_commutant_fallback(self, tmp_path, capsys):
        path = write_doc(tmp_path, EX62)
        code, out, _ = run(["commuting-glb", "-i", path, "--json"], capsys)
        verdicts = json.loads(out)["verdicts"]
        assert code == 0
        assert verdicts["pairwise_commuting"] is False
        assert verdicts["commutant_dimension"] == 1
        glb = matrix_from_pairs(verdicts["glb"])
        np.testing.assert_allclose(glb, np.zeros((2, 2)), atol=1e-12)
        assert verdicts["commuting_maximal_exists"] is False

    def test_commuting_glb_awkward_family_is_exit_2(self, tmp_path, capsys):
        path = write_doc(tmp_path, AWKWARD_FAMILY)
        code, _, err = run(["commuting-glb", "-i", path, "--json"], capsys)
        assert code == 2
        assert "commutant" in err

    def test_positive_glb(self, tmp_path, capsys):
        path = write_doc(tmp_path, EX62)
        code, out, _ = run(["positive-glb", "-i", path, "--json"], capsys)
        verdicts = json.loads(out)["verdicts"]
        assert code == 0
        assert verdicts["exists"] is True
        assert verdicts["common_range_dim"] == 1
        assert verdicts["minimizing_index"] == 1
        assert verdicts["minimizing_label"] == "B"
        glb = matrix_from_pairs(verdicts["glb"])
        np.testing.assert_allclose(glb, np.diag([0.5, 0.0]), atol=1e-10)

    def test_mlb_mt_default_transform(self, tmp_path, capsys):
        path = write_doc(tmp_path, EX62)
        code, out, _ = run(["mlb-mt", "-i", path, "--json"], capsys)
        verdicts = json.loads(out)["verdicts"]
        assert code == 0
        assert verdicts["certificate"]["is_maximal"] is True

    def test_stott_build_then_recover(self, tmp_path, capsys):
        code, out, _ = run(["stott", "--p", "1", "--q", "1", "--x", "[[1]]", "--json"], capsys)
        assert code == 0
        built = json.loads(out)["verdicts"]
        assert built["mode"] == "build"
        assert built["certificate"]["is_maximal"] is True
        m_path = tmp_path / "m.json"
        m_path.write_text(json.dumps(built["m_matrix"]))
        code, out, _ = run(
            ["stott", "--p", "1", "--q", "1", "--matrix", f"@{m_path}", "--json"], capsys
        )
        recovered = json.loads(out)["verdicts"]
        assert code == 0
        assert recovered["mode"] == "recover"
        x = matrix_from_pairs(recovered["x"])
        np.testing.assert_allclose(x, [[1.0]], atol=1e-8)
        assert recovered["roundtrip_error"] <= 1e-8

    def test_stott_needs_exactly_one_mode(self, capsys):
        code, _, err = run(["stott", "--p", "1", "--q", "1"], capsys)
        assert code == 1
        assert "exactly one" in err
        code, _, _ = run(
            ["stott", "--p", "1", "--q", "1", "--x", "[[1]]", "--matrix", "[[1]]"], capsys
        )
        assert code == 1

    def test_stott_rejects_nonpositive_blocks(self, capsys):
        code, _, err = run(["stott", "--p", "0", "--q", "1", "--x", "[[1]]"], capsys)
        assert code == 1
        assert "at least 1" in err

    def test_stott_rejects_non_maximal_matrix(self, capsys):
        code, _, _ = run(
            ["stott", "--p", "1", "--q", "1", "--matrix", "[[-5, 0], [0, -5]]", "--json"],
            capsys,
        )
        assert code == 2

    def test_constrained_empty_family(self, tmp_path, capsys):
        path = write_doc(tmp_path, EX62)
        code, out, _ = run(
            ["constrained", "-i", path, "--u", "[1, 0]", "--json"], capsys
        )
        verdicts = json.loads(out)["verdicts"]
        assert code == 0
        assert verdicts["alpha"] == pytest.approx(1.0)
        assert verdicts["attaining_labels"] == ["A", "B"]
        assert verdicts["attainers_agree"] is False
        assert verdicts["constrained_family_empty"] is True
        assert verdicts["maximal_element"] is None
        assert verdicts["certificate"] is None

    def test_constrained_nonempty_family(self, tmp_path, capsys):
        chain = json.dumps(
            {
                "dim": 2,
                "field_tag": "real",
                "matrices": [[[1.0, 0.0], [0.0, 2.0]], [[1.0, 0.0], [0.0, 3.0]]],
            }
        )
        path = write_doc(tmp_path, chain)
        code, out, _ = run(["constrained", "-i", path, "--u", "[1, 0]", "--json"], capsys)
        verdicts = json.loads(out)["verdicts"]
        assert code == 0
        assert verdicts["attainers_agree"] is True
        element = matrix_from_pairs(verdicts["maximal_element"])
        np.testing.assert_allclose(element, np.diag([1.0, 2.0]), atol=1e-10)

    def test_parallel_sum(self, tmp_path, capsys):
        path = write_doc(tmp_path, EX62)
        code, out, _ = run(["parallel-sum", "-i", path, "--json"], capsys)
        verdicts = json.loads(out)["verdicts"]
        assert code == 0
        total = matrix_from_pairs(verdicts["parallel_sum"])
        np.testing.assert_allclose(total, np.diag([1.0 / 3.0, 0.0]), atol=1e-12)
        assert verdicts["rank"] == 1
        assert verdicts["common_range_dim"] == 1
        assert verdicts["below_every_member"] is True

    def test_ando(self, tmp_path, capsys):
        path = write_doc(tmp_path, EX62)
        code, out, _ = run(["ando", "-i", path, "--json"], capsys)
        verdicts = json.loads(out)["verdicts"]
        assert code == 0
        assert verdicts["exists"] is True
        glb = matrix_from_pairs(verdicts["glb"])
        np.testing.assert_allclose(glb, np.diag([0.5, 0.0]), atol=1e-10)


class TestFixtureCommand:
    def test_json_mode_emits_document(self, capsys):
        code, out, _ = run(["fixture", "ex6.2", "--json"], capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["dim"] == 2
        assert payload["labels"] == ["A", "B"]

    def test_human_mode_adds_notes(self, capsys):
        code, out, _ = run(["fixture", "ex6.2"], capsys)
        assert code == 0
        assert "note:" in out

    def test_truncation_flag(self, capsys):
        code, out, _ = run(["fixture", "ex4.3", "--truncate-n", "3", "--json"], capsys)
        assert code == 0
        assert len(json.loads(out)["matrices"]) == 4

    def test_unknown_fixture_rejected_by_parser(self, capsys):
        code, _, _ = run(["fixture", "ex9.9"], capsys)
        assert code == 1

    def test_pipes_into_other_commands(self, capsys, monkeypatch, tmp_path):
        _, doc_text, _ = run(["fixture", "ex6.2", "--json"], capsys)
        code, out, _ = run(
            ["positive-mlb", "--json"], capsys, monkeypatch, stdin_text=doc_text
        )
        assert code == 0
        bound = matrix_from_pairs(json.loads(out)["verdicts"]["bound"])
        np.testing.assert_allclose(bound, np.diag([0.5, 0.0]), atol=1e-12)


class TestEnsembleCommand:
    def test_runs_and_reports_seed(self, capsys):
        code, out, _ = run(
            [
                "ensemble",
                "--suite",
                "albert-vs-spectral",
                "--trials",
                "3",
                "--seed",
                "5",
                "--json",
            ],
            capsys,
        )
        payload = json.loads(out)
        assert code == 0
        assert payload["seed"] == 5
        assert payload["verdicts"]["suite"] == "albert-vs-spectral"
        assert payload["verdicts"]["agreements"] == 3

    def test_byte_stable(self, capsys):
        argv = ["ensemble", "--suite", "parallel-ando", "--trials", "3", "--json"]
        _, first, _ = run(argv, capsys)
        _, second, _ = run(argv, capsys)
        assert first == second

    def test_dims_single_number(self, capsys):
        code, out, _ = run(
            [
                "ensemble",
                "--suite",
                "albert-vs-spectral",
                "--trials",
                "2",
                "--dims",
                "3",
                "--json",
            ],
            capsys,
        )
        assert code == 0
        assert json.loads(out)["verdicts"]["dims"] == [3, 3]

    def test_bad_dims_is_exit_1(self, capsys):
        code, _, err = run(
            ["ensemble", "--suite", "mt-family", "--trials", "1", "--dims", "abc"],
            capsys,
        )
        assert code == 1
        assert "LO:HI" in err

    def test_unknown_suite_rejected_by_parser(self, capsys):
        code, _, _ = run(["ensemble", "--suite", "nonsense", "--trials", "1"], capsys)
        assert code == 1
