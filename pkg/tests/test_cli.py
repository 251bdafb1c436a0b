import json
from pathlib import Path

import pytest
from jsonschema import Draft202012Validator
from referencing import Registry, Resource

from currialign.cli import EXIT_INVARIANT, EXIT_IO, EXIT_OK, EXIT_USAGE, main
from conftest import FIXTURES

SCHEMAS = Path(__file__).resolve().parent.parent / "src" / "currialign" / "schemas"


def validator_for(name: str) -> Draft202012Validator:
    common = json.loads((SCHEMAS / "common.schema.json").read_text())
    schema = json.loads((SCHEMAS / name).read_text())
    registry = Registry().with_resource(
        "currialign/common.schema.json", Resource.from_contents(common)
    )
    return Draft202012Validator(schema, registry=registry)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestIngestCommand:
    def test_valid_courses(self, capsys):
        code, out, _ = run(
            capsys, "ingest", "--kind", "courses", str(FIXTURES / "courses" / "kth_electives.jsonl")
        )
        assert code == EXIT_OK
        assert json.loads(out)["records"] == 12

    def test_missing_file_is_io(self, capsys):
        code, _, err = run(capsys, "ingest", "--kind", "courses", "/does/not/exist.jsonl")
        assert code == EXIT_IO

    def test_malformed_reports_file_and_line(self, capsys, tmp_path):
        path = tmp_path / "bad.jsonl"
        path.write_text('{"id": "x", "title": "X", "description": "d", "credits": 0, "kind": "free"}\n')
        code, _, err = run(capsys, "ingest", "--kind", "courses", str(path))
        assert code == EXIT_IO
        assert str(path) in err and "line 1" in err

    def test_unknown_kind_is_usage(self, capsys):
        code, _, _ = run(capsys, "ingest", "--kind", "nonsense", "whatever")
        assert code == EXIT_USAGE


class TestAnalyzeCommand:
    def test_core_only_matches_fixture_values(self, capsys, tmp_path):
        out_prefix = tmp_path / "kth"
        code, out, _ = run(
            capsys,
            "analyze",
            "--curriculum", str(FIXTURES / "curricula" / "kth.json"),
            "--selection", "none",
            "--output", str(out_prefix),
        )
        assert code == EXIT_OK
        payload = json.loads(out)
        expected = [7.7, 18.4, 4.9, 4.9, 5.2, 12.5, 5.3, 24.2, 17.0]
        for got, want in zip(payload["aggregate"]["percentages"], expected):
            assert abs(got - want) <= 0.5
        validator_for("analyze.schema.json").validate(payload)
        assert (tmp_path / "kth.json").exists()
        assert (tmp_path / "kth.pies.csv").exists()

    def test_ntu_core_pie_has_eight_sectors(self, capsys, tmp_path):
        out_prefix = tmp_path / "ntu"
        code, out, _ = run(
            capsys,
            "analyze",
            "--curriculum", str(FIXTURES / "curricula" / "ntu.json"),
            "--selection", "none",
            "--output", str(out_prefix),
        )
        assert code == EXIT_OK
        pies = (tmp_path / "ntu.pies.csv").read_text().splitlines()
        aggregate_rows = [line for line in pies if line.startswith("aggregate,")]
        assert len(aggregate_rows) == 8
        assert not any(",Component," in line for line in aggregate_rows)

    def test_empty_selection_on_electives_only_file_is_invariant_error(self, capsys):
        code, _, err = run(
            capsys,
            "analyze",
            "--curriculum", str(FIXTURES / "curricula" / "electives_only.json"),
            "--selection", "none",
        )
        assert code == EXIT_INVARIANT

    def test_selection_all(self, capsys):
        code, out, _ = run(
            capsys,
            "analyze",
            "--curriculum", str(FIXTURES / "curricula" / "kth.json"),
            "--selection", "all",
        )
        assert code == EXIT_OK
        assert len(json.loads(out)["selection"]) == 12

    def test_csv_format_stdout(self, capsys):
        code, out, _ = run(
            capsys,
            "--format", "csv",
            "analyze",
            "--curriculum", str(FIXTURES / "curricula" / "kth.json"),
            "--selection", "none",
        )
        assert code == EXIT_OK
        assert out.splitlines()[0] == "entity,label,percentage"


class TestOptimizeCommand:
    def test_case_study_flow(self, capsys, tmp_path):
        out_file = tmp_path / "selection.json"
        code, out, _ = run(
            capsys,
            "optimize",
            "--curriculum", str(FIXTURES / "curricula" / "kth.json"),
            "--target-role", "Vulnerability Analysis",
            "--roles", str(FIXTURES / "roles" / "nice_roles_2025.csv"),
            "--k", "4",
            "--method", "exhaustive",
            "--output", str(out_file),
        )
        assert code == EXIT_OK
        payload = json.loads(out)
        assert len(payload["chosen"]) == 4
        assert payload["proven_optimal"] is True
        validator_for("optimize.schema.json").validate(payload)

    def test_heuristic_matches_exact_on_case_study(self, capsys):
        argv = [
            "optimize",
            "--curriculum", str(FIXTURES / "curricula" / "kth.json"),
            "--target-role", "Vulnerability Analysis",
            "--roles", str(FIXTURES / "roles" / "nice_roles_2025.csv"),
        ]
        code, exact_out, _ = run(capsys, *argv, "--method", "exhaustive")
        assert code == EXIT_OK
        code, heur_out, _ = run(capsys, *argv, "--method", "heuristic")
        assert code == EXIT_OK
        exact, heur = json.loads(exact_out), json.loads(heur_out)
        assert [c["id"] for c in exact["chosen"]] == [c["id"] for c in heur["chosen"]]

    def test_human_readable_output(self, capsys):
        code, out, _ = run(
            capsys,
            "--format", "csv",
            "optimize",
            "--curriculum", str(FIXTURES / "curricula" / "kth.json"),
            "--target-role", "Vulnerability Analysis",
            "--roles", str(FIXTURES / "roles" / "nice_roles_2025.csv"),
        )
        assert code == EXIT_OK
        assert "chosen courses:" in out
        assert "proven optimal: True" in out

    def test_k_exceeding_pool_is_usage_error(self, capsys):
        code, _, err = run(
            capsys,
            "optimize",
            "--curriculum", str(FIXTURES / "curricula" / "kth.json"),
            "--target-role", "Vulnerability Analysis",
            "--roles", str(FIXTURES / "roles" / "nice_roles_2025.csv"),
            "--k", "13",
        )
        assert code == EXIT_USAGE

    def test_market_target(self, capsys):
        code, out, _ = run(
            capsys,
            "optimize",
            "--curriculum", str(FIXTURES / "curricula" / "kth.json"),
            "--target-market",
            "--roles", str(FIXTURES / "roles" / "nice_roles_2025.csv"),
            "--demand", str(FIXTURES / "demand" / "cyberseek_2023_2024.jsonl"),
        )
        assert code == EXIT_OK

    def test_unknown_role_is_invariant_error(self, capsys):
        code, _, _ = run(
            capsys,
            "optimize",
            "--curriculum", str(FIXTURES / "curricula" / "kth.json"),
            "--target-role", "Ghost",
            "--roles", str(FIXTURES / "roles" / "nice_roles_2025.csv"),
        )
        assert code == EXIT_INVARIANT


class TestAgreementCommand:
    def test_course_fixture_machine_row(self, capsys, tmp_path):
        out_prefix = tmp_path / "agr"
        code, out, _ = run(
            capsys,
            "agreement",
            "--annotations", str(FIXTURES / "annotations" / "course_topics.csv"),
            "--annotators", "X1,X2,X3,CurricuLLM",
            "--output", str(out_prefix),
        )
        assert code == EXIT_OK
        payload = json.loads(out)
        validator_for("agreement.schema.json").validate(payload)
        overlap_csv = (tmp_path / "agr.overlap.csv").read_text()
        machine_row = next(
            line for line in overlap_csv.splitlines() if line.startswith("CurricuLLM,")
        )
        cells = [round(float(c)) for c in machine_row.split(",")[1:]]
        assert cells[:3] == [68, 44, 71]  # X1, X2, X3 columns

    def test_kd_fixture_machine_row(self, capsys):
        code, out, _ = run(
            capsys,
            "agreement",
            "--annotations", str(FIXTURES / "annotations" / "kd_labels.csv"),
            "--annotators", "X1,X2,X3,CurricuLLM",
        )
        assert code == EXIT_OK
        payload = json.loads(out)
        names = payload["annotators"]
        c = names.index("CurricuLLM")
        row = payload["overlap_pct"][c]
        got = [round(row[names.index(x)]) for x in ("X1", "X2", "X3")]
        assert got == [56, 60, 54]

    def test_single_annotator_is_usage_error(self, capsys):
        code, _, _ = run(
            capsys,
            "agreement",
            "--annotations", str(FIXTURES / "annotations" / "kd_labels.csv"),
            "--annotators", "X1",
        )
        assert code == EXIT_USAGE


class TestClassifyAndTraining:
    def test_train_then_classify(self, capsys, tmp_path):
        model_path = tmp_path / "model.json"
        code, out, _ = run(
            capsys,
            "train-baseline",
            "--corpus", str(FIXTURES / "training" / "finetune_corpus.jsonl"),
            "--out", str(model_path),
        )
        assert code == EXIT_OK
        assert json.loads(out)["vocabulary_size"] > 1000

        code, out, _ = run(
            capsys,
            "classify",
            "--model", str(model_path),
            "--text", "encryption algorithms and certificate authorities",
        )
        assert code == EXIT_OK
        payload = json.loads(out)
        validator_for("classify.schema.json").validate(payload)
        assert payload["items"][0]["labels"]

    def test_classify_remote_replay(self, capsys, monkeypatch):
        monkeypatch.setenv("CURRIALIGN_MODEL_URL", "replay://")
        monkeypatch.setenv("CURRIALIGN_MODEL_NAME", "classify-lm")
        code, out, _ = run(
            capsys,
            "--replay", str(FIXTURES / "replay"),
            "classify",
            "--backend", "remote",
            "--text", "problem-based learning",
            "--text", "teamwork in cybersecurity",
        )
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["items"][0]["labels"] == [0]
        assert payload["items"][1]["labels"] == [7]

    def test_classify_without_texts_is_usage(self, capsys, tmp_path):
        model_path = tmp_path / "model.json"
        run(
            capsys,
            "train-baseline",
            "--corpus", str(FIXTURES / "training" / "finetune_corpus.jsonl"),
            "--out", str(model_path),
        )
        code, _, _ = run(capsys, "classify", "--model", str(model_path))
        assert code == EXIT_USAGE


class TestKfoldCommand:
    def test_small_corpus(self, capsys, tmp_path):
        corpus_path = tmp_path / "corpus.jsonl"
        rows = [
            {"text": f"sample text number {i} with token{i % 7}", "labels": [i % 9]}
            for i in range(40)
        ]
        corpus_path.write_text("\n".join(json.dumps(r) for r in rows))
        code, out, _ = run(
            capsys, "eval-kfold", "--corpus", str(corpus_path), "--k", "4", "--seed", "3"
        )
        assert code == EXIT_OK
        payload = json.loads(out)
        validator_for("kfold.schema.json").validate(payload)
        assert len(payload["per_fold"]) == 4

    def test_deterministic_given_seed(self, capsys, tmp_path):
        corpus_path = tmp_path / "corpus.jsonl"
        rows = [{"text": f"alpha beta {i}", "labels": [i % 3]} for i in range(20)]
        corpus_path.write_text("\n".join(json.dumps(r) for r in rows))
        argv = ("eval-kfold", "--corpus", str(corpus_path), "--k", "4", "--seed", "11")
        _, first, _ = run(capsys, *argv)
        _, second, _ = run(capsys, *argv)
        assert first == second


class TestUsage:
    def test_no_command_prints_help(self, capsys):
        assert main([]) == EXIT_USAGE

    def test_unknown_flag(self, capsys):
        assert main(["analyze", "--nope"]) == EXIT_USAGE
