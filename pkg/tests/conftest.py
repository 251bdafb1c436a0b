import json
from pathlib import Path

import pytest

from currialign import ingest
from currialign.classify import train_baseline
from currialign.domain import KaLabelSet

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return GOLDEN


@pytest.fixture(scope="session")
def kth_profile():
    return ingest.load_curriculum(FIXTURES / "curricula" / "kth.json")


@pytest.fixture(scope="session")
def ntu_profile():
    return ingest.load_curriculum(FIXTURES / "curricula" / "ntu.json")


@pytest.fixture(scope="session")
def roles():
    return ingest.load_role_table(FIXTURES / "roles" / "nice_roles_2025.csv")


@pytest.fixture(scope="session")
def category_rows():
    return ingest.load_role_table(FIXTURES / "roles" / "nice_categories_2025.csv")


@pytest.fixture(scope="session")
def demand():
    return ingest.load_demand(FIXTURES / "demand" / "cyberseek_2023_2024.jsonl")


@pytest.fixture(scope="session")
def course_annotations():
    return ingest.load_annotations(FIXTURES / "annotations" / "course_topics.csv")


@pytest.fixture(scope="session")
def kd_annotations():
    return ingest.load_annotations(FIXTURES / "annotations" / "kd_labels.csv")


@pytest.fixture(scope="session")
def sample_kds():
    return ingest.load_kds(FIXTURES / "kds" / "nice_kd_sample.jsonl")


@pytest.fixture(scope="session")
def training_corpus():
    rows = []
    with (FIXTURES / "training" / "finetune_corpus.jsonl").open(encoding="utf-8") as fh:
        for line in fh:
            obj = json.loads(line)
            rows.append((obj["text"], KaLabelSet(frozenset(obj["labels"]))))
    return rows


@pytest.fixture(scope="session")
def baseline_model(training_corpus):
    return train_baseline(training_corpus)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion at the end of the run."""
    rows = []
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance.py" in nodeid and "::" in nodeid:
                name = nodeid.split("::")[-1]
                rows.append((name, "PASS" if outcome == "passed" else "FAIL"))
    if rows:
        terminalreporter.section("acceptance criteria")
        for name, verdict in rows:
            terminalreporter.write_line(f"{verdict}  {name}")
