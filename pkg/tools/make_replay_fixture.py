"""Record the canned model-service responses used by the offline test suite.

Writes two sets of files:

  fixtures/replay/        response files keyed by request-body hash for the
                          worked single-course example: one topic-extraction
                          reply plus one classification reply per topic
  tests/golden/           canonical serialized request bodies that the prompt
                          templates must keep reproducing byte-for-byte

Run from the repo root: python tools/make_replay_fixture.py
"""

from __future__ import annotations

import sys
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from currialign.classify import ModelServiceConfig, ReplayTransport, build_request, serialize_request  # noqa: E402
from currialign.classify import prompts  # noqa: E402
from currialign.ingest import load_courses  # noqa: E402

REPLAY_DIR = REPO / "fixtures" / "replay"
GOLDEN_DIR = REPO / "tests" / "golden"

PREPROCESS_CONFIG = ModelServiceConfig(base_url="replay://", model_name="preprocess-lm")
CLASSIFY_CONFIG = ModelServiceConfig(base_url="replay://", model_name="classify-lm")

# worked example: topics extracted from the Building Networked Systems
# Security course and the label each one received
TOPIC_LABELS = [
    ("building networked systems security", "7"),
    ("handling contemporary security problems for networked systems", "4"),
    ("problem-based learning", "0"),
    ("teamwork in cybersecurity", "7"),
    ("investigating requirements for networked systems security", "5"),
    ("designing specifications for cybersecurity", "7"),
    ("preparing solutions with professional tools", "7"),
    ("critically assessing the efficiency of alternative solutions", "7"),
]


def main() -> None:
    courses = {c.id: c for c in load_courses(REPO / "fixtures" / "courses" / "kth_electives.jsonl")}
    course = courses["building-networked-systems-security"]

    replay = ReplayTransport(REPLAY_DIR)

    extraction_request = build_request(
        PREPROCESS_CONFIG,
        prompts.PREPROCESS_SYSTEM_PROMPT,
        prompts.preprocess_user_message(course.title, course.description),
    )
    extraction_reply = "\n".join(f"- {topic}" for topic, _ in TOPIC_LABELS)
    replay.store(extraction_request, extraction_reply)

    for topic, label in TOPIC_LABELS:
        request = build_request(
            CLASSIFY_CONFIG,
            prompts.CLASSIFY_SYSTEM_PROMPT,
            prompts.classify_user_message(topic),
        )
        replay.store(request, label)

    GOLDEN_DIR.mkdir(parents=True, exist_ok=True)
    (GOLDEN_DIR / "preprocess_request.json").write_text(
        serialize_request(extraction_request), encoding="utf-8"
    )
    classify_request = build_request(
        CLASSIFY_CONFIG,
        prompts.CLASSIFY_SYSTEM_PROMPT,
        prompts.classify_user_message("encryption algorithms"),
    )
    (GOLDEN_DIR / "classify_request.json").write_text(
        serialize_request(classify_request), encoding="utf-8"
    )
    print(f"wrote {len(TOPIC_LABELS) + 1} replay files and 2 golden request files")


if __name__ == "__main__":
    main()
