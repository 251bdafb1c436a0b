"""Parsers for every dataset the engine consumes.

Formats:
  * courses, knowledge descriptions, demand counts: UTF-8 JSON Lines
  * role table: CSV ``role,category,ka0..ka8,demand`` (demand may be blank)
  * annotations: CSV ``course_id,topic,<annotator>...`` where each cell is a
    comma list of indices with ``a--b`` (or en-dash) ranges; a lone ``--``
    marks a skipped topic
  * curriculum: one JSON document (pre-aggregated mandatory block plus the
    elective pool)

Every parser rejects on the first malformed record, reporting the line
number.  Loaders are pure given file contents; each has a matching ``dump_*``
serializer so fixtures can round-trip.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from pathlib import Path

from .domain import KA_COUNT, KaDistribution, KaLabelSet, normalize_counts
from .errors import (
    AllZeroError,
    DuplicateIdError,
    IngestError,
    MalformedRecordError,
    NegativeCountError,
    RowSumOutOfRangeError,
)

COURSE_KINDS = ("mandatory", "elective", "free")
ROLE_CATEGORIES = ("OG", "DD", "IO", "PD", "IN")

_EN_DASH = "–"


@dataclass(frozen=True)
class CourseDoc:
    id: str
    title: str
    description: str
    credits: float
    kind: str


@dataclass(frozen=True)
class KnowledgeDescription:
    id: str
    text: str
    labels: KaLabelSet | None = None


@dataclass(frozen=True)
class WorkRoleRecord:
    name: str
    category: str
    kd_ids: tuple[str, ...] = ()
    demand: int | None = None
    distribution: KaDistribution | None = None


@dataclass(frozen=True, eq=True)
class AnnotationRecord:
    topic: str
    course_id: str
    annotations: dict[str, KaLabelSet | None]

    def labels_for(self, annotator: str) -> KaLabelSet | None:
        return self.annotations.get(annotator)


@dataclass(frozen=True)
class ClassifiedTopicRow:
    """One classified topic of a course, as stored in a topics dataset."""

    course_id: str
    topic: str
    labels: KaLabelSet
    backend: str | None = None


@dataclass(frozen=True)
class ElectiveCourse:
    id: str
    title: str
    credits: float
    distribution: KaDistribution


@dataclass(frozen=True)
class CurriculumProfile:
    """Mandatory block (pre-aggregated) plus the elective pool.

    A curriculum may carry electives only (no mandatory block); the mandatory
    distribution is then None and its credits are zero.
    """

    name: str
    mandatory: KaDistribution | None
    mandatory_credits: float
    electives: tuple[ElectiveCourse, ...]
    k: int

    def __post_init__(self):
        if self.mandatory is not None and self.mandatory_credits <= 0:
            raise ValueError("mandatory credits must be positive")
        if self.mandatory is None and self.mandatory_credits != 0:
            raise ValueError("credits given without a mandatory distribution")
        if any(e.credits <= 0 for e in self.electives):
            raise ValueError("elective credits must be positive")
        if not 0 < self.k <= len(self.electives):
            raise ValueError(f"k={self.k} outside 1..{len(self.electives)}")
        ids = [e.id for e in self.electives]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate elective ids")

    def elective(self, elective_id: str) -> ElectiveCourse:
        for e in self.electives:
            if e.id == elective_id:
                return e
        raise KeyError(elective_id)


# --- label cell grammar -----------------------------------------------------


def parse_label_cell(cell: str) -> KaLabelSet | None:
    """Parse one annotation cell; None means the annotator skipped the topic."""
    text = cell.strip()
    if text in ("--", _EN_DASH):
        return None
    if not text:
        raise ValueError("empty cell")
    labels: set[int] = set()
    for token in text.split(","):
        token = token.strip().replace(_EN_DASH, "--")
        if "--" in token:
            lo, _, hi = token.partition("--")
            lo_i, hi_i = _label_index(lo), _label_index(hi)
            if hi_i < lo_i:
                raise ValueError(f"descending range {token!r}")
            labels.update(range(lo_i, hi_i + 1))
        else:
            labels.add(_label_index(token))
    return KaLabelSet(frozenset(labels))


def format_label_cell(labels: KaLabelSet | None) -> str:
    if labels is None:
        return "--"
    return ",".join(str(i) for i in labels.sorted())


def _label_index(token: str) -> int:
    token = token.strip()
    if not token.isdigit():
        raise ValueError(f"not a knowledge area index: {token!r}")
    value = int(token)
    if value >= KA_COUNT:
        raise ValueError(f"knowledge area index out of range 0..8: {value}")
    return value


def _parse_file(path: str | Path, parser):
    """Run a text parser over a file, attaching the path to any failure."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        return parser(text)
    except IngestError as e:
        e.path = str(path)
        raise


# --- JSON Lines helpers ------------------------------------------------------


def _iter_jsonl(text: str):
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as e:
            raise MalformedRecordError(line_no, f"invalid JSON: {e.msg}") from e
        if not isinstance(obj, dict):
            raise MalformedRecordError(line_no, "expected a JSON object")
        yield line_no, obj


def _req(obj: dict, key: str, line_no: int):
    if key not in obj:
        raise MalformedRecordError(line_no, f"missing key {key!r}")
    return obj[key]


def _req_str(obj: dict, key: str, line_no: int, allow_empty: bool = False) -> str:
    value = _req(obj, key, line_no)
    if not isinstance(value, str) or (not allow_empty and not value.strip()):
        raise MalformedRecordError(line_no, f"{key!r} must be a non-empty string")
    return value


# --- courses -----------------------------------------------------------------


def load_courses(path: str | Path) -> list[CourseDoc]:
    return _parse_file(path, parse_courses)


def parse_courses(text: str) -> list[CourseDoc]:
    courses: list[CourseDoc] = []
    seen: set[str] = set()
    for line_no, obj in _iter_jsonl(text):
        course_id = _req_str(obj, "id", line_no)
        title = _req_str(obj, "title", line_no)
        description = _req_str(obj, "description", line_no, allow_empty=True)
        credits = _req(obj, "credits", line_no)
        if not isinstance(credits, (int, float)) or isinstance(credits, bool) or credits <= 0:
            raise MalformedRecordError(line_no, f"credits must be a positive number, got {credits!r}")
        kind = _req_str(obj, "kind", line_no)
        if kind not in COURSE_KINDS:
            raise MalformedRecordError(line_no, f"kind must be one of {COURSE_KINDS}, got {kind!r}")
        if course_id in seen:
            raise DuplicateIdError(line_no, course_id)
        seen.add(course_id)
        courses.append(CourseDoc(course_id, title, description, float(credits), kind))
    return courses


def dump_courses(courses: list[CourseDoc]) -> str:
    lines = [
        json.dumps(
            {"id": c.id, "title": c.title, "description": c.description, "credits": c.credits, "kind": c.kind},
            ensure_ascii=False,
        )
        for c in courses
    ]
    return "\n".join(lines) + ("\n" if lines else "")


# --- knowledge descriptions ----------------------------------------------


def load_kds(path: str | Path) -> list[KnowledgeDescription]:
    return _parse_file(path, parse_kds)


def parse_kds(text: str) -> list[KnowledgeDescription]:
    kds: list[KnowledgeDescription] = []
    seen: set[str] = set()
    for line_no, obj in _iter_jsonl(text):
        kd_id = _req_str(obj, "id", line_no)
        kd_text = _req_str(obj, "text", line_no)
        labels = None
        if obj.get("labels") is not None:
            raw = obj["labels"]
            if not isinstance(raw, list) or not raw:
                raise MalformedRecordError(line_no, "labels must be a non-empty array of integers")
            try:
                labels = KaLabelSet(frozenset(int(x) for x in raw))
            except (TypeError, ValueError) as e:
                raise MalformedRecordError(line_no, f"bad labels {raw!r}: {e}") from e
        if kd_id in seen:
            raise DuplicateIdError(line_no, kd_id)
        seen.add(kd_id)
        kds.append(KnowledgeDescription(kd_id, kd_text, labels))
    return kds


def dump_kds(kds: list[KnowledgeDescription]) -> str:
    lines = []
    for kd in kds:
        obj: dict = {"id": kd.id, "text": kd.text}
        if kd.labels is not None:
            obj["labels"] = kd.labels.sorted()
        lines.append(json.dumps(obj, ensure_ascii=False))
    return "\n".join(lines) + ("\n" if lines else "")


# --- role table ----------------------------------------------------------


_ROLE_HEADER = ["role", "category"] + [f"ka{i}" for i in range(KA_COUNT)] + ["demand"]


def load_role_table(path: str | Path) -> list[WorkRoleRecord]:
    return _parse_file(path, parse_role_table)


def parse_role_table(text: str) -> list[WorkRoleRecord]:
    reader = csv.reader(io.StringIO(text))
    rows = [row for row in reader if row]
    if not rows or [h.strip() for h in rows[0]] != _ROLE_HEADER:
        raise MalformedRecordError(1, f"expected header {','.join(_ROLE_HEADER)}")
    records: list[WorkRoleRecord] = []
    seen: set[str] = set()
    for line_no, row in enumerate(rows[1:], start=2):
        if len(row) != len(_ROLE_HEADER):
            raise MalformedRecordError(line_no, f"expected {len(_ROLE_HEADER)} columns, got {len(row)}")
        name = row[0].strip()
        if not name:
            raise MalformedRecordError(line_no, "empty role name")
        if name in seen:
            raise DuplicateIdError(line_no, name)
        seen.add(name)
        category = row[1].strip()
        if category not in ROLE_CATEGORIES:
            raise MalformedRecordError(line_no, f"category must be one of {ROLE_CATEGORIES}, got {category!r}")
        try:
            values = [float(v) for v in row[2 : 2 + KA_COUNT]]
        except ValueError as e:
            raise MalformedRecordError(line_no, f"non-numeric percentage: {e}") from e
        if any(v < 0 for v in values):
            raise MalformedRecordError(line_no, "percentages must be non-negative")
        try:
            distribution = normalize_counts(values)
        except AllZeroError as e:
            raise MalformedRecordError(line_no, "all nine percentages are zero") from e
        total = math.fsum(values)
        if not 98.0 <= total <= 102.0:
            raise RowSumOutOfRangeError(line_no, total)
        demand_cell = row[11].strip()
        demand = None
        if demand_cell:
            if not demand_cell.lstrip("-").isdigit():
                raise MalformedRecordError(line_no, f"demand must be an integer, got {demand_cell!r}")
            demand = int(demand_cell)
            if demand < 0:
                raise NegativeCountError(line_no, demand)
        records.append(WorkRoleRecord(name=name, category=category, demand=demand, distribution=distribution))
    return records


def dump_role_table(records: list[WorkRoleRecord]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(_ROLE_HEADER)
    for record in records:
        if record.distribution is None:
            raise ValueError(f"role {record.name!r} has no distribution to serialize")
        row = [record.name, record.category]
        row += [repr(p) for p in record.distribution.percentages()]
        row.append("" if record.demand is None else str(record.demand))
        writer.writerow(row)
    return out.getvalue()


# --- annotations -----------------------------------------------------------


def load_annotations(path: str | Path) -> list[AnnotationRecord]:
    return _parse_file(path, parse_annotations)


def parse_annotations(text: str) -> list[AnnotationRecord]:
    reader = csv.reader(io.StringIO(text))
    rows = [row for row in reader if row]
    if not rows or len(rows[0]) < 4 or [h.strip() for h in rows[0][:2]] != ["course_id", "topic"]:
        raise MalformedRecordError(1, "expected header course_id,topic,<annotator>,<annotator>,...")
    annotators = [h.strip() for h in rows[0][2:]]
    if len(set(annotators)) != len(annotators):
        raise MalformedRecordError(1, "duplicate annotator names in header")
    records: list[AnnotationRecord] = []
    for line_no, row in enumerate(rows[1:], start=2):
        if len(row) != len(rows[0]):
            raise MalformedRecordError(line_no, f"expected {len(rows[0])} columns, got {len(row)}")
        course_id, topic = row[0].strip(), row[1].strip()
        if not course_id or not topic:
            raise MalformedRecordError(line_no, "course_id and topic must be non-empty")
        annotations: dict[str, KaLabelSet | None] = {}
        for name, cell in zip(annotators, row[2:]):
            try:
                annotations[name] = parse_label_cell(cell)
            except ValueError as e:
                raise MalformedRecordError(line_no, f"cell {cell!r} for {name}: {e}") from e
        records.append(AnnotationRecord(topic=topic, course_id=course_id, annotations=annotations))
    return records


def dump_annotations(records: list[AnnotationRecord]) -> str:
    annotators: list[str] = []
    for record in records:
        for name in record.annotations:
            if name not in annotators:
                annotators.append(name)
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["course_id", "topic"] + annotators)
    for record in records:
        cells = [format_label_cell(record.annotations.get(name)) for name in annotators]
        writer.writerow([record.course_id, record.topic] + cells)
    return out.getvalue()


# --- job demand --------------------------------------------------------------


def load_demand(path: str | Path) -> dict[str, int]:
    return _parse_file(path, parse_demand)


def parse_demand(text: str) -> dict[str, int]:
    demand: dict[str, int] = {}
    for line_no, obj in _iter_jsonl(text):
        role = _req_str(obj, "role", line_no)
        count = _req(obj, "count", line_no)
        if not isinstance(count, int) or isinstance(count, bool):
            raise MalformedRecordError(line_no, f"count must be an integer, got {count!r}")
        if count < 0:
            raise NegativeCountError(line_no, count)
        if role in demand:
            raise DuplicateIdError(line_no, role)
        demand[role] = count
    return demand


def dump_demand(demand: dict[str, int]) -> str:
    lines = [json.dumps({"role": role, "count": count}, ensure_ascii=False) for role, count in demand.items()]
    return "\n".join(lines) + ("\n" if lines else "")


# --- labeled training texts -----------------------------------------------


def load_labeled_texts(path: str | Path) -> list[tuple[str, KaLabelSet]]:
    return _parse_file(path, parse_labeled_texts)


def parse_labeled_texts(text: str) -> list[tuple[str, KaLabelSet]]:
    """Training rows for the baseline classifier: {text, labels}."""
    rows: list[tuple[str, KaLabelSet]] = []
    for line_no, obj in _iter_jsonl(text):
        sample = obj.get("text")
        labels = obj.get("labels")
        if not isinstance(sample, str) or not sample.strip():
            raise MalformedRecordError(line_no, "text must be a non-empty string")
        if not isinstance(labels, list) or not labels:
            raise MalformedRecordError(line_no, "labels must be a non-empty array")
        try:
            parsed = KaLabelSet(frozenset(int(x) for x in labels))
        except (TypeError, ValueError) as e:
            raise MalformedRecordError(line_no, f"bad labels {labels!r}: {e}") from e
        rows.append((sample, parsed))
    return rows


def dump_labeled_texts(rows: list[tuple[str, KaLabelSet]]) -> str:
    lines = [
        json.dumps({"text": sample, "labels": labels.sorted()}, ensure_ascii=False)
        for sample, labels in rows
    ]
    return "\n".join(lines) + ("\n" if lines else "")


# --- classified topics -----------------------------------------------------


def load_classified_topics(path: str | Path) -> list[ClassifiedTopicRow]:
    return _parse_file(path, parse_classified_topics)


def parse_classified_topics(text: str) -> list[ClassifiedTopicRow]:
    """Per-course classified topics: {course_id, topic, labels, backend?}."""
    rows: list[ClassifiedTopicRow] = []
    for line_no, obj in _iter_jsonl(text):
        course_id = obj.get("course_id")
        topic = obj.get("topic")
        labels = obj.get("labels")
        if not isinstance(course_id, str) or not isinstance(topic, str) or not isinstance(labels, list):
            raise MalformedRecordError(line_no, "expected course_id, topic and labels")
        try:
            parsed = KaLabelSet(frozenset(int(x) for x in labels))
        except (TypeError, ValueError) as e:
            raise MalformedRecordError(line_no, f"bad labels {labels!r}: {e}") from e
        backend = obj.get("backend")
        rows.append(ClassifiedTopicRow(course_id, topic, parsed, backend))
    return rows


def dump_classified_topics(rows: list[ClassifiedTopicRow]) -> str:
    lines = []
    for row in rows:
        obj: dict = {"course_id": row.course_id, "topic": row.topic, "labels": row.labels.sorted()}
        if row.backend is not None:
            obj["backend"] = row.backend
        lines.append(json.dumps(obj, ensure_ascii=False))
    return "\n".join(lines) + ("\n" if lines else "")


# --- curriculum profile --------------------------------------------------


def load_curriculum(path: str | Path) -> CurriculumProfile:
    return _parse_file(path, parse_curriculum)


def parse_curriculum(text: str) -> CurriculumProfile:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedRecordError(e.lineno, f"invalid JSON: {e.msg}") from e
    try:
        mandatory = obj.get("mandatory")
        electives = [
            ElectiveCourse(
                id=str(e["id"]),
                title=str(e.get("title", e["id"])),
                credits=float(e["credits"]),
                distribution=normalize_counts(e["distribution"]),
            )
            for e in obj["electives"]
        ]
        profile = CurriculumProfile(
            name=str(obj.get("name", "curriculum")),
            mandatory=None if mandatory is None else normalize_counts(mandatory["distribution"]),
            mandatory_credits=0.0 if mandatory is None else float(mandatory["credits"]),
            electives=tuple(electives),
            k=int(obj["k"]),
        )
    except (KeyError, TypeError, ValueError, AllZeroError) as e:
        raise MalformedRecordError(1, f"bad curriculum document: {e}") from e
    return profile


def dump_curriculum(profile: CurriculumProfile) -> str:
    obj = {
        "name": profile.name,
        "mandatory": None
        if profile.mandatory is None
        else {
            "distribution": list(profile.mandatory.weights),
            "credits": profile.mandatory_credits,
        },
        "electives": [
            {
                "id": e.id,
                "title": e.title,
                "credits": e.credits,
                "distribution": list(e.distribution.weights),
            }
            for e in profile.electives
        ],
        "k": profile.k,
    }
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
