"""Generate the 50-row knowledge-description agreement fixture.

Each row carries label sets for annotators X1, X2, X3 and the machine
classifier column so that the six pairwise overlap percentages land exactly
on the published figures:

    machine-X1 56, machine-X2 60, machine-X3 54,
    X1-X2 52, X1-X3 54, X2-X3 56   (percent of 50 rows)

Rows are built from agreement patterns (which annotator pairs share a label)
and then filled with plausible area assignments.  Run from the repo root:

    python tools/make_kd_agreement_fixture.py
"""

from __future__ import annotations

import random
import sys
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from currialign.ingest import dump_annotations, AnnotationRecord  # noqa: E402
from currialign.domain import KaLabelSet  # noqa: E402
from currialign.metrics import overlap_agreement  # noqa: E402

OUT = REPO / "fixtures" / "annotations" / "kd_labels.csv"

ANNOTATORS = ("X1", "X2", "X3", "CurricuLLM")

# pattern name -> sets of annotators that must share a label, all other pairs disjoint
PATTERNS = (
    [("ALL",)] * 20
    + [("TRIO", "CurricuLLM", "X1", "X2")] * 4
    + [("TRIO", "CurricuLLM", "X1", "X3")] * 2
    + [("TRIO", "CurricuLLM", "X2", "X3")] * 3
    + [("TRIO", "X1", "X2", "X3")] * 1
    + [("SPLIT", ("CurricuLLM", "X1"), ("X2", "X3"))] * 2
    + [("SPLIT", ("CurricuLLM", "X2"), ("X1", "X3"))] * 3
    + [("SPLIT", ("CurricuLLM", "X3"), ("X1", "X2"))] * 1
    + [("PAIR", "CurricuLLM", "X3")] * 1
    + [("PAIR", "X1", "X3")] * 1
    + [("PAIR", "X2", "X3")] * 2
    + [("NONE",)] * 10
)

TARGETS = {
    ("CurricuLLM", "X1"): 28,
    ("CurricuLLM", "X2"): 30,
    ("CurricuLLM", "X3"): 27,
    ("X1", "X2"): 26,
    ("X1", "X3"): 27,
    ("X2", "X3"): 28,
}

KD_TEXTS = [
    "network protocols and their vulnerabilities",
    "incident response procedures and playbooks",
    "encryption key lifecycle management",
    "secure software development lifecycle practices",
    "supply chain risk in hardware components",
    "identity and access management concepts",
    "privacy regulations and compliance obligations",
    "threat intelligence collection and analysis",
    "digital evidence handling and preservation",
    "firewall and intrusion detection configuration",
    "malware analysis techniques",
    "cloud infrastructure security controls",
    "security awareness training methods",
    "penetration testing methodologies",
    "cryptographic hash functions and their applications",
    "business continuity and disaster recovery planning",
    "social engineering attack vectors",
    "wireless network security standards",
    "data classification and retention policies",
    "vulnerability scanning and remediation workflows",
    "secure system architecture principles",
    "cyber law and jurisdictional issues",
    "authentication protocols and single sign-on",
    "industrial control system protection",
    "operating system hardening baselines",
    "risk assessment and treatment frameworks",
    "security auditing and logging requirements",
    "web application attack patterns",
    "database access control mechanisms",
    "organizational security governance structures",
    "embedded device firmware analysis",
    "network traffic monitoring and flow analysis",
    "insider threat indicators and mitigation",
    "public key infrastructure operations",
    "security metrics and reporting practices",
    "container and virtualization security",
    "phishing detection and user reporting",
    "secure coding standards for memory safety",
    "forensic imaging of storage media",
    "zero trust network design",
    "privacy enhancing computation techniques",
    "patch management processes",
    "security requirements elicitation",
    "denial of service mitigation strategies",
    "mobile application security testing",
    "cyber ethics and professional conduct",
    "backup integrity and restoration testing",
    "security incident communication protocols",
    "hardware security modules and key storage",
    "adversary emulation and red teaming",
]

AREAS = list(range(9))


def build_rows(rng: random.Random) -> list[dict[str, KaLabelSet]]:
    rows = []
    for pattern in PATTERNS:
        kind = pattern[0]
        if kind == "ALL":
            shared = rng.choice(AREAS)
            row = {}
            for name in ANNOTATORS:
                labels = {shared}
                if rng.random() < 0.4:
                    labels.add(rng.choice(AREAS))
                row[name] = labels
        elif kind == "TRIO":
            members = set(pattern[1:])
            outsider = next(n for n in ANNOTATORS if n not in members)
            shared, alone = rng.sample(AREAS, 2)
            row = {}
            for name in members:
                labels = {shared}
                if rng.random() < 0.3:
                    extra = rng.choice([a for a in AREAS if a != alone])
                    labels.add(extra)
                row[name] = labels
            row[outsider] = {alone}
        elif kind == "SPLIT":
            first, second = pattern[1], pattern[2]
            a, b = rng.sample(AREAS, 2)
            row = {}
            for name in first:
                row[name] = {a}
            for name in second:
                row[name] = {b}
        elif kind == "PAIR":
            members = set(pattern[1:])
            others = [n for n in ANNOTATORS if n not in members]
            shared, q1, q2 = rng.sample(AREAS, 3)
            row = {name: {shared} for name in members}
            row[others[0]] = {q1}
            row[others[1]] = {q2}
        else:  # NONE
            a, b, c, d = rng.sample(AREAS, 4)
            row = dict(zip(ANNOTATORS, ({a}, {b}, {c}, {d})))
        rows.append(row)
    rng.shuffle(rows)
    return rows


def main() -> None:
    rng = random.Random(20250610)
    rows = build_rows(rng)
    records = [
        AnnotationRecord(
            topic=text,
            course_id="nice-2025-kds",
            annotations={name: KaLabelSet(frozenset(row[name])) for name in ANNOTATORS},
        )
        for text, row in zip(KD_TEXTS, rows)
    ]
    columns = {
        name: [record.annotations[name] for record in records] for name in ANNOTATORS
    }
    for (a, b), wanted in TARGETS.items():
        pct, n = overlap_agreement(columns[a], columns[b])
        agreeing = round(pct * n / 100)
        assert agreeing == wanted, f"{a}-{b}: got {agreeing}, wanted {wanted}"
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(dump_annotations(records), encoding="utf-8")
    print(f"wrote {OUT} ({len(records)} rows)")
    for (a, b), wanted in TARGETS.items():
        pct, _ = overlap_agreement(columns[a], columns[b])
        print(f"  {a}-{b}: {pct:.1f}% (target {wanted * 2}%)")


if __name__ == "__main__":
    main()
