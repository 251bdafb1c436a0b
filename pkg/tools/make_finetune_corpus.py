"""Generate the labeled fine-tuning corpus fixture.

Produces ~2,700 short lowercase topic statements, each labeled with one or
two Knowledge Areas, written as JSON Lines {"text", "labels"}.  Texts are
composed from per-area phrase pools plus shared filler vocabulary, with a
tunable fraction of cross-area noise words so the nearest-centroid baseline
lands mid-band rather than saturating.

    python tools/make_finetune_corpus.py [--calibrate]

--calibrate additionally runs the 10-fold evaluation and prints macro scores.
"""

from __future__ import annotations

import json
import random
import sys
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from currialign.classify import tokenize  # noqa: E402

OUT = REPO / "fixtures" / "training" / "finetune_corpus.jsonl"

N_ROWS = 2700
MULTI_LABEL_FRACTION = 0.25
NOISE_PROB = 0.55
# fraction of rows whose wording leans on a confusable neighboring area while
# keeping the declared label: mimics the subjectivity of real annotations and
# keeps the baseline's cross-validated scores off the ceiling
MISLEAD_PROB = 0.45
SEED = 20250607

CONFUSABLE = {
    0: (7, 4), 1: (0, 4), 2: (5, 3), 3: (2, 5), 4: (5, 0),
    5: (4, 2), 6: (8, 7), 7: (0, 8), 8: (7, 6),
}

PHRASES = {
    0: [  # Miscellaneous: CS, business, IT, pedagogy, intelligence
        "object oriented programming", "relational database design", "discrete mathematics",
        "linear algebra foundations", "operating system internals", "distributed computing clusters",
        "cloud platform administration", "agile project delivery", "stakeholder communication",
        "technical writing skills", "classroom pedagogy", "learning objectives alignment",
        "curriculum planning workshops", "intelligence collection disciplines", "open source intelligence gathering",
        "signals intelligence fundamentals", "media literacy education", "information technology infrastructure",
        "helpdesk ticketing workflows", "enterprise resource planning", "business analytics dashboards",
        "data engineering pipelines", "version control branching", "continuous integration servers",
        "scripting automation tasks", "compiler construction basics", "computability theory",
        "numerical methods", "telecommunication fundamentals", "spectrum allocation policy",
        "teamwork and collaboration", "problem based learning", "capstone project supervision",
        "spreadsheet modeling", "inventory databases", "knowledge management portals",
    ],
    1: [  # Data
        "encryption algorithms", "symmetric block ciphers", "public key cryptography",
        "digital signature schemes", "key exchange protocols", "cryptographic hash functions",
        "message authentication codes", "certificate authority hierarchies", "data integrity verification",
        "secure storage containers", "full disk encryption", "database column encryption",
        "tokenization of records", "data masking pipelines", "forensic disk imaging",
        "evidence acquisition procedures", "steganography detection", "classical cryptanalysis",
        "elliptic curve parameters", "random number generation", "key escrow arrangements",
        "secret sharing schemes", "end to end encrypted messaging", "backup encryption rotation",
        "data loss prevention filters", "information lifecycle retention", "authenticated encryption modes",
        "password hashing parameters", "digital watermarking", "timestamping services",
        "quantum resistant lattice schemes", "homomorphic computation on ciphertext",
        "oblivious transfer primitives", "garbled circuits for multiparty evaluation",
        "nonce and salt handling", "rainbow tables and keystream reuse",
        "feistel and substitution permutation designs", "galois counter mode pitfalls",
        "padding oracle exposure", "chosen plaintext resistance",
    ],
    2: [  # Software
        "secure coding guidelines", "input validation routines", "buffer overflow prevention",
        "memory safety guarantees", "static analysis tooling", "dynamic instrumentation",
        "fuzz testing harnesses", "peer code review", "dependency vulnerability scanning",
        "software composition analysis", "patch development workflow", "secure design patterns",
        "least privilege interfaces", "application sandboxing", "sql injection defenses",
        "cross site scripting mitigation", "session management flaws", "deserialization vulnerabilities",
        "race condition detection", "unit testing discipline", "integration test suites",
        "software maintenance ethics", "refactoring legacy modules", "hardening compiler flags",
        "exploit mitigation techniques", "secure build pipelines", "api misuse detection",
        "configuration drift auditing", "typestate verification",
        "heap and stack canary behavior", "aslr dep nx pie relro fortify flags",
        "shellcode and gadget chain construction", "debugger and disassembler workflows",
        "decompiler output triage", "emulator assisted tracer runs",
        "payload loader and dropper taxonomy", "rootkit bootkit keylogger families",
        "ransomware spyware adware botnet zombie stager implant naming",
        "mutex semaphore deadlock livelock starvation bugs",
        "coroutine and threads misuse", "singleton factory observer mediator patterns",
        "bridge adapter visitor iterator generics closures",
    ],
    3: [  # Component
        "hardware trojan detection", "supply chain provenance", "component lifecycle tracking",
        "firmware integrity checks", "secure boot chains", "trusted platform modules",
        "embedded microcontrollers", "fpga bitstream protection", "chip fabrication auditing",
        "counterfeit part screening", "jtag debug interfaces", "side channel leakage measurement",
        "fault injection resistance", "silicon reverse engineering", "printed circuit inspection",
        "peripheral attack surfaces", "sensor spoofing countermeasures", "actuator tampering detection",
        "smartcard applet isolation", "secure element provisioning", "microarchitectural attacks",
        "speculative execution flaws", "rowhammer mitigations", "soldered debug headers",
        "bill of materials vetting", "component aging analysis",
    ],
    4: [  # Connection
        "network protocol analysis", "tcp ip stack behavior", "routing security",
        "bgp hijack monitoring", "dns spoofing defenses", "tls handshake inspection",
        "vpn tunnel configuration", "wireless access points", "cellular network interfaces",
        "deep packet inspection", "firewall rulesets", "intrusion detection sensors",
        "network segmentation zones", "man in the middle attacks", "arp cache poisoning",
        "denial of service flooding", "traffic flow analysis", "port scanning sweeps",
        "zero trust networking", "software defined networking", "mesh topology resilience",
        "satellite uplink protection", "bluetooth pairing weaknesses", "transmission interception",
        "proxy gateway hardening", "load balancer configuration", "network time synchronization",
        "vehicular communication links",
    ],
    5: [  # System
        "access control policies", "authentication mechanisms", "multi factor enrollment",
        "authorization models", "role based permissions", "security monitoring dashboards",
        "audit logging retention", "system hardening baselines", "penetration testing engagements",
        "vulnerability scanning cadence", "patch management windows", "configuration baselines",
        "backup and recovery drills", "incident containment runbooks", "availability engineering",
        "holistic threat modeling", "security documentation practices", "privileged account vaulting",
        "endpoint detection agents", "recovery time objectives", "kernel protection features",
        "hypervisor isolation boundaries", "honeypot deployment", "red team exercises",
        "system decommissioning", "golden image maintenance",
        "lateral movement detection", "persistence and privilege escalation hunting",
        "reconnaissance weaponization delivery exploitation installation chain",
        "command and control beaconing", "exfiltration actions on objectives",
        "quorum consensus paxos raft gossip byzantine fault assumptions",
    ],
    6: [  # Human
        "social engineering tactics", "phishing simulation campaigns", "identity management journeys",
        "user awareness nudges", "usable security studies", "password hygiene habits",
        "behavioral biometrics", "insider threat psychology", "privacy preference dashboards",
        "personal data stewardship", "digital footprint audits", "online harassment mitigation",
        "trust cues in interfaces", "security fatigue research", "awareness poster campaigns",
        "onboarding security training", "human error taxonomies", "accessibility of warnings",
        "shoulder surfing defenses", "pretexting recognition", "safe browsing habits",
        "community reporting channels",
    ],
    7: [  # Organizational
        "risk management registers", "governance frameworks", "security policy drafting",
        "compliance audit preparation", "regulatory alignment", "strategic security planning",
        "security budgeting cycles", "vendor risk management", "contract security clauses",
        "business impact analysis", "disaster recovery planning", "continuity management",
        "security metrics reporting", "executive oversight briefings", "personnel vetting procedures",
        "asset inventory management", "change advisory boards", "maturity model assessments",
        "tabletop crisis exercises", "policy exception handling", "security operations center staffing",
        "standards certification roadmaps", "third party attestation", "internal control testing",
        "operational and tactical management",
    ],
    8: [  # Societal
        "cybercrime investigation", "cyber law precedents", "digital ethics debates",
        "public policy consultations", "censorship circumvention", "surveillance oversight boards",
        "privacy rights advocacy", "whistleblower protections", "election infrastructure security",
        "disinformation campaign tracking", "critical infrastructure regulation", "international cyber treaties",
        "state actor attribution", "cyber sovereignty disputes", "digital divide measurements",
        "civic resilience programs", "online radicalization research", "content moderation law",
        "breach notification statutes", "consumer protection enforcement", "restorative justice online",
        "internet governance forums",
    ],
}

JARGON = {
    0: ["python", "java", "linux", "sql", "html", "excel", "scrum", "kanban", "moodle", "latex", "git", "api"],
    1: ["aes", "rsa", "sha256", "hmac", "ecdsa", "x509", "pgp", "chacha20", "pbkdf2", "argon2", "des", "md5"],
    2: ["cwe", "owasp", "asan", "valgrind", "burp", "sast", "dast", "cve", "npm", "libc", "gcc"],
    3: ["tpm", "uefi", "spi", "i2c", "uart", "soc", "asic", "pcb", "hsm", "sgx", "rom"],
    4: ["ipv4", "ipv6", "udp", "icmp", "ssh", "ipsec", "dnssec", "quic", "wpa3", "lte", "5g", "bgp", "vlan", "wireshark", "nmap"],
    5: ["siem", "soar", "edr", "iam", "rbac", "abac", "selinux", "kerberos", "ldap", "oauth", "saml"],
    6: ["mfa", "otp", "captcha", "fido2", "webauthn", "gdpr", "ux"],
    7: ["iso27001", "nist80053", "cobit", "itil", "soc2", "kpi", "kri", "rto", "rpo", "grc"],
    8: ["gdpr", "ccpa", "hipaa", "interpol", "europol", "icann", "budapest", "un", "eprivacy"],
}

SHARED = (
    "security cyber threat attack defense analysis management framework practice "
    "assessment control mitigation strategy fundamentals advanced concept principle "
    "technique tool method introduction overview applied modern emerging landscape "
    "lifecycle operation planning evaluation architecture engineering process "
    "implementation requirement standard protection resilience detection response "
    "review validation deployment environment infrastructure capability maturity"
).split()

# generic qualifiers drawn once per sample; widen the vocabulary without
# giving any single area a distinctive signal
QUALIFIERS = (
    "assessing reviewing deploying auditing measuring documenting automating "
    "scaling integrating validating monitoring triaging benchmarking modeling "
    "simulating orchestrating provisioning decommissioning inspecting verifying "
    "scalable robust resilient portable modular verifiable auditable measurable "
    "repeatable sustainable defensible transparent accountable interoperable "
    "practical theoretical experimental industrial academic regional national "
    "international organizational procedural contextual longitudinal comparative "
    "quantitative qualitative systematic holistic iterative incremental adaptive "
    "proactive reactive preventive corrective detective compensating layered "
    "centralized decentralized federated distributed hybrid legacy greenfield "
    "workshop seminar laboratory lecture tutorial assignment examination thesis "
    "handbook guideline checklist template playbook glossary taxonomy ontology "
    "stakeholder practitioner researcher auditor operator administrator analyst "
    "engineer architect consultant regulator vendor supplier customer partner "
    "quarterly annual continuous periodic scheduled adhoc baseline target "
    "threshold indicator benchmark milestone deliverable artifact repository "
    "dashboard report briefing summary digest bulletin advisory notice memo "
    "budget resource staffing training certification accreditation curriculum "
    "syllabus module unit chapter section appendix exercise quiz rubric badge "
    "prototype pilot rollout migration upgrade downgrade rollback snapshot "
    "inventory catalogue registry ledger manifest blueprint roadmap charter "
    "mandate scope boundary constraint assumption dependency tradeoff risk "
    "likelihood impact severity priority urgency criticality exposure posture "
    "coverage completeness correctness soundness precision granularity fidelity "
    "latency throughput bandwidth capacity utilization redundancy diversity "
    "observability telemetry instrumentation tracing profiling sampling "
    "aggregation correlation enrichment normalization deduplication retention "
    "archival disposal sanitization anonymization pseudonymization minimization "
    "consent transparency accountability fairness proportionality necessity "
    "jurisdiction liability negligence diligence assurance attestation audit "
    "inspection certification licensing registration notification disclosure "
    "escalation handover runbook rotation shift oncall standby failover "
    "tabletop drill rehearsal simulation emulation sandbox testbed cyberrange"
).split()

# area-flavored identifier tokens: standards, ports, request-for-comments
# numbers and similar specifics that make texts look like real topic notes
IDENTIFIERS = {
    0: [f"module {n}" for n in range(101, 126)],
    1: [f"fips {n}" for n in (140, 180, 186, 197, 198, 202)]
    + ["curve25519", "secp256r1", "keccak", "blake2", "salsa20"],
    2: [f"cwe {n}" for n in (20, 25, 78, 79, 89, 119, 125, 190, 287, 352, 416, 476, 502, 787, 798)],
    3: [f"revision {c}{n}" for c in "ab" for n in (1, 2, 3)]
    + ["jtagulator", "chipwhisperer", "openocd", "buspirate"],
    4: [f"rfc {n}" for n in (768, 791, 793, 826, 959, 1034, 1122, 1918, 2131, 2328, 2616, 4271, 4301, 5246, 5280, 6455, 7230, 8446, 9000, 9110)]
    + [f"port {n}" for n in (22, 25, 53, 80, 123, 161, 389, 443, 445, 636, 993, 1433, 3306, 3389, 5432, 8080, 8443)],
    5: [f"level {n}" for n in range(1, 6)]
    + ["osquery", "auditd", "sysmon", "falco", "wazuh", "velociraptor"],
    6: [f"cohort {n}" for n in range(2019, 2026)] + ["diary", "interview", "survey", "focus", "group"],
    7: [f"iso {n}" for n in (9001, 22301, 27001, 27002, 27005, 27017, 27018, 27035, 27701, 31000)]
    + [f"clause {n}" for n in range(4, 11)],
    8: [f"directive {n}" for n in (1148, 2016, 2022, 2555)]
    + ["strasbourg", "brussels", "geneva", "hague", "tallinn", "bucharest"],
}

PAIR_WEIGHTS = {
    (1, 4): 3, (6, 8): 3, (7, 8): 3, (2, 5): 3, (3, 5): 2, (0, 7): 2,
    (4, 5): 2, (1, 8): 2, (0, 4): 2, (2, 3): 2, (5, 7): 2, (0, 1): 1,
    (1, 5): 1, (4, 7): 1, (6, 7): 1, (0, 8): 1, (3, 4): 1, (2, 7): 1,
}

# mild class imbalance, mirroring how often each area shows up in practice
AREA_WEIGHTS = [1.3, 1.2, 1.0, 0.7, 1.2, 1.1, 0.8, 1.5, 0.9]


def compose_text(rng: random.Random, labels: tuple[int, ...]) -> str:
    words: list[str] = []
    for area in labels:
        source = area
        if rng.random() < MISLEAD_PROB:
            source = rng.choice(CONFUSABLE[area])
        for _ in range(rng.randint(1, 2)):
            words.extend(rng.choice(PHRASES[source]).split())
        if rng.random() < 0.35:
            words.append(rng.choice(JARGON[source]))
        if rng.random() < 0.30:
            words.extend(rng.choice(IDENTIFIERS[source]).split())
    if rng.random() < 0.7:
        words.extend(rng.sample(SHARED, rng.randint(1, 2)))
    if rng.random() < 0.8:
        words.extend(rng.sample(QUALIFIERS, rng.randint(1, 2)))
    if rng.random() < NOISE_PROB:
        other = rng.choice([a for a in range(9) if a not in labels])
        noise_phrase = rng.choice(PHRASES[other]).split()
        words.extend(rng.sample(noise_phrase, min(2, len(noise_phrase))))
    rng.shuffle(words)
    return " ".join(words)


def pick_labels(rng: random.Random) -> tuple[int, ...]:
    if rng.random() < MULTI_LABEL_FRACTION:
        pairs = list(PAIR_WEIGHTS)
        weights = [PAIR_WEIGHTS[p] for p in pairs]
        return rng.choices(pairs, weights=weights, k=1)[0]
    area = rng.choices(range(9), weights=AREA_WEIGHTS, k=1)[0]
    return (area,)


def main() -> None:
    rng = random.Random(SEED)
    rows = []
    for _ in range(N_ROWS):
        labels = pick_labels(rng)
        rows.append({"text": compose_text(rng, labels), "labels": sorted(labels)})
    vocabulary = set()
    for row in rows:
        vocabulary.update(tokenize(row["text"]))
    assert len(vocabulary) > 1000, f"vocabulary too small: {len(vocabulary)}"
    OUT.parent.mkdir(parents=True, exist_ok=True)
    with OUT.open("w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row, ensure_ascii=False) + "\n")
    print(f"wrote {OUT} ({len(rows)} rows, {len(vocabulary)} distinct tokens)")

    if "--calibrate" in sys.argv:
        from currialign.domain import KaLabelSet
        from currialign.metrics import kfold_evaluate

        corpus = [(r["text"], KaLabelSet(frozenset(r["labels"]))) for r in rows]
        report = kfold_evaluate(corpus, k=10, seed=7)
        print(
            f"10-fold macro: precision={report.macro_precision:.3f} "
            f"recall={report.macro_recall:.3f} f1={report.macro_f1:.3f}"
        )


if __name__ == "__main__":
    main()
