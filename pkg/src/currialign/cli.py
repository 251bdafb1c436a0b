"""Batch front door: ingest, train, classify, analyze, optimize, evaluate.

Every command is deterministic given its input files and flags and runs
fully offline against fixtures (remote classification goes through the
replay transport when --replay is given).

Exit codes: 0 success, 1 I/O or parse failure (with file:line), 2 invariant
violation, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import analysis, ingest
from .classify import (
    BaselineClassifier,
    ModelServiceConfig,
    RemoteModelClient,
    ReplayTransport,
    classify_batch,
    load_model,
    save_model,
    train_baseline,
)
from .domain import KA_NAMES, KaDistribution, gap_report, normalize_counts
from .errors import CurriAlignError, IngestError
from .metrics import agreement_matrix, kfold_evaluate
from .optimize import (
    SelectionProblem,
    solve_branch_and_bound,
    solve_exhaustive,
    solve_heuristic,
)
from .service.store import SCHEMA_VERSION

EXIT_OK = 0
EXIT_IO = 1
EXIT_INVARIANT = 2
EXIT_USAGE = 64

_SOLVERS = {
    "exhaustive": solve_exhaustive,
    "branch-and-bound": solve_branch_and_bound,
    "heuristic": solve_heuristic,
}

_LOADERS = {
    "courses": ingest.load_courses,
    "kds": ingest.load_kds,
    "roles": ingest.load_role_table,
    "annotations": ingest.load_annotations,
    "demand": ingest.load_demand,
    "curriculum": ingest.load_curriculum,
    "training": ingest.load_labeled_texts,
    "topics": ingest.load_classified_topics,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2; we need 64
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> _Parser:
    parser = _Parser(prog="currialign", description=__doc__.splitlines()[0])
    parser.add_argument("--workspace", metavar="DIR", help="data directory for the serve command")
    parser.add_argument("--format", choices=("json", "csv"), default="json", help="stdout format")
    parser.add_argument("--replay", metavar="DIR", help="route remote classification through canned responses")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser("ingest", help="validate a dataset file")
    p.add_argument("--kind", required=True, choices=sorted(_LOADERS))
    p.add_argument("path")

    p = sub.add_parser("train-baseline", help="fit the native classifier on labeled texts")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--relative-threshold", type=float, default=None)

    p = sub.add_parser("classify", help="assign knowledge areas to texts")
    p.add_argument("--backend", choices=("baseline", "remote"), default="baseline")
    p.add_argument("--model", help="trained baseline model file")
    p.add_argument("--texts-file", help="one text per line")
    p.add_argument("--text", action="append", default=[], help="inline text (repeatable)")
    p.add_argument("--output", help="write the report here as JSON")

    p = sub.add_parser("analyze", help="per-course and aggregate distributions")
    p.add_argument("--curriculum", required=True)
    p.add_argument("--selection", default="none", help='"all", "none", or comma-separated elective ids')
    p.add_argument("--output", help="output path prefix (writes PREFIX.json and PREFIX.pies.csv)")

    p = sub.add_parser("optimize", help="select the electives closing the gap to a target")
    p.add_argument("--curriculum", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--target-role", metavar="NAME")
    group.add_argument("--target-category", metavar="CODE")
    group.add_argument("--target-market", action="store_true")
    group.add_argument("--target-file", metavar="PATH", help="JSON file with nine weights")
    p.add_argument("--roles", help="role table CSV (for role/category/market targets)")
    p.add_argument("--demand", help="demand JSONL (for market targets)")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--method", choices=sorted(_SOLVERS), default="exhaustive")
    p.add_argument("--output", help="write the report here as JSON")

    p = sub.add_parser("agreement", help="pairwise annotator agreement matrices")
    p.add_argument("--annotations", required=True)
    p.add_argument("--annotators", required=True, help="comma-separated names")
    p.add_argument("--output", help="output path prefix (writes PREFIX.json and two CSVs)")

    p = sub.add_parser("eval-kfold", help="cross-validate the baseline classifier")
    p.add_argument("--corpus", required=True)
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--relative-threshold", type=float, default=None)
    p.add_argument("--output", help="write the report here as JSON")

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--bind", default=None, help="host:port (default 127.0.0.1:8420)")

    return parser


# --- rendering helpers -------------------------------------------------------


def _dist_payload(dist: KaDistribution) -> dict:
    return {
        "distribution": list(dist.weights),
        "percentages": [round(p, 1) for p in dist.percentages()],
    }


def _pie_rows(entity: str, dist: KaDistribution) -> list[tuple[str, str, str]]:
    # zero-weight sectors are omitted so pie data matches rendered charts
    return [
        (entity, KA_NAMES[i], f"{100.0 * w:.1f}")
        for i, w in enumerate(dist.weights)
        if w > 0
    ]


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


def _emit(args, payload: dict, csv_text: str | None = None) -> None:
    if args.format == "csv" and csv_text is not None:
        sys.stdout.write(csv_text)
    else:
        sys.stdout.write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")


# --- commands ------------------------------------------------------------


def cmd_ingest(args) -> int:
    records = _LOADERS[args.kind](args.path)
    count = len(records) if hasattr(records, "__len__") else 1
    _emit(args, {"schema_version": SCHEMA_VERSION, "kind": args.kind, "records": count})
    return EXIT_OK


def cmd_train_baseline(args) -> int:
    corpus = ingest.load_labeled_texts(args.corpus)
    kwargs = {}
    if args.relative_threshold is not None:
        kwargs["relative_threshold"] = args.relative_threshold
    model = train_baseline(corpus, **kwargs)
    save_model(model, args.out)
    _emit(
        args,
        {
            "schema_version": SCHEMA_VERSION,
            "model": args.out,
            "vocabulary_size": len(model.vocabulary),
            "relative_threshold": model.relative_threshold,
            "trained_on": len(corpus),
        },
    )
    return EXIT_OK


def cmd_classify(args) -> int:
    texts = list(args.text)
    if args.texts_file:
        content = Path(args.texts_file).read_text(encoding="utf-8")
        texts.extend(line.strip() for line in content.splitlines() if line.strip())
    if not texts:
        raise UsageError("no texts given (use --text or --texts-file)")
    if args.backend == "baseline":
        if not args.model:
            raise UsageError("--model is required for the baseline backend")
        classifier = BaselineClassifier(load_model(args.model))
    else:
        config = ModelServiceConfig.from_env()
        transport = ReplayTransport(args.replay) if args.replay else None
        classifier = RemoteModelClient(config, transport)
    results = classify_batch(texts, classifier)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "items": [
            {"text": r.text, "labels": r.labels.sorted(), "backend": r.backend} for r in results
        ],
    }
    csv_lines = ["text,labels"] + [
        f"\"{r.text}\",{'+'.join(str(i) for i in r.labels.sorted())}" for r in results
    ]
    if args.output:
        _write_json(Path(args.output), payload)
    _emit(args, payload, "\n".join(csv_lines) + "\n")
    return EXIT_OK


def _parse_cli_selection(selection: str, profile: ingest.CurriculumProfile) -> set[str]:
    if selection == "all":
        return {e.id for e in profile.electives}
    if selection in ("none", ""):
        return set()
    return {token.strip() for token in selection.split(",") if token.strip()}


def cmd_analyze(args) -> int:
    profile = ingest.load_curriculum(args.curriculum)
    selection = _parse_cli_selection(args.selection, profile)
    aggregate = analysis.curriculum_distribution(profile, selection)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "curriculum": profile.name,
        "selection": sorted(selection),
        "aggregate": _dist_payload(aggregate),
        "mandatory": None
        if profile.mandatory is None
        else {"credits": profile.mandatory_credits, **_dist_payload(profile.mandatory)},
        "per_course": [
            {"id": e.id, "title": e.title, "credits": e.credits, **_dist_payload(e.distribution)}
            for e in profile.electives
        ],
    }
    rows = [("entity", "label", "percentage")]
    rows += _pie_rows("aggregate", aggregate)
    if profile.mandatory is not None:
        rows += _pie_rows("mandatory", profile.mandatory)
    for elective in profile.electives:
        rows += _pie_rows(elective.id, elective.distribution)
    csv_text = "\n".join(",".join(f'"{c}"' if "," in c else c for c in row) for row in rows) + "\n"
    if args.output:
        _write_json(Path(args.output + ".json"), payload)
        Path(args.output + ".pies.csv").write_text(csv_text, encoding="utf-8")
    _emit(args, payload, csv_text)
    return EXIT_OK


def _resolve_cli_target(args) -> KaDistribution:
    if args.target_file:
        weights = json.loads(Path(args.target_file).read_text(encoding="utf-8"))
        return normalize_counts(weights)
    if not args.roles:
        raise UsageError("--roles is required for role, category and market targets")
    records = ingest.load_role_table(args.roles)
    if args.target_role:
        match = next((r for r in records if r.name == args.target_role), None)
        if match is None:
            raise CurriAlignError(f"unknown role {args.target_role!r}")
        return match.distribution
    if args.target_category:
        members = [r.distribution for r in records if r.category == args.target_category]
        if not members:
            raise CurriAlignError(f"unknown category {args.target_category!r}")
        return analysis.category_distribution(members)
    if not args.demand:
        raise UsageError("--demand is required for market targets")
    market = analysis.market_distribution(
        {r.name: r.distribution for r in records}, ingest.load_demand(args.demand)
    )
    return market.aggregate


def cmd_optimize(args) -> int:
    profile = ingest.load_curriculum(args.curriculum)
    target = _resolve_cli_target(args)
    k = args.k if args.k is not None else profile.k
    if not 0 < k <= len(profile.electives):
        raise UsageError(f"k={k} infeasible for {len(profile.electives)} electives")
    problem = SelectionProblem(profile, target, k)
    result = _SOLVERS[args.method](problem)
    gaps = gap_report(result.blended, target)
    titles = {e.id: e.title for e in profile.electives}
    payload = {
        "schema_version": SCHEMA_VERSION,
        "curriculum": profile.name,
        "k": k,
        "method": result.method,
        "proven_optimal": result.proven_optimal,
        "objective": result.objective,
        "chosen": [{"id": cid, "title": titles[cid]} for cid in result.chosen],
        "target": _dist_payload(target),
        "blended": _dist_payload(result.blended),
        "gap": {"deltas": list(gaps.deltas), "l1": gaps.l1, "kl": gaps.kl},
    }
    if args.output:
        _write_json(Path(args.output), payload)
    if args.format == "json":
        _emit(args, payload)
    else:
        lines = ["chosen courses:"]
        lines += [f"  {titles[cid]}" for cid in result.chosen]
        lines.append(f"objective (L1 gap): {result.objective:.6f}")
        lines.append(f"proven optimal: {result.proven_optimal}")
        lines.append("per-area gap (target minus blend):")
        for i, delta in enumerate(gaps.deltas):
            lines.append(f"  {KA_NAMES[i]:<14} {delta * 100:+6.1f}")
        sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_agreement(args) -> int:
    annotators = [a.strip() for a in args.annotators.split(",") if a.strip()]
    if len(annotators) < 2:
        raise UsageError("need at least two annotators")
    records = ingest.load_annotations(args.annotations)
    matrix = agreement_matrix(records, annotators)
    payload = {"schema_version": SCHEMA_VERSION, **matrix.to_json()}
    if args.output:
        _write_json(Path(args.output + ".json"), payload)
        Path(args.output + ".overlap.csv").write_text(matrix.to_csv("overlap"), encoding="utf-8")
        Path(args.output + ".kappa.csv").write_text(matrix.to_csv("kappa"), encoding="utf-8")
    _emit(args, payload, matrix.to_csv("overlap"))
    return EXIT_OK


def cmd_eval_kfold(args) -> int:
    corpus = ingest.load_labeled_texts(args.corpus)
    report = kfold_evaluate(corpus, k=args.k, seed=args.seed, relative_threshold=args.relative_threshold)
    payload = {"schema_version": SCHEMA_VERSION, "k": args.k, "seed": args.seed, **report.to_json()}
    if args.output:
        _write_json(Path(args.output), payload)
    _emit(args, payload)
    return EXIT_OK


def cmd_serve(args) -> int:  # pragma: no cover - spawns a server
    import os

    import uvicorn

    from .service import DEFAULT_BIND, create_app

    bind = args.bind or os.environ.get("CURRIALIGN_BIND", DEFAULT_BIND)
    host, _, port = bind.partition(":")
    app = create_app(args.workspace)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or 8420))
    return EXIT_OK


_COMMANDS = {
    "ingest": cmd_ingest,
    "train-baseline": cmd_train_baseline,
    "classify": cmd_classify,
    "analyze": cmd_analyze,
    "optimize": cmd_optimize,
    "agreement": cmd_agreement,
    "eval-kfold": cmd_eval_kfold,
    "serve": cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            parser.print_help(sys.stderr)
            return EXIT_USAGE
        return _COMMANDS[args.command](args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except IngestError as e:
        # parse failures are I/O-class errors and carry file:line context
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    except CurriAlignError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
