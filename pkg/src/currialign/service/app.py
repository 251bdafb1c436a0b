"""HTTP facade over ingestion, classification, aggregation and optimization.

Stateless handlers over a file-backed workspace store.  Every response body
carries a schema_version field.  Optional shared bearer token via the
CURRIALIGN_TOKEN environment variable.
"""

from __future__ import annotations

import math
import os
from pathlib import Path

from fastapi import Depends, FastAPI, Header, HTTPException, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .. import analysis
from ..classify import (
    BaselineClassifier,
    ModelServiceConfig,
    RemoteModelClient,
    ReplayTransport,
    classify_batch_results,
    train_baseline,
)
from ..domain import KA_NAMES, KaDistribution, gap_report, normalize_counts
from ..errors import CurriAlignError, IngestError, TransportError
from ..ingest import CurriculumProfile
from ..metrics import agreement_matrix, kfold_evaluate
from ..optimize import (
    SelectionProblem,
    solve_branch_and_bound,
    solve_exhaustive,
    solve_heuristic,
)
from .store import SCHEMA_VERSION, UnknownDatasetError, UnknownWorkspaceError, WorkspaceStore

ENV_DATA_DIR = "CURRIALIGN_DATA_DIR"
ENV_BIND = "CURRIALIGN_BIND"
ENV_TOKEN = "CURRIALIGN_TOKEN"
ENV_REPLAY_DIR = "CURRIALIGN_REPLAY_DIR"

DEFAULT_BIND = "127.0.0.1:8420"

_SOLVERS = {
    "exhaustive": solve_exhaustive,
    "branch_and_bound": solve_branch_and_bound,
    "heuristic": solve_heuristic,
}


def _envelope(**fields) -> dict:
    return {"schema_version": SCHEMA_VERSION, **fields}


class CreateWorkspaceBody(BaseModel):
    id: str | None = None


class TrainBody(BaseModel):
    relative_threshold: float | None = Field(default=None, gt=0, le=1)


class ClassifyBody(BaseModel):
    texts: list[str]
    backend: str = "baseline"


class OptimizeBody(BaseModel):
    target_kind: str
    target_ref: str | None = None
    target: list[float] | None = None
    k: int | None = None
    method: str = "exhaustive"


class AgreementBody(BaseModel):
    annotators: list[str]


class KfoldBody(BaseModel):
    k: int = 10
    seed: int = 7
    relative_threshold: float | None = Field(default=None, gt=0, le=1)


def create_app(data_dir: str | Path | None = None) -> FastAPI:
    root = Path(data_dir or os.environ.get(ENV_DATA_DIR, "./currialign-data"))
    store = WorkspaceStore(root)
    app = FastAPI(title="currialign service", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    app.state.store = store

    def require_token(authorization: str | None = Header(default=None)):
        token = os.environ.get(ENV_TOKEN)
        if token and authorization != f"Bearer {token}":
            raise HTTPException(status_code=401, detail="missing or invalid bearer token")

    guarded = Depends(require_token)

    @app.exception_handler(UnknownWorkspaceError)
    async def _unknown_workspace(request: Request, exc: UnknownWorkspaceError):
        return JSONResponse(status_code=404, content=_envelope(error=str(exc)))

    @app.exception_handler(UnknownDatasetError)
    async def _unknown_dataset(request: Request, exc: UnknownDatasetError):
        return JSONResponse(status_code=404, content=_envelope(error=str(exc)))

    @app.exception_handler(IngestError)
    async def _ingest_error(request: Request, exc: IngestError):
        return JSONResponse(status_code=400, content=_envelope(error=str(exc)))

    @app.exception_handler(CurriAlignError)
    async def _domain_error(request: Request, exc: CurriAlignError):
        return JSONResponse(status_code=400, content=_envelope(error=str(exc)))

    # --- workspaces ----------------------------------------------------------

    @app.post("/workspaces", status_code=201, dependencies=[guarded])
    def create_workspace(body: CreateWorkspaceBody | None = None):
        try:
            meta = store.create(body.id if body else None)
        except ValueError as e:
            raise HTTPException(status_code=409, detail=str(e))
        return _envelope(**meta)

    @app.get("/workspaces", dependencies=[guarded])
    def list_workspaces():
        return _envelope(workspaces=store.list_ids())

    @app.get("/workspaces/{workspace_id}", dependencies=[guarded])
    def get_workspace(workspace_id: str):
        meta = store.meta(workspace_id)
        return _envelope(**meta, datasets=store.dataset_kinds(workspace_id))

    @app.put("/workspaces/{workspace_id}/datasets/{kind}", dependencies=[guarded])
    async def put_dataset(workspace_id: str, kind: str, request: Request):
        content = (await request.body()).decode("utf-8")
        parsed = store.put_dataset(workspace_id, kind, content)
        count = len(parsed) if hasattr(parsed, "__len__") else 1
        return _envelope(kind=kind, records=count)

    @app.get("/workspaces/{workspace_id}/datasets/{kind}", dependencies=[guarded])
    def get_dataset(workspace_id: str, kind: str):
        return Response(content=store.dataset_text(workspace_id, kind), media_type="text/plain")

    # --- classification ----------------------------------------------------

    @app.post("/workspaces/{workspace_id}/baseline/train", dependencies=[guarded])
    def train(workspace_id: str, body: TrainBody | None = None):
        if store.has_dataset(workspace_id, "training"):
            corpus = store.load_dataset(workspace_id, "training")
        elif store.has_dataset(workspace_id, "kds"):
            kds = store.load_dataset(workspace_id, "kds")
            corpus = [(kd.text, kd.labels) for kd in kds if kd.labels is not None]
        else:
            raise HTTPException(status_code=409, detail="upload a training or kds dataset first")
        if not corpus:
            raise HTTPException(status_code=409, detail="no labeled rows to train on")
        kwargs = {}
        if body and body.relative_threshold is not None:
            kwargs["relative_threshold"] = body.relative_threshold
        model = train_baseline(corpus, **kwargs)
        store.save_baseline(workspace_id, model)
        return _envelope(
            vocabulary_size=len(model.vocabulary),
            relative_threshold=model.relative_threshold,
            trained_on=len(corpus),
        )

    def _classifier(workspace_id: str, backend: str):
        if backend == "baseline":
            model = store.load_baseline(workspace_id)
            if model is None:
                raise HTTPException(status_code=409, detail="no trained baseline model")
            return BaselineClassifier(model)
        if backend == "remote":
            try:
                config = ModelServiceConfig.from_env()
            except TransportError as e:
                raise HTTPException(status_code=502, detail=str(e))
            replay_dir = os.environ.get(ENV_REPLAY_DIR)
            transport = ReplayTransport(replay_dir) if replay_dir else None
            return RemoteModelClient(config, transport)
        raise HTTPException(status_code=400, detail=f"unknown backend {backend!r}")

    @app.post("/workspaces/{workspace_id}/classify", dependencies=[guarded])
    def classify(workspace_id: str, body: ClassifyBody):
        store.meta(workspace_id)  # 404 on unknown workspace
        classifier = _classifier(workspace_id, body.backend)
        try:
            results, failures = classify_batch_results(body.texts, classifier)
        except TransportError as e:
            raise HTTPException(status_code=502, detail=str(e))
        items = []
        for index, result in enumerate(results):
            if result is not None:
                items.append(
                    {"index": index, "labels": result.labels.sorted(), "backend": result.backend}
                )
        remote_down = False
        for index, exc in failures:
            items.append({"index": index, "error": str(exc)})
            remote_down = remote_down or isinstance(exc, TransportError)
        items.sort(key=lambda item: item["index"])
        payload = _envelope(items=items, failed=len(failures))
        if failures and len(failures) == len(body.texts) and remote_down:
            return JSONResponse(status_code=502, content=payload)
        if failures:
            return JSONResponse(status_code=207, content=payload)
        return payload

    # --- profiles ------------------------------------------------------------

    def _role_distributions(workspace_id: str) -> dict[str, KaDistribution]:
        records = store.load_dataset(workspace_id, "roles")
        return {r.name: r.distribution for r in records}

    @app.get("/workspaces/{workspace_id}/profile", dependencies=[guarded])
    def profile(
        workspace_id: str,
        kind: str,
        ref: str = "",
        selection: str | None = None,
        target_kind: str | None = None,
        target_ref: str | None = None,
    ):
        store.meta(workspace_id)
        if kind == "course":
            rows = [r for r in store.load_dataset(workspace_id, "topics") if r.course_id == ref]
            if not rows:
                raise HTTPException(status_code=404, detail=f"no classified topics for course {ref!r}")
            dist = analysis.aggregate_labelsets([r.labels for r in rows])
            evidence = {
                "topics": [{"topic": r.topic, "labels": r.labels.sorted()} for r in rows]
            }
        elif kind == "curriculum":
            profile_doc: CurriculumProfile = store.load_dataset(workspace_id, "curriculum")
            chosen = _parse_selection(selection, profile_doc)
            dist = analysis.curriculum_distribution(profile_doc, chosen)
            evidence = {
                "curriculum": profile_doc.name,
                "selection": sorted(chosen),
                "k": profile_doc.k,
                "mandatory_credits": profile_doc.mandatory_credits,
                "mandatory": list(profile_doc.mandatory.weights) if profile_doc.mandatory else None,
                "electives": [
                    {
                        "id": e.id,
                        "title": e.title,
                        "credits": e.credits,
                        "distribution": list(e.distribution.weights),
                    }
                    for e in profile_doc.electives
                ],
            }
        elif kind == "role":
            records = store.load_dataset(workspace_id, "roles")
            match = next((r for r in records if r.name == ref), None)
            if match is None:
                raise HTTPException(status_code=404, detail=f"unknown role {ref!r}")
            dist = match.distribution
            evidence = {"category": match.category, "demand": match.demand}
        elif kind == "category":
            records = store.load_dataset(workspace_id, "roles")
            members = [r for r in records if r.category == ref]
            if not members:
                raise HTTPException(status_code=404, detail=f"unknown category {ref!r}")
            dist = analysis.category_distribution([r.distribution for r in members])
            evidence = {
                "roles": [
                    {"name": r.name, "distribution": list(r.distribution.weights)} for r in members
                ]
            }
        elif kind == "market":
            market = analysis.market_distribution(
                _role_distributions(workspace_id), store.load_dataset(workspace_id, "demand")
            )
            dist = market.aggregate
            evidence = {
                "weights": {name: weight for name, (_, weight) in market.per_role.items()}
            }
        else:
            raise HTTPException(status_code=400, detail=f"unknown profile kind {kind!r}")
        payload = _envelope(
            kind=kind,
            ref=ref,
            ka_names=list(KA_NAMES),
            distribution=list(dist.weights),
            percentages=[round(p, 1) for p in dist.percentages()],
            evidence=evidence,
        )
        if target_kind is not None:
            # gap vs a resolved target, so clients never re-derive distribution
            # math on their side
            target = _resolve_target(
                workspace_id, OptimizeBody(target_kind=target_kind, target_ref=target_ref)
            )
            gaps = gap_report(dist, target)
            payload["target"] = list(target.weights)
            payload["gap"] = {"deltas": list(gaps.deltas), "l1": gaps.l1, "kl": gaps.kl}
        return payload

    # --- optimization -------------------------------------------------------

    def _resolve_target(workspace_id: str, body: OptimizeBody) -> KaDistribution:
        if body.target_kind == "custom":
            if body.target is None:
                raise HTTPException(status_code=400, detail="custom target requires a 9-vector")
            if len(body.target) != 9 or any(x < 0 for x in body.target):
                raise HTTPException(status_code=400, detail="target must be nine non-negative weights")
            if abs(math.fsum(body.target) - 1.0) > 1e-9:
                raise HTTPException(status_code=400, detail="custom target must be normalized")
            return KaDistribution(tuple(body.target))
        if body.target_kind == "role":
            dists = _role_distributions(workspace_id)
            if body.target_ref not in dists:
                raise HTTPException(status_code=404, detail=f"unknown role {body.target_ref!r}")
            return dists[body.target_ref]
        if body.target_kind == "category":
            records = store.load_dataset(workspace_id, "roles")
            members = [r.distribution for r in records if r.category == body.target_ref]
            if not members:
                raise HTTPException(status_code=404, detail=f"unknown category {body.target_ref!r}")
            return analysis.category_distribution(members)
        if body.target_kind == "market":
            market = analysis.market_distribution(
                _role_distributions(workspace_id), store.load_dataset(workspace_id, "demand")
            )
            return market.aggregate
        raise HTTPException(status_code=400, detail=f"unknown target kind {body.target_kind!r}")

    @app.post("/workspaces/{workspace_id}/optimize", dependencies=[guarded])
    def optimize(workspace_id: str, body: OptimizeBody):
        store.meta(workspace_id)
        profile_doc: CurriculumProfile = store.load_dataset(workspace_id, "curriculum")
        target = _resolve_target(workspace_id, body)
        k = body.k if body.k is not None else profile_doc.k
        if not 0 < k <= len(profile_doc.electives):
            raise HTTPException(
                status_code=422,
                detail=f"k={k} infeasible for {len(profile_doc.electives)} electives",
            )
        solver = _SOLVERS.get(body.method)
        if solver is None:
            raise HTTPException(status_code=400, detail=f"unknown method {body.method!r}")
        problem = SelectionProblem(profile_doc, target, k)
        result = solver(problem)
        gaps = gap_report(result.blended, target)
        return _envelope(
            chosen=list(result.chosen),
            objective=result.objective,
            method=result.method,
            proven_optimal=result.proven_optimal,
            k=k,
            target=list(target.weights),
            blended=list(result.blended.weights),
            gap={"deltas": list(gaps.deltas), "l1": gaps.l1, "kl": gaps.kl},
        )

    # --- metrics ------------------------------------------------------------

    @app.post("/workspaces/{workspace_id}/agreement", dependencies=[guarded])
    def agreement(workspace_id: str, body: AgreementBody):
        store.meta(workspace_id)
        if len(body.annotators) < 2:
            raise HTTPException(status_code=400, detail="need at least two annotators")
        records = store.load_dataset(workspace_id, "annotations")
        matrix = agreement_matrix(records, body.annotators)
        return _envelope(**matrix.to_json())

    @app.post("/workspaces/{workspace_id}/eval/kfold", dependencies=[guarded])
    def eval_kfold(workspace_id: str, body: KfoldBody):
        store.meta(workspace_id)
        if not store.has_dataset(workspace_id, "training"):
            raise HTTPException(status_code=409, detail="upload a training dataset first")
        corpus = store.load_dataset(workspace_id, "training")
        report = kfold_evaluate(
            corpus, k=body.k, seed=body.seed, relative_threshold=body.relative_threshold
        )
        return _envelope(k=body.k, seed=body.seed, **report.to_json())

    return app


def _parse_selection(selection: str | None, profile_doc: CurriculumProfile) -> set[str]:
    if selection is None or selection == "":
        return set()
    if selection == "all":
        return {e.id for e in profile_doc.electives}
    return {token.strip() for token in selection.split(",") if token.strip()}


def main() -> None:  # pragma: no cover - exercised via the CLI
    import uvicorn

    bind = os.environ.get(ENV_BIND, DEFAULT_BIND)
    host, _, port = bind.partition(":")
    uvicorn.run(create_app(), host=host or "127.0.0.1", port=int(port or 8420))


if __name__ == "__main__":  # pragma: no cover
    main()
