"""HTTP JSON API over the engine.

Read endpoints are public and pure functions of the stored state; their
payloads are served as canonical JSON bytes with an ETag derived from the
payload hash, so file exports and API responses share one byte-exact
contract. Command endpoints require a bearer token mapped to a role
(``member`` for committee workflows, ``admin`` for registry and data
operations) and append one audit record each.

Cycle command endpoints honor ``If-Match``: send the ETag from the last GET
of the cycle, and a concurrent change by another committee member yields 412
so the client refreshes before resubmitting.
"""
from __future__ import annotations

from pathlib import Path

from fastapi import Depends, FastAPI, Header, Query, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from .. import records
from ..engine import Engine
from ..errors import HTTP_STATUS, HonorError, NotAuthorized, NotFound, StaleState, Unauthenticated
from . import schemas

ADMIN_ACTIONS_ROLE = "admin"
MEMBER_ACTIONS_ROLE = "member"


def load_tokens(path: Path) -> dict[str, tuple[str, str]]:
    """Token file: one ``<token> <role> [name...]`` per line, '#' comments."""
    tokens: dict[str, tuple[str, str]] = {}
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(None, 2)
        if len(parts) < 2 or parts[1] not in ("admin", "member"):
            raise ValueError(f"bad token line: {raw!r}")
        token, role = parts[0], parts[1]
        name = parts[2] if len(parts) > 2 else role
        tokens[token] = (role, name)
    return tokens


def canonical_response(payload, request: Request | None = None) -> Response:
    body = records.dump_canonical(payload)
    etag = '"' + records.sha256_hex(body) + '"'
    if request is not None and request.headers.get("if-none-match") == etag:
        return Response(status_code=304, headers={"ETag": etag})
    return Response(content=body, media_type="application/json", headers={"ETag": etag})


def create_app(engine: Engine, tokens: dict[str, tuple[str, str]] | None = None) -> FastAPI:
    app = FastAPI(title="innersource-honor", version="0.1.0")
    tokens = tokens or {}

    def authenticate(authorization: str | None = Header(default=None)) -> tuple[str, str]:
        if not authorization or not authorization.startswith("Bearer "):
            raise Unauthenticated("missing bearer token")
        token = authorization[len("Bearer "):].strip()
        if token not in tokens:
            raise Unauthenticated("unknown token")
        return tokens[token]

    def require_member(auth: tuple[str, str] = Depends(authenticate)) -> str:
        role, name = auth
        return name

    def require_admin(auth: tuple[str, str] = Depends(authenticate)) -> str:
        role, name = auth
        if role != ADMIN_ACTIONS_ROLE:
            raise NotAuthorized(f"{name!r} lacks the admin role")
        return name

    @app.exception_handler(HonorError)
    async def honor_error_handler(_request, exc: HonorError):
        status = HTTP_STATUS.get(exc.code, 400)
        return JSONResponse(status_code=status, content={"error": exc.code, "detail": str(exc)})

    @app.exception_handler(RequestValidationError)
    async def validation_handler(_request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400, content={"error": "ValidationError", "detail": exc.errors()}
        )

    def check_if_match(kind: str, period: str, if_match: str | None) -> None:
        if if_match is None:
            return
        body = records.dump_canonical(engine.cycle_payload(kind, period))
        etag = '"' + records.sha256_hex(body) + '"'
        if if_match != etag:
            raise StaleState("cycle changed since it was loaded; refresh and retry")

    # -- reads ----------------------------------------------------------------

    @app.get("/health")
    def health():
        return {"status": "ok", "events": len(engine.log)}

    @app.get("/wall")
    def wall(request: Request, as_of: str | None = Query(default=None)):
        date_filter = records.parse_date(as_of) if as_of else None
        return canonical_response(engine.wall(date_filter), request)

    @app.get("/profile/{contributor_id}")
    def profile(contributor_id: str, request: Request, as_of: str | None = Query(default=None)):
        date_filter = records.parse_date(as_of) if as_of else None
        return canonical_response(engine.profile(contributor_id, date_filter), request)

    @app.get("/leaderboard", response_model=list[schemas.LeaderboardEntryModel])
    def leaderboard(top: int | None = Query(default=None, ge=1)):
        return [e.to_payload() for e in engine.leaderboard(top)]

    @app.get("/maturity/{period}")
    def maturity(period: str, request: Request):
        records.validate_period(period)
        return canonical_response(engine.maturity_ranking(period), request)

    @app.get("/cycles", response_model=list[schemas.CycleSummary])
    def cycles():
        return engine.cycles_payload()

    @app.get("/cycles/{kind}/{period}")
    def cycle_detail(kind: str, period: str, request: Request):
        return canonical_response(engine.cycle_payload(kind, period), request)

    @app.get("/cycles/{kind}/{period}/preview")
    def cycle_preview(kind: str, period: str, request: Request, pool: int = Query(..., ge=1)):
        return canonical_response(engine.preview_amounts(kind, period, pool), request)

    @app.get("/budget/{year}")
    def budget(year: str, request: Request):
        return canonical_response(engine.budget_payload(year), request)

    @app.get("/report/{year}")
    def report(year: str, request: Request):
        return canonical_response(engine.year_report(year), request)

    @app.get("/org/{kind}/{entity_id}")
    def org_show(kind: str, entity_id: str, request: Request):
        return canonical_response(engine.lookup(kind, entity_id), request)

    @app.get("/roles/proposals/{proposal_id}")
    def proposal_detail(proposal_id: str, request: Request):
        proposal = engine.proposals.get(proposal_id)
        if proposal is None:
            raise NotFound(f"proposal {proposal_id!r} not found")
        return canonical_response(proposal.to_payload(), request)

    # -- commands --------------------------------------------------------------

    @app.post("/org/entities", response_model=schemas.RegistryImportResponse)
    def org_import(body: schemas.RegistryImportRequest, actor: str = Depends(require_admin)):
        return engine.register_entities(body.records, actor=actor)

    @app.post("/org/projects/{project_id}/phase")
    def advance_phase(
        project_id: str, body: schemas.PhaseRequest, actor: str = Depends(require_admin)
    ):
        return engine.advance_project_phase(project_id, body.phase, actor=actor)

    @app.post("/org/projects/{project_id}/pmc")
    def set_pmc(project_id: str, body: schemas.PmcRequest, actor: str = Depends(require_admin)):
        return engine.set_pmc_members(project_id, body.member_ids, actor=actor)

    @app.post("/events/ingest", response_model=schemas.IngestResponse)
    def ingest(body: schemas.IngestRequest, actor: str = Depends(require_admin)):
        return engine.ingest(body.records, source=body.source, actor=actor)

    @app.post("/score/recompute", response_model=schemas.RecomputeResponse)
    def recompute(actor: str = Depends(require_admin)):
        return engine.recompute(actor=actor)

    @app.post("/roles/proposals")
    def propose_role(body: schemas.RoleProposalRequest, actor: str = Depends(require_member)):
        return engine.propose_role_change(
            body.contributor_id, body.project_id, body.new_role, body.proposed_by, actor=actor
        )

    @app.post("/roles/proposals/{proposal_id}/votes")
    def vote_role(
        proposal_id: str, body: schemas.RoleVoteRequest, actor: str = Depends(require_member)
    ):
        return engine.vote_role_change(proposal_id, body.voter_id, body.approve, actor=actor)

    @app.post("/maturity/assessments")
    def assess(body: schemas.AssessRequest, actor: str = Depends(require_member)):
        return engine.assess_project(
            body.project_id, body.period, body.levels, body.evidence, actor=actor
        )

    @app.post("/cycles")
    def open_cycle(body: schemas.OpenCycleRequest, actor: str = Depends(require_member)):
        return engine.open_cycle(body.kind, body.period, actor=actor)

    @app.post("/cycles/{kind}/{period}/slate")
    def slate(
        kind: str,
        period: str,
        actor: str = Depends(require_member),
        if_match: str | None = Header(default=None),
    ):
        check_if_match(kind, period, if_match)
        return engine.build_slate(kind, period, actor=actor)

    @app.post("/cycles/{kind}/{period}/decisions")
    def decide(
        kind: str,
        period: str,
        body: schemas.DecideRequest,
        actor: str = Depends(require_member),
        if_match: str | None = Header(default=None),
    ):
        check_if_match(kind, period, if_match)
        return engine.record_decisions(
            kind,
            period,
            [item.model_dump() for item in body.recipients],
            body.decided_by,
            actor=actor,
        )

    @app.post("/cycles/{kind}/{period}/finalize")
    def finalize(
        kind: str,
        period: str,
        body: schemas.FinalizeRequest,
        actor: str = Depends(require_member),
        if_match: str | None = Header(default=None),
    ):
        check_if_match(kind, period, if_match)
        return engine.finalize_cycle(kind, period, body.pool, actor=actor)

    return app
