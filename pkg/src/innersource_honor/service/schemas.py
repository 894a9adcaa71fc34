"""Pydantic request/response models for the HTTP API."""
from __future__ import annotations

from pydantic import BaseModel, Field


class RegistryImportRequest(BaseModel):
    records: list[dict]


class RegistryImportResponse(BaseModel):
    registered: list[str]
    errors: list[dict]


class PhaseRequest(BaseModel):
    phase: str


class PmcRequest(BaseModel):
    member_ids: list[str]


class IngestRequest(BaseModel):
    records: list[dict]
    source: str | None = None


class RejectedRecord(BaseModel):
    record: dict
    reason: str


class IngestResponse(BaseModel):
    accepted: int
    duplicates: int
    rejected: list[RejectedRecord]
    audit_seq: int


class RecomputeResponse(BaseModel):
    contributors: int
    events: int
    total_points: int
    snapshot_sha256: str
    audit_seq: int


class LeaderboardEntryModel(BaseModel):
    rank: int
    contributor_id: str
    total_points: int
    percentile: float
    tier: str


class RoleProposalRequest(BaseModel):
    contributor_id: str
    project_id: str
    new_role: str
    proposed_by: str


class RoleVoteRequest(BaseModel):
    voter_id: str
    approve: bool


class AssessRequest(BaseModel):
    project_id: str
    period: str
    levels: dict[str, int]
    evidence: dict[str, str] = Field(default_factory=dict)


class OpenCycleRequest(BaseModel):
    kind: str
    period: str


class DecisionItem(BaseModel):
    recipient_id: str
    rank: int | None = None
    rationale: str = ""


class DecideRequest(BaseModel):
    recipients: list[DecisionItem]
    decided_by: list[str]


class FinalizeRequest(BaseModel):
    pool: int | None = None


class CycleSummary(BaseModel):
    kind: str
    period: str
    status: str
    candidates: int
    recipients: int


class AuditEntry(BaseModel):
    seq: int
    at: str
    actor: str
    action: str
    params: dict
