"""Merit ledger: cumulative points, tiers, leaderboard, role progression.

Points are integers and only ever accumulate — nothing expires, so a
contributor's total is non-decreasing over the log and invariant under
reordering of their events. Relative standing is the only thing that can
drop: the leaderboard re-ranks everyone under a strict total order
(points desc, first event asc, id asc), so a rank can worsen while the
points behind it never do.

Tier thresholds grow geometrically (base * factor^(i-1)); the first tier is
free. Role progression is per project, one ladder step at a time, and only
through a strict-majority vote of the project's PMC.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone

from . import records
from .config import TierConfig, WeightConfig
from .errors import (
    DuplicateVote,
    IllegalLadderStep,
    NotAuthorized,
    ProposalClosed,
    UnknownKind,
)

ROLE_LADDER = ["Contributor", "Committer", "Maintainer", "PMCMember"]

# Aware max sorts zero-event contributors (first_event_at=None) last in ties.
TS_MAX = datetime.max.replace(tzinfo=timezone.utc)


def value_event(event, weights: WeightConfig) -> int:
    """Points for one event: weight(kind) * magnitude."""
    if event.kind not in weights.points_per_unit:
        raise UnknownKind(f"no weight for kind {event.kind!r}")
    return weights.weight(event.kind) * event.magnitude


@dataclass
class ContributorState:
    contributor_id: str
    total_points: int = 0
    points_by_kind: dict[str, int] = field(default_factory=dict)
    counts_by_kind: dict[str, int] = field(default_factory=dict)
    tier: str = ""
    first_event_at: datetime | None = None
    roles: dict[str, str] = field(default_factory=dict)

    def to_record(self) -> dict:
        return {
            "contributor_id": self.contributor_id,
            "total_points": self.total_points,
            "points_by_kind": dict(sorted(self.points_by_kind.items())),
            "counts_by_kind": dict(sorted(self.counts_by_kind.items())),
            "tier": self.tier,
            "first_event_at": (
                records.format_timestamp(self.first_event_at) if self.first_event_at else None
            ),
            "roles": dict(sorted(self.roles.items())),
        }


def tier_for_points(points: int, tiers: TierConfig) -> str:
    """Highest tier whose threshold is <= points."""
    name = tiers.names[0]
    for i, tier_name in enumerate(tiers.names):
        if points >= tiers.threshold(i):
            name = tier_name
        else:
            break
    return name


def apply_event(state: ContributorState, event, weights: WeightConfig, tiers: TierConfig) -> ContributorState:
    """Accumulate one accepted event into a contributor's state."""
    points = value_event(event, weights)
    state.total_points += points
    state.points_by_kind[event.kind] = state.points_by_kind.get(event.kind, 0) + points
    state.counts_by_kind[event.kind] = state.counts_by_kind.get(event.kind, 0) + event.magnitude
    if state.first_event_at is None or event.occurred_at < state.first_event_at:
        state.first_event_at = event.occurred_at
    state.tier = tier_for_points(state.total_points, tiers)
    return state


@dataclass
class LedgerSnapshot:
    """Fold of an event sequence into per-contributor states."""

    weights: WeightConfig
    tiers: TierConfig
    states: dict[str, ContributorState] = field(default_factory=dict)
    event_count: int = 0

    def state_for(self, contributor_id: str) -> ContributorState:
        state = self.states.get(contributor_id)
        if state is None:
            state = ContributorState(
                contributor_id=contributor_id, tier=tier_for_points(0, self.tiers)
            )
            self.states[contributor_id] = state
        return state

    def apply_event(self, event) -> ContributorState:
        self.event_count += 1
        return apply_event(self.state_for(event.contributor_id), event, self.weights, self.tiers)

    def to_canonical_bytes(self) -> bytes:
        lines = [
            records.canonical_line(self.states[cid].to_record())
            for cid in sorted(self.states)
        ]
        return records.seal_lines(lines).encode("utf-8")


# -- leaderboard ---------------------------------------------------------------

@dataclass(frozen=True)
class LeaderboardEntry:
    rank: int
    contributor_id: str
    total_points: int
    percentile: float
    tier: str = ""

    def to_payload(self) -> dict:
        return {
            "rank": self.rank,
            "contributor_id": self.contributor_id,
            "total_points": self.total_points,
            "percentile": self.percentile,
            "tier": self.tier,
        }


def leaderboard_sort_key(state: ContributorState) -> tuple:
    return (
        -state.total_points,
        state.first_event_at or TS_MAX,
        state.contributor_id,
    )


def rebuild_leaderboard(states: dict[str, ContributorState]) -> list[LeaderboardEntry]:
    """Dense 1..N ranking under the documented strict total order."""
    ordered = sorted(states.values(), key=leaderboard_sort_key)
    n = len(ordered)
    return [
        LeaderboardEntry(
            rank=i + 1,
            contributor_id=s.contributor_id,
            total_points=s.total_points,
            percentile=1.0 - i / n,
            tier=s.tier,
        )
        for i, s in enumerate(ordered)
    ]


# -- role progression ----------------------------------------------------------

@dataclass
class RoleProposal:
    id: str
    project_id: str
    contributor_id: str
    from_role: str
    new_role: str
    proposed_by: str
    created_at: datetime
    votes: dict[str, bool] = field(default_factory=dict)
    outcome: str = "Pending"
    decided_at: datetime | None = None

    def to_payload(self) -> dict:
        return {
            "id": self.id,
            "project_id": self.project_id,
            "contributor_id": self.contributor_id,
            "from_role": self.from_role,
            "new_role": self.new_role,
            "proposed_by": self.proposed_by,
            "created_at": records.format_timestamp(self.created_at),
            "votes": dict(sorted(self.votes.items())),
            "outcome": self.outcome,
            "decided_at": (
                records.format_timestamp(self.decided_at) if self.decided_at else None
            ),
        }


def check_ladder_step(current_role: str, new_role: str) -> None:
    if new_role not in ROLE_LADDER:
        raise IllegalLadderStep(f"unknown role {new_role!r}")
    current_idx = ROLE_LADDER.index(current_role)
    if ROLE_LADDER.index(new_role) != current_idx + 1:
        raise IllegalLadderStep(f"{current_role} -> {new_role} is not one step up")


def vote_outcome(approvals: int, rejections: int, pmc_size: int) -> str:
    """Strict-majority rule over the current PMC size.

    Approved once approvals exceed half the PMC; Rejected once approval can no
    longer reach that bar; Pending otherwise.
    """
    needed = pmc_size // 2 + 1
    if approvals >= needed:
        return "Approved"
    if rejections > pmc_size - needed:
        return "Rejected"
    return "Pending"


def cast_vote(proposal: RoleProposal, voter_id: str, approve: bool, pmc_members: set[str]) -> str:
    """Record one vote and return the proposal's outcome after it."""
    if proposal.outcome != "Pending":
        raise ProposalClosed(f"proposal {proposal.id} already {proposal.outcome}")
    if voter_id not in pmc_members:
        raise NotAuthorized(f"{voter_id!r} is not a PMC member of {proposal.project_id!r}")
    if voter_id in proposal.votes:
        raise DuplicateVote(f"{voter_id!r} already voted on {proposal.id}")
    proposal.votes[voter_id] = approve
    approvals = sum(1 for v in proposal.votes.values() if v)
    rejections = len(proposal.votes) - approvals
    proposal.outcome = vote_outcome(approvals, rejections, len(pmc_members))
    return proposal.outcome
