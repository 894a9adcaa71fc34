"""Single-writer command core wiring registry, log, ledger, maturity, awards.

All state changes funnel through one Engine guarded by a lock. Every command
is appended to a journal (``commands.jsonl``) except contribution ingestion,
whose durable record is the canonical event log itself (``events.log``).
Reopening a data directory replays the journal and reloads the log, which
reproduces the exact same state — commands store their own timestamps and any
state-dependent results (slates, amounts), so nothing depends on the wall
clock at replay time.

Every command also appends one record to ``audit.jsonl`` (who, what, when);
the audit trail is accountability metadata and is never replayed.
"""
from __future__ import annotations

import threading
from datetime import datetime, timezone
from pathlib import Path

from . import awards as awards_mod
from . import ledger as ledger_mod
from . import maturity as maturity_mod
from . import records
from .awards import (
    AwardCatalog,
    AwardCycle,
    AwardDecision,
    AwardKind,
    BudgetLedger,
    Cadence,
    CycleStatus,
)
from .config import ScoringConfig
from .errors import (
    HonorError,
    IneligibleRecipient,
    NotAuthorized,
    NotFound,
    PoolMismatch,
    ProjectNotEligible,
    ScopeMismatch,
)
from .events import EventLog, ContributionEvent
from .ledger import (
    ContributorState,
    LeaderboardEntry,
    RoleProposal,
    cast_vote,
    check_ladder_step,
    rebuild_leaderboard,
    tier_for_points,
    value_event,
)
from .registry import CommitteeKind, ProjectPhase, Registry
from . import wall as wall_mod

JOURNAL_FILE = "commands.jsonl"
EVENTS_FILE = "events.log"
AUDIT_FILE = "audit.jsonl"

TECHNICAL_KINDS = {"Code", "Review", "IssueReport", "Mentoring"}


def _utcnow() -> datetime:
    return datetime.now(timezone.utc)


class Engine:
    def __init__(
        self,
        data_dir: Path | None = None,
        scoring: ScoringConfig | None = None,
        catalog: AwardCatalog | None = None,
        now_fn=None,
    ):
        self.data_dir = Path(data_dir) if data_dir else None
        self.scoring = scoring or ScoringConfig()
        self.catalog = catalog or awards_mod.default_catalog()
        self.now_fn = now_fn or _utcnow

        self.registry = Registry()
        self.log = EventLog(self.data_dir / EVENTS_FILE if self.data_dir else None)
        self.maturity = maturity_mod.MaturityStore()
        self.proposals: dict[str, RoleProposal] = {}
        self.role_state: dict[tuple[str, str], str] = {}
        self.cycles: dict[tuple[str, str], AwardCycle] = {}
        self.budgets: dict[str, BudgetLedger] = {}

        self._lock = threading.RLock()
        self._audit_seq = 0
        self._states_cache: dict[str, ContributorState] | None = None

        if self.data_dir:
            self.data_dir.mkdir(parents=True, exist_ok=True)
            self._audit_seq = len(records.read_lines(self.data_dir / AUDIT_FILE))
            for line in records.read_lines(self.data_dir / JOURNAL_FILE):
                self._apply(records.parse_record_line(line), replaying=True)

    # ------------------------------------------------------------------ plumbing

    def _journal(self, record: dict) -> None:
        if self.data_dir:
            records.append_line(self.data_dir / JOURNAL_FILE, records.canonical_line(record))

    def _audit(self, actor: str, action: str, params: dict) -> int:
        self._audit_seq += 1
        entry = {
            "seq": self._audit_seq,
            "at": records.format_timestamp(self.now_fn()),
            "actor": actor,
            "action": action,
            "params": params,
        }
        if self.data_dir:
            records.append_line(self.data_dir / AUDIT_FILE, records.canonical_line(entry))
        return self._audit_seq

    def _apply(self, record: dict, replaying: bool) -> None:
        """Re-apply one journal record while reopening a data directory."""
        cmd = record["cmd"]
        at = records.parse_timestamp(record["at"])
        if cmd == "register":
            self.registry.register(record["record"], at)
            self._states_cache = None
        elif cmd == "advance_phase":
            self.registry.advance_project_phase(
                record["project_id"], ProjectPhase(record["phase"]), at
            )
        elif cmd == "set_pmc":
            self.registry.set_pmc_members(record["project_id"], set(record["member_ids"]), at)
        elif cmd == "propose_role":
            self._apply_propose(
                record["proposal_id"],
                record["contributor_id"],
                record["project_id"],
                record["new_role"],
                record["proposed_by"],
                at,
            )
        elif cmd == "vote_role":
            self._apply_vote(record["proposal_id"], record["voter_id"], record["approve"], at)
        elif cmd == "assess":
            self._apply_assess(
                record["project_id"], record["period"], record["levels"], record["evidence"]
            )
        elif cmd == "open_cycle":
            awards_mod.open_cycle(
                self.cycles, self.catalog, AwardKind(record["kind"]), record["period"]
            )
        elif cmd == "slate":
            cycle = self._cycle(record["kind"], record["period"])
            cycle.require_status(CycleStatus.OPEN)
            cycle.slate = record["slate"]
            cycle.status = CycleStatus.SLATED
        elif cmd == "decide":
            self._apply_decide(
                record["kind"],
                record["period"],
                record["recipients"],
                record["decided_by"],
            )
        elif cmd == "finalize":
            self._apply_finalize(record["kind"], record["period"], record["pool"])
        else:
            raise HonorError(f"unknown journal command {cmd!r}")

    def _now_record(self, cmd: str, **fields) -> dict:
        return {"cmd": cmd, "at": records.format_timestamp(self.now_fn()), **fields}

    # ------------------------------------------------------------------ registry

    def register_entity(self, record: dict, actor: str = "local") -> str:
        with self._lock:
            journal_record = self._now_record("register", record=record)
            entity_id = self.registry.register(
                record, records.parse_timestamp(journal_record["at"])
            )
            self._journal(journal_record)
            self._audit(actor, "register", {"kind": record.get("kind"), "id": entity_id})
            self._states_cache = None
            return entity_id

    def register_entities(self, raw_records: list[dict], actor: str = "local") -> dict:
        """Bootstrap import: register records in order, reporting per-record errors."""
        registered = []
        errors = []
        for raw in raw_records:
            try:
                registered.append(self.register_entity(raw, actor=actor))
            except HonorError as exc:
                errors.append({"record": raw, "error": exc.code, "detail": str(exc)})
        return {"registered": registered, "errors": errors}

    def advance_project_phase(self, project_id: str, phase: str, actor: str = "local") -> dict:
        with self._lock:
            journal_record = self._now_record(
                "advance_phase", project_id=project_id, phase=phase
            )
            project = self.registry.advance_project_phase(
                project_id, ProjectPhase(phase), records.parse_timestamp(journal_record["at"])
            )
            self._journal(journal_record)
            seq = self._audit(actor, "advance_phase", {"project_id": project_id, "phase": phase})
            return {**self.registry.entity_payload("project", project.id), "audit_seq": seq}

    def set_pmc_members(self, project_id: str, member_ids: list[str], actor: str = "local") -> dict:
        with self._lock:
            journal_record = self._now_record(
                "set_pmc", project_id=project_id, member_ids=sorted(set(member_ids))
            )
            self.registry.set_pmc_members(
                project_id, set(member_ids), records.parse_timestamp(journal_record["at"])
            )
            self._journal(journal_record)
            seq = self._audit(actor, "set_pmc", {"project_id": project_id, "member_ids": sorted(set(member_ids))})
            return {**self.registry.entity_payload("project", project_id), "audit_seq": seq}

    def lookup(self, kind: str, entity_id: str) -> dict:
        return self.registry.entity_payload(kind, entity_id)

    # ------------------------------------------------------------------ events

    def ingest(
        self,
        raw_records: list[dict],
        source: str | None = None,
        actor: str = "local",
    ) -> dict:
        with self._lock:
            report = self.log.ingest(
                raw_records,
                known_contributors=self.registry.contributors,
                known_projects=self.registry.projects,
                now=self.now_fn(),
                source=source,
            )
            self._states_cache = None
            seq = self._audit(
                actor,
                "ingest",
                {
                    "source": source or "api",
                    "accepted": report.accepted,
                    "duplicates": report.duplicates,
                    "rejected": len(report.rejected),
                },
            )
            return {**report.to_payload(), "audit_seq": seq}

    def recompute(self, actor: str = "local") -> dict:
        with self._lock:
            self._states_cache = None
            states = self.states()
            snapshot_bytes = self._snapshot_bytes(states)
            summary = {
                "contributors": len(states),
                "events": len(self.log),
                "total_points": sum(s.total_points for s in states.values()),
                "snapshot_sha256": records.sha256_hex(snapshot_bytes),
            }
            seq = self._audit(actor, "recompute", summary)
            return {**summary, "audit_seq": seq}

    # ------------------------------------------------------------------ ledger views

    def _roles_as_of(self, as_of) -> dict[tuple[str, str], str]:
        if as_of is None:
            return self.role_state
        approved = sorted(
            (
                p
                for p in self.proposals.values()
                if p.outcome == "Approved"
                and p.decided_at is not None
                and p.decided_at.date() <= as_of
            ),
            key=lambda p: p.decided_at,
        )
        roles: dict[tuple[str, str], str] = {}
        for p in approved:
            roles[(p.contributor_id, p.project_id)] = p.new_role
        return roles

    def _fold_events(self, events: list[ContributionEvent], as_of=None) -> dict[str, ContributorState]:
        states: dict[str, ContributorState] = {}
        entry_tier = tier_for_points(0, self.scoring.tiers)
        for cid in self.registry.contributors:
            states[cid] = ContributorState(contributor_id=cid, tier=entry_tier)
        for event in events:
            state = states.get(event.contributor_id)
            if state is None:
                state = ContributorState(contributor_id=event.contributor_id, tier=entry_tier)
                states[event.contributor_id] = state
            ledger_mod.apply_event(state, event, self.scoring.weights, self.scoring.tiers)
        for (cid, pid), role in self._roles_as_of(as_of).items():
            if cid in states:
                states[cid].roles[pid] = role
        return states

    def states(self, as_of=None) -> dict[str, ContributorState]:
        with self._lock:
            if as_of is not None:
                return self._fold_events(
                    [e for e in self.log.events if e.occurred_at.date() <= as_of], as_of
                )
            if self._states_cache is None:
                self._states_cache = self._fold_events(self.log.events)
            return self._states_cache

    def _tenure(self, states: dict[str, ContributorState], contributor_id: str):
        """Tie-break key: earliest event wins; never-contributed sorts last."""
        state = states.get(contributor_id)
        if state is None or state.first_event_at is None:
            return ledger_mod.TS_MAX
        return state.first_event_at

    def _snapshot_bytes(self, states: dict[str, ContributorState]) -> bytes:
        lines = [records.canonical_line(states[cid].to_record()) for cid in sorted(states)]
        return records.seal_lines(lines).encode("utf-8")

    def leaderboard(self, top: int | None = None) -> list[LeaderboardEntry]:
        with self._lock:
            entries = rebuild_leaderboard(self.states())
        return entries[:top] if top else entries

    # ------------------------------------------------------------------ roles

    def _current_role(self, contributor_id: str, project_id: str) -> str:
        return self.role_state.get((contributor_id, project_id), "Contributor")

    def _apply_propose(self, proposal_id, contributor_id, project_id, new_role, proposed_by, at):
        project = self.registry.project(project_id)
        self.registry.contributor(contributor_id)
        if proposed_by not in project.pmc_member_ids:
            raise NotAuthorized(f"{proposed_by!r} is not a PMC member of {project_id!r}")
        current = self._current_role(contributor_id, project_id)
        check_ladder_step(current, new_role)
        proposal = RoleProposal(
            id=proposal_id,
            project_id=project_id,
            contributor_id=contributor_id,
            from_role=current,
            new_role=new_role,
            proposed_by=proposed_by,
            created_at=at,
        )
        self.proposals[proposal_id] = proposal
        return proposal

    def propose_role_change(
        self, contributor_id: str, project_id: str, new_role: str, proposed_by: str,
        actor: str = "local",
    ) -> dict:
        with self._lock:
            proposal_id = f"rp-{len(self.proposals) + 1:04d}"
            journal_record = self._now_record(
                "propose_role",
                proposal_id=proposal_id,
                contributor_id=contributor_id,
                project_id=project_id,
                new_role=new_role,
                proposed_by=proposed_by,
            )
            proposal = self._apply_propose(
                proposal_id, contributor_id, project_id, new_role, proposed_by,
                records.parse_timestamp(journal_record["at"]),
            )
            self._journal(journal_record)
            seq = self._audit(actor, "propose_role", {"proposal_id": proposal_id, "new_role": new_role})
            return {**proposal.to_payload(), "audit_seq": seq}

    def _apply_vote(self, proposal_id, voter_id, approve, at):
        proposal = self.proposals.get(proposal_id)
        if proposal is None:
            raise NotFound(f"proposal {proposal_id!r} not found")
        project = self.registry.project(proposal.project_id)
        outcome = cast_vote(proposal, voter_id, approve, project.pmc_member_ids)
        if outcome != "Pending":
            proposal.decided_at = at
        if outcome == "Approved":
            # Role updates atomically with the deciding vote.
            self.role_state[(proposal.contributor_id, proposal.project_id)] = proposal.new_role
            self._states_cache = None
            if proposal.new_role == "PMCMember":
                members = set(project.pmc_member_ids) | {proposal.contributor_id}
                self.registry.set_pmc_members(proposal.project_id, members, at)
        return proposal

    def vote_role_change(
        self, proposal_id: str, voter_id: str, approve: bool, actor: str = "local"
    ) -> dict:
        with self._lock:
            journal_record = self._now_record(
                "vote_role", proposal_id=proposal_id, voter_id=voter_id, approve=approve
            )
            proposal = self._apply_vote(
                proposal_id, voter_id, approve, records.parse_timestamp(journal_record["at"])
            )
            self._journal(journal_record)
            seq = self._audit(
                actor,
                "vote_role",
                {"proposal_id": proposal_id, "voter_id": voter_id, "outcome": proposal.outcome},
            )
            return {**proposal.to_payload(), "audit_seq": seq}

    # ------------------------------------------------------------------ maturity

    def _apply_assess(self, project_id, period, levels, evidence):
        project = self.registry.project(project_id)
        if project.phase == ProjectPhase.PREPARATION:
            raise ProjectNotEligible(
                f"project {project_id!r} is still in Preparation; assessments start at Incubation"
            )
        records.validate_period(period)
        if not records.is_month_period(period):
            raise ProjectNotEligible(f"assessments are monthly; got period {period!r}")
        return self.maturity.assess(project_id, period, levels, evidence)

    def assess_project(
        self, project_id: str, period: str, levels: dict, evidence: dict | None = None,
        actor: str = "local",
    ) -> dict:
        with self._lock:
            journal_record = self._now_record(
                "assess",
                project_id=project_id,
                period=period,
                levels=levels,
                evidence=evidence or {},
            )
            assessment = self._apply_assess(project_id, period, levels, evidence or {})
            self._journal(journal_record)
            seq = self._audit(actor, "assess", {"project_id": project_id, "period": period})
            return {**assessment.to_payload(), "audit_seq": seq}

    def maturity_ranking(self, period: str) -> dict:
        ranked = maturity_mod.rank_projects_by_maturity(self.maturity.for_period(period))
        return {
            "period": period,
            "ranking": [
                {**a.to_payload(), "min_level": a.min_level, "position": i + 1}
                for i, a in enumerate(ranked)
            ],
        }

    # ------------------------------------------------------------------ award cycles

    def _cycle(self, kind: str, period: str) -> AwardCycle:
        cycle = self.cycles.get((kind, period))
        if cycle is None:
            raise NotFound(f"no cycle {kind} {period}")
        return cycle

    def open_cycle(self, kind: str, period: str, actor: str = "local") -> dict:
        with self._lock:
            journal_record = self._now_record("open_cycle", kind=kind, period=period)
            cycle = awards_mod.open_cycle(self.cycles, self.catalog, AwardKind(kind), period)
            self._journal(journal_record)
            seq = self._audit(actor, "open_cycle", {"kind": kind, "period": period})
            return {**cycle.to_payload(), "audit_seq": seq}

    def build_slate(self, kind: str, period: str, actor: str = "local") -> dict:
        with self._lock:
            cycle = self._cycle(kind, period)
            cycle.require_status(CycleStatus.OPEN)
            slate = self._compute_slate(cycle)
            journal_record = self._now_record("slate", kind=kind, period=period, slate=slate)
            cycle.slate = slate
            cycle.status = CycleStatus.SLATED
            self._journal(journal_record)
            seq = self._audit(actor, "slate", {"kind": kind, "period": period, "candidates": len(slate)})
            return {**cycle.to_payload(), "audit_seq": seq}

    def _events_in_period(self, period: str) -> list[ContributionEvent]:
        return [e for e in self.log.events if records.period_contains(period, e.occurred_at)]

    def _compute_slate(self, cycle: AwardCycle) -> list[dict]:
        kind = cycle.kind
        period = cycle.period
        states = self.states()
        if kind == AwardKind.STAR:
            return self._star_slate(period, states)
        if kind == AwardKind.TIMELY_INCENTIVE:
            ranked = maturity_mod.rank_projects_by_maturity(self.maturity.for_period(period))
            return [
                {
                    "recipient_id": a.project_id,
                    "project_name": self.registry.projects[a.project_id].name
                    if a.project_id in self.registry.projects
                    else a.project_id,
                    "composite": a.composite,
                    "min_level": a.min_level,
                    "levels": {d: a.levels[d] for d in maturity_mod.DIMENSIONS},
                }
                for a in ranked
            ]
        if kind == AwardKind.KNIGHT:
            return self._knight_slate(period, states)
        if kind == AwardKind.GOLD_BADGE:
            return self._gold_badge_slate(period)
        return self._black_land_slate(period)

    def _star_slate(self, period: str, states) -> list[dict]:
        period_points: dict[str, int] = {}
        period_kinds: dict[str, set[str]] = {}
        for event in self._events_in_period(period):
            points = value_event(event, self.scoring.weights)
            period_points[event.contributor_id] = (
                period_points.get(event.contributor_id, 0) + points
            )
            period_kinds.setdefault(event.contributor_id, set()).add(event.kind)
        entries = []
        for cid, points in period_points.items():
            kinds = period_kinds[cid]
            leads = any(
                role in ("Maintainer", "PMCMember")
                for (rc, _), role in self.role_state.items()
                if rc == cid
            ) or any(cid in p.pmc_member_ids for p in self.registry.projects.values())
            entries.append(
                {
                    "recipient_id": cid,
                    "display_name": self._display_name(cid),
                    "period_points": points,
                    "flags": {
                        "leadership": leads,
                        "technical": bool(kinds & TECHNICAL_KINDS),
                        "ambassador": "Evangelism" in kinds,
                    },
                }
            )
        entries.sort(
            key=lambda e: (
                -e["period_points"],
                self._tenure(states, e["recipient_id"]),
                e["recipient_id"],
            )
        )
        return entries

    def _star_recipients_of_year(self, year: str) -> dict[str, list[str]]:
        """Finalized Star recipients in the year -> the months they won."""
        winners: dict[str, list[str]] = {}
        for cycle in self.cycles.values():
            if (
                cycle.kind == AwardKind.STAR
                and cycle.status == CycleStatus.FINALIZED
                and records.year_of_period(cycle.period) == year
            ):
                for decision in cycle.decisions:
                    winners.setdefault(decision.recipient_id, []).append(cycle.period)
        return {cid: sorted(months) for cid, months in winners.items()}

    def _knight_slate(self, year: str, states) -> list[dict]:
        winners = self._star_recipients_of_year(year)
        annual_points: dict[str, int] = {}
        for event in self._events_in_period(year):
            if event.contributor_id in winners:
                annual_points[event.contributor_id] = annual_points.get(
                    event.contributor_id, 0
                ) + value_event(event, self.scoring.weights)
        entries = [
            {
                "recipient_id": cid,
                "display_name": self._display_name(cid),
                "annual_points": annual_points.get(cid, 0),
                "star_periods": months,
            }
            for cid, months in winners.items()
        ]
        entries.sort(
            key=lambda e: (
                -e["annual_points"],
                self._tenure(states, e["recipient_id"]),
                e["recipient_id"],
            )
        )
        return entries

    def _gold_badge_slate(self, year: str) -> list[dict]:
        year_events = self._events_in_period(year)
        contributors_by_project: dict[str, set[str]] = {}
        documented: set[str] = set()
        for event in year_events:
            contributors_by_project.setdefault(event.project_id, set()).add(
                event.contributor_id
            )
            if event.kind == "Documentation":
                documented.add(event.project_id)
        entries = []
        for project in self.registry.projects.values():
            if project.phase == ProjectPhase.PREPARATION:
                continue
            latest = self.maturity.latest_in_year(project.id, year)
            if latest is None:
                continue
            flags = {
                "graduated": project.phase == ProjectPhase.GRADUATION,
                "active_community": len(contributors_by_project.get(project.id, ())) >= 2,
                "documented": project.id in documented,
            }
            entries.append(
                {
                    "recipient_id": project.id,
                    "project_name": project.name,
                    "composite": latest.composite,
                    "min_level": latest.min_level,
                    "flags": flags,
                    "flag_count": sum(flags.values()),
                }
            )
        entries.sort(key=lambda e: (-e["composite"], -e["flag_count"], e["recipient_id"]))
        return entries

    def _black_land_slate(self, year: str) -> list[dict]:
        regions = sorted(self.registry.regions())
        new_projects: dict[str, int] = {r: 0 for r in regions}
        for project in self.registry.projects.values():
            if records.period_contains(year, project.created_at):
                new_projects[self.registry.region_of_project(project.id)] += 1
        states = self.states()
        new_contributors: dict[str, int] = {r: 0 for r in regions}
        region_points: dict[str, int] = {r: 0 for r in regions}
        for event in self._events_in_period(year):
            if event.contributor_id in self.registry.contributors:
                region = self.registry.region_of_contributor(event.contributor_id)
                region_points[region] += value_event(event, self.scoring.weights)
        for cid, state in states.items():
            if (
                cid in self.registry.contributors
                and state.first_event_at is not None
                and records.period_contains(year, state.first_event_at)
            ):
                new_contributors[self.registry.region_of_contributor(cid)] += 1
        entries = [
            {
                "recipient_id": region,
                "new_projects": new_projects[region],
                "new_contributors": new_contributors[region],
                "period_points": region_points[region],
            }
            for region in regions
        ]
        entries.sort(
            key=lambda e: (
                -e["new_projects"],
                -e["new_contributors"],
                -e["period_points"],
                e["recipient_id"],
            )
        )
        return entries

    def _display_name(self, contributor_id: str) -> str:
        contributor = self.registry.contributors.get(contributor_id)
        return contributor.display_name if contributor else contributor_id

    # -- decisions --------------------------------------------------------------

    def _authorized_deciders(self, kind: AwardKind) -> set[str]:
        entry = self.catalog.entry(kind)
        wanted = CommitteeKind.TCC if entry.cadence == Cadence.MONTHLY else CommitteeKind.TC
        members: set[str] = set()
        for committee in self.registry.committees.values():
            if committee.kind == wanted:
                members |= committee.member_ids
        return members

    def _check_scope(self, kind: AwardKind, recipient_id: str) -> str:
        scope = self.catalog.entry(kind).scope
        if scope == awards_mod.AwardScope.INDIVIDUAL:
            if recipient_id not in self.registry.contributors:
                raise ScopeMismatch(f"{kind.value} recipients are contributors; {recipient_id!r} is not one")
            return recipient_id
        if scope == awards_mod.AwardScope.PROJECT:
            if recipient_id not in self.registry.projects:
                raise ScopeMismatch(f"{kind.value} recipients are projects; {recipient_id!r} is not one")
            return recipient_id
        region = recipient_id.lower()
        if region not in self.registry.regions():
            raise ScopeMismatch(f"{kind.value} recipients are regions; {recipient_id!r} is unknown")
        return region

    def _apply_decide(self, kind: str, period: str, recipients: list[dict], decided_by: list[str]):
        cycle = self._cycle(kind, period)
        cycle.require_status(CycleStatus.SLATED)
        authorized = self._authorized_deciders(cycle.kind)
        if not decided_by:
            raise NotAuthorized("decisions need at least one deciding committee member")
        for member in decided_by:
            if member not in authorized:
                raise NotAuthorized(
                    f"{member!r} is not on the authorizing committee for {kind} awards"
                )
        star_winners = None
        if cycle.kind == AwardKind.KNIGHT:
            star_winners = set(self._star_recipients_of_year(period))
        decisions = []
        for raw in recipients:
            recipient_id = self._check_scope(cycle.kind, raw["recipient_id"])
            if star_winners is not None and recipient_id not in star_winners:
                raise IneligibleRecipient(
                    f"Knight {period}: {recipient_id!r} holds no finalized Star award in {period}"
                )
            decisions.append(
                AwardDecision(
                    kind=cycle.kind,
                    period=period,
                    recipient_id=recipient_id,
                    rank=raw.get("rank"),
                    decided_by=list(decided_by),
                    rationale=raw.get("rationale", ""),
                )
            )
        awards_mod.check_decisions(cycle, self.catalog, decisions)
        cycle.decisions = decisions
        cycle.status = CycleStatus.DECIDED
        return cycle

    def record_decisions(
        self,
        kind: str,
        period: str,
        recipients: list[dict],
        decided_by: list[str],
        actor: str = "local",
    ) -> dict:
        with self._lock:
            journal_record = self._now_record(
                "decide", kind=kind, period=period, recipients=recipients, decided_by=decided_by
            )
            cycle = self._apply_decide(kind, period, recipients, decided_by)
            self._journal(journal_record)
            seq = self._audit(
                actor, "decide", {"kind": kind, "period": period, "recipients": len(recipients)}
            )
            return {**cycle.to_payload(), "audit_seq": seq}

    def _apply_finalize(self, kind: str, period: str, pool: int):
        cycle = self._cycle(kind, period)
        year = records.year_of_period(period)
        budget = self.budgets.get(year)
        if budget is None:
            if not isinstance(pool, int) or pool <= 0:
                raise PoolMismatch(f"fiscal year {year} needs a positive integer pool")
            budget = BudgetLedger(fiscal_year=year, pool=pool)
            self.budgets[year] = budget
        elif pool is not None and pool != budget.pool:
            raise PoolMismatch(
                f"fiscal year {year} pool is {budget.pool}; cannot finalize against {pool}"
            )
        awards_mod.finalize_cycle(cycle, self.catalog, budget)
        if cycle.kind == AwardKind.TIMELY_INCENTIVE:
            self.maturity.freeze(period)
        return cycle

    def finalize_cycle(self, kind: str, period: str, pool: int, actor: str = "local") -> dict:
        with self._lock:
            journal_record = self._now_record("finalize", kind=kind, period=period, pool=pool)
            cycle = self._apply_finalize(kind, period, pool)
            self._journal(journal_record)
            seq = self._audit(
                actor,
                "finalize",
                {
                    "kind": kind,
                    "period": period,
                    "amounts": [d.monetary_amount for d in cycle.decisions],
                },
            )
            return {**cycle.to_payload(), "audit_seq": seq}

    def preview_amounts(self, kind: str, period: str, pool: int) -> dict:
        cycle = self._cycle(kind, period)
        if cycle.status == CycleStatus.FINALIZED:
            amounts = [d.monetary_amount for d in cycle.decisions]
        else:
            cycle.require_status(CycleStatus.DECIDED)
            amounts = awards_mod.compute_amounts(cycle, self.catalog, pool)
        return {
            "kind": kind,
            "period": period,
            "pool": pool,
            "recipients": [
                {
                    "recipient_id": d.recipient_id,
                    "rank": d.rank,
                    "amount": amount,
                }
                for d, amount in zip(cycle.decisions, amounts)
            ],
            "total": sum(amounts),
        }

    def year_report(self, year: str) -> dict:
        with self._lock:
            return awards_mod.year_report(year, self.catalog, self.cycles, self.budgets.get(year))

    def budget_payload(self, year: str) -> dict:
        budget = self.budgets.get(year)
        if budget is None:
            return {"fiscal_year": year, "pool": 0, "allocated": 0, "remainder": 0, "entries": []}
        return budget.to_payload()

    def cycles_payload(self) -> list[dict]:
        with self._lock:
            ordered = sorted(self.cycles.values(), key=lambda c: (c.period, c.kind.value))
        return [
            {
                "kind": c.kind.value,
                "period": c.period,
                "status": c.status.value,
                "candidates": len(c.slate),
                "recipients": len(c.decisions),
            }
            for c in ordered
        ]

    def cycle_payload(self, kind: str, period: str) -> dict:
        cycle = self._cycle(kind, period)
        entry = self.catalog.entry(cycle.kind)
        return {
            **cycle.to_payload(),
            "cadence": entry.cadence.value,
            "scope": entry.scope.value,
            "slots": {
                "total": entry.total_slots(),
                "groups": [
                    {
                        "rank": g.rank,
                        "slots": g.slots,
                        "per_awardee_bp": g.per_awardee_bp,
                        "nonmonetary": list(g.nonmonetary),
                    }
                    for g in entry.groups
                ],
            },
        }

    # ------------------------------------------------------------------ read side

    def wall(self, as_of=None) -> dict:
        with self._lock:
            return wall_mod.build_wall(self, as_of)

    def profile(self, contributor_id: str, as_of=None) -> dict:
        with self._lock:
            return wall_mod.build_profile(self, contributor_id, as_of)

    def validate_registry(self) -> list[str]:
        return self.registry.validate()
