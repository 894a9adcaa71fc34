"""Wall of Honor and contributor profile read models.

Everything here is a pure function of (registry, event log, role decisions,
finalized cycles) plus the optional ``as_of`` date, so regenerating a wall
from a reloaded data directory produces identical bytes. Only finalized
cycles ever appear; ``as_of`` keeps events up to that date and cycles whose
period has fully elapsed by it.
"""
from __future__ import annotations

from datetime import date

from . import records
from .awards import AwardKind, CycleStatus
from .errors import NotFound
from .ledger import rebuild_leaderboard
from .registry import CommitteeKind


def _member_entry(engine, contributor_id: str) -> dict:
    contributor = engine.registry.contributors.get(contributor_id)
    return {
        "contributor_id": contributor_id,
        "display_name": contributor.display_name if contributor else contributor_id,
        "intro": contributor.intro if contributor else "",
        "profile": f"/profile/{contributor_id}",
    }


def _finalized_cycles(engine, as_of: date | None):
    for cycle in engine.cycles.values():
        if cycle.status != CycleStatus.FINALIZED:
            continue
        if as_of is not None and records.period_end(cycle.period) > as_of:
            continue
        yield cycle


def _recipient_entry(engine, decision) -> dict:
    recipient_id = decision.recipient_id
    if recipient_id in engine.registry.contributors:
        name = engine.registry.contributors[recipient_id].display_name
    elif recipient_id in engine.registry.projects:
        name = engine.registry.projects[recipient_id].name
    else:
        name = recipient_id
    entry = {
        "recipient_id": recipient_id,
        "display_name": name,
        "monetary_amount": decision.monetary_amount,
        "nonmonetary": list(decision.nonmonetary),
    }
    if decision.rank is not None:
        entry["rank"] = decision.rank
    return entry


def build_wall(engine, as_of: date | None = None) -> dict:
    registry = engine.registry

    tc_members: list[dict] = []
    tccs: list[dict] = []
    for committee in sorted(registry.committees.values(), key=lambda c: c.id):
        if committee.kind == CommitteeKind.TC:
            tc_members = [_member_entry(engine, m) for m in sorted(committee.member_ids)]
        elif committee.kind == CommitteeKind.TCC:
            tccs.append(
                {
                    "committee_id": committee.id,
                    "product_line": committee.scope_ref or "",
                    "members": [_member_entry(engine, m) for m in sorted(committee.member_ids)],
                }
            )
    tccs.sort(key=lambda t: (t["product_line"], t["committee_id"]))

    pmcs = [
        {
            "project_id": project.id,
            "project_name": project.name,
            "members": [_member_entry(engine, m) for m in sorted(project.pmc_member_ids)],
        }
        for project in sorted(registry.projects.values(), key=lambda p: p.id)
        if project.pmc_member_ids
    ]

    states = engine.states(as_of)
    ranking = rebuild_leaderboard(states)
    rank_by_id = {e.contributor_id: e.rank for e in ranking}
    top_tiers = []
    for tier_name in engine.scoring.tiers.top_tiers(2):
        members = [
            {
                "contributor_id": s.contributor_id,
                "display_name": _member_entry(engine, s.contributor_id)["display_name"],
                "total_points": s.total_points,
                "rank": rank_by_id[s.contributor_id],
            }
            for s in sorted(
                (s for s in states.values() if s.tier == tier_name),
                key=lambda s: rank_by_id[s.contributor_id],
            )
        ]
        top_tiers.append({"tier": tier_name, "contributors": members})

    annual: dict[str, dict] = {}
    monthly: dict[str, dict] = {}
    annual_keys = {
        AwardKind.KNIGHT: "knight",
        AwardKind.GOLD_BADGE: "gold_badge",
        AwardKind.BLACK_LAND: "black_land",
    }
    monthly_keys = {AwardKind.STAR: "star", AwardKind.TIMELY_INCENTIVE: "timely_incentive"}
    for cycle in _finalized_cycles(engine, as_of):
        recipients = [_recipient_entry(engine, d) for d in cycle.decisions]
        recipients.sort(key=lambda r: (r.get("rank") or 0, r["recipient_id"]))
        if cycle.kind in annual_keys:
            bucket = annual.setdefault(
                cycle.period, {"year": cycle.period, "knight": [], "gold_badge": [], "black_land": []}
            )
            bucket[annual_keys[cycle.kind]] = recipients
        else:
            bucket = monthly.setdefault(
                cycle.period, {"month": cycle.period, "star": [], "timely_incentive": []}
            )
            bucket[monthly_keys[cycle.kind]] = recipients

    return {
        "as_of": as_of.isoformat() if as_of else None,
        "committees": {"tc": tc_members, "tccs": tccs, "pmcs": pmcs},
        "top_tiers": top_tiers,
        "annual_awards": [annual[y] for y in sorted(annual)],
        "monthly_awards": [monthly[m] for m in sorted(monthly)],
    }


def build_profile(engine, contributor_id: str, as_of: date | None = None) -> dict:
    contributor = engine.registry.contributors.get(contributor_id)
    if contributor is None:
        raise NotFound(f"contributor {contributor_id!r} not registered")

    states = engine.states(as_of)
    ranking = rebuild_leaderboard(states)
    entry = next(e for e in ranking if e.contributor_id == contributor_id)
    state = states[contributor_id]

    awards = []
    for cycle in _finalized_cycles(engine, as_of):
        for decision in cycle.decisions:
            if decision.recipient_id == contributor_id:
                awards.append(
                    {
                        "kind": cycle.kind.value,
                        "period": cycle.period,
                        "rank": decision.rank,
                        "monetary_amount": decision.monetary_amount,
                        "nonmonetary": list(decision.nonmonetary),
                    }
                )
    awards.sort(key=lambda a: (a["period"], a["kind"]))

    department = engine.registry.departments.get(contributor.department_id)
    return {
        "as_of": as_of.isoformat() if as_of else None,
        "contributor_id": contributor_id,
        "display_name": contributor.display_name,
        "intro": contributor.intro,
        "interests": list(contributor.interests),
        "department_id": contributor.department_id,
        "region": department.region if department else "",
        "joined_at": records.format_timestamp(contributor.joined_at),
        "total_points": state.total_points,
        "points_by_kind": dict(sorted(state.points_by_kind.items())),
        "counts_by_kind": dict(sorted(state.counts_by_kind.items())),
        "first_event_at": (
            records.format_timestamp(state.first_event_at) if state.first_event_at else None
        ),
        "tier": state.tier,
        "rank": entry.rank,
        "percentile": entry.percentile,
        "roles": dict(sorted(state.roles.items())),
        "awards": awards,
    }
