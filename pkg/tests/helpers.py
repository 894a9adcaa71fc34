"""Shared test fixtures: deterministic clock, world builders, year simulator."""
from __future__ import annotations

import random
from datetime import datetime, timedelta, timezone

from innersource_honor.engine import Engine
from innersource_honor.records import parse_timestamp

REGIONS = ["shenzhen", "xian", "nanjing", "hangzhou"]


def ts(value: str) -> datetime:
    return parse_timestamp(value)


class Clock:
    """Deterministic wall clock: starts after the simulated year so every
    simulated event counts as backfill."""

    def __init__(self, start: str = "2022-01-01T00:00:00Z"):
        self.now = parse_timestamp(start)

    def __call__(self) -> datetime:
        self.now += timedelta(seconds=1)
        return self.now


def make_event(event_id: str, contributor_id: str, project_id: str, kind: str, occurred_at: str, magnitude: int = 1) -> dict:
    return {
        "event_id": event_id,
        "contributor_id": contributor_id,
        "project_id": project_id,
        "kind": kind,
        "occurred_at": occurred_at,
        "magnitude": magnitude,
        "source": "test",
    }


def new_engine(**kwargs) -> Engine:
    kwargs.setdefault("now_fn", Clock())
    return Engine(**kwargs)


def build_world(
    engine: Engine,
    contributors: int = 14,
    projects: int = 10,
    year: str = "2021",
) -> dict:
    """Departments in four regions, contributors, Incubation projects with
    PMCs, one TC and one TCC. Returns the id lists."""
    dept_ids = []
    for i, region in enumerate(REGIONS):
        did = f"d{i + 1}"
        engine.register_entity(
            {
                "kind": "department",
                "id": did,
                "name": f"Dept {i + 1}",
                "region": region,
                "product_line": "platform" if i % 2 == 0 else "devices",
            }
        )
        dept_ids.append(did)

    contributor_ids = []
    for i in range(contributors):
        cid = f"c{i + 1:02d}"
        engine.register_entity(
            {
                "kind": "contributor",
                "id": cid,
                "display_name": f"Contributor {i + 1}",
                "department_id": dept_ids[i % len(dept_ids)],
                "joined_at": f"{year}-01-01T00:00:00Z",
            }
        )
        contributor_ids.append(cid)

    project_ids = []
    for i in range(projects):
        pid = f"p{i + 1:02d}"
        engine.register_entity(
            {
                "kind": "project",
                "id": pid,
                "name": f"Project {i + 1}",
                "owning_department_id": dept_ids[i % len(dept_ids)],
                "phase": "Incubation",
                "pmc_member_ids": [contributor_ids[i % len(contributor_ids)]],
                "created_at": f"{year}-02-01T00:00:00Z",
            }
        )
        project_ids.append(pid)

    engine.register_entity(
        {
            "kind": "committee",
            "id": "tc",
            "committee_kind": "TC",
            "scope": "org",
            "member_ids": contributor_ids[:3],
        }
    )
    engine.register_entity(
        {
            "kind": "committee",
            "id": "tcc-platform",
            "committee_kind": "TCC",
            "scope": "product_line",
            "scope_ref": "platform",
            "member_ids": contributor_ids[:2],
        }
    )
    return {
        "departments": dept_ids,
        "contributors": contributor_ids,
        "projects": project_ids,
        "tc_member": contributor_ids[0],
        "tcc_member": contributor_ids[0],
    }


def feed_month_events(engine: Engine, world: dict, month: str, rng: random.Random | None = None, active: int = 12) -> None:
    """Events for `active` contributors in one month, deterministic by default."""
    contributors = world["contributors"][:active]
    projects = world["projects"]
    kinds = ["Code", "Review", "Documentation", "IssueReport", "Mentoring", "Evangelism", "Discussion"]
    for i, cid in enumerate(contributors):
        day = 3 + (i % 20)
        kind = kinds[i % len(kinds)] if rng is None else rng.choice(kinds)
        magnitude = 1 + (i % 3) if rng is None else rng.randint(1, 4)
        records = [
            make_event(
                f"ev-{month}-{cid}-{j}",
                cid,
                projects[(i + j) % len(projects)],
                kind if j == 0 else "Code",
                f"{month}-{day:02d}T1{j}:00:00Z",
                magnitude,
            )
            for j in range(2)
        ]
        report = engine.ingest(records, source="sim")
        assert not report["rejected"], report["rejected"]


def assess_projects(engine: Engine, world: dict, month: str, rng: random.Random | None = None, count: int = 9) -> None:
    for i, pid in enumerate(world["projects"][:count]):
        if rng is None:
            levels = {
                "Transparency": (i + 1) % 4,
                "Collaboration": (i + 2) % 4,
                "Community": (i + 3) % 4,
                "Governance": i % 4,
            }
        else:
            levels = {d: rng.randint(0, 3) for d in ("Transparency", "Collaboration", "Community", "Governance")}
        engine.assess_project(pid, month, levels, {"Transparency": "reviewed"})


def run_monthly_cycles(engine: Engine, world: dict, month: str, pool: int) -> None:
    tcc = world["tcc_member"]

    engine.open_cycle("Star", month)
    slate = engine.build_slate("Star", month)["slate"]
    recipients = [{"recipient_id": c["recipient_id"]} for c in slate[:10]]
    engine.record_decisions("Star", month, recipients, [tcc])
    engine.finalize_cycle("Star", month, pool)

    engine.open_cycle("TimelyIncentive", month)
    slate = engine.build_slate("TimelyIncentive", month)["slate"]
    recipients = [{"recipient_id": c["recipient_id"]} for c in slate[:5]]
    engine.record_decisions("TimelyIncentive", month, recipients, [tcc])
    engine.finalize_cycle("TimelyIncentive", month, pool)


def run_annual_cycles(engine: Engine, world: dict, year: str, pool: int) -> None:
    tc = world["tc_member"]

    engine.open_cycle("Knight", year)
    slate = engine.build_slate("Knight", year)["slate"]
    recipients = [{"recipient_id": c["recipient_id"]} for c in slate[:10]]
    engine.record_decisions("Knight", year, recipients, [tc])
    engine.finalize_cycle("Knight", year, pool)

    engine.open_cycle("GoldBadge", year)
    slate = engine.build_slate("GoldBadge", year)["slate"]
    assert len(slate) >= 9, "gold badge simulation needs nine assessed projects"
    recipients = [{"recipient_id": slate[0]["recipient_id"], "rank": 1}]
    recipients += [{"recipient_id": c["recipient_id"], "rank": 2} for c in slate[1:4]]
    recipients += [{"recipient_id": c["recipient_id"], "rank": 3} for c in slate[4:9]]
    engine.record_decisions("GoldBadge", year, recipients, [tc])
    engine.finalize_cycle("GoldBadge", year, pool)

    engine.open_cycle("BlackLand", year)
    slate = engine.build_slate("BlackLand", year)["slate"]
    recipients = [{"recipient_id": c["recipient_id"]} for c in slate[:3]]
    engine.record_decisions("BlackLand", year, recipients, [tc])
    engine.finalize_cycle("BlackLand", year, pool)


def run_full_year(engine: Engine, world: dict, year: str = "2021", pool: int = 1_000_000, rng: random.Random | None = None) -> None:
    """Every cycle of the fiscal year, every slot filled."""
    for month in (f"{year}-{m:02d}" for m in range(1, 13)):
        feed_month_events(engine, world, month, rng)
        assess_projects(engine, world, month, rng)
        run_monthly_cycles(engine, world, month, pool)
    run_annual_cycles(engine, world, year, pool)
