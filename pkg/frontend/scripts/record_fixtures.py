"""Record real API payloads as fixtures for the console contract tests.

Runs the actual service in-process, drives a populated award year through
it, and captures the responses the console renders. Rerun after API changes:

    python3 frontend/scripts/record_fixtures.py
"""
import json
import sys
from pathlib import Path

from fastapi.testclient import TestClient

REPO = Path(__file__).resolve().parents[2]
sys.path.insert(0, str(REPO / "tests"))

from innersource_honor.service.app import create_app  # noqa: E402
from helpers import (  # noqa: E402
    assess_projects,
    build_world,
    feed_month_events,
    new_engine,
    run_monthly_cycles,
)

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"
POOL = 1_000_000


def save(name: str, payload) -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    (FIXTURES / name).write_text(
        json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )
    print(f"wrote {name}")


def main() -> None:
    engine = new_engine()
    world = build_world(engine)
    http = TestClient(create_app(engine, {"tok": ("member", "mei")}))
    member = {"Authorization": "Bearer tok"}

    # one finalized month so the wall has monthly content
    feed_month_events(engine, world, "2021-07")
    assess_projects(engine, world, "2021-07")
    run_monthly_cycles(engine, world, "2021-07", POOL)

    # a slated Star cycle with a full candidate field for the workbench
    feed_month_events(engine, world, "2021-08")
    http.post("/cycles", json={"kind": "Star", "period": "2021-08"}, headers=member)
    star_cycle = http.post("/cycles/Star/2021-08/slate", headers=member).json()
    save("cycle_star_slated.json", http.get("/cycles/Star/2021-08").json())
    assert len(star_cycle["slate"]) >= 11, "workbench fixture needs 11+ candidates"

    # a decided GoldBadge cycle and its finalize preview
    assess_projects(engine, world, "2021-11")
    http.post("/cycles", json={"kind": "GoldBadge", "period": "2021"}, headers=member)
    gold = http.post("/cycles/GoldBadge/2021/slate", headers=member).json()
    recipients = [{"recipient_id": gold["slate"][0]["recipient_id"], "rank": 1}]
    recipients += [{"recipient_id": c["recipient_id"], "rank": 2} for c in gold["slate"][1:4]]
    recipients += [{"recipient_id": c["recipient_id"], "rank": 3} for c in gold["slate"][4:9]]
    http.post(
        "/cycles/GoldBadge/2021/decisions",
        json={"recipients": recipients, "decided_by": [world["tc_member"]]},
        headers=member,
    )
    save("cycle_goldbadge_decided.json", http.get("/cycles/GoldBadge/2021").json())
    save(
        "preview_goldbadge.json",
        http.get("/cycles/GoldBadge/2021/preview", params={"pool": POOL}).json(),
    )
    http.post("/cycles/GoldBadge/2021/finalize", json={"pool": POOL}, headers=member)

    # annual awards need Knight + BlackLand too for a three-group wall
    http.post("/cycles", json={"kind": "Knight", "period": "2021"}, headers=member)
    knight = http.post("/cycles/Knight/2021/slate", headers=member).json()
    http.post(
        "/cycles/Knight/2021/decisions",
        json={
            "recipients": [{"recipient_id": c["recipient_id"]} for c in knight["slate"][:10]],
            "decided_by": [world["tc_member"]],
        },
        headers=member,
    )
    http.post("/cycles/Knight/2021/finalize", json={"pool": POOL}, headers=member)

    http.post("/cycles", json={"kind": "BlackLand", "period": "2021"}, headers=member)
    black = http.post("/cycles/BlackLand/2021/slate", headers=member).json()
    http.post(
        "/cycles/BlackLand/2021/decisions",
        json={
            "recipients": [{"recipient_id": c["recipient_id"]} for c in black["slate"][:3]],
            "decided_by": [world["tc_member"]],
        },
        headers=member,
    )
    http.post("/cycles/BlackLand/2021/finalize", json={"pool": POOL}, headers=member)

    save("wall.json", http.get("/wall").json())
    star_winner = http.get("/cycles/Star/2021-07").json()["decisions"][0]["recipient_id"]
    save("profile.json", http.get(f"/profile/{star_winner}").json())


if __name__ == "__main__":
    main()
