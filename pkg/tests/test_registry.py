import pytest

from innersource_honor.errors import (
    DanglingReference,
    DuplicateId,
    IllegalPhaseTransition,
    NotFound,
)

from helpers import build_world, new_engine


def test_register_round_trip(engine):
    assert engine.register_entity(
        {"kind": "department", "id": "d1", "name": "Net", "region": "shenzhen", "product_line": "net"}
    ) == "d1"
    shown = engine.lookup("department", "d1")
    assert shown["region"] == "shenzhen"


def test_duplicate_id_rejected(engine):
    record = {"kind": "department", "id": "d1", "name": "Net", "region": "shenzhen", "product_line": "net"}
    engine.register_entity(record)
    with pytest.raises(DuplicateId):
        engine.register_entity(record)


def test_project_with_unknown_department_rejected(engine):
    with pytest.raises(DanglingReference):
        engine.register_entity(
            {
                "kind": "project",
                "id": "p1",
                "name": "Mesh",
                "owning_department_id": "nope",
                "created_at": "2021-01-01T00:00:00Z",
            }
        )


def test_department_needs_region(engine):
    with pytest.raises(DanglingReference):
        engine.register_entity(
            {"kind": "department", "id": "d1", "name": "Net", "region": "  ", "product_line": "net"}
        )


def test_second_tc_rejected(engine):
    engine.register_entity(
        {"kind": "department", "id": "d1", "name": "Net", "region": "shenzhen", "product_line": "net"}
    )
    engine.register_entity(
        {
            "kind": "contributor",
            "id": "c1",
            "display_name": "Ada",
            "department_id": "d1",
            "joined_at": "2021-01-01T00:00:00Z",
        }
    )
    engine.register_entity(
        {"kind": "committee", "id": "tc1", "committee_kind": "TC", "scope": "org", "member_ids": ["c1"]}
    )
    with pytest.raises(DuplicateId):
        engine.register_entity(
            {"kind": "committee", "id": "tc2", "committee_kind": "TC", "scope": "org", "member_ids": ["c1"]}
        )


def test_one_pmc_committee_per_project(world_engine):
    engine, world = world_engine
    engine.register_entity(
        {
            "kind": "committee",
            "id": "pmc-p01",
            "committee_kind": "PMC",
            "scope": "project",
            "scope_ref": "p01",
            "member_ids": [world["contributors"][0]],
        }
    )
    with pytest.raises(DuplicateId):
        engine.register_entity(
            {
                "kind": "committee",
                "id": "pmc-p01-again",
                "committee_kind": "PMC",
                "scope": "project",
                "scope_ref": "p01",
                "member_ids": [world["contributors"][1]],
            }
        )


def test_pmc_committee_registration_updates_project(world_engine):
    engine, world = world_engine
    members = [world["contributors"][2], world["contributors"][3]]
    engine.register_entity(
        {
            "kind": "committee",
            "id": "pmc-p02",
            "committee_kind": "PMC",
            "scope": "project",
            "scope_ref": "p02",
            "member_ids": members,
        }
    )
    assert sorted(engine.lookup("project", "p02")["pmc_member_ids"]) == sorted(members)


def test_phase_advances_forward_only(engine):
    engine.register_entity(
        {"kind": "department", "id": "d1", "name": "Net", "region": "shenzhen", "product_line": "net"}
    )
    engine.register_entity(
        {
            "kind": "contributor",
            "id": "c1",
            "display_name": "Ada",
            "department_id": "d1",
            "joined_at": "2021-01-01T00:00:00Z",
        }
    )
    engine.register_entity(
        {
            "kind": "project",
            "id": "p1",
            "name": "Mesh",
            "owning_department_id": "d1",
            "phase": "Preparation",
            "pmc_member_ids": ["c1"],
            "created_at": "2021-01-01T00:00:00Z",
        }
    )
    assert engine.advance_project_phase("p1", "Incubation")["phase"] == "Incubation"
    with pytest.raises(IllegalPhaseTransition):
        engine.advance_project_phase("p1", "Preparation")
    assert engine.advance_project_phase("p1", "Graduation")["phase"] == "Graduation"


def test_phase_cannot_skip(engine):
    engine.register_entity(
        {"kind": "department", "id": "d1", "name": "Net", "region": "shenzhen", "product_line": "net"}
    )
    engine.register_entity(
        {
            "kind": "contributor",
            "id": "c1",
            "display_name": "Ada",
            "department_id": "d1",
            "joined_at": "2021-01-01T00:00:00Z",
        }
    )
    engine.register_entity(
        {
            "kind": "project",
            "id": "p1",
            "name": "Mesh",
            "owning_department_id": "d1",
            "pmc_member_ids": ["c1"],
            "created_at": "2021-01-01T00:00:00Z",
        }
    )
    with pytest.raises(IllegalPhaseTransition):
        engine.advance_project_phase("p1", "Graduation")


def test_lookup_not_found(engine):
    with pytest.raises(NotFound):
        engine.lookup("project", "nope")


def test_registry_full_scan_is_clean():
    engine = new_engine()
    build_world(engine)
    assert engine.validate_registry() == []


def test_import_reports_per_record_errors(engine):
    result = engine.register_entities(
        [
            {"kind": "department", "id": "d1", "name": "Net", "region": "shenzhen", "product_line": "net"},
            {"kind": "department", "id": "d1", "name": "Dup", "region": "xian", "product_line": "net"},
            {"kind": "contributor", "id": "c1", "display_name": "Ada", "department_id": "d9",
             "joined_at": "2021-01-01T00:00:00Z"},
        ]
    )
    assert result["registered"] == ["d1"]
    assert [e["error"] for e in result["errors"]] == ["DuplicateId", "DanglingReference"]
