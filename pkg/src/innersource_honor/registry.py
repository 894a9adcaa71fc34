"""Organization registry: contributors, departments, projects, committees.

The registry is the authority every other module resolves ids against. Ids
are caller-supplied opaque strings (forge handles) so that rebuilding state
from files is deterministic. Project phases only move forward, and PMC
membership changes keep a timestamped history so historical award cycles can
be re-evaluated against period-correct membership.

Bootstrap file format: one JSON record per line with a self-describing
``kind`` field, one of ``contributor``, ``department``, ``project``,
``committee``. Records must appear after everything they reference.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum

from . import records
from .errors import DanglingReference, DuplicateId, IllegalPhaseTransition, NotFound


class ProjectPhase(str, Enum):
    PREPARATION = "Preparation"
    INCUBATION = "Incubation"
    GRADUATION = "Graduation"


PHASE_ORDER = [ProjectPhase.PREPARATION, ProjectPhase.INCUBATION, ProjectPhase.GRADUATION]


class CommitteeKind(str, Enum):
    FOUNDATION = "Foundation"
    TC = "TC"
    TCC = "TCC"
    PMC = "PMC"


class CommitteeScope(str, Enum):
    ORG = "org"
    PRODUCT_LINE = "product_line"
    PROJECT = "project"


@dataclass
class Contributor:
    id: str
    display_name: str
    department_id: str
    joined_at: datetime
    intro: str = ""
    interests: list[str] = field(default_factory=list)


@dataclass
class Department:
    id: str
    name: str
    region: str
    product_line: str


@dataclass
class Project:
    id: str
    name: str
    owning_department_id: str
    phase: ProjectPhase
    pmc_member_ids: set[str]
    created_at: datetime
    # (timestamp, phase) transitions, including the initial phase
    phase_history: list[tuple[datetime, ProjectPhase]] = field(default_factory=list)
    # (timestamp, membership) changes, including the initial membership
    pmc_history: list[tuple[datetime, frozenset[str]]] = field(default_factory=list)


@dataclass
class Committee:
    id: str
    kind: CommitteeKind
    scope: CommitteeScope
    scope_ref: str | None
    member_ids: set[str]


class Registry:
    """In-memory entity store with referential-integrity checks on write."""

    def __init__(self):
        self.contributors: dict[str, Contributor] = {}
        self.departments: dict[str, Department] = {}
        self.projects: dict[str, Project] = {}
        self.committees: dict[str, Committee] = {}

    # -- registration --------------------------------------------------------

    def register(self, record: dict, at: datetime) -> str:
        """Register one bootstrap record. Returns the registered id."""
        kind = record.get("kind")
        if kind == "contributor":
            return self._register_contributor(record)
        if kind == "department":
            return self._register_department(record)
        if kind == "project":
            return self._register_project(record, at)
        if kind == "committee":
            return self._register_committee(record, at)
        raise DanglingReference(f"unknown record kind {kind!r}")

    def _claim_id(self, entity_id, store: dict, label: str) -> str:
        if not entity_id or not isinstance(entity_id, str):
            raise DanglingReference(f"{label} record needs a non-empty string id")
        if entity_id in store:
            raise DuplicateId(f"{label} {entity_id!r} already registered")
        return entity_id

    def _register_department(self, record: dict) -> str:
        dept_id = self._claim_id(record.get("id"), self.departments, "department")
        region = (record.get("region") or "").strip()
        if not region:
            raise DanglingReference(f"department {dept_id!r} needs a non-empty region")
        self.departments[dept_id] = Department(
            id=dept_id,
            name=record.get("name", dept_id),
            region=region,
            product_line=record.get("product_line", ""),
        )
        return dept_id

    def _register_contributor(self, record: dict) -> str:
        cid = self._claim_id(record.get("id"), self.contributors, "contributor")
        dept = record.get("department_id")
        if dept not in self.departments:
            raise DanglingReference(f"contributor {cid!r} references unknown department {dept!r}")
        self.contributors[cid] = Contributor(
            id=cid,
            display_name=record.get("display_name", cid),
            department_id=dept,
            joined_at=records.parse_timestamp(record["joined_at"]),
            intro=record.get("intro", ""),
            interests=list(record.get("interests", [])),
        )
        return cid

    def _register_project(self, record: dict, at: datetime) -> str:
        pid = self._claim_id(record.get("id"), self.projects, "project")
        dept = record.get("owning_department_id")
        if dept not in self.departments:
            raise DanglingReference(f"project {pid!r} references unknown department {dept!r}")
        phase = ProjectPhase(record.get("phase", "Preparation"))
        members = set(record.get("pmc_member_ids", []))
        for m in members:
            if m not in self.contributors:
                raise DanglingReference(f"project {pid!r} PMC references unknown contributor {m!r}")
        if phase != ProjectPhase.PREPARATION and not members:
            raise DanglingReference(
                f"project {pid!r} at phase {phase.value} needs a non-empty PMC"
            )
        created = records.parse_timestamp(record["created_at"])
        project = Project(
            id=pid,
            name=record.get("name", pid),
            owning_department_id=dept,
            phase=phase,
            pmc_member_ids=members,
            created_at=created,
            phase_history=[(at, phase)],
            pmc_history=[(at, frozenset(members))],
        )
        self.projects[pid] = project
        return pid

    def _register_committee(self, record: dict, at: datetime) -> str:
        cid = self._claim_id(record.get("id"), self.committees, "committee")
        kind = CommitteeKind(record["committee_kind"])
        scope = CommitteeScope(record.get("scope", "org"))
        scope_ref = record.get("scope_ref")
        members = set(record.get("member_ids", []))
        for m in members:
            if m not in self.contributors:
                raise DanglingReference(f"committee {cid!r} references unknown contributor {m!r}")

        if kind in (CommitteeKind.FOUNDATION, CommitteeKind.TC):
            if scope != CommitteeScope.ORG:
                raise DanglingReference(f"{kind.value} committees are org-wide")
            existing = [c for c in self.committees.values() if c.kind == kind]
            if existing:
                raise DuplicateId(f"a {kind.value} committee already exists: {existing[0].id!r}")
        elif kind == CommitteeKind.TCC:
            if scope != CommitteeScope.PRODUCT_LINE or not scope_ref:
                raise DanglingReference("TCC committees need a product-line scope_ref")
        elif kind == CommitteeKind.PMC:
            if scope != CommitteeScope.PROJECT or scope_ref not in self.projects:
                raise DanglingReference(
                    f"PMC committee {cid!r} needs a registered project scope_ref"
                )
            if any(
                c.kind == CommitteeKind.PMC and c.scope_ref == scope_ref
                for c in self.committees.values()
            ):
                raise DuplicateId(f"project {scope_ref!r} already has a PMC committee")

        self.committees[cid] = Committee(
            id=cid, kind=kind, scope=scope, scope_ref=scope_ref, member_ids=members
        )
        # A PMC committee is the same body as the project's PMC membership.
        if kind == CommitteeKind.PMC:
            self.set_pmc_members(scope_ref, members, at)
        return cid

    # -- mutations -------------------------------------------------------------

    def advance_project_phase(self, project_id: str, new_phase: ProjectPhase, at: datetime) -> Project:
        project = self.project(project_id)
        current_idx = PHASE_ORDER.index(project.phase)
        new_idx = PHASE_ORDER.index(new_phase)
        if new_idx != current_idx + 1:
            raise IllegalPhaseTransition(
                f"project {project_id!r}: {project.phase.value} -> {new_phase.value}"
            )
        if not project.pmc_member_ids:
            raise IllegalPhaseTransition(
                f"project {project_id!r} needs a non-empty PMC to advance past Preparation"
            )
        project.phase = new_phase
        project.phase_history.append((at, new_phase))
        return project

    def set_pmc_members(self, project_id: str, member_ids: set[str], at: datetime) -> Project:
        project = self.project(project_id)
        for m in member_ids:
            if m not in self.contributors:
                raise DanglingReference(f"unknown contributor {m!r} for PMC of {project_id!r}")
        if not member_ids and project.phase != ProjectPhase.PREPARATION:
            raise DanglingReference(
                f"project {project_id!r} past Preparation cannot have an empty PMC"
            )
        project.pmc_member_ids = set(member_ids)
        project.pmc_history.append((at, frozenset(member_ids)))
        # Keep an explicitly registered PMC committee in step.
        for committee in self.committees.values():
            if committee.kind == CommitteeKind.PMC and committee.scope_ref == project_id:
                committee.member_ids = set(member_ids)
        return project

    # -- lookups -----------------------------------------------------------------

    def lookup(self, kind: str, entity_id: str):
        store = {
            "contributor": self.contributors,
            "department": self.departments,
            "project": self.projects,
            "committee": self.committees,
        }.get(kind)
        if store is None:
            raise NotFound(f"unknown entity kind {kind!r}")
        if entity_id not in store:
            raise NotFound(f"{kind} {entity_id!r} not registered")
        return store[entity_id]

    def contributor(self, cid: str) -> Contributor:
        return self.lookup("contributor", cid)

    def department(self, did: str) -> Department:
        return self.lookup("department", did)

    def project(self, pid: str) -> Project:
        return self.lookup("project", pid)

    def regions(self) -> set[str]:
        """Known research-center regions, compared case-insensitively."""
        return {d.region.lower() for d in self.departments.values()}

    def region_of_contributor(self, cid: str) -> str:
        return self.departments[self.contributors[cid].department_id].region.lower()

    def region_of_project(self, pid: str) -> str:
        return self.departments[self.projects[pid].owning_department_id].region.lower()

    def validate(self) -> list[str]:
        """Full-scan referential integrity and cardinality check."""
        issues = []
        for c in self.contributors.values():
            if c.department_id not in self.departments:
                issues.append(f"contributor {c.id} -> missing department {c.department_id}")
        for p in self.projects.values():
            if p.owning_department_id not in self.departments:
                issues.append(f"project {p.id} -> missing department {p.owning_department_id}")
            for m in p.pmc_member_ids:
                if m not in self.contributors:
                    issues.append(f"project {p.id} PMC -> missing contributor {m}")
            phases = [PHASE_ORDER.index(ph) for _, ph in p.phase_history]
            if any(b != a + 1 for a, b in zip(phases, phases[1:])):
                issues.append(f"project {p.id} phase history moved backwards or skipped")
        for c in self.committees.values():
            for m in c.member_ids:
                if m not in self.contributors:
                    issues.append(f"committee {c.id} -> missing contributor {m}")
        for kind in (CommitteeKind.FOUNDATION, CommitteeKind.TC):
            n = sum(1 for c in self.committees.values() if c.kind == kind)
            if n > 1:
                issues.append(f"{kind.value} committee count {n} > 1")
        return issues

    # -- serialization ------------------------------------------------------------

    def entity_payload(self, kind: str, entity_id: str) -> dict:
        entity = self.lookup(kind, entity_id)
        if kind == "contributor":
            return {
                "kind": "contributor",
                "id": entity.id,
                "display_name": entity.display_name,
                "department_id": entity.department_id,
                "joined_at": records.format_timestamp(entity.joined_at),
                "intro": entity.intro,
                "interests": entity.interests,
            }
        if kind == "department":
            return {
                "kind": "department",
                "id": entity.id,
                "name": entity.name,
                "region": entity.region,
                "product_line": entity.product_line,
            }
        if kind == "project":
            return {
                "kind": "project",
                "id": entity.id,
                "name": entity.name,
                "owning_department_id": entity.owning_department_id,
                "phase": entity.phase.value,
                "pmc_member_ids": sorted(entity.pmc_member_ids),
                "created_at": records.format_timestamp(entity.created_at),
            }
        return {
            "kind": "committee",
            "id": entity.id,
            "committee_kind": entity.kind.value,
            "scope": entity.scope.value,
            "scope_ref": entity.scope_ref,
            "member_ids": sorted(entity.member_ids),
        }
