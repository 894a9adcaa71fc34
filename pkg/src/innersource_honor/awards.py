"""Award catalog, cycles, committee decisions, and exact budget allocation.

Five award kinds run through a forward-only cycle state machine
(Open -> Slated -> Decided -> Finalized). The monetary side is integer
basis points of an annual pool: every slot of every cycle carries a bp
share, and the built-in catalog annualizes to exactly 10000 bp (100%), so a
fully awarded year conserves the pool to the minor unit, modulo per-decision
flooring. Awards are deliberately scarce: slot caps are hard, unfilled slots
lapse rather than roll over.

Built-in catalog (bp = basis points of the annual pool, per awardee):

    Star            monthly  individual   10 slots x 25 bp    -> 3000 bp/yr
    TimelyIncentive monthly  project       5 slots x 25 bp    -> 1500 bp/yr
    Knight          annual   individual   10 slots x 240 bp   -> 2400 bp/yr
    GoldBadge       annual   project      rank1 1x500, rank2 3x400, rank3 5x100 -> 2200 bp/yr
    BlackLand       annual   department    3 slots x 300 bp   ->  900 bp/yr
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from . import records
from .config import parse_kv_text
from .errors import (
    BudgetExhausted,
    CadenceMismatch,
    CatalogNotConserving,
    DuplicateCycle,
    IllegalCycleState,
    MissingRationale,
    PoolMismatch,
    TooManyRecipients,
)

BP_SCALE = 10000


class AwardKind(str, Enum):
    STAR = "Star"
    KNIGHT = "Knight"
    TIMELY_INCENTIVE = "TimelyIncentive"
    GOLD_BADGE = "GoldBadge"
    BLACK_LAND = "BlackLand"


class Cadence(str, Enum):
    MONTHLY = "Monthly"
    ANNUAL = "Annual"


class AwardScope(str, Enum):
    INDIVIDUAL = "Individual"
    PROJECT = "Project"
    DEPARTMENT = "Department"


class CycleStatus(str, Enum):
    OPEN = "Open"
    SLATED = "Slated"
    DECIDED = "Decided"
    FINALIZED = "Finalized"


STATUS_ORDER = [CycleStatus.OPEN, CycleStatus.SLATED, CycleStatus.DECIDED, CycleStatus.FINALIZED]


@dataclass(frozen=True)
class SlotGroup:
    """One (rank, slots, bp) line of a catalog entry. rank=None for flat kinds."""

    rank: int | None
    slots: int
    per_awardee_bp: int
    nonmonetary: tuple[str, ...] = ()


@dataclass(frozen=True)
class AwardCatalogEntry:
    kind: AwardKind
    cadence: Cadence
    scope: AwardScope
    groups: tuple[SlotGroup, ...]

    def group_for_rank(self, rank: int | None) -> SlotGroup:
        for group in self.groups:
            if group.rank == rank:
                return group
        raise TooManyRecipients(f"{self.kind.value} has no rank {rank!r}")

    def total_slots(self) -> int:
        return sum(g.slots for g in self.groups)

    def annualized_bp(self) -> int:
        per_cycle = sum(g.slots * g.per_awardee_bp for g in self.groups)
        return per_cycle * (12 if self.cadence == Cadence.MONTHLY else 1)


@dataclass(frozen=True)
class AwardCatalog:
    entries: dict[AwardKind, AwardCatalogEntry]

    def entry(self, kind: AwardKind) -> AwardCatalogEntry:
        return self.entries[kind]

    def annualized_bp(self) -> int:
        return sum(e.annualized_bp() for e in self.entries.values())

    def validate(self) -> "AwardCatalog":
        total = self.annualized_bp()
        if total != BP_SCALE:
            raise CatalogNotConserving(
                f"catalog annualizes to {total} bp, must be exactly {BP_SCALE}"
            )
        for entry in self.entries.values():
            for group in entry.groups:
                if group.slots <= 0 or group.per_awardee_bp <= 0:
                    raise CatalogNotConserving(
                        f"{entry.kind.value}: slots and bp must be positive"
                    )
        return self


def default_catalog() -> AwardCatalog:
    entries = {
        AwardKind.STAR: AwardCatalogEntry(
            kind=AwardKind.STAR,
            cadence=Cadence.MONTHLY,
            scope=AwardScope.INDIVIDUAL,
            groups=(
                SlotGroup(
                    rank=None,
                    slots=10,
                    per_awardee_bp=25,
                    nonmonetary=(
                        "profile-star",
                        "newsletter-promotion",
                        "live-broadcast-invitation",
                    ),
                ),
            ),
        ),
        AwardKind.KNIGHT: AwardCatalogEntry(
            kind=AwardKind.KNIGHT,
            cadence=Cadence.ANNUAL,
            scope=AwardScope.INDIVIDUAL,
            groups=(
                SlotGroup(
                    rank=None,
                    slots=10,
                    per_awardee_bp=240,
                    nonmonetary=(
                        "best-person-memorial-medal",
                        "annual-report-listing",
                        "closed-workshop-invitation",
                    ),
                ),
            ),
        ),
        AwardKind.TIMELY_INCENTIVE: AwardCatalogEntry(
            kind=AwardKind.TIMELY_INCENTIVE,
            cadence=Cadence.MONTHLY,
            scope=AwardScope.PROJECT,
            groups=(
                SlotGroup(
                    rank=None,
                    slots=5,
                    per_awardee_bp=25,
                    nonmonetary=(
                        "monthly-active-project-signpost",
                        "corporate-broadcast-feature",
                    ),
                ),
            ),
        ),
        AwardKind.GOLD_BADGE: AwardCatalogEntry(
            kind=AwardKind.GOLD_BADGE,
            cadence=Cadence.ANNUAL,
            scope=AwardScope.PROJECT,
            groups=(
                SlotGroup(
                    rank=1,
                    slots=1,
                    per_awardee_bp=500,
                    nonmonetary=("crystal-medal", "best-project-badge", "management-showcase"),
                ),
                SlotGroup(
                    rank=2,
                    slots=3,
                    per_awardee_bp=400,
                    nonmonetary=("best-project-badge", "management-showcase"),
                ),
                SlotGroup(
                    rank=3,
                    slots=5,
                    per_awardee_bp=100,
                    nonmonetary=("best-project-badge", "management-showcase"),
                ),
            ),
        ),
        AwardKind.BLACK_LAND: AwardCatalogEntry(
            kind=AwardKind.BLACK_LAND,
            cadence=Cadence.ANNUAL,
            scope=AwardScope.DEPARTMENT,
            groups=(
                SlotGroup(
                    rank=None,
                    slots=3,
                    per_awardee_bp=300,
                    nonmonetary=(
                        "black-land-memorial-cup",
                        "management-showcase",
                        "closed-workshop-invitation",
                    ),
                ),
            ),
        ),
    }
    return AwardCatalog(entries=entries).validate()


_OVERRIDE_KEYS = {
    "star": (AwardKind.STAR, None),
    "knight": (AwardKind.KNIGHT, None),
    "timely_incentive": (AwardKind.TIMELY_INCENTIVE, None),
    "black_land": (AwardKind.BLACK_LAND, None),
    "gold_badge.rank1": (AwardKind.GOLD_BADGE, 1),
    "gold_badge.rank2": (AwardKind.GOLD_BADGE, 2),
    "gold_badge.rank3": (AwardKind.GOLD_BADGE, 3),
}


def load_catalog(path: Path | None = None, text: str | None = None) -> AwardCatalog:
    """Built-in catalog, optionally overridden by ``<key>.slots``/``<key>.bp``
    lines. Overrides must still annualize to exactly 10000 bp."""
    catalog = default_catalog()
    if path is None and text is None:
        return catalog
    if text is None:
        text = Path(path).read_text(encoding="utf-8")
    pairs = parse_kv_text(text)

    overrides: dict[tuple[AwardKind, int | None], dict[str, int]] = {}
    for key, value in pairs.items():
        base, _, attr = key.rpartition(".")
        if base not in _OVERRIDE_KEYS or attr not in ("slots", "bp"):
            raise CatalogNotConserving(f"unknown catalog override key {key!r}")
        try:
            overrides.setdefault(_OVERRIDE_KEYS[base], {})[attr] = int(value)
        except ValueError:
            raise CatalogNotConserving(f"{key} must be an integer, got {value!r}")

    entries = {}
    for kind, entry in catalog.entries.items():
        groups = []
        for group in entry.groups:
            patch = overrides.get((kind, group.rank), {})
            groups.append(
                SlotGroup(
                    rank=group.rank,
                    slots=patch.get("slots", group.slots),
                    per_awardee_bp=patch.get("bp", group.per_awardee_bp),
                    nonmonetary=group.nonmonetary,
                )
            )
        entries[kind] = AwardCatalogEntry(
            kind=kind, cadence=entry.cadence, scope=entry.scope, groups=tuple(groups)
        )
    return AwardCatalog(entries=entries).validate()


# -- cycles and decisions ------------------------------------------------------


@dataclass
class AwardDecision:
    kind: AwardKind
    period: str
    recipient_id: str
    rank: int | None = None
    decided_by: list[str] = field(default_factory=list)
    rationale: str = ""
    off_slate: bool = False
    monetary_amount: int | None = None
    nonmonetary: list[str] = field(default_factory=list)

    def to_payload(self) -> dict:
        return {
            "kind": self.kind.value,
            "period": self.period,
            "recipient_id": self.recipient_id,
            "rank": self.rank,
            "decided_by": list(self.decided_by),
            "rationale": self.rationale,
            "off_slate": self.off_slate,
            "monetary_amount": self.monetary_amount,
            "nonmonetary": list(self.nonmonetary),
        }


@dataclass
class AwardCycle:
    kind: AwardKind
    period: str
    status: CycleStatus = CycleStatus.OPEN
    slate: list[dict] = field(default_factory=list)
    decisions: list[AwardDecision] = field(default_factory=list)

    def key(self) -> tuple[str, str]:
        return (self.kind.value, self.period)

    def require_status(self, expected: CycleStatus) -> None:
        if self.status != expected:
            raise IllegalCycleState(
                f"{self.kind.value} {self.period} is {self.status.value}, needs {expected.value}"
            )

    def to_payload(self) -> dict:
        return {
            "kind": self.kind.value,
            "period": self.period,
            "status": self.status.value,
            "slate": list(self.slate),
            "decisions": [d.to_payload() for d in self.decisions],
        }


@dataclass
class BudgetLedger:
    fiscal_year: str
    pool: int
    entries: list[dict] = field(default_factory=list)

    @property
    def allocated(self) -> int:
        return sum(e["amount"] for e in self.entries)

    @property
    def remainder(self) -> int:
        return self.pool - self.allocated

    def to_payload(self) -> dict:
        return {
            "fiscal_year": self.fiscal_year,
            "pool": self.pool,
            "allocated": self.allocated,
            "remainder": self.remainder,
            "entries": list(self.entries),
        }


def open_cycle(cycles: dict, catalog: AwardCatalog, kind: AwardKind, period: str) -> AwardCycle:
    entry = catalog.entry(kind)
    if entry.cadence == Cadence.MONTHLY and not records.is_month_period(period):
        raise CadenceMismatch(f"{kind.value} is monthly; period must be YYYY-MM, got {period!r}")
    if entry.cadence == Cadence.ANNUAL and not records.is_year_period(period):
        raise CadenceMismatch(f"{kind.value} is annual; period must be YYYY, got {period!r}")
    key = (kind.value, period)
    if key in cycles:
        raise DuplicateCycle(f"cycle {kind.value} {period} already exists")
    cycle = AwardCycle(kind=kind, period=period)
    cycles[key] = cycle
    return cycle


def check_decisions(
    cycle: AwardCycle,
    catalog: AwardCatalog,
    proposed: list[AwardDecision],
) -> None:
    """Slot caps, rank validity, and the off-slate-needs-rationale rule."""
    entry = catalog.entry(cycle.kind)
    ranked = entry.groups[0].rank is not None
    counts: dict[int | None, int] = {}
    slate_ids = {c.get("recipient_id") for c in cycle.slate}
    seen: set[str] = set()
    for decision in proposed:
        if ranked and decision.rank is None:
            raise TooManyRecipients(f"{cycle.kind.value} decisions need a rank")
        if not ranked and decision.rank is not None:
            raise TooManyRecipients(f"{cycle.kind.value} decisions do not take a rank")
        group = entry.group_for_rank(decision.rank)
        counts[decision.rank] = counts.get(decision.rank, 0) + 1
        if counts[decision.rank] > group.slots:
            label = f"rank {decision.rank}" if ranked else "slot"
            raise TooManyRecipients(
                f"{cycle.kind.value} {cycle.period}: {counts[decision.rank]} recipients "
                f"exceed the {group.slots}-{label} cap"
            )
        if decision.recipient_id in seen:
            raise TooManyRecipients(
                f"{cycle.kind.value} {cycle.period}: duplicate recipient {decision.recipient_id!r}"
            )
        seen.add(decision.recipient_id)
        if decision.recipient_id not in slate_ids:
            decision.off_slate = True
            if not decision.rationale.strip():
                raise MissingRationale(
                    f"off-slate recipient {decision.recipient_id!r} needs a rationale"
                )


def compute_amounts(cycle: AwardCycle, catalog: AwardCatalog, pool: int) -> list[int]:
    """floor(pool * bp / 10000) per decision, in decision order."""
    entry = catalog.entry(cycle.kind)
    return [
        pool * entry.group_for_rank(d.rank).per_awardee_bp // BP_SCALE for d in cycle.decisions
    ]


def finalize_cycle(
    cycle: AwardCycle,
    catalog: AwardCatalog,
    budget: BudgetLedger,
) -> list[AwardDecision]:
    """Price the decided recipients, append to the budget ledger, and freeze."""
    cycle.require_status(CycleStatus.DECIDED)
    if budget.fiscal_year != records.year_of_period(cycle.period):
        raise PoolMismatch(
            f"budget ledger {budget.fiscal_year} cannot pay {cycle.kind.value} {cycle.period}"
        )
    entry = catalog.entry(cycle.kind)
    amounts = compute_amounts(cycle, catalog, budget.pool)
    if budget.allocated + sum(amounts) > budget.pool:
        raise BudgetExhausted(
            f"finalizing {cycle.kind.value} {cycle.period} would overspend the pool"
        )
    for decision, amount in zip(cycle.decisions, amounts):
        group = entry.group_for_rank(decision.rank)
        decision.monetary_amount = amount
        decision.nonmonetary = list(group.nonmonetary)
        budget.entries.append(
            {
                "kind": cycle.kind.value,
                "period": cycle.period,
                "recipient_id": decision.recipient_id,
                "rank": decision.rank,
                "amount": amount,
            }
        )
    cycle.status = CycleStatus.FINALIZED
    return cycle.decisions


def year_report(
    year: str,
    catalog: AwardCatalog,
    cycles: dict,
    budget: BudgetLedger | None,
) -> dict:
    """Aggregate the year's finalized cycles, including unfilled-slot residue."""
    report_kinds = {}
    pool = budget.pool if budget else 0
    for kind, entry in catalog.entries.items():
        finalized = [
            c
            for c in cycles.values()
            if c.kind == kind
            and c.status == CycleStatus.FINALIZED
            and records.year_of_period(c.period) == year
        ]
        finalized.sort(key=lambda c: c.period)
        recipients = []
        total = 0
        unfilled_value = 0
        for cycle in finalized:
            awarded_per_rank: dict[int | None, int] = {}
            for d in cycle.decisions:
                awarded_per_rank[d.rank] = awarded_per_rank.get(d.rank, 0) + 1
                total += d.monetary_amount or 0
                recipients.append(
                    {
                        "period": cycle.period,
                        "recipient_id": d.recipient_id,
                        "rank": d.rank,
                        "amount": d.monetary_amount,
                    }
                )
            for group in entry.groups:
                unfilled = group.slots - awarded_per_rank.get(group.rank, 0)
                unfilled_value += unfilled * (pool * group.per_awardee_bp // BP_SCALE)
        report_kinds[kind.value] = {
            "cycles_finalized": len(finalized),
            "recipients": recipients,
            "total_amount": total,
            "unfilled_slot_value": unfilled_value,
        }
    total_allocated = sum(k["total_amount"] for k in report_kinds.values())
    return {
        "fiscal_year": year,
        "pool": pool,
        "kinds": report_kinds,
        "total_allocated": total_allocated,
        "unallocated": (pool - total_allocated) if budget else 0,
    }
