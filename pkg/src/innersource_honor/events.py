"""Contribution event ingestion and deterministic replay.

Events arrive in batches (files or API payloads), get validated against the
registry, deduplicated by event_id, and merged into the canonical log. The
canonical log is kept totally ordered by (occurred_at, event_id) — backfill
batches are expected, so a merge keeps the file canonical for the event *set*
regardless of batch arrival order. Replaying a log is a pure function of its
bytes (plus scoring config) and is how every downstream view is rebuilt.

Event file format: one JSON record per line with the ContributionEvent
fields, RFC-3339 UTC timestamps, and a trailing ``#sha256=`` checksum line.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from datetime import datetime, timedelta, timezone
from pathlib import Path

from . import records
from .config import EVENT_KINDS, ScoringConfig
from .errors import BadChecksum, CorruptLog, NoSnapshot
from .ledger import LedgerSnapshot

DEFAULT_CLOCK_SKEW = timedelta(hours=24)


@dataclass(frozen=True)
class ContributionEvent:
    event_id: str
    contributor_id: str
    project_id: str
    kind: str
    occurred_at: datetime
    magnitude: int = 1
    source: str = "unknown"

    def sort_key(self) -> tuple:
        return (self.occurred_at, self.event_id)

    def to_record(self) -> dict:
        return {
            "event_id": self.event_id,
            "contributor_id": self.contributor_id,
            "project_id": self.project_id,
            "kind": self.kind,
            "occurred_at": records.format_timestamp(self.occurred_at),
            "magnitude": self.magnitude,
            "source": self.source,
        }


@dataclass
class IngestReport:
    accepted: int = 0
    duplicates: int = 0
    rejected: list[tuple[dict, str]] = field(default_factory=list)

    def to_payload(self) -> dict:
        return {
            "accepted": self.accepted,
            "duplicates": self.duplicates,
            "rejected": [{"record": rec, "reason": reason} for rec, reason in self.rejected],
        }


def parse_event_record(record: dict) -> ContributionEvent:
    """Validate one raw record. Raises ValueError with a rejection reason code."""
    if not isinstance(record, dict):
        raise ValueError("BadRecord: not an object")
    event_id = record.get("event_id")
    if not event_id or not isinstance(event_id, str):
        raise ValueError("BadRecord: missing event_id")
    kind = record.get("kind")
    if kind not in EVENT_KINDS:
        raise ValueError(f"UnknownKind: {kind!r}")
    magnitude = record.get("magnitude", 1)
    if not isinstance(magnitude, int) or isinstance(magnitude, bool) or magnitude <= 0:
        raise ValueError(f"NonPositiveMagnitude: {magnitude!r}")
    try:
        occurred_at = records.parse_timestamp(record.get("occurred_at"))
    except (ValueError, TypeError) as exc:
        raise ValueError(f"BadTimestamp: {exc}")
    contributor_id = record.get("contributor_id")
    project_id = record.get("project_id")
    if not contributor_id or not isinstance(contributor_id, str):
        raise ValueError("UnknownContributor: missing contributor_id")
    if not project_id or not isinstance(project_id, str):
        raise ValueError("UnknownProject: missing project_id")
    return ContributionEvent(
        event_id=event_id,
        contributor_id=contributor_id,
        project_id=project_id,
        kind=kind,
        occurred_at=occurred_at,
        magnitude=magnitude,
        source=record.get("source", "unknown"),
    )


class EventLog:
    """The canonical, checksummed, totally ordered contribution log.

    Kept fully in memory and mirrored to ``path`` (when given) with an atomic
    rewrite per accepted batch, so a failed write never leaves a partial
    append.
    """

    def __init__(self, path: Path | None = None):
        self.path = path
        self.events: list[ContributionEvent] = []
        self.ids: set[str] = set()
        if path is not None and path.exists():
            loaded = read_event_file(path)
            self.events = loaded
            self.ids = {e.event_id for e in loaded}

    def __len__(self) -> int:
        return len(self.events)

    def ingest(
        self,
        raw_records: list[dict],
        known_contributors,
        known_projects,
        now: datetime | None = None,
        skew: timedelta = DEFAULT_CLOCK_SKEW,
        source: str | None = None,
    ) -> IngestReport:
        """Validate a batch and merge the accepted events into the log.

        Re-ingesting a batch is idempotent: previously accepted event_ids
        count as duplicates. The whole batch is appended atomically or not at
        all.
        """
        now = now or datetime.now(timezone.utc)
        report = IngestReport()
        accepted: list[ContributionEvent] = []
        batch_ids: set[str] = set()
        for raw in raw_records:
            try:
                event = parse_event_record(raw)
            except ValueError as exc:
                report.rejected.append((raw, str(exc)))
                continue
            if event.contributor_id not in known_contributors:
                report.rejected.append((raw, f"UnknownContributor: {event.contributor_id!r}"))
                continue
            if event.project_id not in known_projects:
                report.rejected.append((raw, f"UnknownProject: {event.project_id!r}"))
                continue
            if event.occurred_at > now + skew:
                report.rejected.append(
                    (raw, f"BadTimestamp: {records.format_timestamp(event.occurred_at)} is in the future")
                )
                continue
            if event.event_id in self.ids or event.event_id in batch_ids:
                report.duplicates += 1
                continue
            if source is not None and raw.get("source") is None:
                event = replace(event, source=source)
            batch_ids.add(event.event_id)
            accepted.append(event)

        if accepted:
            merged = sorted(self.events + accepted, key=ContributionEvent.sort_key)
            if self.path is not None:
                records.write_atomic(self.path, serialize_events(merged))
            self.events = merged
            self.ids.update(batch_ids)
        report.accepted = len(accepted)
        return report


def serialize_events(events: list[ContributionEvent]) -> bytes:
    lines = [records.canonical_line(e.to_record()) for e in events]
    return records.seal_lines(lines).encode("utf-8")


def write_event_file(path: Path, events: list[ContributionEvent]) -> None:
    records.write_atomic(Path(path), serialize_events(list(events)))


def read_event_file(path: Path) -> list[ContributionEvent]:
    """Parse and fully validate an event/log file.

    Raises CorruptLog (with the byte offset of the offending line) on checksum
    failure, unparseable records, ordering violations, or duplicate ids.
    """
    text = Path(path).read_text(encoding="utf-8")
    try:
        lines, _ = records.split_sealed(text)
    except BadChecksum as exc:
        raise CorruptLog(f"{path}: {exc}", offset=max(0, len(text.encode('utf-8')) - 1))

    events: list[ContributionEvent] = []
    seen: set[str] = set()
    offset = 0
    prev_key = None
    for line in lines:
        try:
            raw = records.parse_record_line(line)
            event = parse_event_record(raw)
        except (ValueError, TypeError) as exc:
            raise CorruptLog(f"{path}: bad record at offset {offset}: {exc}", offset=offset)
        if event.event_id in seen:
            raise CorruptLog(
                f"{path}: duplicate event_id {event.event_id!r} at offset {offset}", offset=offset
            )
        key = event.sort_key()
        if prev_key is not None and key < prev_key:
            raise CorruptLog(
                f"{path}: events out of (occurred_at, event_id) order at offset {offset}",
                offset=offset,
            )
        seen.add(event.event_id)
        events.append(event)
        prev_key = key
        offset += len(line.encode("utf-8"))
    return events


def replay(path: Path, config: ScoringConfig | None = None) -> LedgerSnapshot:
    """Fold a log file into a ledger snapshot. Pure in the log bytes + config."""
    if not Path(path).exists():
        raise NoSnapshot(f"no event log at {path}")
    config = config or ScoringConfig()
    events = read_event_file(path)
    snapshot = LedgerSnapshot(weights=config.weights, tiers=config.tiers)
    for event in events:
        snapshot.apply_event(event)
    return snapshot
