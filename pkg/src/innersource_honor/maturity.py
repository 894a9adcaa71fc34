"""Per-period project maturity assessments.

Committees score each project monthly on four dimensions — transparency,
collaboration, community, governance — each an integer level 0..3, entered by
humans rather than derived from forge data. The composite (sum, 0..12) feeds
the monthly project award and project reporting. A period freezes once that
period's project-award cycle finalizes; frozen assessments are immutable.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import FrozenPeriod, OutOfRangeLevel

DIMENSIONS = ("Transparency", "Collaboration", "Community", "Governance")
MAX_LEVEL = 3


@dataclass
class MaturityAssessment:
    project_id: str
    period: str
    levels: dict[str, int]
    evidence: dict[str, str] = field(default_factory=dict)

    @property
    def composite(self) -> int:
        return sum(self.levels[d] for d in DIMENSIONS)

    @property
    def min_level(self) -> int:
        return min(self.levels[d] for d in DIMENSIONS)

    def to_payload(self) -> dict:
        return {
            "project_id": self.project_id,
            "period": self.period,
            "levels": {d: self.levels[d] for d in DIMENSIONS},
            "evidence": dict(sorted(self.evidence.items())),
            "composite": self.composite,
        }


def validate_levels(levels: dict) -> dict[str, int]:
    clean: dict[str, int] = {}
    for dim in DIMENSIONS:
        if dim not in levels:
            raise OutOfRangeLevel(f"missing dimension {dim}")
        value = levels[dim]
        if not isinstance(value, int) or isinstance(value, bool) or not 0 <= value <= MAX_LEVEL:
            raise OutOfRangeLevel(f"{dim} level must be an integer 0..{MAX_LEVEL}, got {value!r}")
        clean[dim] = value
    extra = set(levels) - set(DIMENSIONS)
    if extra:
        raise OutOfRangeLevel(f"unknown dimensions: {sorted(extra)}")
    return clean


class MaturityStore:
    """Assessments keyed by (project, period); last write wins until frozen."""

    def __init__(self):
        self.assessments: dict[tuple[str, str], MaturityAssessment] = {}
        self.frozen_periods: set[str] = set()

    def assess(self, project_id: str, period: str, levels: dict, evidence: dict | None = None) -> MaturityAssessment:
        if period in self.frozen_periods:
            raise FrozenPeriod(f"period {period} is finalized; assessments are immutable")
        assessment = MaturityAssessment(
            project_id=project_id,
            period=period,
            levels=validate_levels(levels),
            evidence=dict(evidence or {}),
        )
        self.assessments[(project_id, period)] = assessment
        return assessment

    def freeze(self, period: str) -> None:
        self.frozen_periods.add(period)

    def for_period(self, period: str) -> list[MaturityAssessment]:
        return [a for (pid, per), a in self.assessments.items() if per == period]

    def latest_in_year(self, project_id: str, year: str) -> MaturityAssessment | None:
        """Most recent assessment of the project within the calendar year."""
        candidates = [
            a
            for (pid, per), a in self.assessments.items()
            if pid == project_id and per.startswith(year + "-")
        ]
        if not candidates:
            return None
        return max(candidates, key=lambda a: a.period)


def ranking_sort_key(assessment: MaturityAssessment) -> tuple:
    return (-assessment.composite, -assessment.min_level, assessment.project_id)


def rank_projects_by_maturity(assessments: list[MaturityAssessment]) -> list[MaturityAssessment]:
    """Order by composite desc, then weakest dimension desc, then project id."""
    return sorted(assessments, key=ranking_sort_key)
