"""Scoring configuration: contribution weights, tier ladder, vote quorum.

Config files are plain ``key = value`` lines; ``#`` starts a comment. Keys:

    weight.<Kind>        points per unit of magnitude, one line per kind
    tier.names           comma-separated ladder, lowest tier first
    tier.base_threshold  points needed for the second tier
    tier.growth_factor   integer multiplier between consecutive thresholds
    role.quorum          only ``majority`` is supported

Defaults encode code as the dominant contribution kind while still counting
every other kind, and a five-tier ladder with geometric thresholds
0/100/400/1600/6400. All of it is overridable; none of it is hard-coded
anywhere else.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .errors import BadConfig

EVENT_KINDS = (
    "Code",
    "Review",
    "IssueReport",
    "Documentation",
    "Discussion",
    "Mentoring",
    "Evangelism",
)

DEFAULT_WEIGHTS = {
    "Code": 10,
    "Mentoring": 5,
    "Documentation": 4,
    "Review": 3,
    "IssueReport": 2,
    "Evangelism": 2,
    "Discussion": 1,
}

DEFAULT_TIER_NAMES = ["Bronze", "Silver", "Gold", "Platinum", "Diamond"]


@dataclass(frozen=True)
class WeightConfig:
    points_per_unit: dict[str, int]

    def __post_init__(self):
        missing = [k for k in EVENT_KINDS if k not in self.points_per_unit]
        if missing:
            raise BadConfig(f"weights missing kinds: {missing}")
        for kind, w in self.points_per_unit.items():
            if kind not in EVENT_KINDS:
                raise BadConfig(f"weight for unknown kind {kind!r}")
            if not isinstance(w, int) or w <= 0:
                raise BadConfig(f"weight for {kind} must be a positive integer, got {w!r}")
        code = self.points_per_unit["Code"]
        if any(w > code for w in self.points_per_unit.values()):
            raise BadConfig("Code weight must be >= every other weight")

    def weight(self, kind: str) -> int:
        return self.points_per_unit[kind]


@dataclass(frozen=True)
class TierConfig:
    names: list[str]
    base_threshold: int
    growth_factor: int

    def __post_init__(self):
        if not self.names or len(set(self.names)) != len(self.names):
            raise BadConfig("tier names must be non-empty and unique")
        if not isinstance(self.base_threshold, int) or self.base_threshold <= 0:
            raise BadConfig("base_threshold must be a positive integer")
        if not isinstance(self.growth_factor, int) or self.growth_factor < 2:
            raise BadConfig("growth_factor must be an integer >= 2")

    def threshold(self, index: int) -> int:
        """Points needed to hold tier ``names[index]``. The first tier is free."""
        if index == 0:
            return 0
        return self.base_threshold * self.growth_factor ** (index - 1)

    def thresholds(self) -> list[int]:
        return [self.threshold(i) for i in range(len(self.names))]

    def top_tiers(self, count: int = 2) -> list[str]:
        """Highest ``count`` tier names, best first."""
        return list(reversed(self.names[-count:]))


@dataclass(frozen=True)
class ScoringConfig:
    weights: WeightConfig = field(default_factory=lambda: WeightConfig(dict(DEFAULT_WEIGHTS)))
    tiers: TierConfig = field(
        default_factory=lambda: TierConfig(list(DEFAULT_TIER_NAMES), 100, 4)
    )
    role_quorum: str = "majority"


def parse_kv_text(text: str) -> dict[str, str]:
    pairs: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise BadConfig(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        pairs[key.strip()] = value.strip()
    return pairs


def _parse_int(pairs: dict[str, str], key: str, default: int) -> int:
    if key not in pairs:
        return default
    try:
        return int(pairs[key])
    except ValueError:
        raise BadConfig(f"{key} must be an integer, got {pairs[key]!r}")


def load_scoring_config(path: Path | None = None, text: str | None = None) -> ScoringConfig:
    if text is None:
        if path is None:
            return ScoringConfig()
        text = Path(path).read_text(encoding="utf-8")
    pairs = parse_kv_text(text)

    weights = dict(DEFAULT_WEIGHTS)
    for key, value in pairs.items():
        if key.startswith("weight."):
            kind = key[len("weight."):]
            try:
                weights[kind] = int(value)
            except ValueError:
                raise BadConfig(f"{key} must be an integer, got {value!r}")

    names = DEFAULT_TIER_NAMES
    if "tier.names" in pairs:
        names = [n.strip() for n in pairs["tier.names"].split(",") if n.strip()]
    base = _parse_int(pairs, "tier.base_threshold", 100)
    factor = _parse_int(pairs, "tier.growth_factor", 4)

    quorum = pairs.get("role.quorum", "majority")
    if quorum != "majority":
        raise BadConfig(f"unsupported role.quorum {quorum!r}")

    return ScoringConfig(
        weights=WeightConfig(weights),
        tiers=TierConfig(list(names), base, factor),
        role_quorum=quorum,
    )
