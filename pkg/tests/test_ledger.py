import random
from datetime import timedelta

import pytest

from innersource_honor.config import ScoringConfig, TierConfig, WeightConfig, DEFAULT_WEIGHTS
from innersource_honor.errors import BadConfig, UnknownKind
from innersource_honor.events import ContributionEvent
from innersource_honor.ledger import (
    ContributorState,
    LedgerSnapshot,
    apply_event,
    rebuild_leaderboard,
    tier_for_points,
    value_event,
)
from innersource_honor.records import parse_timestamp

from helpers import ts

DEFAULT_TIERS = TierConfig(["Bronze", "Silver", "Gold", "Platinum", "Diamond"], 100, 4)
WEIGHTS = WeightConfig(dict(DEFAULT_WEIGHTS))


def ev(kind, magnitude=1, when="2021-07-03T12:00:00Z", cid="c1", eid="e1"):
    return ContributionEvent(
        event_id=eid,
        contributor_id=cid,
        project_id="p1",
        kind=kind,
        occurred_at=ts(when),
        magnitude=magnitude,
    )


def test_value_event_uses_weight_times_magnitude():
    assert value_event(ev("Code"), WEIGHTS) == 10
    assert value_event(ev("Documentation", 2), WEIGHTS) == 8
    assert value_event(ev("Review", 2), WEIGHTS) == 6


def test_value_event_unknown_kind():
    with pytest.raises(UnknownKind):
        value_event(ev("Singing"), WEIGHTS)


def test_code_must_be_top_weight():
    weights = dict(DEFAULT_WEIGHTS)
    weights["Discussion"] = 99
    with pytest.raises(BadConfig):
        WeightConfig(weights)


def test_apply_event_accumulates():
    state = ContributorState("c1", tier="Bronze")
    apply_event(state, ev("Code"), WEIGHTS, DEFAULT_TIERS)
    assert state.total_points == 10
    assert state.points_by_kind == {"Code": 10}


def test_apply_event_crosses_tier_threshold():
    # 395 points, then one Review of magnitude 2 (+6) lands on 401: Gold at 400.
    state = ContributorState("c1", tier="Bronze")
    for i in range(79):
        apply_event(state, ev("Mentoring", 1, eid=f"m{i}"), WEIGHTS, DEFAULT_TIERS)
    assert state.total_points == 395
    assert state.tier == "Silver"
    apply_event(state, ev("Review", 2), WEIGHTS, DEFAULT_TIERS)
    assert state.total_points == 401
    assert state.tier == "Gold"


def test_default_tier_thresholds():
    assert DEFAULT_TIERS.thresholds() == [0, 100, 400, 1600, 6400]


def test_tier_for_points_examples():
    assert tier_for_points(0, DEFAULT_TIERS) == "Bronze"
    assert tier_for_points(399, DEFAULT_TIERS) == "Silver"
    assert tier_for_points(400, DEFAULT_TIERS) == "Gold"
    assert tier_for_points(6400, DEFAULT_TIERS) == "Diamond"


def brute_force_tier(points, tiers):
    best = tiers.names[0]
    for i, name in enumerate(tiers.names):
        if points >= tiers.threshold(i):
            best = name
    return best


def test_tier_agrees_with_brute_force_scan():
    for points in range(0, 10_001):
        assert tier_for_points(points, DEFAULT_TIERS) == brute_force_tier(points, DEFAULT_TIERS)


def test_tier_monotone_in_points():
    order = {name: i for i, name in enumerate(DEFAULT_TIERS.names)}
    last = -1
    for points in range(0, 10_001):
        current = order[tier_for_points(points, DEFAULT_TIERS)]
        assert current >= last
        last = current


def test_threshold_geometry():
    tiers = TierConfig(["a", "b", "c", "d", "e", "f"], 50, 3)
    th = tiers.thresholds()
    for i in range(1, len(th) - 1):
        assert th[i + 1] == th[i] * 3


def test_totals_insensitive_to_event_order():
    rng = random.Random(7)
    kinds = list(DEFAULT_WEIGHTS)
    events = [
        ev(rng.choice(kinds), rng.randint(1, 5), eid=f"e{i}",
           when=f"2021-0{rng.randint(1, 9)}-0{rng.randint(1, 9)}T12:00:00Z")
        for i in range(60)
    ]
    expected = sum(value_event(e, WEIGHTS) for e in events)
    for trial in range(10):
        rng.shuffle(events)
        state = ContributorState("c1", tier="Bronze")
        for e in events:
            apply_event(state, e, WEIGHTS, DEFAULT_TIERS)
        assert state.total_points == expected


# -- leaderboard ----------------------------------------------------------------


def state(cid, points, first=None):
    return ContributorState(
        contributor_id=cid,
        total_points=points,
        first_event_at=parse_timestamp(first) if first else None,
        tier=tier_for_points(points, DEFAULT_TIERS),
    )


def test_single_contributor_ranks_first():
    entries = rebuild_leaderboard({"A": state("A", 100)})
    assert entries[0].rank == 1
    assert entries[0].percentile == 1.0


def test_rank_drops_when_overtaken_but_points_do_not():
    before = rebuild_leaderboard({"A": state("A", 100, "2021-01-01T00:00:00Z")})
    assert before[0].contributor_id == "A"
    after = rebuild_leaderboard(
        {
            "A": state("A", 100, "2021-01-01T00:00:00Z"),
            "B": state("B", 150, "2021-02-01T00:00:00Z"),
        }
    )
    assert [e.contributor_id for e in after] == ["B", "A"]
    a_entry = after[1]
    assert a_entry.total_points == 100  # unchanged
    assert a_entry.rank == 2  # standing reduced


def test_tenure_breaks_point_ties():
    entries = rebuild_leaderboard(
        {
            "A": state("A", 100, "2021-01-01T00:00:00Z"),
            "B": state("B", 100, "2021-03-01T00:00:00Z"),
        }
    )
    assert [e.contributor_id for e in entries] == ["A", "B"]


def test_never_contributed_sorts_last_then_by_id():
    entries = rebuild_leaderboard(
        {
            "z": state("z", 0),
            "a": state("a", 0),
            "m": state("m", 0, "2021-01-01T00:00:00Z"),
        }
    )
    assert [e.contributor_id for e in entries] == ["m", "a", "z"]


def brute_force_rank(states):
    """Independent comparator: selection order by explicit pairwise rule."""

    def beats(x, y):
        if x.total_points != y.total_points:
            return x.total_points > y.total_points
        xf = x.first_event_at
        yf = y.first_event_at
        if xf != yf:
            if xf is None:
                return False
            if yf is None:
                return True
            return xf < yf
        return x.contributor_id < y.contributor_id

    pool = list(states.values())
    ordered = []
    while pool:
        best = pool[0]
        for candidate in pool[1:]:
            if beats(candidate, best):
                best = candidate
        pool.remove(best)
        ordered.append(best)
    return [s.contributor_id for s in ordered]


def test_leaderboard_matches_brute_force_oracle():
    rng = random.Random(21)
    base = parse_timestamp("2021-01-01T00:00:00Z")
    for trial in range(200):
        n = rng.randint(1, 40)
        states = {}
        for i in range(n):
            cid = f"c{i:03d}"
            points = rng.choice([0, 5, 5, 10, 10, 50, rng.randint(0, 500)])
            first = None if points == 0 and rng.random() < 0.5 else base + timedelta(
                hours=rng.randint(0, 72)
            )
            states[cid] = ContributorState(
                contributor_id=cid, total_points=points, first_event_at=first, tier="Bronze"
            )
        entries = rebuild_leaderboard(states)
        assert [e.contributor_id for e in entries] == brute_force_rank(states)
        assert [e.rank for e in entries] == list(range(1, n + 1))
        for e in entries:
            assert e.percentile == 1.0 - (e.rank - 1) / n


def test_snapshot_serialization_is_stable():
    snapshot = LedgerSnapshot(weights=WEIGHTS, tiers=DEFAULT_TIERS)
    snapshot.apply_event(ev("Code", cid="c2", eid="x1"))
    snapshot.apply_event(ev("Review", cid="c1", eid="x2"))
    assert snapshot.to_canonical_bytes() == snapshot.to_canonical_bytes()
