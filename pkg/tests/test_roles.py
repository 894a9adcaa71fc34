from itertools import product

import pytest

from innersource_honor.errors import (
    DuplicateVote,
    IllegalLadderStep,
    NotAuthorized,
    ProposalClosed,
)
from innersource_honor.ledger import vote_outcome

from helpers import build_world, new_engine


@pytest.fixture
def voting_world():
    engine = new_engine()
    world = build_world(engine)
    # p01's PMC is three members so majority votes are interesting
    pmc = world["contributors"][:3]
    engine.set_pmc_members("p01", pmc)
    return engine, world, pmc


def test_propose_one_step_up(voting_world):
    engine, world, pmc = voting_world
    proposal = engine.propose_role_change("c05", "p01", "Committer", pmc[0])
    assert proposal["outcome"] == "Pending"
    assert proposal["from_role"] == "Contributor"


def test_propose_skipping_a_step_fails(voting_world):
    engine, world, pmc = voting_world
    with pytest.raises(IllegalLadderStep):
        engine.propose_role_change("c05", "p01", "Maintainer", pmc[0])


def test_propose_by_non_pmc_member_fails(voting_world):
    engine, world, pmc = voting_world
    with pytest.raises(NotAuthorized):
        engine.propose_role_change("c05", "p01", "Committer", "c09")


def test_majority_approves_and_applies_role(voting_world):
    engine, world, pmc = voting_world
    proposal = engine.propose_role_change("c05", "p01", "Committer", pmc[0])
    assert engine.vote_role_change(proposal["id"], pmc[0], True)["outcome"] == "Pending"
    result = engine.vote_role_change(proposal["id"], pmc[1], True)
    assert result["outcome"] == "Approved"
    assert engine.profile("c05")["roles"] == {"p01": "Committer"}


def test_majority_rejects(voting_world):
    engine, world, pmc = voting_world
    proposal = engine.propose_role_change("c05", "p01", "Committer", pmc[0])
    engine.vote_role_change(proposal["id"], pmc[0], True)
    engine.vote_role_change(proposal["id"], pmc[1], False)
    result = engine.vote_role_change(proposal["id"], pmc[2], False)
    assert result["outcome"] == "Rejected"
    assert engine.profile("c05")["roles"] == {}


def test_duplicate_vote_rejected(voting_world):
    engine, world, pmc = voting_world
    proposal = engine.propose_role_change("c05", "p01", "Committer", pmc[0])
    engine.vote_role_change(proposal["id"], pmc[0], True)
    with pytest.raises(DuplicateVote):
        engine.vote_role_change(proposal["id"], pmc[0], True)


def test_non_pmc_vote_rejected(voting_world):
    engine, world, pmc = voting_world
    proposal = engine.propose_role_change("c05", "p01", "Committer", pmc[0])
    with pytest.raises(NotAuthorized):
        engine.vote_role_change(proposal["id"], "c09", True)


def test_decided_proposal_is_closed(voting_world):
    engine, world, pmc = voting_world
    proposal = engine.propose_role_change("c05", "p01", "Committer", pmc[0])
    engine.vote_role_change(proposal["id"], pmc[0], True)
    engine.vote_role_change(proposal["id"], pmc[1], True)
    with pytest.raises(ProposalClosed):
        engine.vote_role_change(proposal["id"], pmc[2], True)


def test_pmc_member_promotion_joins_pmc(voting_world):
    engine, world, pmc = voting_world
    ladder = ["Committer", "Maintainer", "PMCMember"]
    for new_role in ladder:
        proposal = engine.propose_role_change("c05", "p01", new_role, pmc[0])
        engine.vote_role_change(proposal["id"], pmc[0], True)
        engine.vote_role_change(proposal["id"], pmc[1], True)
    assert "c05" in engine.lookup("project", "p01")["pmc_member_ids"]


def test_vote_outcome_exhaustive_against_counting_oracle():
    """All approve/reject patterns for PMC sizes 1..9, voters in fixed order.

    Oracle: with everyone voting, the proposal passes iff approvals strictly
    exceed half the PMC. The incremental evaluator must agree, must decide at
    the earliest prefix where the outcome is forced, and must never flip.
    """
    for size in range(1, 10):
        for pattern in product([True, False], repeat=size):
            final_approvals = sum(pattern)
            expected = "Approved" if final_approvals > size / 2 else "Rejected"

            outcome = "Pending"
            approvals = rejections = 0
            decided_at = None
            for i, vote in enumerate(pattern):
                if outcome != "Pending":
                    break
                approvals += vote
                rejections += not vote
                outcome = vote_outcome(approvals, rejections, size)
                if outcome != "Pending" and decided_at is None:
                    decided_at = i

            assert outcome == expected, (size, pattern)
            # decision point is forced: before it, both completions were possible
            remaining = size - (decided_at + 1)
            if expected == "Approved":
                assert approvals > size / 2
            else:
                assert approvals + remaining <= size / 2
