"""Error taxonomy shared by every module.

Each error carries a stable ``code`` string so the HTTP layer and the CLI can
map failures without parsing messages.
"""
from __future__ import annotations


class HonorError(Exception):
    """Base class for all domain errors."""

    code = "Error"

    def __init__(self, message: str = ""):
        super().__init__(message or self.code)


# -- registry ---------------------------------------------------------------

class DuplicateId(HonorError):
    code = "DuplicateId"


class DanglingReference(HonorError):
    code = "DanglingReference"


class NotFound(HonorError):
    code = "NotFound"


class IllegalPhaseTransition(HonorError):
    code = "IllegalPhaseTransition"


# -- event ingestion --------------------------------------------------------

class CorruptLog(HonorError):
    """Event log failed checksum, ordering, or uniqueness validation."""

    code = "CorruptLog"

    def __init__(self, message: str, offset: int = -1):
        super().__init__(message)
        self.offset = offset


class BadChecksum(HonorError):
    code = "BadChecksum"


# -- merit ledger / roles ---------------------------------------------------

class UnknownKind(HonorError):
    code = "UnknownKind"


class BadConfig(HonorError):
    code = "BadConfig"


class IllegalLadderStep(HonorError):
    code = "IllegalLadderStep"


class NotAuthorized(HonorError):
    code = "NotAuthorized"


class Unauthenticated(HonorError):
    code = "Unauthenticated"


class StaleState(HonorError):
    """Optimistic-concurrency failure: the resource changed since it was read."""

    code = "StaleState"


class DuplicateVote(HonorError):
    code = "DuplicateVote"


class ProposalClosed(HonorError):
    code = "ProposalClosed"


# -- project maturity -------------------------------------------------------

class OutOfRangeLevel(HonorError):
    code = "OutOfRangeLevel"


class ProjectNotEligible(HonorError):
    code = "ProjectNotEligible"


class FrozenPeriod(HonorError):
    code = "FrozenPeriod"


# -- awards engine ----------------------------------------------------------

class CatalogNotConserving(HonorError):
    code = "CatalogNotConserving"


class DuplicateCycle(HonorError):
    code = "DuplicateCycle"


class CadenceMismatch(HonorError):
    code = "CadenceMismatch"


class IllegalCycleState(HonorError):
    code = "IllegalCycleState"


class TooManyRecipients(HonorError):
    code = "TooManyRecipients"


class ScopeMismatch(HonorError):
    code = "ScopeMismatch"


class IneligibleRecipient(HonorError):
    code = "IneligibleRecipient"


class MissingRationale(HonorError):
    code = "MissingRationale"


class PoolMismatch(HonorError):
    code = "PoolMismatch"


class BudgetExhausted(HonorError):
    """Internal invariant: a conserving catalog can never overspend the pool."""

    code = "BudgetExhausted"


# -- read side --------------------------------------------------------------

class NoSnapshot(HonorError):
    code = "NoSnapshot"


class BadPeriod(HonorError):
    code = "BadPeriod"


# HTTP status per error code; anything unlisted maps to 400.
HTTP_STATUS = {
    "NotFound": 404,
    "NoSnapshot": 404,
    "NotAuthorized": 403,
    "Unauthenticated": 401,
    "StaleState": 412,
    "DuplicateId": 409,
    "DanglingReference": 400,
    "IllegalPhaseTransition": 409,
    "CorruptLog": 400,
    "BadChecksum": 400,
    "UnknownKind": 400,
    "BadConfig": 400,
    "IllegalLadderStep": 409,
    "DuplicateVote": 409,
    "ProposalClosed": 409,
    "OutOfRangeLevel": 400,
    "ProjectNotEligible": 409,
    "FrozenPeriod": 409,
    "CatalogNotConserving": 400,
    "DuplicateCycle": 409,
    "CadenceMismatch": 409,
    "IllegalCycleState": 409,
    "TooManyRecipients": 409,
    "ScopeMismatch": 409,
    "IneligibleRecipient": 409,
    "MissingRationale": 409,
    "PoolMismatch": 409,
    "BudgetExhausted": 500,
    "BadPeriod": 400,
}
