"""Exception types shared across the package."""


class CnoError(Exception):
    """Base class for all library errors."""


class InputTooLong(CnoError):
    pass


class ChallengeSpaceTooLarge(CnoError):
    pass


class NotMinimalSet(CnoError):
    pass


class InvalidChallenge(CnoError):
    pass


class EmptyRestriction(CnoError):
    pass


class BiasBudgetViolated(CnoError):
    pass


class NotColorable(CnoError):
    pass


class ProverMisbehaved(CnoError):
    pass


class ProofFormatError(CnoError):
    """Raised by the proof parser on malformed bytes; verifiers turn it into reject."""
