"""Exception hierarchy shared by every tourneykit module."""

from __future__ import annotations


class TourneyError(Exception):
    """Base class for all tourneykit errors."""


class InvalidTournament(TourneyError, ValueError):
    """An arc list does not orient every vertex pair exactly once."""

    def __init__(self, pair: tuple[int, int], message: str):
        self.pair = pair
        super().__init__(f"{message}: {pair}")


class MissingPair(InvalidTournament):
    def __init__(self, pair):
        super().__init__(pair, "pair is not oriented")


class DoublePair(InvalidTournament):
    def __init__(self, pair):
        super().__init__(pair, "pair is oriented more than once")


class SelfArc(InvalidTournament):
    def __init__(self, pair):
        super().__init__(pair, "self-arc")


class OutOfRange(TourneyError, IndexError):
    pass


class BadModulus(TourneyError, ValueError):
    pass


class TooLarge(TourneyError, ValueError):
    """Input exceeds the documented exhaustive regime of an operation."""


class TooLargeForExhaustive(TooLarge):
    pass


class NotStronglyConnected(TourneyError):
    """Raised with a witness pair ``(u, v)`` such that ``v`` is unreachable from ``u``."""

    def __init__(self, pair: tuple[int, int], components=None):
        self.pair = pair
        self.separator: tuple[int, ...] = ()
        self.components = components
        super().__init__(f"not strongly connected: no path {pair[0]} -> {pair[1]}")


class BadLength(TourneyError, ValueError):
    pass


class DuplicateEndpoints(TourneyError, ValueError):
    pass


class BadSpec(TourneyError, ValueError):
    pass


class BadSizes(BadSpec):
    pass


class PinConflict(BadSpec):
    pass


class UnbalancedSides(TourneyError, ValueError):
    pass


class NoMatching(TourneyError):
    """Distribution failed; ``witness`` is a Hall-violating set of leftover vertices."""

    def __init__(self, witness):
        self.witness = tuple(witness)
        super().__init__(f"no perfect matching; Hall violated by {list(self.witness)}")


class ConsistencyError(TourneyError, AssertionError):
    """Two independent routes disagreed where they must agree."""


class NotFoundExhaustive(ConsistencyError):
    """An exhaustive search found nothing although existence is proven."""


class SearchIncomplete(TourneyError):
    """A budgeted search outside the exhaustive regime gave up."""
