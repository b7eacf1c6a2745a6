"""Exception types raised by freemetric."""


class FreeMetricError(Exception):
    """Base class for all library errors."""


class UnknownSymbol(FreeMetricError, ValueError):
    def __init__(self, position, symbol=None):
        self.position = position
        self.symbol = symbol
        super().__init__(f"unknown symbol {symbol!r} at position {position}")


class AlphabetMismatch(FreeMetricError, ValueError):
    pass


class LimitExceeded(FreeMetricError, ValueError):
    pass


class DomainExceeded(FreeMetricError, ValueError):
    pass


class NegativeDefect(FreeMetricError, ValueError):
    pass


class NotNormalized(FreeMetricError, ValueError):
    pass


class EpsilonTooLarge(FreeMetricError, ValueError):
    pass


class ConjugacyWitnessInvalid(FreeMetricError, ValueError):
    pass


class NotHomogeneous(FreeMetricError, ValueError):
    pass


class NegativeLetterInMonoid(FreeMetricError, ValueError):
    def __init__(self, position, symbol=None):
        self.position = position
        self.symbol = symbol
        super().__init__(
            f"inverse letter {symbol!r} at position {position} is not allowed in a monoid word"
        )
