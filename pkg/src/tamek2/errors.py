"""Exception types raised by tamek2."""


class DomainError(ValueError):
    """Input outside the domain of an operation."""


class InvalidArgument(DomainError):
    pass


class NotSquarefree(DomainError):
    def __init__(self, value: int, prime: int):
        super().__init__(f"{value} is not squarefree ({prime}^2 divides it)")
        self.value = value
        self.prime = prime


class NoRepresentation(DomainError):
    """The integer is not a norm from Z[sqrt 2]."""


class NotCoprime(DomainError):
    pass


class ConditionNotMet(DomainError):
    """A hypothesis of the check does not hold for the given arguments."""


class NotApplicable(DomainError):
    """The check is undefined for the input (e.g. 4 does not divide h+)."""


class ConsistencyFailure(RuntimeError):
    """Two independent computations of the same quantity disagree."""

    def __init__(self, message: str, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample
