"""Exception hierarchy.

``DomainError`` subclasses signal violated preconditions on otherwise
well-formed input; the CLI maps them to exit code 3.
"""


class DomainError(ValueError):
    """Base class for precondition violations."""


class NonPositiveDimension(DomainError):
    pass


class DegenerateHuman(NonPositiveDimension):
    """Human left-right width is zero, so the width ratio k2 is undefined."""


class InvalidExpansion(DomainError):
    pass


class InvalidScenario(DomainError):
    pass


class ResolutionTooCoarse(DomainError):
    pass
