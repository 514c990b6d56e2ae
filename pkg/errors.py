"""Error hierarchy shared by every package.

Domain errors map to CLI exit code 3, checkpoint and file problems to exit code 4.
"""

import math


class HatLabError(Exception):
    """Base class for all hatlab errors"""


class DomainError(HatLabError):
    """A mathematically invalid request (pole, singular system, bad probability...)"""


class DivisionByZeroPolynomialError(DomainError, ZeroDivisionError):
    def __init__(self, message: str = "division by zero polynomial") -> None:
        super().__init__(message)


class PoleError(DomainError):
    def __init__(self, message: str = "pole") -> None:
        super().__init__(message)


class SingularSystemError(DomainError):
    def __init__(self, message: str = "singular renewal system") -> None:
        super().__init__(message)


class ProbabilityRangeError(DomainError):
    def __init__(self, message: str = "probability out of range") -> None:
        super().__init__(message)


class DegenerateProbabilityError(DomainError):
    def __init__(self, message: str = "degenerate probability") -> None:
        super().__init__(message)


class NonCommittingStrategyError(DomainError):
    def __init__(self, message: str = "non-committing strategy") -> None:
        super().__init__(message)


class CanonicalizationLimitError(DomainError):
    def __init__(self, message: str = "canonicalization limit") -> None:
        super().__init__(message)


class SearchSpaceTooLargeError(DomainError):
    def __init__(self, space_size: int, limit: str) -> None:
        if space_size < 10**15:
            size_text = str(space_size)
        else:
            size_text = f"about 10^{int(math.log10(space_size))}"
        super().__init__(f"search space of {size_text} strategies exceeds the {limit} limit")
        self.space_size = space_size


class InvalidStrategyError(HatLabError, ValueError):
    """Malformed strategy table, machine, or strategy file"""


class UnknownStrategyError(InvalidStrategyError):
    def __init__(self, name: str) -> None:
        super().__init__(f"unknown strategy: {name}")
        self.name = name


class CheckpointError(HatLabError):
    """Missing checkpoint path, config-hash mismatch, or unreadable checkpoint"""
