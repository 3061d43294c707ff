from typing import Any


class DoubleGroupoidError(Exception):
    """Base class of every error raised by the package."""

    exit_code = 1
    status_code = 400

    def __init__(self, message: str, report: Any = None):
        super().__init__(message)
        self.message = message
        self.report = report


class MalformedInputError(DoubleGroupoidError):
    exit_code = 3
    status_code = 422


class StructureError(MalformedInputError):
    """A table refers to ids that do not exist or is not a function."""


class DomainError(DoubleGroupoidError):
    exit_code = 1
    status_code = 400


class AxiomViolationError(DomainError):
    pass


class CocycleError(DomainError):
    pass


class ExtensionError(DomainError):
    pass


class CoverError(DomainError):
    pass


class CohomologyMismatchError(DomainError):
    """H^1_Tot of a Čech double groupoid differs from the Čech H^1 of its vertex cover."""


class FaceIndexError(DomainError):
    pass


class ResourceLimitError(DoubleGroupoidError):
    exit_code = 2
    status_code = 413


def check_cap(count: int, cap: int, what: str) -> None:
    if count > cap:
        raise ResourceLimitError(f"{what}: {count} exceeds the configured cap {cap}")
