"""Exception hierarchy shared by every module.

Three families, matching the CLI exit codes: usage problems (exit 1),
data problems (exit 2), and resource problems (exit 3).
"""

from __future__ import annotations


class AasError(Exception):
    """Base class for every error raised by this package."""


class UsageError(AasError):
    """Bad command line, flag value, or configuration key."""

    exit_code = 1


class DataError(AasError):
    """Input files or values that violate a documented contract."""

    exit_code = 2


class ResourceError(AasError):
    """A required external resource is missing or unreachable."""

    exit_code = 3


class UnusableAnswer(DataError):
    """An answer string that is empty after normalization."""


class ParseError(DataError):
    """Malformed line in a structured input file."""

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:" if line is None else f"{path}:{line}: "
        elif line is not None:
            where = f"line {line}: "
        super().__init__(f"{where}{message}")


class IntegrityError(DataError):
    """An answer set that violates one of its invariants."""

    def __init__(self, label: str, message: str):
        self.label = label
        super().__init__(f"answer set for {label!r}: {message}")


class FormatError(DataError):
    """Structurally valid file whose content breaks a field contract."""


class EvalError(DataError):
    """Evaluation inputs that cannot be scored."""


class ContractViolation(DataError):
    """A caller broke a precondition that upstream code must guarantee."""


class MissingResource(ResourceError):
    """A required file or directory does not exist."""


class ResourceUnavailable(ResourceError):
    """A network service or backend failed after retries."""


class CacheMiss(ResourceError):
    """Offline mode was requested but the cache has no entry."""

    def __init__(self, key: str):
        self.key = key
        super().__init__(f"no cached entry for {key!r} (offline mode)")
