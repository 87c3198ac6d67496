from pathlib import Path
from typing import Optional


class BorelkitError(Exception):
    """Base class of every error raised on purpose by borelkit."""

    exit_code = 1


class ParseError(BorelkitError, ValueError):
    """Malformed ordinal text or JSON document."""

    exit_code = 2


class PreconditionError(BorelkitError, ValueError):
    """An operation was called outside of its precondition."""

    exit_code = 3


class IllFoundedTreeError(PreconditionError):
    """r_l and r_i are only computed for well-founded trees (their value would be omega_1)."""


class ClassMismatchError(PreconditionError):
    pass


class UnsupportedQueryError(PreconditionError):
    """The query leaves the finitely described class of trees or families."""


class PropertyFailure(BorelkitError, AssertionError):
    exit_code = 4

    def __init__(self, message: str, counterexample_path: Optional[Path] = None):
        super().__init__(message)
        self.counterexample_path = counterexample_path
