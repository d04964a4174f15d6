#!/usr/bin/env python3

# This file is part of latspec.
#
# latspec is free software: you can redistribute it and/or modify it under the terms of the GNU General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
#
# latspec is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License along with latspec. If not, see <https://www.gnu.org/licenses/>.

"""
Exceptions and error handling for latspec.

Every error raised by the library derives from LatspecError and may carry the
source file, line, column and the offending entity. ErrorHandler classifies
errors for the command line (log once, pick an exit status).
"""

import functools
import logging
import traceback
from typing import Any, Callable, Optional

# Configure module logger
logger = logging.getLogger('latspec.error_handlers')

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2


class LatspecError(Exception):
    """Base class for all latspec errors."""

    def __init__(self, message: str, source: Optional[str] = None, line: Optional[int] = None,
                 column: Optional[int] = None, entity: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.source = source
        self.line = line
        self.column = column
        self.entity = entity

    def location(self) -> str:
        parts = []
        if self.source:
            parts.append(str(self.source))
        if self.line is not None:
            parts.append(str(self.line))
            if self.column is not None:
                parts.append(str(self.column))
        return ":".join(parts)

    def __str__(self) -> str:
        where = self.location()
        return f"{where}: {self.message}" if where else self.message

    def __reduce__(self) -> Any:
        # Subclasses take different constructor arguments; rebuild from state
        return (_rebuild_error, (type(self), self.args, self.__dict__.copy()))


def _rebuild_error(cls: type, args: tuple, state: dict) -> "LatspecError":
    error = Exception.__new__(cls)
    error.args = args
    error.__dict__.update(state)
    return error


# Lattice construction

class LatticeError(LatspecError):
    pass


class NotALattice(LatticeError):
    """Two elements lack a unique greatest lower bound or least upper bound."""

    def __init__(self, a: str, b: str, bound: str = "meet", lattice: Optional[str] = None, **kwargs):
        name = f" in {lattice}" if lattice else ""
        super().__init__(f"elements {a} and {b} have no unique {bound}{name}",
                         entity=lattice, **kwargs)
        self.a = a
        self.b = b
        self.bound = bound


class CyclicCovers(LatticeError):
    pass


class UnknownName(LatticeError):
    pass


class RedundantCover(LatticeError):
    pass


# Congruences

class CongruenceError(LatspecError):
    pass


class NotSubdirectlyIrreducible(CongruenceError):
    pass


class TooLarge(CongruenceError):
    pass


class CapacityExceeded(LatspecError):
    """A closure grew past the configured element budget."""

    def __init__(self, budget: int, size: int, mask: Optional[int] = None, **kwargs):
        where = f" (subset mask={mask:x})" if mask is not None else ""
        super().__init__(f"closure exceeded the element budget of {budget} "
                         f"after reaching {size} elements{where}", **kwargs)
        self.budget = budget
        self.size = size
        self.mask = mask


# Run files

class RunFileError(LatspecError):
    pass


class RunFileSyntaxError(RunFileError):
    def __init__(self, message: str, line: int, column: int, expected: Optional[str] = None, **kwargs):
        if expected:
            message = f"{message}; expected {expected}"
        super().__init__(message, line=line, column=column, **kwargs)
        self.expected = expected


class UnknownLattice(RunFileError):
    pass


class UnknownElement(RunFileError):
    pass


class DuplicateAssignment(RunFileError):
    pass


class DanglingConstraint(RunFileError):
    pass


# Catalog

class CatalogError(LatspecError):
    pass


class CatalogSyntaxError(CatalogError):
    pass


class MissingEntry(CatalogError):
    pass


class DuplicateEntry(CatalogError):
    pass


class ConfigurationError(LatspecError):
    pass


class ManifestError(LatspecError):
    """The expectations manifest is unreadable or malformed."""


class ExpectationMismatch(LatspecError):
    def __init__(self, expected: str, actual: str, **kwargs):
        super().__init__(f"expected {expected}, computed {actual}", **kwargs)
        self.expected = expected
        self.actual = actual


class ErrorHandler:
    """Classify errors for the command line and log them once."""

    # Error categories
    USAGE_ERRORS = (RunFileError, CatalogSyntaxError, UnknownName, ConfigurationError,
                    DuplicateEntry, MissingEntry, ManifestError)
    DOMAIN_ERRORS = (LatticeError, CongruenceError, CapacityExceeded, CatalogError,
                     ExpectationMismatch)

    def __init__(self, command: str, verbose: bool = False):
        self.command = command
        self.verbose = verbose

    def handle_error(self, error: BaseException) -> str:
        """Log the error with its context and return its category."""
        if isinstance(error, self.USAGE_ERRORS):
            logger.error(f"{self.command}: {error}")
            return "usage"
        elif isinstance(error, self.DOMAIN_ERRORS):
            logger.error(f"{self.command}: {error}")
            return "domain"
        elif isinstance(error, (OSError, ValueError)):
            logger.error(f"{self.command}: {type(error).__name__} - {error}")
            return "usage"
        else:
            logger.error(f"{self.command}: unexpected {type(error).__name__} - {error}")
            if self.verbose:
                logger.debug(f"Full exception details:\n{traceback.format_exc()}")
            return "internal"

    def exit_code(self, error: BaseException) -> int:
        category = self.handle_error(error)
        if category == "usage":
            return EXIT_USAGE
        return EXIT_DOMAIN


def guarded(command: str, verbose: bool = False) -> Callable[[Callable[..., int]], Callable[..., int]]:
    """
    Decorate a command function so that raised errors become exit statuses.

    Args:
        command: Name used as the log prefix
        verbose: Whether to log tracebacks of unexpected errors

    Returns:
        Decorator returning the wrapped function's status, or the status of the error
    """
    def decorator(func: Callable[..., int]) -> Callable[..., int]:
        @functools.wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> int:
            try:
                return func(*args, **kwargs)
            except Exception as e:
                return ErrorHandler(command, verbose).exit_code(e)
        return wrapper
    return decorator
