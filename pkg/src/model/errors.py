"""Exception hierarchy shared by every bracketopt package."""

from __future__ import annotations


class BracketOptError(Exception):
    """Base class for all library errors."""


class ValidationError(BracketOptError, ValueError):
    """Malformed instance, seeding, tree, formula or configuration."""


class ArithmeticOverflowError(BracketOptError, OverflowError):
    """A value left the signed 64-bit range."""


class KindError(BracketOptError, TypeError):
    """The value-function kind does not fit the requested operation."""


class IllegalTransitionError(BracketOptError, ValueError):
    """A subtournament close on a profile with no open slot of that size."""


class RefusalError(BracketOptError):
    """The instance is outside what a solver agrees to handle (e.g. brute-force cap)."""
