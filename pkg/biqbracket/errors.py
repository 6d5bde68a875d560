from __future__ import annotations


class BracketError(ValueError):
    """Base class of every domain error raised by biqbracket."""


class GaussCodeSyntaxError(BracketError):
    pass


class PDCodeSyntaxError(BracketError):
    pass


class UnpairedCrossingError(BracketError):
    pass


class SignMismatchError(BracketError):
    pass


class SiteNotFoundError(BracketError):
    pass


class PatternMismatchError(BracketError):
    pass


class MalformedTableError(BracketError):
    pass


class DomainMismatchError(BracketError):
    pass


class InvalidColoringError(BracketError):
    pass


class InvalidVariantError(BracketError):
    pass


class CacheFormatError(BracketError):
    pass


class UsageError(Exception):
    """Bad command-line flags or configuration; the CLI exits with status 2."""
