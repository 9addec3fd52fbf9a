"""Exception types shared across the package."""

from __future__ import annotations


class SizeGuard(RuntimeError):
    """An enumeration would exceed the configured size limits."""


class WellDefinednessError(ValueError):
    """A matrix does not define a homomorphism between the given groups."""


class InvalidForm(ValueError):
    """Generator data does not define a quadratic form."""


class InvalidCocycle(ValueError):
    """A pair (omega, c) fails the abelian 3-cocycle identities."""


class ParseError(ValueError):
    """A form or cocycle document could not be parsed."""


class PropertyViolation(AssertionError):
    """A structural identity that must hold was found to fail.

    Raised only for internal consistency checks; seeing one means a bug
    (or a counterexample worth reporting), never bad user input.
    """
