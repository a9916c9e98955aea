"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: InputError -> 2, CapacityError -> 3.
A certified negative result (a verification that ran and failed) is not an
exception; operations report it in their result objects.
"""

from __future__ import annotations


class StableRegError(Exception):
    """Base class for package errors."""


class InputError(StableRegError):
    """Malformed or out-of-contract input (bad file, empty set, bad vertex)."""


class PreconditionError(InputError):
    """A stated operation precondition failed; message names the violation."""


class CapacityError(StableRegError):
    """Requested exhaustive computation exceeds the configured size bound."""
