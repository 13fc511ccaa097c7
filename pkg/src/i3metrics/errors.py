"""Exception types shared across the package.

Two failure families matter to callers (and map to CLI exit codes):
malformed or inconsistent input data, and lookups that cannot be
satisfied against the loaded catalog.
"""


class InputError(Exception):
    """Malformed, inconsistent, or missing input data (CLI exit code 1)."""


class ResolutionError(Exception):
    """A journal or impact factor could not be resolved (CLI exit code 2)."""
