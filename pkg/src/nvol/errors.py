"""Error taxonomy.

Two failure classes matter to callers (and to the CLI exit codes):
bad input versus a broken internal identity.
"""


class ValidationError(ValueError):
    """Input violates a documented precondition (CLI exit code 1)."""


class ConsistencyError(RuntimeError):
    """Two routes that must agree exactly disagreed (CLI exit code 2).

    Raised when a cross-checked identity (dual volume formulas, rescaling
    invariance, count bijections) fails. This always indicates a bug, never
    bad user input.
    """
