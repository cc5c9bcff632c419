"""Exception types shared across the package.

Two failure families are kept apart on purpose: bad input (wrong dimension,
mixed scalar modes, malformed JSON, a precondition the caller violated) and
internal inconsistency (two routes to the same quantity disagree, a value
that must be an integer is not).  The CLI maps the first family to exit
code 2 and the second to exit code 1.
"""


class InputError(ValueError):
    """Rejected input: dimension/mode mismatch, schema violation, bad precondition."""


class ConsistencyError(ArithmeticError):
    """Internal cross-check failed: independent routes disagree or an exactness
    guarantee (integrality, reality) is violated.  Signals a bug, not bad input."""
