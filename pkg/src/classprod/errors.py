"""Exception types shared across the package.

The CLI maps these onto exit codes: malformed input is 1, budget refusal is 2.
"""


class ClassProdError(Exception):
    """Base class for all package errors."""


class MalformedInput(ClassProdError, ValueError):
    """An argument or literal violates a precondition."""


class FieldMismatch(MalformedInput):
    """Operands come from different fields."""


class BudgetExceeded(ClassProdError, RuntimeError):
    """A group is too large to enumerate under the configured budget."""


class CentralInput(MalformedInput):
    """A bound was requested for a scalar (central) matrix."""
