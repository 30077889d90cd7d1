class InstanceTooLarge(ValueError):
    """A brute-force search would exceed its configured candidate cap."""


class BudgetExhausted(RuntimeError):
    """A budgeted evaluation ran out of steps before reaching its goal."""


class SchemaError(ValueError):
    """An instance file does not match its documented JSON schema."""
