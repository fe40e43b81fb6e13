"""Exception types shared across the package.

The CLI maps these onto its exit-code contract: parse errors exit 2,
unsupported features exit 3, exceeded budgets exit 4.
"""


class ParseError(ValueError):
    """Malformed smodels input. Carries the 0-based token index of the offender."""

    def __init__(self, message: str, token_index: int):
        super().__init__(f"{message} (token {token_index})")
        self.token_index = token_index


class UnsupportedFeatureError(ValueError):
    """Input uses a feature the symmetry pipeline does not handle (e.g. weight rules)."""


class UnsupportedGeneratorError(UnsupportedFeatureError):
    """A generator cannot be encoded as a constraint chain (long cycle, moved falsity atom)."""


class BudgetExceededError(RuntimeError):
    """An oracle enumeration bound (atom budget, group-closure budget) was exceeded."""


class NotTightError(ValueError):
    """The oracle was handed a program with a positive dependency cycle."""
