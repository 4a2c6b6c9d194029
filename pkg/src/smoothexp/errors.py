"""Exception hierarchy shared by all modules."""


class SmoothexpError(Exception):
    """Base class for all library errors."""


class InputError(SmoothexpError, ValueError):
    """Invalid distribution, operator, or parameter."""


class AlphabetMismatchError(InputError):
    """Two distributions do not share an alphabet."""


class BudgetExceededError(SmoothexpError):
    """An enumeration would exceed its declared size budget."""


class InfeasibleError(SmoothexpError):
    """Protocol or construction preconditions are not met."""


class VerificationError(SmoothexpError):
    """An oracle pairing or lemma check failed."""
