class MatroidError(ValueError):
    """Bad input: out-of-range elements, unmet preconditions, oversize ground sets."""


class LemmaViolation(AssertionError):
    """A structural statement that should always hold was observed to fail.

    Raised by operations whose correctness rests on a theorem; it is never a
    recoverable condition.
    """


class GroundSetTooLarge(MatroidError):
    pass
