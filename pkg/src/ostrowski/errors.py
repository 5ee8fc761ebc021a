"""Exception hierarchy. Every error raised by the library derives from ``OstrowskiError``."""


class OstrowskiError(ValueError):
    pass


class BothZeroError(OstrowskiError):
    pass


class ZeroInputError(OstrowskiError):
    pass


class NotPrimeError(OstrowskiError):
    pass


class NonPositiveBaseError(OstrowskiError):
    pass


class IndeterminateInfinityError(OstrowskiError):
    """Raised for ``inf + -inf``."""


class NegativeBoundError(OstrowskiError):
    pass


class BaseBelowOneError(OstrowskiError):
    pass


class BadBaseError(OstrowskiError):
    pass


class BadParameterError(OstrowskiError):
    pass


class NoClosedFormError(OstrowskiError):
    """A generic upper-valued oracle carries no lower bounds to build a Dedekind value from."""


class ZeroDenominatorError(OstrowskiError):
    pass


class NotPositiveDefiniteError(OstrowskiError):
    pass


class InconsistentOracleError(OstrowskiError):
    """Certified witnesses of ``|n| < 1`` have gcd 1, so they cannot lie in one prime ideal."""


class IncompatiblePairError(OstrowskiError):
    pass


class TrivialityNotRefuted(OstrowskiError):
    """No certificate of non-triviality was found within the budget.

    This is a budget exhaustion, never a claim that the value is trivial.
    """

    def __init__(self, budget: int):
        super().__init__(f"no non-triviality certificate found for |n|, 2 <= n <= {budget}")
        self.budget = budget


class PrecisionExhaustedError(OstrowskiError):
    pass
