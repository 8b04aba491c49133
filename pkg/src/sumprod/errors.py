"""Exception types shared across the package."""


class SumprodError(Exception):
    """Base class for all package-specific errors."""


class DegreeCapExceeded(SumprodError):
    """Raised when a factorization request exceeds the configured degree cap.

    Kronecker-style factor search is exponential; the cap turns a silent
    slowdown into an explicit failure.
    """


class NotSquarefree(SumprodError):
    """Input to the absolute-factor counter has a repeated factor."""


class UnivariateInput(SumprodError):
    """Operation needs genuine dependence on both variables."""


class ConstantPolynomial(SumprodError):
    """Operation is undefined for constant polynomials."""


class InsufficientSamples(SumprodError):
    """Too few distinct sample rows for the shift reconstruction."""


class HypothesisViolated(SumprodError):
    """Input data does not satisfy the hypotheses the operation relies on."""


class DegenerateSpec(SumprodError):
    """A set-generator spec cannot produce the requested set."""


class DegenerateSystem(SumprodError):
    """A curve-pair system collapsed to the zero polynomial."""


class BoundViolated(SumprodError):
    """A certified bound failed; carries the offending witness.

    For inputs whose classification is certified, this indicates a bug in
    this implementation rather than a counterexample.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
