"""Exception types shared across the package."""


class Sigma1Error(Exception):
    """Base class for every error raised by this package."""


class ValidationError(Sigma1Error, ValueError):
    """Malformed input: bad permutation, bad parameter, bad argument shape."""


class ParseError(ValidationError):
    """A group expression does not conform to the documented grammar."""


class ActionError(ValidationError):
    """A semidirect-product action is not a valid homomorphism into Aut(N)."""


class SizeLimitError(Sigma1Error):
    """A configured size bound (group order, lattice order, ...) would be exceeded."""


class PreconditionError(Sigma1Error):
    """An operation was called on arguments outside its stated domain."""
