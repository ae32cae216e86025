"""Exception types raised across the package.

Every error carries a short machine-readable ``code`` so callers (and the
command line front end) can report what went wrong without parsing messages.
"""


class LatticeCodeError(ValueError):
    code = "ERROR"


class NumericallySingular(LatticeCodeError):
    code = "NUMERICALLY_SINGULAR"


class DimensionTooLarge(LatticeCodeError):
    code = "DIMENSION_TOO_LARGE"


class ReducedRank(LatticeCodeError):
    code = "REDUCED_RANK"


class BadSubset(LatticeCodeError):
    code = "BAD_SUBSET"


class BadDims(LatticeCodeError):
    code = "BAD_DIMS"


class UnknownDimension(LatticeCodeError):
    code = "UNKNOWN_DIMENSION"


class UnknownName(LatticeCodeError):
    code = "UNKNOWN_NAME"


class UnsupportedRank(LatticeCodeError):
    code = "UNSUPPORTED_RANK"


class BadParams(LatticeCodeError):
    code = "BAD_PARAMS"


class InvalidCode(LatticeCodeError):
    """A code definition violates one of the ErasureCode invariants."""

    code = "INVALID_CODE"
