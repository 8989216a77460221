class DyntwistError(Exception):
    """Base class for all library errors."""


class NotDecidable(DyntwistError):
    """A numeric predicate was asked of a symbolic character."""


class DepthExceeded(DyntwistError):
    """A Verma computation produced a term beyond the configured depth."""


class NonGeneric(DyntwistError):
    """The character lies on the locus where the Shapovalov pairing degenerates."""


class WeightMismatch(DyntwistError):
    """A leading vector is not an l0-invariant vector of the required weight."""


class DepthInsufficient(DyntwistError):
    """The requested depth is too small for an exact twist."""


class ClosureError(DyntwistError):
    """A product left the enumerated set of blocks."""


class ConfigError(DyntwistError):
    """Invalid job configuration."""
