"""Exception types shared across the package."""


class BoundExceededError(ValueError):
    """An enumeration was asked to exceed its configured order bound."""


class InconsistencyError(ValueError):
    """Input data contradicts a structural fact it was claimed to satisfy."""


class NotExactError(InconsistencyError):
    """A sequence failed exactness verification where exactness was required."""


class SymmetryError(ValueError):
    """Term orders are not mirror-symmetric about the central index."""


class CriterionNotApplicable(Exception):
    """A decision criterion's hypotheses are not met for the given input."""
