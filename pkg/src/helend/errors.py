"""Exception types shared across the package."""


class HelendError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(HelendError):
    """Evaluation requested outside the allowed domain (|z| < rmin, overflow range, ...)."""


class SupportSizeError(HelendError):
    """A Laurent operation would produce an unreasonably large exponent window."""


class ToleranceError(HelendError):
    """A numerical routine could not meet the requested tolerance.

    ``achieved`` carries the best error bound the routine could certify.
    """

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class BracketError(HelendError):
    """Root searching failed to bracket the requested roots."""


class UnsupportedDescriptorError(HelendError):
    """Operation is defined only for a restricted family of descriptors."""
