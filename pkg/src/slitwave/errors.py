"""Exception types shared across the package."""


class SlitwaveError(Exception):
    """Base class for all errors raised by this package."""


class GridCoverageError(SlitwaveError):
    """A spatial grid does not cover the full aperture."""


class GridTooCoarseError(SlitwaveError):
    """A spatial grid undersamples the narrowest slit."""


class GridMismatchError(SlitwaveError):
    """Two profiles do not share a common grid."""


class OutOfSpanError(SlitwaveError):
    """Integration limits fall outside the sampled grid span."""


class TailBudgetError(SlitwaveError):
    """A momentum grid truncates more spectral mass than the tolerance allows."""


class QuadratureBudgetError(SlitwaveError):
    """An oscillatory integral needs more nodes than the configured budget."""


class UnnormalizedBoundaryError(SlitwaveError):
    """A boundary field required to carry unit mass does not."""


class NotInFarFieldError(SlitwaveError):
    """The requested plane is too close to the grating for the far-field form."""


class AllSlitsBlockedError(SlitwaveError):
    """The particle diameter exceeds the width of every slit."""


class OverlappingSlitsError(SlitwaveError):
    """Slit intervals overlap or touch."""


class ConfigError(SlitwaveError):
    """An experiment configuration failed validation.

    ``field`` names the offending entry so command-line diagnostics can
    point at it.
    """

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field
