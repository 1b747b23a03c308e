"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Operands, states or partitions have incompatible dimensions."""


class NotHermitianError(ValueError):
    pass


class LinearDependenceError(ValueError):
    pass


class NotClosedError(ValueError):
    """An operator set is not closed under the Lie bracket ``i[X, Y]``."""


class NormalizationError(ValueError):
    """No purity normalization is available for a basis."""


class SpecError(ValueError):
    """A textual or JSON state/basis specification could not be parsed."""
