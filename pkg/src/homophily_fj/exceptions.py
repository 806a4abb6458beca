"""Exception and warning types raised by the package."""


class ValidationError(ValueError):
    """Scenario inputs violate the model's standing assumptions."""


class StubbornnessOutOfRange(ValidationError):
    def __init__(self, index, value=None):
        self.index = index
        self.value = value
        super().__init__(
            f"stubbornness theta[{index}]={value!r} must lie strictly inside (0, 1)"
        )


class ZeroRow(ValidationError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"initial opinion row {index} is zero (or its squared norm is inside the sign zero band)")


class ZeroColumn(ValidationError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"initial opinion column {index} is identically zero")


class ZeroEntry(ValidationError):
    def __init__(self, index, value=None):
        self.index = index
        self.value = value
        super().__init__(
            f"single-topic opinion y0[{index}]={value!r} is zero (or inside the sign zero band)"
        )


class DimensionMismatch(ValidationError):
    pass


class NonFiniteEntry(ValidationError):
    pass


class AsymmetricInput(ValueError):
    """A sign matrix that should be symmetric is not."""


class SpectralAmbiguous(ArithmeticError):
    """Neither eigenvalue-1 nor Schur stability could be resolved numerically.

    The partially filled report is available as ``.report``.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ParseError(ValueError):
    def __init__(self, message, field=None):
        self.field = field
        super().__init__(message if field is None else f"{field}: {message}")


class NotApplicable(ValueError):
    """The requested check does not apply to this run (e.g. m != 1)."""


class HorizonReachedWithoutConvergence(RuntimeWarning):
    """Emitted when a simulation stops at its horizon without converging."""
