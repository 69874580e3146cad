"""Exception types shared across the package.

The CLI maps these onto exit codes (config 2, physics/numerics 3,
oracle failure 4), and the HTTP layer maps them onto status codes.
"""


class DmgradError(Exception):
    """Base class for all errors raised by this package."""


class ScenarioError(DmgradError):
    """A scenario config failed to parse or validate."""


class DomainError(DmgradError):
    """A physical precondition was violated (bad parameter range)."""


class NumericalError(DmgradError):
    """A numerical routine could not reach its required tolerance."""


class OracleFailure(DmgradError):
    """Closed form and quadrature oracle disagree beyond tolerance."""

    def __init__(self, message: str, max_relative_deviation: float):
        super().__init__(message)
        self.max_relative_deviation = max_relative_deviation
