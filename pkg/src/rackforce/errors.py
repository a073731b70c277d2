"""Exception hierarchy for the rack-force toolkit."""


class RackForceError(Exception):
    """Base class for all toolkit errors."""


class InvalidInputError(RackForceError, ValueError):
    """A trace, parameter or argument is outside its valid domain."""


class SpeedTooLowError(InvalidInputError):
    """Vehicle speed dropped below the minimum the slip kinematics support."""


class InvalidSlipError(InvalidInputError):
    """Slip angle reached the tangent singularity at +/- pi/2."""


class AlignmentError(InvalidInputError):
    """Input traces do not share rate and length."""


class NumericalError(RackForceError, ArithmeticError):
    """Integration produced a non-finite value."""

    def __init__(self, message, index=None):
        super().__init__(message if index is None else f"{message} at sample {index}")
        self.index = index


class ConfigError(RackForceError):
    """Malformed or incomplete configuration document."""
