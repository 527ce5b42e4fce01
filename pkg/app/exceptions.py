"""Exception hierarchy shared by services, the CLI and the HTTP layer"""


class RodModelError(Exception):
    """Base class for every error raised by the rod model"""


class InvalidInputError(RodModelError, ValueError):
    """Arguments or data that violate a documented precondition"""


class DegenerateRodError(InvalidInputError):
    """Zero-length edge or a 180 degree turn between consecutive edges"""


class DomainError(InvalidInputError):
    """Evaluation parameter outside the curve's domain"""


class RodFormatError(InvalidInputError):
    """Malformed rod file"""


class NumericalFailureError(RodModelError, ArithmeticError):
    """A numerical procedure could not produce a result"""


class BracketError(NumericalFailureError):
    """Root or radius bracket could not be established"""


class DegenerateSpeedError(NumericalFailureError):
    """Curve speed fell below the degenerate-speed threshold"""


class RegimeError(NumericalFailureError):
    """Chord radius outside the small-r regime where stepping is well defined"""
