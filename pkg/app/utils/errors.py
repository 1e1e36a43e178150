"""
Exception types raised by the Farey library
"""


class FareyError(ValueError):
    """Base class for every library error"""


class NotAnEdge(FareyError):
    """Two vertices that are not joined by a Farey edge"""


class DegeneratePoints(FareyError):
    """Cross-ratio requested on points that are not pairwise distinct"""


class DegenerateQuad(FareyError):
    """Quad vertices that are not distinct or not in ccw order"""


class NotInP(FareyError):
    """Shear data whose fan tails cannot be summed"""


class MonotonicityViolation(FareyError):
    """Developed vertex images that are not ccw-monotone"""


class DegenerateImage(FareyError):
    """Image points that collide numerically"""


class NotDifferentiable(FareyError):
    """One-sided derivatives that disagree at a point"""


class CoordinateFileError(FareyError):
    """Malformed coordinate or sample file"""


class RunConfigError(FareyError):
    """Command options outside their allowed range"""
