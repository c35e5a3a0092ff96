"""
Errors - exception hierarchy shared by all core modules

Core functions raise these exceptions. The tools and server layers turn them
into result dicts, and the CLI turns them into exit codes.
"""


class CCDError(Exception):
    """
    Base class for every error raised by polytraj_ccd
    """


class InvalidArgumentError(CCDError, ValueError):
    """
    An argument is outside its documented domain
    """


class InvalidDurationError(InvalidArgumentError):
    """
    Trajectory duration T is not strictly positive
    """


class DegeneratePolynomialError(CCDError):
    """
    Polynomial is identically zero, so its root set is undefined
    """


class DegeneratePlaneError(InvalidArgumentError):
    """
    Plane normal is too short to define a direction
    """


class PreconditionViolationError(CCDError):
    """
    Operation called with a violated precondition
    (e.g. separating plane requested for a point inside the obstacle)
    """


class DegenerateNormalError(CCDError):
    """
    Query point is outside the obstacle but so close to its boundary that the
    separating-plane normal cannot be computed reliably
    """


class ConfigurationError(CCDError):
    """
    Missing or invalid configuration, scene, layout or scenario file
    """


class ValidationMismatchError(CCDError):
    """
    Sampling oracle contradicts a Feasible collision verdict
    """


__all__ = [
    "CCDError",
    "InvalidArgumentError",
    "InvalidDurationError",
    "DegeneratePolynomialError",
    "DegeneratePlaneError",
    "PreconditionViolationError",
    "DegenerateNormalError",
    "ConfigurationError",
    "ValidationMismatchError",
]
