"""Exception types shared across the package.

Every domain violation raises a subclass of GeometryDomainError so callers
(and the CLI) can distinguish "bad geometry" from programming errors.
"""


class GeometryDomainError(ValueError):
    """An input lies outside the mathematical domain of an operation."""


class BehindCameraError(GeometryDomainError):
    """A point has non-positive depth and cannot be projected."""


class OutOfHemisphereError(GeometryDomainError):
    """A direction or angle pair leaves the open forward hemisphere."""


class DegenerateInputError(GeometryDomainError):
    """An input is singular or empty where the operation needs otherwise."""


class NonInjectiveError(DegenerateInputError):
    """The requested inverse is not unique at this input."""


class SpacingMismatchError(GeometryDomainError):
    """Two grids cannot be aligned by an integer dilation factor."""
