"""Exception types shared across the package."""


class FaceringError(Exception):
    """Base class for all errors raised by this package."""


class FaceNotInComplex(FaceringError):
    pass


class VertexClash(FaceringError):
    pass


class NotPure2Dimensional(FaceringError):
    pass


class NotDisklike(FaceringError):
    pass


class DimensionMismatch(FaceringError):
    pass


class DegenerateFace(FaceringError):
    pass


class NotSubcomplex(FaceringError):
    pass


class ImproperRealization(FaceringError):
    pass


class DegreeMismatch(FaceringError):
    pass


class TopDegreeNotOneDimensional(FaceringError):
    pass


class ShapeMismatch(FaceringError):
    pass


class NotBoundaryVertex(FaceringError):
    pass


class DimensionNotThree(FaceringError):
    pass


class WrongInput(FaceringError):
    pass


class PropernessFailedAfterRetries(FaceringError):
    pass


class ValidationError(FaceringError):
    """Malformed or inconsistent input file. ``location`` points at the offending field."""

    def __init__(self, message, location=""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


class DichotomyViolation(FaceringError):
    """An instance landed in the forbidden quadrant: no equator and no constructible
    Lefschetz element. This should be impossible and is treated as a fatal finding."""
