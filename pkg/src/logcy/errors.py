"""Exception hierarchy.

Every domain failure derives from :class:`LogCYError`; the CLI reports the
class name as the machine-readable error code.
"""


class LogCYError(ValueError):
    """Base class for all domain errors."""

    def __init__(self, detail=""):
        super().__init__(detail)
        self.detail = detail

    @property
    def code(self):
        return type(self).__name__


# lattice
class ZeroVector(LogCYError):
    pass


class BoundExceeded(LogCYError):
    pass


# fans
class InvalidFan(LogCYError):
    pass


class NonPrimitiveRay(InvalidFan):
    pass


class DuplicateRay(InvalidFan):
    pass


class NonSimplicialCone(InvalidFan):
    pass


class FaceIntersectionViolation(InvalidFan):
    pass


class NotInSupport(LogCYError):
    pass


class AlreadyARay(LogCYError):
    pass


class NonPrimitive(LogCYError):
    pass


class InvalidWeights(LogCYError):
    pass


class UnboundedPolytope(LogCYError):
    pass


# pairs
class InvalidPair(LogCYError):
    pass


class IncompleteFan(LogCYError):
    pass


class NotLogCY(LogCYError):
    pass


class NotLC(LogCYError):
    pass


# plane arrangements
class InvalidArrangement(LogCYError):
    pass


class NotAssociated(LogCYError):
    pass


class NotLogCYComplexityZero(LogCYError):
    pass


class Infeasible(LogCYError):
    pass


# morphisms
class IncompatibleMorphism(LogCYError):
    pass


class NotSurjective(LogCYError):
    pass


class NonUniqueLift(LogCYError):
    pass


class MissingLiftedCone(LogCYError):
    pass


class NotLocallyTrivial(LogCYError):
    pass


class FiberNotProjectiveSpace(LogCYError):
    pass


class NoRayOver(LogCYError):
    pass


# towers
class InvalidTowerSpec(LogCYError):
    pass


class InvalidParameters(LogCYError):
    pass


# serialization
class SchemaError(LogCYError):
    pass


class ValidationError(LogCYError):
    def __init__(self, path, detail=""):
        super().__init__(f"{path}: {detail}" if path else detail)
        self.path = path
