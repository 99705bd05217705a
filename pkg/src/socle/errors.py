"""Exception hierarchy for the socle library."""


class SocleError(Exception):
    """Base class for all library errors."""


# -- simplicial complexes ------------------------------------------------

class MixedDimension(SocleError):
    pass


class BadVertex(SocleError):
    pass


class NotPure(SocleError):
    pass


class TooSmall(SocleError):
    pass


class NotAFace(SocleError):
    pass


class NoPath(SocleError):
    pass


# -- field / polynomial arithmetic ---------------------------------------

class WrongLength(SocleError):
    pass


class DivByZero(SocleError):
    pass


class ZeroPolynomial(SocleError):
    pass


class DenominatorVanished(SocleError):
    pass


# -- Artinian reduction ---------------------------------------------------

class DegreeTooHigh(SocleError):
    pass


class CannotAvoid(SocleError):
    pass


class UnstableRank(SocleError):
    pass


# -- socle functional ------------------------------------------------------

class NotCodim1(SocleError):
    pass


class BadShape(SocleError):
    pass


class CharNot2(SocleError):
    pass


class WrongDegree(SocleError):
    pass


class EvenDimension(SocleError):
    pass


class NotSimplexBoundary(SocleError):
    pass


# -- differential operators ------------------------------------------------

class WrongParity(SocleError):
    pass


class WrongFaceSize(SocleError):
    pass


class BadParity(SocleError):
    pass


# -- dimension-1 machinery ---------------------------------------------------

class NotPolygon(SocleError):
    pass


class ZeroInput(SocleError):
    pass


class SingularForm(SocleError):
    pass


class NoCertificateFound(SocleError):
    pass


# -- CLI ----------------------------------------------------------------------

class ConfigError(SocleError):
    pass
