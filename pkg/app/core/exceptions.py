"""
Custom exceptions for the application.
"""


class TorelliError(Exception):
    """Base exception for all engine errors."""
    pass


# Exact algebra

class ZeroPolynomial(TorelliError):
    """Raised when an operation needs a nonzero polynomial."""
    pass


class BadPrime(TorelliError):
    """Raised when the ground characteristic is not a prime p > 3."""
    pass


# Curves and divisors

class BadDegree(TorelliError):
    """Raised when f is not monic of odd degree at least 3."""
    pass


class NotSquarefree(TorelliError):
    """Raised when f has a repeated factor over F_p."""
    pass


class NotOnCurve(TorelliError):
    """Raised when an affine point does not satisfy y^2 = f(x)."""
    pass


class NonSplitSupport(TorelliError):
    """Raised when a zero or pole lies at a place of degree greater than one."""
    pass


class ZeroFunction(TorelliError):
    """Raised when the zero function is given where a divisor is required."""
    pass


class CurveMismatch(TorelliError):
    """Raised when divisors or functions live on different curves."""
    pass


class NotEffective(TorelliError):
    """Raised when a divisor with a negative coefficient is reduced."""
    pass


class NotReduced(TorelliError):
    """Raised when a discriminant divisor is not reduced effective."""
    pass


# Riemann-Roch and Koszul

class InternalBoundError(TorelliError):
    """Raised when a computed dimension contradicts Riemann-Roch."""
    pass


class NotInSpace(TorelliError):
    """Raised when a function is not a section of the requested divisor."""
    pass


class Inconclusive(TorelliError):
    """Raised when rational places cannot certify a positivity property."""
    pass


class SizeCapExceeded(TorelliError):
    """Raised when a Koszul differential exceeds the configured size cap."""
    pass


class NotBasePointFree(TorelliError):
    """Raised when a duality check is requested for a bundle with base points."""
    pass


# Weierstrass data and decisions

class NotMinimal(TorelliError):
    """Raised when A and B vanish to orders 4 and 6 at a common place."""
    pass


class DegenerateDisc(TorelliError):
    """Raised when 4A^3 + 27B^2 vanishes identically."""
    pass


class InconsistentInvariants(TorelliError):
    """Raised when surface invariants violate the basic numerical constraints."""
    pass


class OracleMismatch(TorelliError):
    """Raised when a rule verdict disagrees with the direct rank computation."""
    pass


class NoTwistFound(TorelliError):
    """Raised when no Weierstrass difference gives a non-effective twist."""
    pass


class RetryExhausted(TorelliError):
    """Raised when a randomized constructor hits its retry cap."""
    pass


class BadCubic(TorelliError):
    """Raised when the cubic of the degree-5 example is unusable."""
    pass


class NotTorsion(TorelliError):
    """Raised when a degree-0 class is not torsion of order 2, 3, 4 or 6."""
    pass


class TrivialClass(TorelliError):
    """Raised when a degree-0 class is principal."""
    pass


# Input and persistence

class MalformedInput(TorelliError):
    """Raised when an input file cannot be parsed."""
    pass


class DatabaseError(TorelliError):
    """Raised when a database operation fails."""
    pass


class RunNotFoundError(TorelliError):
    """Raised when a recorded run is not found."""
    pass
