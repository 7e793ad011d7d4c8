"""
Weierstrass data y^2 = x^3 + A x + B of an elliptic surface over a curve C.

A and B are sections of 4L and 6L for the fundamental line bundle L,
so the discriminant 4A^3 + 27B^2 is a section of 12L and its divisor of
zeros is div(disc) + 12L.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional

from app.core.exceptions import BadDegree, CurveMismatch, DegenerateDisc, NotInSpace, NotMinimal
from app.core.logging_config import logger
from app.curves.curve import FunctionRep, HyperellipticCurve, Place
from app.curves.divisor import Divisor, divisor_of_function
from app.curves.rrspace import rr_basis


class JClass(str, Enum):
    """Behaviour of the j-invariant along the base curve."""

    NONCONSTANT = "Nonconstant"
    CONSTANT_ZERO = "ConstantZero"
    CONSTANT_1728 = "Constant1728"
    CONSTANT_OTHER = "ConstantOther"

    @property
    def is_constant(self) -> bool:
        return self is not JClass.NONCONSTANT


@dataclass(frozen=True)
class WeierstrassData:
    """Minimal Weierstrass data over a hyperelliptic base curve."""

    curve: HyperellipticCurve
    L_div: Divisor
    A: FunctionRep
    B: FunctionRep
    h1_parity: Optional[str] = None
    clifford: Optional[int] = None

    def __post_init__(self):
        if self.L_div.curve != self.curve:
            raise CurveMismatch("L is not a divisor on the base curve")
        if self.A.p != self.curve.p or self.B.p != self.curve.p:
            raise CurveMismatch("A and B must be functions over the base field")
        if self.L_div.degree < 0:
            raise BadDegree(f"deg L must be nonnegative, got {self.L_div.degree}")
        if self.A.is_zero and self.B.is_zero:
            raise DegenerateDisc("A and B are both zero")
        if self.h1_parity not in (None, "even", "odd"):
            raise ValueError(f"h1_parity must be 'even', 'odd' or None, got {self.h1_parity!r}")

    @property
    def d(self) -> int:
        return self.L_div.degree

    def to_json(self) -> dict:
        return {
            "curve": self.curve.to_json(),
            "L": self.L_div.to_json(),
            "A": self.A.to_json(),
            "B": self.B.to_json(),
            "h1_parity": self.h1_parity,
            "clifford": self.clifford,
        }


def discriminant(W: WeierstrassData) -> FunctionRep:
    """4A^3 + 27B^2."""
    C = W.curve
    return C.add(C.scale(C.power(W.A, 3), 4), C.scale(C.power(W.B, 2), 27))


def discriminant_divisor(W: WeierstrassData) -> Divisor:
    """
    div(disc) + 12L, the effective divisor of singular fibres with multiplicity.

    Raises:
        DegenerateDisc: If the discriminant vanishes identically
        NonSplitSupport: If the discriminant has a non-rational zero
    """
    disc = discriminant(W)
    if disc.is_zero:
        raise DegenerateDisc("4A^3 + 27B^2 is identically zero")
    return divisor_of_function(W.curve, disc) + 12 * W.L_div


def discriminant_orders(W: WeierstrassData) -> Dict[Place, int]:
    """Vanishing order of the discriminant at every singular fibre."""
    return discriminant_divisor(W).as_dict()


def classify_j(W: WeierstrassData) -> JClass:
    """Constant j is detected by A = 0, B = 0 or A^3 / B^2 constant."""
    if W.A.is_zero:
        return JClass.CONSTANT_ZERO
    if W.B.is_zero:
        return JClass.CONSTANT_1728
    C = W.curve
    ratio = C.div(C.power(W.A, 3), C.power(W.B, 2))
    return JClass.CONSTANT_OTHER if ratio.is_constant else JClass.NONCONSTANT


def _twisted_order(curve: HyperellipticCurve, phi: FunctionRep, P: Place, shift: int):
    return curve.valuation(phi, P) + shift


def check_sections(W: WeierstrassData) -> None:
    """
    Raises:
        NotInSpace: If A is not a section of 4L or B not a section of 6L
    """
    C = W.curve
    if not W.A.is_zero and not rr_basis(C, 4 * W.L_div).contains(W.A):
        raise NotInSpace(f"A = {W.A} is not a section of 4L")
    if not W.B.is_zero and not rr_basis(C, 6 * W.L_div).contains(W.B):
        raise NotInSpace(f"B = {W.B} is not a section of 6L")


def check_minimal(W: WeierstrassData, disc_div: Optional[Divisor] = None) -> None:
    """
    Raises:
        NotMinimal: If A vanishes to order >= 4 and B to order >= 6 somewhere
    """
    disc_div = discriminant_divisor(W) if disc_div is None else disc_div
    C = W.curve
    for P in disc_div.support:
        order_A = _twisted_order(C, W.A, P, 4 * W.L_div[P])
        order_B = _twisted_order(C, W.B, P, 6 * W.L_div[P])
        if order_A >= 4 and order_B >= 6:
            raise NotMinimal(f"model is not minimal at {P}: orders ({order_A}, {order_B})")


def validate_weierstrass(W: WeierstrassData) -> Divisor:
    """Run every model check and return the discriminant divisor."""
    check_sections(W)
    disc_div = discriminant_divisor(W)
    check_minimal(W, disc_div)
    logger.debug(f"Weierstrass data over genus {W.curve.genus}, d = {W.d}: discriminant {disc_div}")
    return disc_div
