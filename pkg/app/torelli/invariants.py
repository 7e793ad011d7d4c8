"""
Numerical invariants of an elliptic surface read off its Weierstrass data.
"""
from typing import Any, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field

from app.core.exceptions import Inconclusive
from app.core.logging_config import logger
from app.curves.divisor import Divisor, canonical_divisor
from app.curves.rrspace import h0, is_very_ample, linearly_equivalent
from app.torelli.weierstrass import JClass, WeierstrassData, classify_j, validate_weierstrass


class SurfaceInvariants(BaseModel):
    """Input of the rule engine: everything the case analysis looks at."""

    g: int = Field(..., ge=0, description="Genus of the base curve")
    d: int = Field(..., description="Degree of the fundamental line bundle L")
    s: int = Field(..., ge=0, description="Number of singular fibres")
    delta: List[List[Any]] = Field(default_factory=list, description="Reduced discriminant divisor")
    p_g: Optional[int] = Field(None, description="Geometric genus of the surface")
    h0_L: int = Field(0, ge=0)
    h0_Linv_Delta: int = Field(0, ge=0, description="h0(Delta - L)")
    h0_L2inv_Delta: int = Field(0, ge=0, description="h0(Delta - 2L)")
    j_class: JClass
    L_trivial: bool = False
    l2_is_delta: bool = Field(False, description="2L is linearly equivalent to Delta")
    h1_parity: Optional[Literal["even", "odd"]] = None
    clifford: Optional[int] = Field(None, ge=0, description="User-asserted Clifford index")
    hyperelliptic: bool = True
    very_ample_flags: Optional[Tuple[bool, bool]] = Field(
        None, description="Very ampleness of K + L and K - L + Delta"
    )

    @property
    def clifford_index(self) -> int:
        """The asserted Clifford index, or 0 for a hyperelliptic base."""
        if self.clifford is not None:
            return self.clifford
        return 0 if self.hyperelliptic else 1

    @property
    def clifford_asserted(self) -> bool:
        return self.clifford is not None


def _very_ample_flags(W: WeierstrassData, Delta: Divisor) -> Optional[Tuple[bool, bool]]:
    C = W.curve
    K = canonical_divisor(C)
    try:
        return is_very_ample(C, K + W.L_div), is_very_ample(C, K - W.L_div + Delta)
    except Inconclusive as exc:
        logger.warning(f"very ampleness flags left unset: {exc}")
        return None


def extract_invariants(W: WeierstrassData) -> Tuple[SurfaceInvariants, Divisor]:
    """
    Invariants of W together with the reduced discriminant divisor.

    Raises:
        NonSplitSupport: If the discriminant has a non-rational zero
        NotMinimal: If the model is not minimal
        DegenerateDisc: If the discriminant vanishes identically
    """
    C = W.curve
    L = W.L_div
    disc_div = validate_weierstrass(W)
    Delta = disc_div.reduce_support()
    d = L.degree
    h0_L = h0(C, L)
    L_trivial = d == 0 and h0_L == 1
    clifford = W.clifford
    flags = None
    if d <= 2 and clifford is not None and clifford >= 2:
        flags = _very_ample_flags(W, Delta)

    inv = SurfaceInvariants(
        g=C.genus,
        d=d,
        s=len(Delta),
        delta=Delta.to_json(),
        p_g=C.genus if L_trivial else C.genus + d - 1,
        h0_L=h0_L,
        h0_Linv_Delta=h0(C, Delta - L),
        h0_L2inv_Delta=h0(C, Delta - 2 * L),
        j_class=classify_j(W),
        L_trivial=L_trivial,
        l2_is_delta=2 * d == len(Delta) and linearly_equivalent(C, 2 * L, Delta),
        h1_parity=W.h1_parity,
        clifford=clifford,
        very_ample_flags=flags,
    )
    logger.info(f"invariants: g={inv.g} d={inv.d} s={inv.s} j={inv.j_class.value}")
    return inv, Delta


def invariants_from_weierstrass(W: WeierstrassData) -> SurfaceInvariants:
    return extract_invariants(W)[0]
