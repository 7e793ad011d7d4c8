"""
Rule engine for the infinitesimal Torelli property of elliptic surfaces.

Rules are tried in a fixed order and the first match decides:

    R0   g = 0, d in {0, 1}                       products and rational surfaces fail
    R1   g = 0, d = 2                             K3 surfaces hold
    R2a  g = 1, d in {1, 2}, j constant != 0,1728 fails
    R2   d = 1, h0(L) > 0, g >= 1                 conjecturally fails
    R3   j nonconstant, d >= 2 or h0(L) = 0       holds
    R4   d = 0, L trivial, h1 odd                 fails for g >= 2, holds for g = 1
    R5   d = 0, L nontrivial or h1 even           decided by mu with Delta = 0
    R6   j constant, s = d + 1, h0(Delta - L) > 0 fails
    R7   j constant, d = 2, g = 1, 2L ~ Delta     fails
    R8   j constant, a surjectivity criterion     holds
    R9   j constant, mu criterion applies         decided by mu
    R10  anything else                            out of scope

R6 follows the conclusion of its proof (mu is not surjective, so the
property fails) rather than the wording of the statement it proves.
"""
import math
from enum import Enum
from typing import Callable, List, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from app.core.exceptions import InconsistentInvariants
from app.core.logging_config import logger
from app.torelli.invariants import SurfaceInvariants
from app.torelli.weierstrass import JClass


class Outcome(str, Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    EQUIVALENT_TO_MU = "EquivalentToMu"
    CONJECTURALLY_FAILS = "ConjecturallyFails"
    OUT_OF_SCOPE = "OutOfScope"


CITATIONS = {
    "rational-or-product": "classical: rational and product surfaces",
    "k3-surface": "classical: infinitesimal Torelli for K3 surfaces",
    "genus-one-constant-j": "theorem: constant j over an elliptic base with d <= 2",
    "canonical-base-point": "conjecture: d = 1 with L effective",
    "nonconstant-j": "theorem: nonconstant j without multiple fibres",
    "trivial-bundle-odd-h1": "theorem: trivial fibre bundles with odd h1",
    "fiber-bundle-trivial-even-h1": "corollary: trivial fibre bundles with even h1",
    "fiber-bundle-nontrivial-genus-one": "corollary: nontrivial fibre bundles over an elliptic base",
    "fiber-bundle-mu-criterion": "theorem: fibre bundles decided by mu with Delta = 0",
    "base-point-of-delta-minus-L": "lemma: Delta - L effective gives a base point of the image of mu",
    "mu-factors-through-sym2": "lemma: mu factors through Sym^2 H0(L)",
    "mu-surjective/h0-lemma/large-degree": "lemma: h0 surjectivity, large degree",
    "mu-surjective/h0-lemma/many-fibres": "lemma: h0 surjectivity, many singular fibres",
    "mu-surjective/h0-lemma/vanishing": "lemma: h0 surjectivity, h0(Delta - 2L) = 0",
    "mu-surjective/clifford/minimal-fibres": "lemma: Clifford bound with s = d + 1",
    "mu-surjective/clifford/square-is-delta": "lemma: Clifford bound with 2L ~ Delta",
    "mu-surjective/clifford/degree-one": "lemma: Clifford bound in degree one",
    "mu-criterion": "theorem: constant j reduces to the surjectivity of mu",
    "out-of-scope": "none",
}


class Verdict(BaseModel):
    """Outcome of the rule engine, optionally refined by a direct mu computation."""

    outcome: Outcome
    rule_id: str = Field(..., description="Identifier of the rule that fired (R0 .. R10)")
    rule: str = Field(..., description="Name of the criterion behind the rule")
    reason: str = ""
    mu_corank: Optional[int] = None
    assumption_dependent: bool = Field(
        False, description="The verdict relies on a user-asserted Clifford index"
    )
    citation: str = Field("", description="The result behind the rule, filled in from the rule name")

    @model_validator(mode="after")
    def _cite(self) -> "Verdict":
        if not self.citation:
            self.citation = CITATIONS.get(self.rule, "")
        return self


def check_consistency(inv: SurfaceInvariants) -> None:
    """
    Raises:
        InconsistentInvariants: If the invariants cannot come from an elliptic surface
    """
    problems: List[str] = []
    if inv.d < 0:
        problems.append(f"d = {inv.d} is negative")
    if inv.d >= 1 and inv.s < inv.d + 1:
        problems.append(f"s = {inv.s} < d + 1 = {inv.d + 1}")
    if inv.d == 0 and inv.s != 0:
        problems.append(f"d = 0 but s = {inv.s}; fibre bundles have no singular fibres")
    if inv.j_class.is_constant and inv.s < math.ceil(6 * inv.d / 5):
        problems.append(f"constant j needs s >= 6d/5, got s = {inv.s}, d = {inv.d}")
    if not inv.j_class.is_constant and inv.d < 1:
        problems.append("nonconstant j needs d >= 1")
    if inv.j_class is JClass.CONSTANT_OTHER and inv.s != 2 * inv.d:
        problems.append(f"j constant != 0, 1728 needs s = 2d, got s = {inv.s}")
    if inv.L_trivial and inv.d != 0:
        problems.append("a trivial L has degree 0")
    if problems:
        raise InconsistentInvariants("; ".join(problems))


def reduction_applies(inv: SurfaceInvariants) -> bool:
    """Whether, for constant j, the property is equivalent to surjectivity of mu."""
    if not inv.j_class.is_constant:
        return False
    return inv.d >= 3 or (inv.d == 2 and inv.g > 0) or (inv.d == 1 and inv.h0_L == 0)


def _verdict(outcome: Outcome, rule_id: str, rule: str, reason: str, assumed: bool = False) -> Verdict:
    return Verdict(outcome=outcome, rule_id=rule_id, rule=rule, reason=reason, assumption_dependent=assumed)


def _fiber_bundle(inv: SurfaceInvariants) -> Verdict:
    g = inv.g
    if inv.L_trivial and inv.h1_parity == "odd":
        if g >= 2:
            return _verdict(Outcome.FAILS, "R4", "trivial-bundle-odd-h1", "L trivial and h1(X) odd with g >= 2")
        return _verdict(Outcome.HOLDS, "R4", "trivial-bundle-odd-h1", "L trivial and h1(X) odd over an elliptic base")
    if not inv.L_trivial:
        if g == 1:
            return _verdict(
                Outcome.FAILS,
                "R5",
                "fiber-bundle-nontrivial-genus-one",
                "h0(K + L) = 0 while h0(2K) = 1, so mu cannot be surjective",
            )
        return _verdict(
            Outcome.EQUIVALENT_TO_MU, "R5", "fiber-bundle-mu-criterion", "fibre bundle with nontrivial L"
        )
    if inv.h1_parity is None:
        return _verdict(Outcome.OUT_OF_SCOPE, "R5", "fiber-bundle-mu-criterion", "h1 parity required")
    if g == 1:
        return _verdict(Outcome.HOLDS, "R5", "fiber-bundle-trivial-even-h1", "L trivial, h1(X) even, g = 1")
    if not inv.hyperelliptic:
        return _verdict(
            Outcome.HOLDS,
            "R5",
            "fiber-bundle-trivial-even-h1",
            "L trivial and h1(X) even over a non-hyperelliptic base: H0(K) x H0(K) -> H0(2K) is onto",
        )
    return _verdict(
        Outcome.EQUIVALENT_TO_MU,
        "R5",
        "fiber-bundle-mu-criterion",
        "L trivial and h1(X) even over a hyperelliptic base",
    )


Criterion = Callable[[SurfaceInvariants], Tuple[bool, bool]]


def _h0_lemma_large_degree(inv: SurfaceInvariants) -> Tuple[bool, bool]:
    return inv.d >= 3 and inv.s >= inv.d + 2, False


def _h0_lemma_many_fibres(inv: SurfaceInvariants) -> Tuple[bool, bool]:
    return inv.d in (1, 2) and inv.s >= inv.d + 3, False


def _h0_lemma_vanishing(inv: SurfaceInvariants) -> Tuple[bool, bool]:
    return inv.d in (1, 2) and inv.s == inv.d + 2 and inv.h0_L2inv_Delta == 0, False


def _minimal_fibres(inv: SurfaceInvariants) -> Tuple[bool, bool]:
    if inv.s != inv.d + 1 or inv.h0_Linv_Delta != 0:
        return False, False
    cliff = inv.clifford_index
    if not ((inv.g >= 2 and cliff >= 2) or (inv.g >= 3 and 4 - inv.d <= cliff <= 1)):
        return False, False
    if inv.d <= 2 and not (inv.very_ample_flags and any(inv.very_ample_flags)):
        return False, False
    return True, inv.clifford_asserted


def _square_is_delta(inv: SurfaceInvariants) -> Tuple[bool, bool]:
    ok = inv.d == 2 and inv.l2_is_delta and inv.clifford_index >= 1 and inv.h0_Linv_Delta == 0
    return ok, ok and inv.clifford_asserted


def _degree_one_three_fibres(inv: SurfaceInvariants) -> Tuple[bool, bool]:
    ok = (
        inv.d == 1
        and inv.s == 3
        and inv.h0_L == 0
        and inv.h0_L2inv_Delta > 0
        and inv.h0_Linv_Delta == 0
        and inv.clifford_index >= 2
    )
    return ok, ok and inv.clifford_asserted


SURJECTIVITY_CRITERIA: List[Tuple[str, str, Criterion]] = [
    ("h0-lemma/large-degree", "d >= 3 and s >= d + 2", _h0_lemma_large_degree),
    ("h0-lemma/many-fibres", "d in {1, 2} and s >= d + 3", _h0_lemma_many_fibres),
    ("h0-lemma/vanishing", "d in {1, 2}, s = d + 2 and h0(Delta - 2L) = 0", _h0_lemma_vanishing),
    ("clifford/minimal-fibres", "s = d + 1, h0(Delta - L) = 0 and Clifford bound", _minimal_fibres),
    ("clifford/square-is-delta", "d = 2, 2L ~ Delta, Cliff >= 1, h0(Delta - L) = 0", _square_is_delta),
    ("clifford/degree-one", "d = 1, s = 3, h0(Delta - 2L) > 0, h0(Delta - L) = 0, Cliff >= 2", _degree_one_three_fibres),
]


def _constant_j(inv: SurfaceInvariants) -> Optional[Verdict]:
    if not reduction_applies(inv):
        return None
    if inv.s == inv.d + 1 and inv.h0_Linv_Delta > 0:
        return _verdict(
            Outcome.FAILS,
            "R6",
            "base-point-of-delta-minus-L",
            "s = d + 1 and Delta - L is effective, so its point is a base point of the image of mu",
        )
    if inv.d == 2 and inv.g == 1 and inv.l2_is_delta:
        return _verdict(
            Outcome.FAILS,
            "R7",
            "mu-factors-through-sym2",
            "g = 1, d = 2 and 2L ~ Delta: mu factors through Sym^2 H0(L)",
        )
    for name, description, criterion in SURJECTIVITY_CRITERIA:
        fired, assumed = criterion(inv)
        if fired:
            return _verdict(Outcome.HOLDS, "R8", f"mu-surjective/{name}", description, assumed)
    return _verdict(
        Outcome.EQUIVALENT_TO_MU,
        "R9",
        "mu-criterion",
        "constant j: the property holds iff mu is surjective and no criterion decides it",
    )


def torelli_verdict(inv: SurfaceInvariants) -> Verdict:
    """
    Decide the property from invariants alone.

    Raises:
        InconsistentInvariants: If the invariants violate the basic constraints
    """
    check_consistency(inv)
    g, d = inv.g, inv.d
    if g == 0 and d in (0, 1):
        verdict = _verdict(Outcome.FAILS, "R0", "rational-or-product", "g = 0 and d <= 1")
    elif g == 0 and d == 2:
        verdict = _verdict(Outcome.HOLDS, "R1", "k3-surface", "g = 0 and d = 2")
    elif g == 1 and d in (1, 2) and inv.j_class is JClass.CONSTANT_OTHER:
        verdict = _verdict(
            Outcome.FAILS, "R2a", "genus-one-constant-j", "g = 1, d in {1, 2} and j constant, not 0 or 1728"
        )
    elif d == 1 and inv.h0_L > 0 and g >= 1:
        verdict = _verdict(
            Outcome.CONJECTURALLY_FAILS, "R2", "canonical-base-point", "d = 1 and L effective: K_X has a base point"
        )
    elif not inv.j_class.is_constant and (d >= 2 or (d == 1 and inv.h0_L == 0)):
        verdict = _verdict(Outcome.HOLDS, "R3", "nonconstant-j", "nonconstant j without multiple fibres")
    elif d == 0:
        verdict = _fiber_bundle(inv)
    else:
        verdict = _constant_j(inv) or _verdict(
            Outcome.OUT_OF_SCOPE, "R10", "out-of-scope", "no rule covers these invariants"
        )
    logger.debug(f"verdict {verdict.rule_id}: {verdict.outcome.value}")
    return verdict
