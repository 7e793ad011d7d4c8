"""
Decisions that combine the rule engine with a direct computation of mu.
"""
from app.cohomology.koszul import MuReport, mu_pi
from app.core.exceptions import BadDegree, NotTorsion, OracleMismatch, TrivialClass
from app.core.logging_config import logger
from app.curves.curve import HyperellipticCurve
from app.curves.divisor import Divisor
from app.torelli.constructions import torsion_order
from app.torelli.invariants import extract_invariants
from app.torelli.rules import Outcome, Verdict, reduction_applies, torelli_verdict
from app.torelli.weierstrass import WeierstrassData

TORSION_ORDERS = (2, 3, 4, 6)


def _computed_outcome(report: MuReport) -> Outcome:
    return Outcome.HOLDS if report.surjective else Outcome.FAILS


def torelli_decide(W: WeierstrassData, compute_mu: bool = False) -> Verdict:
    """
    Verdict for W, optionally cross-checked against the rank of mu.

    mu is computed when the property is known to be equivalent to its
    surjectivity: constant j under the reduction hypotheses, or a fibre
    bundle decided by the mu criterion. An EquivalentToMu verdict is then
    resolved by the computed rank, and a rule-based Holds or Fails must
    agree with it.

    Raises:
        OracleMismatch: If a rule and the computed rank disagree
    """
    inv, Delta = extract_invariants(W)
    verdict = torelli_verdict(inv)
    if not compute_mu:
        return verdict

    fibre_bundle = verdict.rule_id == "R5" and verdict.outcome is not Outcome.OUT_OF_SCOPE
    if not (fibre_bundle or reduction_applies(inv)):
        logger.debug(f"mu not computed: rule {verdict.rule_id} does not reduce to mu")
        return verdict

    report = mu_pi(W.curve, W.L_div, Delta)
    computed = _computed_outcome(report)
    if verdict.outcome is Outcome.EQUIVALENT_TO_MU:
        return verdict.model_copy(
            update={
                "outcome": computed,
                "mu_corank": report.corank,
                "reason": f"{verdict.reason}; mu has rank {report.rank} and corank {report.corank}",
            }
        )
    if verdict.outcome in (Outcome.HOLDS, Outcome.FAILS) and verdict.outcome is not computed:
        raise OracleMismatch(
            f"rule {verdict.rule_id} says {verdict.outcome.value} but mu has corank {report.corank}"
        )
    return verdict.model_copy(update={"mu_corank": report.corank})


def fiber_bundle_check(curve: HyperellipticCurve, T: Divisor) -> Verdict:
    """
    Verdict for the elliptic fibre bundle with L = T by direct computation of mu.

    Raises:
        BadDegree: If deg T != 0
        TrivialClass: If T is principal
        NotTorsion: If T has no order in {2, 3, 4, 6}
        OracleMismatch: If mu is surjective over an elliptic base
    """
    if T.degree != 0:
        raise BadDegree(f"T must have degree 0, got {T.degree}")
    order = torsion_order(curve, T)
    if order == 1:
        raise TrivialClass(f"{T} is principal; decide the trivial bundle through the h1 parity rules")
    if order not in TORSION_ORDERS:
        raise NotTorsion(f"{T} does not have order 2, 3, 4 or 6")

    report = mu_pi(curve, T, Divisor.zero(curve))
    if curve.genus == 1:
        if report.surjective:
            raise OracleMismatch("mu is surjective over an elliptic base with nontrivial L")
        rule = "fiber-bundle-nontrivial-genus-one"
    else:
        rule = "fiber-bundle-mu-criterion"
    verdict = Verdict(
        outcome=_computed_outcome(report),
        rule_id="R5",
        rule=rule,
        reason=f"L has order {order}; mu has rank {report.rank} and corank {report.corank}",
        mu_corank=report.corank,
    )
    logger.info(f"fibre bundle over genus {curve.genus}, order {order}: {verdict.outcome.value}")
    return verdict
