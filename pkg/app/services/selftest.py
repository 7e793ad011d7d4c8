"""
Acceptance suites run by the `selftest` command.

Each suite returns a SuiteResult; a suite that raises an engine error
counts as failed and carries the error name in its detail.
"""
import random
import time
from typing import Callable, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field

from app.cohomology.koszul import duality_defect, koszul_dim, mu_map, mu_pi
from app.core.exceptions import (
    DegenerateDisc,
    NonSplitSupport,
    NotMinimal,
    RetryExhausted,
    TorelliError,
)
from app.core.logging_config import logger
from app.curves.curve import INFINITY, HyperellipticCurve
from app.curves.divisor import Divisor, canonical_divisor
from app.curves.rrspace import h0, h1
from app.torelli.constructions import (
    build_constant_j_example,
    build_d5_example,
    build_twist_example,
    bundle_base_curve,
    find_twist,
    five_point_curve,
    genus_three_curve,
    genus_two_curve,
    two_torsion_divisor,
)
from app.torelli.decide import fiber_bundle_check, torelli_decide
from app.torelli.invariants import SurfaceInvariants, extract_invariants
from app.torelli.rules import SURJECTIVITY_CRITERIA, Outcome, torelli_verdict
from app.torelli.weierstrass import JClass, WeierstrassData, discriminant_orders

PRIME = 101


class SuiteResult(BaseModel):
    name: str
    passed: bool
    checked: int = 0
    detail: Dict[str, object] = Field(default_factory=dict)
    seconds: float = 0.0


class SelftestReport(BaseModel):
    passed: bool
    quick: bool
    seed: int
    suites: List[SuiteResult]


def random_divisor(curve: HyperellipticCurve, degree: int, rng: random.Random, max_terms: int = 3) -> Divisor:
    """A divisor of the given degree on rational places, balanced at infinity."""
    affine = [P for P in curve.rational_places if not P.is_infinity]
    terms = Divisor.zero(curve)
    for P in rng.sample(affine, min(max_terms, len(affine), rng.randint(0, max_terms))):
        terms = terms + Divisor.point(curve, P, rng.choice([-2, -1, 1, 2]))
    return terms + Divisor.point(curve, INFINITY, degree - terms.degree)


# Suites


def riemann_roch_suite(rng: random.Random, quick: bool) -> SuiteResult:
    """h0 - h1 = deg - g + 1 on random divisors, and h1 = 0 above 2g - 2."""
    samples = 20 if quick else 200
    curves = [genus_two_curve(PRIME), genus_three_curve(PRIME)]
    failures = []
    for k in range(samples):
        curve = curves[k % 2]
        g = curve.genus
        D = random_divisor(curve, rng.randint(-3, 3 * g + 2), rng)
        a, b = h0(curve, D), h1(curve, D)
        expected = D.degree - g + 1
        if a - b != expected or (D.degree >= 2 * g - 1 and a != expected):
            failures.append(str(D))
    return SuiteResult(name="riemann-roch", passed=not failures, checked=samples, detail={"failures": failures[:5]})


def duality_suite(rng: random.Random, quick: bool) -> SuiteResult:
    """Koszul duality for L = 5*infinity on the genus-two curve."""
    curve = genus_two_curve(PRIME)
    L = Divisor.at_infinity(curve, 5)
    ps = (0, 1) if quick else (0, 1, 2)
    defects = {f"{p},{q}": duality_defect(curve, p, q, L) for p in ps for q in range(3)}
    return SuiteResult(
        name="koszul-duality", passed=not any(defects.values()), checked=len(defects), detail={"defects": defects}
    )


def vanishing_cases() -> List[Tuple[str, HyperellipticCurve, Divisor]]:
    g2 = genus_two_curve(PRIME)
    split = five_point_curve(PRIME)
    g3 = genus_three_curve(PRIME)
    wi, wj = find_twist(split, Divisor.at_infinity(split, 1))
    twisted = Divisor.at_infinity(split, 1) + Divisor.point(split, wi) - Divisor.point(split, wj)
    return [
        ("g=2,d=1", split, twisted),
        ("g=2,d=2", g2, Divisor.at_infinity(g2, 2)),
        ("g=2,d=3", g2, Divisor.at_infinity(g2, 3)),
        ("g=3,d=2", g3, Divisor.at_infinity(g3, 2)),
    ]


def vanishing_suite(rng: random.Random, quick: bool) -> SuiteResult:
    """K_{d+g-3,1}(C, K, K + L) = 0."""
    dims = {}
    for label, curve, L in vanishing_cases():
        K = canonical_divisor(curve)
        dims[label] = koszul_dim(curve, L.degree + curve.genus - 3, 1, K, K + L).dim
    return SuiteResult(name="koszul-vanishing", passed=not any(dims.values()), checked=len(dims), detail={"dims": dims})


_CONSTANT_KINDS = (JClass.CONSTANT_ZERO, JClass.CONSTANT_1728, JClass.CONSTANT_OTHER)


def random_constant_j(
    rng: random.Random, curves: List[HyperellipticCurve], degrees: Tuple[int, ...]
) -> Optional[WeierstrassData]:
    """One random constant-j model, or None when the draw is not admissible."""
    curve = rng.choice(curves)
    twist = curve.f_splits and rng.random() < 0.3
    try:
        return build_constant_j_example(curve, rng.choice(degrees), rng.choice(_CONSTANT_KINDS), rng, twist=twist)
    except (RetryExhausted, NotMinimal, NonSplitSupport, DegenerateDisc) as exc:
        logger.debug(f"constant-j draw rejected: {exc}")
        return None


_H0_LEMMA = [entry for entry in SURJECTIVITY_CRITERIA if entry[0] in ("h0-lemma/large-degree", "h0-lemma/many-fibres")]


def h0_lemma_suite(rng: random.Random, quick: bool) -> SuiteResult:
    """mu is surjective whenever the large-degree or many-fibres criterion holds."""
    target = 5 if quick else 25
    curves = [genus_two_curve(PRIME), five_point_curve(PRIME)]
    checked, draws, failures = 0, 0, []
    while checked < target and draws < 40 * target:
        draws += 1
        W = random_constant_j(rng, curves, (2, 3, 4))
        if W is None:
            continue
        inv, Delta = extract_invariants(W)
        if not any(criterion(inv)[0] for _, _, criterion in _H0_LEMMA):
            continue
        checked += 1
        if not mu_pi(W.curve, W.L_div, Delta).surjective:
            failures.append(W.to_json())
    return SuiteResult(
        name="h0-lemma",
        passed=checked == target and not failures,
        checked=checked,
        detail={"draws": draws, "failures": failures[:2]},
    )


def d5_suite(rng: random.Random, quick: bool) -> SuiteResult:
    """Six II* fibres with L = 5*infinity: the property fails."""
    W = build_d5_example(genus_two_curve(PRIME))
    inv, _ = extract_invariants(W)
    verdict = torelli_decide(W, compute_mu=True)
    orders = sorted(set(discriminant_orders(W).values()))
    ok = (
        inv.d == 5
        and inv.s == 6
        and inv.j_class is JClass.CONSTANT_ZERO
        and inv.h0_Linv_Delta == 1
        and orders == [10]
        and verdict.outcome is Outcome.FAILS
        and verdict.rule_id == "R6"
        and (verdict.mu_corank or 0) >= 1
    )
    return SuiteResult(
        name="d5-example",
        passed=ok,
        checked=1,
        detail={"s": inv.s, "orders": orders, "rule": verdict.rule_id, "mu_corank": verdict.mu_corank},
    )


def twist_suite(rng: random.Random, quick: bool) -> SuiteResult:
    """Nonconstant j with a non-effective L of degree one: the property holds."""
    W = build_twist_example(five_point_curve(PRIME), rng)
    inv, _ = extract_invariants(W)
    verdict = torelli_verdict(inv)
    ok = (
        inv.d == 1
        and inv.h0_L == 0
        and inv.j_class is JClass.NONCONSTANT
        and verdict.outcome is Outcome.HOLDS
        and verdict.rule_id == "R3"
    )
    return SuiteResult(name="twist-example", passed=ok, checked=1, detail={"L": W.L_div.to_json(), "rule": verdict.rule_id})


def fiber_bundle_suite(rng: random.Random, quick: bool) -> SuiteResult:
    """A nontrivial 2-torsion bundle over an elliptic base fails with mu of rank 0 onto a line."""
    curve, x0 = bundle_base_curve(PRIME)
    T = two_torsion_divisor(curve, x0)
    verdict = fiber_bundle_check(curve, T)
    m = mu_map(curve, T, Divisor.zero(curve))
    ok = verdict.outcome is Outcome.FAILS and m.rank == 0 and m.rows == 1
    return SuiteResult(
        name="fiber-bundle", passed=ok, checked=1, detail={"f": curve.f.to_list(), "rank": m.rank, "target": m.rows}
    )


def oracle_suite(rng: random.Random, quick: bool) -> SuiteResult:
    """Rule verdicts agree with the rank of mu on random constant-j models."""
    target = 10 if quick else 50
    curves = [genus_two_curve(PRIME), five_point_curve(PRIME), genus_three_curve(PRIME)]
    outcomes: Dict[str, int] = {}
    checked, draws = 0, 0
    while checked < target and draws < 20 * target:
        draws += 1
        W = random_constant_j(rng, curves, (1, 2, 3, 4))
        if W is None:
            continue
        verdict = torelli_decide(W, compute_mu=True)
        checked += 1
        key = f"{verdict.rule_id}:{verdict.outcome.value}"
        outcomes[key] = outcomes.get(key, 0) + 1
    return SuiteResult(
        name="rule-oracle", passed=checked == target, checked=checked, detail={"draws": draws, "outcomes": outcomes}
    )


CLASSICS: List[Tuple[str, Dict[str, object], Outcome, str]] = [
    ("rational", dict(g=0, d=1, s=2, j_class=JClass.NONCONSTANT, h0_L=2), Outcome.FAILS, "R0"),
    ("k3", dict(g=0, d=2, s=3, j_class=JClass.CONSTANT_ZERO, h0_L=3), Outcome.HOLDS, "R1"),
    ("genus-one-other-j-d1", dict(g=1, d=1, s=2, j_class=JClass.CONSTANT_OTHER, h0_L=1), Outcome.FAILS, "R2a"),
    (
        "genus-one-other-j-d2",
        dict(g=1, d=2, s=4, j_class=JClass.CONSTANT_OTHER, h0_L=2, l2_is_delta=True),
        Outcome.FAILS,
        "R2a",
    ),
    ("effective-degree-one", dict(g=2, d=1, s=3, j_class=JClass.NONCONSTANT, h0_L=1), Outcome.CONJECTURALLY_FAILS, "R2"),
    ("nonconstant-j", dict(g=2, d=3, s=8, j_class=JClass.NONCONSTANT, h0_L=2), Outcome.HOLDS, "R3"),
    (
        "d5-counterexample",
        dict(g=1, d=5, s=6, j_class=JClass.CONSTANT_ZERO, h0_L=5, h0_Linv_Delta=1),
        Outcome.FAILS,
        "R6",
    ),
]


def classics_suite(rng: random.Random, quick: bool) -> SuiteResult:
    """The rule engine against the well-known cases."""
    wrong = {}
    for name, fields, outcome, rule_id in CLASSICS:
        verdict = torelli_verdict(SurfaceInvariants(**fields))
        if verdict.outcome is not outcome or verdict.rule_id != rule_id:
            wrong[name] = f"{verdict.rule_id}:{verdict.outcome.value}"
    return SuiteResult(name="classics", passed=not wrong, checked=len(CLASSICS), detail={"wrong": wrong})


SUITES: List[Callable[[random.Random, bool], SuiteResult]] = [
    riemann_roch_suite,
    duality_suite,
    vanishing_suite,
    h0_lemma_suite,
    d5_suite,
    twist_suite,
    fiber_bundle_suite,
    oracle_suite,
    classics_suite,
]


def run_suite(suite: Callable[[random.Random, bool], SuiteResult], seed: int, quick: bool) -> SuiteResult:
    start = time.perf_counter()
    try:
        result = suite(random.Random(seed), quick)
    except TorelliError as exc:
        logger.error(f"{suite.__name__} raised {exc.__class__.__name__}: {exc}")
        result = SuiteResult(
            name=suite.__name__.removesuffix("_suite").replace("_", "-"),
            passed=False,
            detail={"error": f"{exc.__class__.__name__}: {exc}"},
        )
    result.seconds = round(time.perf_counter() - start, 3)
    logger.info(f"suite {result.name}: {'pass' if result.passed else 'FAIL'} ({result.seconds}s)")
    return result


def run_selftest(quick: bool = False, seed: int = 0) -> SelftestReport:
    results = [run_suite(suite, seed, quick) for suite in SUITES]
    return SelftestReport(passed=all(r.passed for r in results), quick=quick, seed=seed, suites=results)
