"""
Constructors for explicit elliptic surfaces over hyperelliptic curves.

Every constructor returns minimal Weierstrass data whose discriminant
vanishes only at rational places. Randomized constructors take an
explicit `random.Random`, so a fixed seed reproduces the same data.
"""
import random
from itertools import permutations
from typing import List, Optional, Sequence, Tuple

from app.algebra.exactlinalg import Poly, poly_roots
from app.core.config import settings
from app.core.exceptions import (
    BadCubic,
    BadDegree,
    DegenerateDisc,
    NoTwistFound,
    NonSplitSupport,
    NotMinimal,
    NotSquarefree,
    NotTorsion,
    RetryExhausted,
)
from app.core.logging_config import logger
from app.curves.curve import INFINITY, FunctionRep, HyperellipticCurve, Place, make_curve
from app.curves.divisor import Divisor
from app.curves.rrspace import h0, principal_witness
from app.torelli.weierstrass import JClass, WeierstrassData, classify_j, discriminant, validate_weierstrass


# Base curves


def genus_two_curve(p: Optional[int] = None) -> HyperellipticCurve:
    """y^2 = x^5 + 1."""
    p = settings.prime if p is None else p
    return make_curve(p, [1, 0, 0, 0, 0, 1])


def five_point_curve(p: Optional[int] = None) -> HyperellipticCurve:
    """y^2 = x(x-1)(x-2)(x-3)(x-4), genus 2 with every Weierstrass point rational."""
    p = settings.prime if p is None else p
    return make_curve(p, Poly.from_roots(range(5), p))


def genus_three_curve(p: Optional[int] = None) -> HyperellipticCurve:
    """y^2 = x(x-1)...(x-6), genus 3 and fully split."""
    p = settings.prime if p is None else p
    return make_curve(p, Poly.from_roots(range(7), p))


def bundle_base_curve(p: Optional[int] = None) -> Tuple[HyperellipticCurve, int]:
    """
    The first smooth y^2 = x^3 + 3x + 5 + k (k >= 0) with a rational 2-torsion point.

    Returns the curve and the abscissa x0 of that point.
    """
    p = settings.prime if p is None else p
    for k in range(p):
        f = Poly.from_coeffs([5 + k, 3, 0, 1], p)
        roots = poly_roots(f).roots
        if not roots:
            continue
        try:
            curve = make_curve(p, f)
        except NotSquarefree:
            continue
        logger.debug(f"bundle base curve y^2 = {f} (k = {k})")
        return curve, min(r for r, _ in roots)
    raise NoTwistFound(f"no curve y^2 = x^3 + 3x + 5 + k over F_{p} has a rational 2-torsion point")


def split_abscissae(curve: HyperellipticCurve, exclude: Sequence[int] = ()) -> List[int]:
    """x-values under two distinct rational places, in increasing order."""
    skip = set(exclude)
    return [x0 for x0 in range(curve.p) if x0 not in skip and curve.is_split_abscissa(x0)]


# Two-torsion twists


def two_torsion_function(curve: HyperellipticCurve, wi: Place, wj: Place) -> FunctionRep:
    """A function u with div(u) = 2*wi - 2*wj for Weierstrass places wi, wj."""
    p = curve.p
    one = Poly.constant(1, p)
    num = one if wi.is_infinity else Poly.linear(wi.x, p)
    den = one if wj.is_infinity else Poly.linear(wj.x, p)
    return FunctionRep.from_polys(num, Poly.zero(p), den)


def find_twist(curve: HyperellipticCurve, base: Divisor) -> Tuple[Place, Place]:
    """
    First ordered pair (wi, wj) of Weierstrass places with h0(base + wi - wj) = 0.

    Raises:
        NoTwistFound: If no pair qualifies
    """
    places = sorted(curve.weierstrass_places())
    for wi, wj in permutations(places, 2):
        twisted = base + Divisor.point(curve, wi) - Divisor.point(curve, wj)
        if h0(curve, twisted) == 0:
            logger.debug(f"twist by {wi} - {wj}")
            return wi, wj
    raise NoTwistFound(f"no Weierstrass difference makes {base} non-effective; use a curve with split f")


def _scaled(curve: HyperellipticCurve, poly: Poly, u: Optional[FunctionRep], power: int) -> FunctionRep:
    """poly / u^power, or poly itself without a twist."""
    phi = FunctionRep.from_polys(poly)
    if u is None:
        return phi
    return curve.mul(phi, curve.power(u, -power))


# Examples


def _check_cubic(curve: HyperellipticCurve, a: Poly) -> List[int]:
    if a.degree != 3:
        raise BadCubic(f"a must be a cubic, got degree {a.degree}")
    report = poly_roots(a)
    roots = [r for r, m in report.roots if m == 1]
    if not report.splits or len(roots) != 3:
        raise BadCubic(f"{a} does not have three distinct rational roots")
    for r in roots:
        if not curve.is_split_abscissa(r):
            raise BadCubic(f"root {r} of {a} does not lift to two rational non-Weierstrass places")
    return roots


def build_d5_example(
    curve: HyperellipticCurve,
    a: Optional[Poly] = None,
    rng: Optional[random.Random] = None,
) -> WeierstrassData:
    """
    The surface y^2 = x^3 + a(x)^5 with L = 5*infinity.

    div(a) = P1 + ... + P6 - 6*infinity, so Delta = P1 + ... + P6 has six
    fibres with discriminant order 10 and Delta - L ~ infinity is effective.
    When a is omitted the first three split abscissae are used, or three
    random ones if rng is given.

    Raises:
        BadCubic: If a does not have three split, non-Weierstrass roots
    """
    p = curve.p
    if a is None:
        candidates = split_abscissae(curve)
        if len(candidates) < 3:
            raise BadCubic(f"fewer than three split abscissae on y^2 = {curve.f}")
        chosen = rng.sample(candidates, 3) if rng is not None else candidates[:3]
        a = Poly.from_roots(sorted(chosen), p)
    _check_cubic(curve, a)
    W = WeierstrassData(
        curve=curve,
        L_div=Divisor.at_infinity(curve, 5),
        A=FunctionRep.zero(p),
        B=FunctionRep.from_polys(a ** 5),
    )
    validate_weierstrass(W)
    logger.info(f"d = 5 example with a = {a}")
    return W


def _twist_attempt(
    curve: HyperellipticCurve, u: FunctionRep, L: Divisor, excluded: Sequence[int], rng: random.Random
) -> Optional[WeierstrassData]:
    p = curve.p
    pool = split_abscissae(curve, excluded)
    if len(pool) < 2:
        raise NoTwistFound("not enough split abscissae for the discriminant")
    r1, r2 = rng.sample(pool, 2)
    k = rng.randrange(1, p)
    c = rng.randrange(1, p)
    v = Poly.from_roots([r1, r2], p).scale(k)
    shifted = v + 4 * c ** 3
    report = poly_roots(shifted)
    roots = [r for r, m in report.roots if m == 1]
    if len(roots) != 2 or any(r in (r1, r2) or not curve.is_split_abscissa(r) for r in roots):
        return None
    A = _scaled(curve, Poly.constant(-3 * c * c, p), u, 2)
    B = _scaled(curve, v + 2 * c ** 3, u, 3)
    W = WeierstrassData(curve=curve, L_div=L, A=A, B=B)
    validate_weierstrass(W)
    return W


def build_twist_example(curve: HyperellipticCurve, rng: Optional[random.Random] = None) -> WeierstrassData:
    """
    Nonconstant-j data with d = 1 and h0(L) = 0, for L = infinity + wi - wj.

    With u = (x - e_i)/(x - e_j) one has 2L = 2*infinity + div(u), so
    A = -3c^2 / u^2 and B = (2c^3 + v) / u^3 are sections of 4L and 6L for
    constants c and quadratics v. Then 4A^3 + 27B^2 = 27 v (v + 4c^3) / u^6
    and the draw is repeated until both quadratics split over split abscissae.

    Raises:
        NoTwistFound: If the curve lacks two rational affine Weierstrass places
        RetryExhausted: If no admissible draw is found within the retry cap
    """
    rng = rng or random.Random(0)
    if len(curve.weierstrass_places()) < 3:
        raise NoTwistFound("need at least three rational Weierstrass places")
    wi, wj = find_twist(curve, Divisor.at_infinity(curve, 1))
    L = Divisor.at_infinity(curve, 1) + Divisor.point(curve, wi) - Divisor.point(curve, wj)
    u = two_torsion_function(curve, wi, wj)
    excluded = [w.x for w in (wi, wj) if not w.is_infinity]
    for attempt in range(settings.retry_cap):
        try:
            W = _twist_attempt(curve, u, L, excluded, rng)
        except (NonSplitSupport, NotMinimal) as exc:
            logger.debug(f"twist attempt {attempt} rejected: {exc}")
            continue
        if W is not None and classify_j(W) is JClass.NONCONSTANT:
            logger.info(f"twist example found after {attempt + 1} draws, L = {L}")
            return W
    logger.warning(f"no twist example within {settings.retry_cap} draws")
    raise RetryExhausted(f"no admissible twist example in {settings.retry_cap} draws")


def _random_factorization(
    rng: random.Random,
    split: Sequence[int],
    ramified: Sequence[int],
    degree: int,
    split_cap: int,
    ramified_cap: int,
    p: int,
) -> Poly:
    """A product of (x - r)^m of the given degree with bounded multiplicities."""
    pool = [(r, split_cap) for r in split] + [(r, ramified_cap) for r in ramified]
    rng.shuffle(pool)
    result = Poly.constant(rng.randrange(1, p), p)
    remaining = degree
    for r, cap in pool:
        if remaining == 0:
            break
        m = rng.randint(1, min(cap, remaining))
        result = result * Poly.linear(r, p) ** m
        remaining -= m
    if remaining:
        raise RetryExhausted(f"not enough rational roots for a polynomial of degree {degree}")
    return result


def build_constant_j_example(
    curve: HyperellipticCurve,
    d: int,
    kind: JClass,
    rng: random.Random,
    twist: bool = False,
) -> WeierstrassData:
    """
    Random minimal constant-j data with L = d*infinity, or d*infinity + wi - wj when twisted.

    ConstantZero: A = 0 and B a product of linear factors of degree 3d-2 .. 3d,
    ConstantOther: A = lam G^2 and B = mu G^3 for squarefree G of degree d,
    Constant1728: B = 0 and A a product of degree 2d-1 .. 2d.
    Multiplicities stay below the non-minimal thresholds at every place.

    Raises:
        BadDegree: If d < 1
        RetryExhausted: If the curve has too few rational points for the degree
    """
    if d < 1:
        raise BadDegree(f"constant-j examples need d >= 1, got {d}")
    if not kind.is_constant:
        raise ValueError("kind must be a constant j-class")
    p = curve.p
    L = Divisor.at_infinity(curve, d)
    u: Optional[FunctionRep] = None
    excluded: List[int] = []
    if twist:
        affine = sorted(P for P in curve.weierstrass_places() if not P.is_infinity)
        if len(affine) < 2:
            raise NoTwistFound("a twist needs two rational affine Weierstrass places")
        wi, wj = affine[0], affine[1]
        L = L + Divisor.point(curve, wi) - Divisor.point(curve, wj)
        u = two_torsion_function(curve, wi, wj)
        excluded = [wi.x, wj.x]
    split = split_abscissae(curve, excluded)
    ramified = [r for r in curve.f_roots if r not in excluded]
    zero = FunctionRep.zero(p)

    if kind is JClass.CONSTANT_ZERO:
        degree = rng.choice([n for n in (3 * d - 2, 3 * d - 1, 3 * d) if n >= 1])
        B = _random_factorization(rng, split, ramified, degree, 5, 2, p)
        A_fn, B_fn = zero, _scaled(curve, B, u, 3)
    elif kind is JClass.CONSTANT_1728:
        degree = rng.choice([2 * d - 1, 2 * d])
        A = _random_factorization(rng, split, ramified, degree, 3, 1, p)
        A_fn, B_fn = _scaled(curve, A, u, 2), zero
    else:
        if len(split) < d:
            raise RetryExhausted(f"fewer than {d} split abscissae")
        G = Poly.from_roots(rng.sample(split, d), p)
        while True:
            lam, mu = rng.randrange(1, p), rng.randrange(1, p)
            if (4 * lam ** 3 + 27 * mu ** 2) % p:
                break
        A_fn = _scaled(curve, (G ** 2).scale(lam), u, 2)
        B_fn = _scaled(curve, (G ** 3).scale(mu), u, 3)

    W = WeierstrassData(curve=curve, L_div=L, A=A_fn, B=B_fn)
    validate_weierstrass(W)
    logger.debug(f"constant-j example {kind.value}, d = {d}, twist = {twist}")
    return W


def torsion_order(curve: HyperellipticCurve, T: Divisor, limit: int = 6) -> Optional[int]:
    """Least k in 1..limit with kT principal, or None."""
    for k in range(1, limit + 1):
        if h0(curve, k * T) > 0:
            return k
    return None


def build_bundle_example(
    curve: HyperellipticCurve,
    T: Divisor,
    rng: Optional[random.Random] = None,
    h1_parity: Optional[str] = None,
) -> WeierstrassData:
    """
    Fibre-bundle data (d = 0, no singular fibres) with L = T a torsion class.

    A is a multiple of the function with divisor -4T when 4T is principal,
    and B of the one with divisor -6T when 6T is principal.

    The scalars are redrawn until 4A^3 + 27B^2 is not identically zero.

    Raises:
        NotTorsion: If neither 4T nor 6T is principal
        DegenerateDisc: If no drawn scalars give a nonzero discriminant
    """
    rng = rng or random.Random(0)
    p = curve.p
    if T.degree != 0:
        raise BadDegree(f"a fibre bundle needs deg T = 0, got {T.degree}")
    witness_A = principal_witness(curve, 4 * T)
    witness_B = principal_witness(curve, 6 * T)
    if witness_A is None and witness_B is None:
        raise NotTorsion(f"{T} has no order dividing 4 or 6")
    for _ in range(settings.retry_cap):
        a = rng.randrange(1, p) if witness_A is not None else 0
        b = rng.randrange(1, p) if witness_B is not None else 0
        A = curve.scale(witness_A, a) if witness_A is not None else FunctionRep.zero(p)
        B = curve.scale(witness_B, b) if witness_B is not None else FunctionRep.zero(p)
        W = WeierstrassData(curve=curve, L_div=T, A=A, B=B, h1_parity=h1_parity)
        if discriminant(W).is_zero:
            logger.debug(f"degenerate bundle scalars a = {a}, b = {b}")
            continue
        validate_weierstrass(W)
        return W
    raise DegenerateDisc(f"every drawn scalar pair gives 4A^3 + 27B^2 = 0 for T = {T}")


def two_torsion_divisor(curve: HyperellipticCurve, x0: int) -> Divisor:
    """T = (x0, 0) - infinity."""
    return Divisor.point(curve, curve.place(x0, 0)) - Divisor.point(curve, INFINITY)

