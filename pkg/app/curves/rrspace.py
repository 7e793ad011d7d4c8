"""
Riemann-Roch spaces L(D) = H^0(O_C(D)) on hyperelliptic curves.

Every element of L(D) is written (a(x) + b(x)*y) / c(x) with one fixed
denominator c determined by the affine part of D. Regularity at infinity
becomes exact degree bounds on a and b; regularity at the affine support
becomes linear conditions on their coefficients (Taylor coefficients at
Weierstrass places, Newton power series of y at ordinary places). The
kernel of that system is L(D).
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.algebra.exactlinalg import Poly, echelon_rows, rank_kernel
from app.algebra.series import TruncatedSeries
from app.core.config import settings
from app.core.exceptions import CurveMismatch, Inconclusive, InternalBoundError, NotInSpace
from app.core.logging_config import logger
from app.curves.curve import INFINITY, FunctionRep, HyperellipticCurve, Place
from app.curves.divisor import Divisor, canonical_divisor

Monomial = Tuple[str, int]


@dataclass(frozen=True, eq=False)
class RRSpace:
    """
    A basis of L(D), ordered by increasing pole order at infinity.

    `rows` holds the coefficient vectors of the basis over `monomials`
    (x^i for the a-part, x^j*y for the b-part, all over `denominator`),
    in reduced echelon form with respect to decreasing pole order.
    """

    divisor: Divisor
    basis: Tuple[FunctionRep, ...]
    denominator: Poly
    monomials: Tuple[Monomial, ...]
    rows: np.ndarray
    pivots: Tuple[int, ...]

    @property
    def curve(self) -> HyperellipticCurve:
        return self.divisor.curve

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _vector(self, phi: FunctionRep) -> np.ndarray:
        curve = self.curve
        psi = curve.mul_poly(phi, self.denominator)
        if psi.den.degree != 0:
            raise NotInSpace(f"{phi} has poles outside {self.divisor}")
        index = {mono: k for k, mono in enumerate(self.monomials)}
        vec = np.zeros(len(self.monomials), dtype=np.int64)
        for kind, part in (("a", psi.a), ("b", psi.b)):
            for i, coeff in enumerate(part.coeffs):
                if not coeff:
                    continue
                k = index.get((kind, i))
                if k is None:
                    raise NotInSpace(f"{phi} has too large a pole at infinity for {self.divisor}")
                vec[k] = coeff
        return vec

    def coordinates(self, phi: FunctionRep) -> np.ndarray:
        """
        Coordinates of phi in this basis.

        Raises:
            NotInSpace: If phi is not a section of the divisor
        """
        if phi.is_zero:
            return np.zeros(self.dim, dtype=np.int64)
        vec = self._vector(phi)
        p = self.curve.p
        lam = vec[list(self.pivots)] if self.pivots else np.zeros(0, dtype=np.int64)
        rebuilt = (lam @ self.rows) % p if self.dim else np.zeros_like(vec)
        if not np.array_equal(rebuilt, vec):
            raise NotInSpace(f"{phi} does not lie in L({self.divisor})")
        return lam

    def contains(self, phi: FunctionRep) -> bool:
        try:
            self.coordinates(phi)
            return True
        except NotInSpace:
            return False

    def combination(self, coeffs: Sequence[int]) -> FunctionRep:
        """The section sum(coeffs[i] * basis[i])."""
        p = self.curve.p
        if self.dim == 0:
            return FunctionRep.zero(p)
        vec = (np.asarray(coeffs, dtype=np.int64) % p) @ self.rows % p
        return _function_from_vector(vec, self.monomials, self.denominator)


def _pole_order(mono: Monomial, genus: int) -> int:
    kind, k = mono
    return 2 * k if kind == "a" else 2 * k + 2 * genus + 1


def _function_from_vector(vec: np.ndarray, monomials: Sequence[Monomial], den: Poly) -> FunctionRep:
    p = den.p
    a: Dict[int, int] = {}
    b: Dict[int, int] = {}
    for (kind, k), coeff in zip(monomials, vec.tolist()):
        if coeff:
            (a if kind == "a" else b)[k] = coeff
    to_poly = lambda d: Poly.from_coeffs([d.get(i, 0) for i in range(max(d) + 1)], p) if d else Poly.zero(p)
    return FunctionRep(to_poly(a), to_poly(b), den)


def _monomial_taylor(max_degree: int, x0: int, k: int, p: int) -> np.ndarray:
    """Row i holds the first k Taylor coefficients of x^i at x0."""
    table = np.zeros((max(max_degree, 0) + 1, k), dtype=np.int64)
    table[0, 0] = 1
    for i in range(1, max_degree + 1):
        table[i] = (x0 * table[i - 1]) % p
        table[i, 1:] = (table[i, 1:] + table[i - 1, :-1]) % p
    return table


def _empty_space(D: Divisor) -> RRSpace:
    p = D.curve.p
    return RRSpace(D, (), Poly.constant(1, p), (), np.zeros((0, 0), dtype=np.int64), ())


def _denominator(D: Divisor) -> Tuple[Poly, Dict[int, int]]:
    """c(x) = prod (x - x_i)^e_i clearing the allowed affine poles of D."""
    curve = D.curve
    exps: Dict[int, int] = {}
    c = Poly.constant(1, curve.p)
    for x0 in sorted({P.x for P in D.support if not P.is_infinity}):
        over = curve.places_over(x0)
        if len(over) == 1:
            e = (max(D[over[0]], 0) + 1) // 2
        else:
            e = max(D[over[0]], D[over[1]], 0)
        exps[x0] = e
        c = c * Poly.linear(x0, curve.p) ** e
    return c, exps


def _conditions(D: Divisor, exps: Dict[int, int], monomials: Sequence[Monomial]) -> np.ndarray:
    """Linear conditions v_P(a + b*y) >= v_P(c) - D(P) at the affine places over supp(D)."""
    curve = D.curve
    p = curve.p
    max_a = max((k for kind, k in monomials if kind == "a"), default=-1)
    max_b = max((k for kind, k in monomials if kind == "b"), default=-1)
    rows: List[np.ndarray] = []
    for x0, e in exps.items():
        over = curve.places_over(x0)
        if len(over) == 1:
            # Weierstrass place: v(a + b y) = min(2 ord a, 2 ord b + 1)
            k = 2 * e - D[over[0]]
            need_a, need_b = (k + 1) // 2, k // 2
            depth = max(need_a, need_b, 1)
            table = _monomial_taylor(max(max_a, max_b), x0, depth, p)
            for t in range(need_a):
                rows.append(np.array([table[i, t] if kind == "a" else 0 for kind, i in monomials], dtype=np.int64))
            for t in range(need_b):
                rows.append(np.array([table[j, t] if kind == "b" else 0 for kind, j in monomials], dtype=np.int64))
            continue
        for P in over:
            k = e - D[P]
            if k <= 0:
                continue
            table = _monomial_taylor(max(max_a, max_b), x0, k, p)
            y_series = TruncatedSeries.taylor(curve.f, x0, k).sqrt(P.y)
            b_cols = {}
            for kind, j in monomials:
                if kind == "b":
                    b_cols[j] = (TruncatedSeries(table[j], p, k) * y_series).coefficients()
            for t in range(k):
                rows.append(
                    np.array(
                        [table[i, t] if kind == "a" else b_cols[i][t] for kind, i in monomials],
                        dtype=np.int64,
                    )
                )
    if not rows:
        return np.zeros((0, len(monomials)), dtype=np.int64)
    return np.vstack(rows) % p


@lru_cache(maxsize=settings.rr_cache_size)
def _compute_space(D: Divisor) -> RRSpace:
    curve = D.curve
    g = curve.genus
    if D.degree < 0:
        return _empty_space(D)

    c, exps = _denominator(D)
    deg_c = int(c.degree)
    n_inf = D[INFINITY]
    max_a = (n_inf + 2 * deg_c) // 2
    max_b = (n_inf + 2 * deg_c - 2 * g - 1) // 2
    monomials = [("a", i) for i in range(max_a + 1)] + [("b", j) for j in range(max_b + 1)]
    monomials.sort(key=lambda mono: _pole_order(mono, g), reverse=True)
    if not monomials:
        return _empty_space(D)

    conditions = _conditions(D, exps, monomials)
    result = rank_kernel(conditions, curve.p)
    echelon = echelon_rows(result.kernel, curve.p)[::-1]
    pivots = tuple(int(np.flatnonzero(row)[0]) for row in echelon)
    basis = tuple(_function_from_vector(row, monomials, c) for row in echelon)
    logger.debug(
        f"L({D}): {len(monomials)} monomials, {conditions.shape[0]} conditions, dim {len(basis)}"
    )
    return RRSpace(D, basis, c, tuple(monomials), echelon, pivots)


def _check_riemann_roch(space: RRSpace) -> None:
    D = space.divisor
    g = D.curve.genus
    expected = D.degree - g + 1
    if D.degree >= 2 * g - 1 and space.dim != expected:
        raise InternalBoundError(f"h0({D}) = {space.dim}, expected {expected}")
    dual = _compute_space(canonical_divisor(D.curve) - D).dim
    if space.dim - dual != expected:
        raise InternalBoundError(f"h0({D}) - h1 = {space.dim} - {dual} != {expected}")


def rr_basis(curve: HyperellipticCurve, D: Divisor, verify: Optional[bool] = None) -> RRSpace:
    """
    Basis of L(D).

    Raises:
        CurveMismatch: If D lives on another curve
        InternalBoundError: If the computed dimension violates Riemann-Roch
    """
    if D.curve != curve:
        raise CurveMismatch("divisor is not on the given curve")
    space = _compute_space(D)
    if settings.verify_riemann_roch if verify is None else verify:
        _check_riemann_roch(space)
    return space


def h0(curve: HyperellipticCurve, D: Divisor) -> int:
    return rr_basis(curve, D).dim


def h1(curve: HyperellipticCurve, D: Divisor) -> int:
    """h1(D) = h0(K - D) by Serre duality."""
    return h0(curve, canonical_divisor(curve) - D)


def _is_base_point(space: RRSpace, P: Place) -> bool:
    """True when every section of the space vanishes at P (relative to D)."""
    curve = space.curve
    bound = 1 - space.divisor[P]
    return all(curve.valuation(phi, P) >= bound for phi in space.basis)


def base_points(curve: HyperellipticCurve, D: Divisor) -> List[Place]:
    """Rational base points of |D|."""
    space = rr_basis(curve, D)
    if space.dim == 0:
        return list(curve.rational_places)
    return [P for P in curve.rational_places if _is_base_point(space, P)]


def is_base_point_free(curve: HyperellipticCurve, D: Divisor) -> bool:
    """
    Whether |D| has no base points.

    Degree >= 2g is decided by degree alone; below that every rational
    place is tested, and a positive answer needs f to split completely.

    Raises:
        Inconclusive: If no rational base point exists but f does not split
    """
    space = rr_basis(curve, D)
    if space.dim == 0:
        return False
    if D.degree >= 2 * curve.genus:
        return True
    for P in curve.rational_places:
        if _is_base_point(space, P):
            logger.debug(f"{P} is a base point of {D}")
            return False
    if not curve.f_splits:
        logger.warning(f"base point freeness of {D} not certified: f does not split")
        raise Inconclusive(f"cannot certify {D} base point free over a non-split f")
    return True


def is_very_ample(curve: HyperellipticCurve, D: Divisor) -> bool:
    """
    Whether |D| separates points and tangents.

    Raises:
        Inconclusive: If the rational test passes but f does not split
    """
    if D.degree >= 2 * curve.genus + 1:
        return True
    if not is_base_point_free(curve, D):
        return False
    for P in curve.rational_places:
        sub = rr_basis(curve, D - Divisor.point(curve, P))
        for Q in curve.rational_places:
            if _is_base_point(sub, Q):
                logger.debug(f"{D} fails to separate {P} and {Q}")
                return False
    if not curve.f_splits:
        raise Inconclusive(f"cannot certify {D} very ample over a non-split f")
    return True


def principal_witness(curve: HyperellipticCurve, D: Divisor) -> Optional[FunctionRep]:
    """A function phi with div(phi) = -D when D is principal, else None."""
    if D.degree != 0:
        return None
    space = rr_basis(curve, D)
    if space.dim == 0:
        return None
    return space.basis[0]


def linearly_equivalent(curve: HyperellipticCurve, D1: Divisor, D2: Divisor) -> bool:
    return principal_witness(curve, D1 - D2) is not None
