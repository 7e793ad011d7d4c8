"""
Hyperelliptic curves y^2 = f(x) in odd-degree form over F_p.

The model has exactly one place at infinity. Functions are kept in the
canonical form (a(x) + b(x)*y) / den(x) with gcd(a, b, den) = 1 and den
monic, so two representations of the same function are identical.
"""
import math
from dataclasses import dataclass
from functools import cached_property, total_ordering
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from app.algebra.exactlinalg import PrimeField, Poly, check_prime, irreducible_factors, poly_roots
from app.core.exceptions import BadDegree, CurveMismatch, NotOnCurve, NotSquarefree, ZeroFunction
from app.core.logging_config import logger

INFINITE_VALUATION = math.inf


@total_ordering
@dataclass(frozen=True)
class Place:
    """A rational place: the point at infinity (x = y = None) or an affine point."""

    x: Optional[int] = None
    y: Optional[int] = None

    @classmethod
    def infinity(cls) -> "Place":
        return cls()

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    @property
    def is_weierstrass_affine(self) -> bool:
        return not self.is_infinity and self.y == 0

    @property
    def sort_key(self) -> Tuple[int, int, int]:
        if self.is_infinity:
            return (0, 0, 0)
        return (1, self.x, self.y)

    def __lt__(self, other: "Place") -> bool:
        return self.sort_key < other.sort_key

    def to_json(self) -> Union[str, List[int]]:
        return "inf" if self.is_infinity else [self.x, self.y]

    def __str__(self) -> str:
        return "inf" if self.is_infinity else f"({self.x}, {self.y})"


INFINITY = Place.infinity()


@dataclass(frozen=True)
class FunctionRep:
    """An element (a + b*y) / den of the function field, always in canonical form."""

    a: Poly
    b: Poly
    den: Poly

    def __post_init__(self):
        p = self.den.p
        if self.a.p != p or self.b.p != p:
            raise ValueError("FunctionRep parts over different fields")
        if self.den.is_zero:
            raise ZeroDivisionError("FunctionRep with zero denominator")
        a, b, den = self.a, self.b, self.den
        if a.is_zero and b.is_zero:
            a, b, den = a, b, Poly.constant(1, p)
        else:
            g = a.gcd(b).gcd(den)
            if not (g.is_constant):
                a, b, den = a // g, b // g, den // g
            inv = pow(den.lc, -1, p)
            a, b, den = a.scale(inv), b.scale(inv), den.scale(inv)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "den", den)

    @classmethod
    def from_polys(cls, a: Poly, b: Optional[Poly] = None, den: Optional[Poly] = None) -> "FunctionRep":
        p = a.p
        return cls(a, b if b is not None else Poly.zero(p), den if den is not None else Poly.constant(1, p))

    @classmethod
    def from_lists(cls, a: Sequence[int], b: Sequence[int], den: Sequence[int], p: int) -> "FunctionRep":
        return cls(Poly.from_coeffs(a, p), Poly.from_coeffs(b, p), Poly.from_coeffs(den, p))

    @classmethod
    def constant(cls, value: int, p: int) -> "FunctionRep":
        return cls.from_polys(Poly.constant(value, p))

    @classmethod
    def zero(cls, p: int) -> "FunctionRep":
        return cls.from_polys(Poly.zero(p))

    @classmethod
    def y(cls, p: int) -> "FunctionRep":
        return cls(Poly.zero(p), Poly.constant(1, p), Poly.constant(1, p))

    @property
    def p(self) -> int:
        return self.den.p

    @property
    def is_zero(self) -> bool:
        return self.a.is_zero and self.b.is_zero

    @property
    def is_constant(self) -> bool:
        return self.b.is_zero and self.a.is_constant and self.den.is_constant

    def to_json(self) -> dict:
        return {"a": self.a.to_list(), "b": self.b.to_list(), "den": self.den.to_list()}

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        if not self.a.is_zero:
            parts.append(str(self.a))
        if not self.b.is_zero:
            if self.b.coeffs == (1,):
                parts.append("y")
            elif self.b.is_constant:
                parts.append(f"{self.b}*y")
            else:
                parts.append(f"({self.b})*y")
        numerator = " + ".join(parts)
        if self.den.coeffs == (1,):
            return numerator
        return f"({numerator})/({self.den})"


@dataclass(frozen=True)
class HyperellipticCurve:
    """The curve y^2 = f(x) over F_p with f monic, squarefree, of odd degree 2g+1."""

    p: int
    f: Poly

    def __post_init__(self):
        check_prime(self.p)
        if self.f.p != self.p:
            raise CurveMismatch(f"f is defined over F_{self.f.p}, not F_{self.p}")
        degree = self.f.degree
        if degree < 3 or degree % 2 == 0:
            raise BadDegree(f"f must have odd degree >= 3, got degree {degree}")
        if not self.f.is_monic:
            raise BadDegree("f must be monic")
        if not self.f.gcd(self.f.deriv()).is_constant:
            raise NotSquarefree(f"f = {self.f} has a repeated factor over F_{self.p}")

    @property
    def genus(self) -> int:
        return (self.f.degree - 1) // 2

    @cached_property
    def field(self) -> PrimeField:
        return PrimeField(self.p)

    @cached_property
    def f_roots(self) -> Tuple[int, ...]:
        return tuple(r for r, _ in poly_roots(self.f).roots)

    @cached_property
    def f_splits(self) -> bool:
        return len(self.f_roots) == self.f.degree

    def to_json(self) -> dict:
        return {"p": self.p, "f": self.f.to_list()}

    # Places

    def place(self, x0: int, y0: int) -> Place:
        """The affine place (x0, y0), checked against the curve equation."""
        x0, y0 = x0 % self.p, y0 % self.p
        if (y0 * y0 - self.f(x0)) % self.p:
            raise NotOnCurve(f"({x0}, {y0}) is not on y^2 = {self.f}")
        return Place(x0, y0)

    def contains(self, P: Place) -> bool:
        if P.is_infinity:
            return True
        return 0 <= P.x < self.p and (P.y * P.y - self.f(P.x)) % self.p == 0

    def places_over(self, x0: int) -> Tuple[Place, ...]:
        """Rational places above x = x0 (empty when f(x0) is a non-residue)."""
        x0 %= self.p
        root = self.field.sqrt(self.f(x0))
        if root is None:
            return ()
        if root == 0:
            return (Place(x0, 0),)
        return (Place(x0, root), Place(x0, self.p - root))

    def is_split_abscissa(self, x0: int) -> bool:
        """True when x0 lies under two distinct rational places."""
        return len(self.places_over(x0)) == 2

    @cached_property
    def rational_places(self) -> Tuple[Place, ...]:
        places = [INFINITY]
        for x0 in range(self.p):
            places.extend(sorted(self.places_over(x0)))
        return tuple(places)

    def weierstrass_places(self) -> List[Place]:
        """Infinity and the affine places over rational roots of f."""
        return [INFINITY] + [Place(r, 0) for r in self.f_roots]

    def conjugate(self, P: Place) -> Place:
        """Image under the hyperelliptic involution y -> -y."""
        if P.is_infinity:
            return P
        return Place(P.x, (-P.y) % self.p)

    # Function field arithmetic

    def _check(self, *functions: FunctionRep):
        for phi in functions:
            if phi.p != self.p:
                raise CurveMismatch(f"function over F_{phi.p} used on a curve over F_{self.p}")

    def function(self, a: Sequence[int], b: Sequence[int] = (), den: Sequence[int] = (1,)) -> FunctionRep:
        return FunctionRep.from_lists(a, b, den, self.p)

    def x_function(self) -> FunctionRep:
        return FunctionRep.from_polys(Poly.x(self.p))

    def add(self, phi: FunctionRep, psi: FunctionRep) -> FunctionRep:
        self._check(phi, psi)
        return FunctionRep(
            phi.a * psi.den + psi.a * phi.den,
            phi.b * psi.den + psi.b * phi.den,
            phi.den * psi.den,
        )

    def neg(self, phi: FunctionRep) -> FunctionRep:
        return FunctionRep(-phi.a, -phi.b, phi.den)

    def sub(self, phi: FunctionRep, psi: FunctionRep) -> FunctionRep:
        return self.add(phi, self.neg(psi))

    def scale(self, phi: FunctionRep, c: int) -> FunctionRep:
        return FunctionRep(phi.a.scale(c), phi.b.scale(c), phi.den)

    def mul(self, phi: FunctionRep, psi: FunctionRep) -> FunctionRep:
        """(a + b y)(c + d y) = (ac + bd f) + (ad + bc) y."""
        self._check(phi, psi)
        return FunctionRep(
            phi.a * psi.a + phi.b * psi.b * self.f,
            phi.a * psi.b + phi.b * psi.a,
            phi.den * psi.den,
        )

    def mul_poly(self, phi: FunctionRep, c: Poly) -> FunctionRep:
        return FunctionRep(phi.a * c, phi.b * c, phi.den)

    def norm(self, phi: FunctionRep) -> Tuple[Poly, Poly]:
        """Numerator and denominator of the norm to F_p(x): (a^2 - b^2 f, den^2)."""
        return phi.a * phi.a - phi.b * phi.b * self.f, phi.den * phi.den

    def inverse(self, phi: FunctionRep) -> FunctionRep:
        self._check(phi)
        if phi.is_zero:
            raise ZeroFunction("the zero function has no inverse")
        n, _ = self.norm(phi)
        return FunctionRep(phi.a * phi.den, -(phi.b * phi.den), n)

    def div(self, phi: FunctionRep, psi: FunctionRep) -> FunctionRep:
        return self.mul(phi, self.inverse(psi))

    def power(self, phi: FunctionRep, n: int) -> FunctionRep:
        if n < 0:
            return self.power(self.inverse(phi), -n)
        result = FunctionRep.constant(1, self.p)
        base = phi
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def evaluate(self, phi: FunctionRep, P: Place) -> Optional[int]:
        """Value of phi at an affine place, or None when P is a pole or P is infinity."""
        self._check(phi)
        if P.is_infinity:
            return None
        d = phi.den(P.x)
        if d == 0:
            return None
        return (phi.a(P.x) + phi.b(P.x) * P.y) * pow(d, -1, self.p) % self.p

    # Valuations

    def valuation(self, phi: FunctionRep, P: Place) -> Union[int, float]:
        """
        Order of phi at the rational place P (INFINITE_VALUATION for phi = 0).

        Infinity and Weierstrass places: a(x) and b(x)*y have valuations
        of different parity, so v(a + b*y) is the smaller of the two.
        Ordinary places (x0, y0): after removing (x - x0)^m with
        m = min(ord a, ord b), the conjugate places satisfy
        min(v_P, v_P') = 0 and v_P + v_P' = ord_x0(a^2 - b^2 f).
        """
        self._check(phi)
        if phi.is_zero:
            return INFINITE_VALUATION
        g = self.genus
        if P.is_infinity:
            terms = []
            if not phi.a.is_zero:
                terms.append(-2 * phi.a.degree)
            if not phi.b.is_zero:
                terms.append(-2 * phi.b.degree - (2 * g + 1))
            return int(min(terms) + 2 * phi.den.degree)

        if not self.contains(P):
            raise NotOnCurve(f"{P} is not a place of y^2 = {self.f}")
        x0 = P.x
        if P.y == 0:
            v = min(2 * phi.a.order_at(x0), 2 * phi.b.order_at(x0) + 1)
            return int(v - 2 * phi.den.order_at(x0))

        den_order = phi.den.order_at(x0)
        if den_order == 0 and (phi.a(x0) + phi.b(x0) * P.y) % self.p:
            return 0
        m = int(min(phi.a.order_at(x0), phi.b.order_at(x0)))
        a1, b1 = phi.a.remove_root(x0, m), phi.b.remove_root(x0, m)
        if (a1(x0) + b1(x0) * P.y) % self.p:
            extra = 0
        else:
            extra = (a1 * a1 - b1 * b1 * self.f).order_at(x0)
        return int(m + extra - den_order)

    def nonrational_support(self, phi: FunctionRep) -> List[Poly]:
        """
        Irreducible factors pi of degree > 1 (or inert x - x0) with a zero or pole above them.

        Empty exactly when every zero and pole of phi is a rational place.
        """
        self._check(phi)
        if phi.is_zero:
            raise ZeroFunction("the zero function has no divisor")
        n, _ = self.norm(phi)
        candidates = irreducible_factors(n * phi.den)
        bad = []
        for pi in candidates:
            if pi.degree == 1:
                x0 = (-pi.coeffs[0]) % self.p
                if self.places_over(x0):
                    continue
            if self._local_order_above(phi, pi) != (0, 0):
                bad.append(pi)
        return bad

    def _local_order_above(self, phi: FunctionRep, pi: Poly) -> Tuple[int, int]:
        """Valuations of phi at the places above a non-split prime pi of F_p[x]."""

        def ord_pi(q: Poly) -> Union[int, float]:
            if q.is_zero:
                return math.inf
            k = 0
            while True:
                quo, rem = divmod(q, pi)
                if not rem.is_zero:
                    return k
                q, k = quo, k + 1

        c_ord = ord_pi(phi.den)
        if (self.f % pi).is_zero:
            v = min(2 * ord_pi(phi.a), 2 * ord_pi(phi.b) + 1) - 2 * c_ord
            return int(v), int(v)
        m = int(min(ord_pi(phi.a), ord_pi(phi.b)))
        pm = pi ** m
        a1, b1 = phi.a // pm, phi.b // pm
        n_ord = ord_pi(a1 * a1 - b1 * b1 * self.f)
        return int(m + n_ord - c_ord), int(m - c_ord)


def make_curve(p: int, f: Union[Poly, Iterable[int]]) -> HyperellipticCurve:
    """
    Build and validate the curve y^2 = f(x) over F_p.

    Raises:
        BadPrime: If p is not a prime greater than 3
        BadDegree: If f is not monic of odd degree >= 3
        NotSquarefree: If f has a repeated factor mod p
    """
    check_prime(p)
    poly = f if isinstance(f, Poly) else Poly.from_coeffs(f, p)
    curve = HyperellipticCurve(p, poly)
    logger.debug(f"Curve y^2 = {poly} over F_{p}, genus {curve.genus}")
    return curve
