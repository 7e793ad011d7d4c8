"""
Divisors on a hyperelliptic curve.

A divisor is a finite formal sum of rational places with nonzero integer
coefficients. Line bundles (L, Delta, the canonical class) are always
carried as explicit divisors.
"""
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Mapping, Tuple, Union

from app.algebra.exactlinalg import poly_roots
from app.curves.curve import INFINITY, FunctionRep, HyperellipticCurve, Place
from app.core.exceptions import CurveMismatch, NonSplitSupport, NotEffective, NotOnCurve, ZeroFunction


@dataclass(frozen=True)
class Divisor:
    """Formal integer combination of rational places; hashable and canonical."""

    curve: HyperellipticCurve
    terms: Tuple[Tuple[Place, int], ...] = ()

    def __post_init__(self):
        merged: Dict[Place, int] = {}
        for place, mult in self.terms:
            if not self.curve.contains(place):
                raise NotOnCurve(f"{place} is not a place of y^2 = {self.curve.f}")
            merged[place] = merged.get(place, 0) + int(mult)
        canonical = tuple(sorted(((P, m) for P, m in merged.items() if m), key=lambda item: item[0].sort_key))
        object.__setattr__(self, "terms", canonical)

    @classmethod
    def from_map(cls, curve: HyperellipticCurve, coeffs: Mapping[Place, int]) -> "Divisor":
        return cls(curve, tuple(coeffs.items()))

    @classmethod
    def zero(cls, curve: HyperellipticCurve) -> "Divisor":
        return cls(curve)

    @classmethod
    def point(cls, curve: HyperellipticCurve, place: Place, mult: int = 1) -> "Divisor":
        return cls(curve, ((place, mult),))

    @classmethod
    def at_infinity(cls, curve: HyperellipticCurve, mult: int) -> "Divisor":
        return cls(curve, ((INFINITY, mult),))

    # Mapping-like access

    def __getitem__(self, place: Place) -> int:
        for P, m in self.terms:
            if P == place:
                return m
        return 0

    def __iter__(self) -> Iterator[Tuple[Place, int]]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def as_dict(self) -> Dict[Place, int]:
        return dict(self.terms)

    @property
    def support(self) -> List[Place]:
        return [P for P, _ in self.terms]

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_effective(self) -> bool:
        return all(m > 0 for _, m in self.terms)

    @property
    def is_reduced(self) -> bool:
        return all(m == 1 for _, m in self.terms)

    # Arithmetic

    def _same_curve(self, other: "Divisor"):
        if not isinstance(other, Divisor):
            raise TypeError(f"expected a Divisor, got {type(other).__name__}")
        if other.curve != self.curve:
            raise CurveMismatch("divisors on different curves")

    def __add__(self, other: "Divisor") -> "Divisor":
        self._same_curve(other)
        return Divisor(self.curve, self.terms + other.terms)

    def __neg__(self) -> "Divisor":
        return Divisor(self.curve, tuple((P, -m) for P, m in self.terms))

    def __sub__(self, other: "Divisor") -> "Divisor":
        self._same_curve(other)
        return self + (-other)

    def __mul__(self, k: int) -> "Divisor":
        return Divisor(self.curve, tuple((P, k * m) for P, m in self.terms))

    __rmul__ = __mul__

    def __le__(self, other: "Divisor") -> bool:
        """Partial order: other - self is effective."""
        return (other - self).is_effective

    def reduce_support(self) -> "Divisor":
        """Clamp positive coefficients to 1; negative coefficients raise NotEffective."""
        negative = [P for P, m in self.terms if m < 0]
        if negative:
            raise NotEffective(f"{self} has negative coefficients at {', '.join(map(str, negative))}")
        return Divisor(self.curve, tuple((P, 1) for P, _ in self.terms))

    def to_json(self) -> List[list]:
        return [[P.to_json(), m] for P, m in self.terms]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{m}*{P}" for P, m in self.terms)


def add(D1: Divisor, D2: Divisor) -> Divisor:
    return D1 + D2


def negate(D: Divisor) -> Divisor:
    return -D


def scale(D: Divisor, k: int) -> Divisor:
    return D * k


def reduce_support(D: Divisor) -> Divisor:
    return D.reduce_support()


def canonical_divisor(curve: HyperellipticCurve) -> Divisor:
    """(2g - 2) times the place at infinity."""
    return Divisor.at_infinity(curve, 2 * curve.genus - 2)


def divisor_of_function(curve: HyperellipticCurve, phi: FunctionRep) -> Divisor:
    """
    Principal divisor of phi.

    The affine support lies over roots of den * (a^2 - b^2 f); every place
    above them is visited and the result is checked to have degree 0.

    Raises:
        ZeroFunction: If phi is zero
        NonSplitSupport: If a zero or pole of phi is not a rational place
    """
    if phi.is_zero:
        raise ZeroFunction("the zero function has no divisor")
    bad = curve.nonrational_support(phi)
    if bad:
        raise NonSplitSupport(
            f"{phi} has zeros or poles above {', '.join(str(pi) for pi in bad)}, which are not rational"
        )
    norm_num, _ = curve.norm(phi)
    terms = [(INFINITY, curve.valuation(phi, INFINITY))]
    for x0, _ in poly_roots(norm_num * phi.den).roots:
        for place in curve.places_over(x0):
            terms.append((place, curve.valuation(phi, place)))
    D = Divisor(curve, tuple(terms))
    if D.degree != 0:
        raise NonSplitSupport(f"divisor of {phi} has degree {D.degree} on rational places")
    return D


def parse_place(curve: HyperellipticCurve, raw: Union[str, Iterable[int]]) -> Place:
    """Place from its serialized form: "inf" or [x0, y0]."""
    if isinstance(raw, str):
        if raw.lower() in ("inf", "infinity"):
            return INFINITY
        raise ValueError(f"unknown place {raw!r}")
    x0, y0 = raw
    return curve.place(int(x0), int(y0))


def parse_divisor(curve: HyperellipticCurve, raw: Iterable) -> Divisor:
    """Divisor from a list of [place, multiplicity] pairs."""
    return Divisor(curve, tuple((parse_place(curve, place), int(mult)) for place, mult in raw))
