"""
Tests for hyperelliptic curves and function-field arithmetic.
"""
import random

import pytest

from app.algebra.exactlinalg import Poly
from app.core.exceptions import BadDegree, BadPrime, NotOnCurve, NotSquarefree, ZeroFunction
from app.curves.curve import INFINITY, FunctionRep, Place, make_curve
from app.curves.divisor import Divisor, divisor_of_function

P = 101


def test_make_curve_validation():
    """Test curve construction errors."""
    with pytest.raises(BadDegree):
        make_curve(P, [1, 0, 0, 0, 1])
    with pytest.raises(BadDegree):
        make_curve(P, [1, 0, 0, 2])
    with pytest.raises(NotSquarefree):
        make_curve(P, Poly.from_roots([1, 1, 2], P))
    with pytest.raises(BadPrime):
        make_curve(91, [1, 0, 0, 1])


def test_genus_and_weierstrass_places(genus_two, genus_three):
    """Test genus and the rational ramification points."""
    assert genus_two.genus == 2
    assert genus_three.genus == 3
    assert genus_two.f_splits
    assert len(genus_two.weierstrass_places()) == 6
    assert Place(100, 0) in genus_two.weierstrass_places()


def test_places_over(genus_two):
    """Test the fibre of x over split, ramified and inert abscissae."""
    assert genus_two.places_over(0) == (Place(0, 1), Place(0, 100))
    assert genus_two.places_over(100) == (Place(100, 0),)
    assert genus_two.is_split_abscissa(0)
    assert not genus_two.is_split_abscissa(100)
    with pytest.raises(NotOnCurve):
        genus_two.place(0, 2)


def test_rational_places_start_at_infinity(genus_two):
    """Test the ordering of the rational places."""
    places = genus_two.rational_places
    assert places[0] == INFINITY
    assert places[1:] == tuple(sorted(places[1:]))


def test_function_arithmetic(genus_two):
    """Test that y^2 reduces to f and inverses multiply to one."""
    C = genus_two
    y = FunctionRep.y(P)
    assert C.mul(y, y) == FunctionRep.from_polys(C.f)
    phi = C.function([1, 1], [2])
    assert C.mul(phi, C.inverse(phi)) == FunctionRep.constant(1, P)
    assert C.power(phi, -2) == C.inverse(C.mul(phi, phi))
    with pytest.raises(ZeroFunction):
        C.inverse(FunctionRep.zero(P))


def test_function_canonical_form():
    """Test that common factors cancel and the denominator is monic."""
    phi = FunctionRep.from_lists([2, 2], [], [4, 4], P)
    assert phi == FunctionRep.constant(51, P)
    assert phi.is_constant
    psi = FunctionRep.from_lists([1], [1], [3, 3], P)
    assert psi.den.is_monic
    assert psi.a.coeffs == (34,)


def test_valuations_at_infinity(genus_two):
    """Test pole orders of x and y at infinity."""
    C = genus_two
    assert C.valuation(C.x_function(), INFINITY) == -2
    assert C.valuation(FunctionRep.y(P), INFINITY) == -5


def test_valuations_at_affine_places(genus_two):
    """Test valuations at ordinary and Weierstrass places."""
    C = genus_two
    y_minus_one = C.function([P - 1], [1])
    assert C.valuation(y_minus_one, Place(0, 1)) == 5
    assert C.valuation(y_minus_one, Place(0, 100)) == 0
    assert C.valuation(C.function([1, 1]), Place(100, 0)) == 2
    assert C.valuation(FunctionRep.y(P), Place(100, 0)) == 1
    assert C.valuation(C.function([0, 1]), Place(0, 1)) == 1


def test_evaluate(genus_two):
    """Test evaluation at affine places."""
    C = genus_two
    phi = C.function([3], [1])
    assert C.evaluate(phi, Place(0, 1)) == 4
    assert C.evaluate(phi, INFINITY) is None
    assert C.evaluate(C.function([1], [], [0, 1]), Place(0, 1)) is None


def test_principal_divisors(genus_two):
    """Test divisors of x + 1, y and y - 1."""
    C = genus_two
    assert divisor_of_function(C, C.function([1, 1])) == (
        Divisor.point(C, Place(100, 0), 2) - Divisor.at_infinity(C, 2)
    )
    div_y = divisor_of_function(C, FunctionRep.y(P))
    assert div_y[INFINITY] == -5
    assert all(div_y[W] == 1 for W in C.weierstrass_places() if not W.is_infinity)
    div_y1 = divisor_of_function(C, C.function([P - 1], [1]))
    assert div_y1 == Divisor.point(C, Place(0, 1), 5) - Divisor.at_infinity(C, 5)


def random_function(C, rng) -> FunctionRep:
    """(a + b*y) / den with small random a, b and a monic den of degree <= 1."""
    while True:
        a = [rng.randrange(P) for _ in range(rng.randint(0, 3))]
        b = [rng.randrange(P) for _ in range(rng.randint(0, 2))]
        den = [rng.randrange(P), 1] if rng.random() < 0.5 else [1]
        phi = C.function(a, b, den)
        if not phi.is_zero:
            return phi


def test_valuation_is_additive(genus_two, genus_three):
    """Test v(phi * psi) = v(phi) + v(psi) at random places."""
    rng = random.Random(17)
    for _ in range(200):
        C = rng.choice((genus_two, genus_three))
        phi, psi = random_function(C, rng), random_function(C, rng)
        Q = rng.choice(C.rational_places)
        assert C.valuation(C.mul(phi, psi), Q) == C.valuation(phi, Q) + C.valuation(psi, Q)


def test_canonical_form_is_unique(genus_two):
    """Test that rescaled representations agree as values and as canonical forms."""
    C = genus_two
    rng = random.Random(5)
    places = [Q for Q in C.rational_places if not Q.is_infinity][: 4 * C.genus + 10]
    for _ in range(30):
        phi = random_function(C, rng)
        h = Poly.from_coeffs([rng.randrange(1, P), rng.randrange(P), 1], P)
        c = rng.randrange(1, P)
        scaled = FunctionRep.from_polys(phi.a * h, phi.b * h, (phi.den * h).scale(c))
        assert scaled == C.scale(phi, pow(c, -1, P))
        same = C.mul(C.div(phi, scaled), scaled)
        assert same == phi
        assert [C.evaluate(same, Q) for Q in places] == [C.evaluate(phi, Q) for Q in places]
