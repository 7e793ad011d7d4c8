"""
Tests for divisor arithmetic and serialization.
"""
import random

import pytest

from app.core.exceptions import CurveMismatch, NonSplitSupport, NotEffective, NotOnCurve, ZeroFunction
from app.curves.curve import INFINITY, FunctionRep, Place
from app.curves.divisor import (
    Divisor,
    canonical_divisor,
    divisor_of_function,
    parse_divisor,
    parse_place,
    reduce_support,
)

P = 101


def test_divisor_is_canonical(genus_two):
    """Test merging, zero removal and ordering of terms."""
    C = genus_two
    D = Divisor(C, ((Place(0, 1), 2), (INFINITY, 1), (Place(0, 1), -2)))
    assert D == Divisor.at_infinity(C, 1)
    assert len(Divisor.zero(C)) == 0


def test_arithmetic_and_degree(genus_two):
    """Test sums, negation and scaling."""
    C = genus_two
    A = Divisor.point(C, Place(0, 1)) + Divisor.at_infinity(C, 2)
    assert A.degree == 3
    assert (A - A).is_zero
    assert (3 * A).degree == 9
    assert (-A)[INFINITY] == -2
    assert Divisor.zero(C) <= A
    assert not A <= Divisor.zero(C)


def test_reduce_support(genus_two):
    """Test clamping to a reduced divisor."""
    C = genus_two
    D = Divisor.point(C, Place(0, 1), 3) + Divisor.at_infinity(C, 1)
    reduced = reduce_support(D)
    assert reduced.is_reduced
    assert reduced.degree == 2
    with pytest.raises(NotEffective):
        reduce_support(-D)


def test_canonical_divisor(genus_two, genus_three, elliptic):
    """Test K = (2g - 2) infinity."""
    assert canonical_divisor(genus_two) == Divisor.at_infinity(genus_two, 2)
    assert canonical_divisor(genus_three).degree == 4
    assert canonical_divisor(elliptic).is_zero


def test_foreign_places_and_curves(genus_two, genus_three):
    """Test that divisors stay on their curve."""
    with pytest.raises(NotOnCurve):
        Divisor.point(genus_two, Place(0, 2))
    with pytest.raises(CurveMismatch):
        Divisor.at_infinity(genus_two, 1) + Divisor.at_infinity(genus_three, 1)


def test_divisor_of_zero_function(genus_two):
    """Test that the zero function has no divisor."""
    with pytest.raises(ZeroFunction):
        divisor_of_function(genus_two, FunctionRep.zero(P))


def test_non_split_support(genus_two):
    """Test a function vanishing over an irreducible quadratic."""
    # x^2 + 2 is irreducible over F_101
    with pytest.raises(NonSplitSupport):
        divisor_of_function(genus_two, genus_two.function([2, 0, 1]))


def test_principal_divisor_with_affine_poles(genus_three):
    """Test div(y / (x (x - 1))) on a genus-three curve."""
    C = genus_three
    D = divisor_of_function(C, C.function([], [1], [0, P - 1, 1]))
    assert D.degree == 0
    assert D[INFINITY] == -3
    assert D[Place(0, 0)] == -1 and D[Place(1, 0)] == -1
    assert all(D[Place(r, 0)] == 1 for r in range(2, 7))


def test_serialization(genus_two):
    """Test the [place, multiplicity] wire format."""
    C = genus_two
    D = Divisor.point(C, Place(0, 100), -1) + Divisor.at_infinity(C, 5)
    raw = D.to_json()
    assert raw == [["inf", 5], [[0, 100], -1]]
    assert parse_divisor(C, raw) == D
    assert parse_place(C, "infinity") == INFINITY
    with pytest.raises(ValueError):
        parse_place(C, "origin")


def random_split_function(C, rng):
    """A product of powers of x - r over split and ramified abscissae, y and y - 1."""
    abscissae = [r for r in range(P) if C.is_split_abscissa(r)][:8] + list(C.f_roots)
    phi = FunctionRep.constant(rng.randrange(1, P), P)
    for r in rng.sample(abscissae, 3):
        phi = C.mul(phi, C.power(C.function([-r, 1]), rng.randint(-2, 2)))
    phi = C.mul(phi, C.power(FunctionRep.y(P), rng.randint(-1, 1)))
    return C.mul(phi, C.power(C.function([P - 1], [1]), rng.randint(0, 1)))


def test_divisor_of_product_is_additive(genus_two):
    """Test div(phi * psi) = div(phi) + div(psi) and deg div(phi) = 0."""
    C = genus_two
    rng = random.Random(3)
    for _ in range(40):
        phi, psi = random_split_function(C, rng), random_split_function(C, rng)
        div_phi = divisor_of_function(C, phi)
        assert div_phi.degree == 0
        assert divisor_of_function(C, C.mul(phi, psi)) == div_phi + divisor_of_function(C, psi)
