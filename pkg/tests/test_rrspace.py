"""
Tests for Riemann-Roch spaces.
"""
import random

import pytest

from app.curves.curve import INFINITY, FunctionRep, Place
from app.curves.divisor import Divisor, canonical_divisor, divisor_of_function
from app.curves.rrspace import (
    base_points,
    h0,
    h1,
    is_base_point_free,
    is_very_ample,
    linearly_equivalent,
    principal_witness,
    rr_basis,
)
from app.services.selftest import random_divisor

P = 101


def test_trivial_divisor(genus_two):
    """Test L(0) = constants."""
    space = rr_basis(genus_two, Divisor.zero(genus_two))
    assert space.dim == 1
    assert [str(phi) for phi in space.basis] == ["1"]


@pytest.mark.parametrize("n, expected", [(-1, 0), (0, 1), (1, 1), (2, 2), (3, 2), (4, 3), (5, 4), (8, 7)])
def test_multiples_of_infinity(genus_two, n, expected):
    """Test h0(n infinity) on a genus-two curve."""
    assert h0(genus_two, Divisor.at_infinity(genus_two, n)) == expected


def test_basis_in_pole_order(genus_two):
    """Test that L(5 infinity) is spanned by 1, x, x^2, y in that order."""
    C = genus_two
    space = rr_basis(C, Divisor.at_infinity(C, 5))
    orders = [C.valuation(phi, INFINITY) for phi in space.basis]
    assert orders == [0, -2, -4, -5]


def test_canonical_class(genus_two, genus_three):
    """Test h0(K) = g and h1(K) = 1."""
    for C in (genus_two, genus_three):
        K = canonical_divisor(C)
        assert h0(C, K) == C.genus
        assert h1(C, K) == 1


def test_affine_poles(genus_two):
    """Test spaces with poles at ordinary and Weierstrass places."""
    C = genus_two
    W = Place(100, 0)
    assert h0(C, Divisor.point(C, W, 2)) == 2
    Q = Place(0, 1)
    D = Divisor.point(C, Q, 3)
    space = rr_basis(C, D)
    assert space.dim == 2
    for phi in space.basis:
        assert C.valuation(phi, Q) >= -3


def test_riemann_roch_on_random_divisors(genus_two, genus_three):
    """Test h0 - h1 = deg - g + 1."""
    rng = random.Random(7)
    for C in (genus_two, genus_three):
        g = C.genus
        for _ in range(15):
            D = random_divisor(C, rng.randint(-3, 3 * g + 2), rng)
            assert h0(C, D) - h1(C, D) == D.degree - g + 1
            if D.degree >= 2 * g - 1:
                assert h0(C, D) == D.degree - g + 1


def test_sections_respect_the_divisor(genus_three):
    """Test that every basis element satisfies div(phi) + D >= 0."""
    C = genus_three
    D = Divisor.point(C, Place(0, 0), 1) + Divisor.point(C, Place(6, 0), 3) + Divisor.at_infinity(C, 2)
    space = rr_basis(C, D)
    assert space.dim == D.degree - C.genus + 1
    for phi in space.basis:
        for Q in D.support:
            assert C.valuation(phi, Q) >= -D[Q]


def test_coordinates_and_membership(genus_two):
    """Test coordinates, containment and linear combinations."""
    C = genus_two
    space = rr_basis(C, Divisor.at_infinity(C, 5))
    phi = C.function([1, 2, 3], [4])
    coords = space.coordinates(phi)
    assert space.combination(coords) == phi
    assert space.contains(FunctionRep.y(P))
    assert not space.contains(C.function([0, 0, 0, 1]))
    assert not space.contains(C.function([1], [], [0, 1]))


def test_principal_witness(genus_two):
    """Test that the witness has divisor -D."""
    C = genus_two
    W = Place(100, 0)
    D = Divisor.at_infinity(C, 2) - Divisor.point(C, W, 2)
    phi = principal_witness(C, D)
    assert phi is not None
    assert divisor_of_function(C, phi) == -D
    assert principal_witness(C, Divisor.point(C, Place(0, 1)) - Divisor.at_infinity(C, 1)) is None


def test_linear_equivalence(genus_two):
    """Test the hyperelliptic class and non-equivalent points."""
    C = genus_two
    pair = Divisor.point(C, Place(0, 1)) + Divisor.point(C, Place(0, 100))
    assert linearly_equivalent(C, pair, Divisor.at_infinity(C, 2))
    assert linearly_equivalent(C, Divisor.point(C, Place(100, 0), 2), Divisor.at_infinity(C, 2))
    assert not linearly_equivalent(C, Divisor.point(C, Place(0, 1)), Divisor.at_infinity(C, 1))


def test_base_points(genus_two):
    """Test base points of |infinity| and of the canonical system."""
    C = genus_two
    assert base_points(C, Divisor.at_infinity(C, 1)) == [INFINITY]
    assert is_base_point_free(C, canonical_divisor(C))
    assert not is_base_point_free(C, Divisor.at_infinity(C, 1))


def test_very_ample(genus_two):
    """Test that K is not very ample on a hyperelliptic curve but 5 infinity is."""
    C = genus_two
    assert not is_very_ample(C, canonical_divisor(C))
    assert is_very_ample(C, Divisor.at_infinity(C, 5))


def test_monotone_in_the_divisor(genus_two, genus_three):
    """Test h0(D) <= h0(D + P) <= h0(D) + 1."""
    rng = random.Random(11)
    for C in (genus_two, genus_three):
        for _ in range(30):
            D = random_divisor(C, rng.randint(-2, 2 * C.genus + 1), rng)
            Q = rng.choice(C.rational_places)
            before, after = h0(C, D), h0(C, D + Divisor.point(C, Q))
            assert before <= after <= before + 1


def test_serre_symmetry(genus_two, genus_three):
    """Test h1(K - D) = h0(D)."""
    rng = random.Random(13)
    for C in (genus_two, genus_three):
        K = canonical_divisor(C)
        for _ in range(30):
            D = random_divisor(C, rng.randint(-2, 2 * C.genus + 1), rng)
            assert h1(C, K - D) == h0(C, D)


def test_ordinary_point_minus_infinity(genus_two):
    """Test h0(P - inf) = 0 and h1(P - inf) = 1 at a non-Weierstrass place."""
    C = genus_two
    D = Divisor.point(C, Place(0, 1)) - Divisor.at_infinity(C, 1)
    assert h0(C, D) == 0
    assert h1(C, D) == 1


def test_five_point_curve_weierstrass_places(split_genus_two):
    """Test that y^2 = x(x-1)(x-2)(x-3)(x-4) has all six Weierstrass places rational."""
    places = split_genus_two.weierstrass_places()
    assert len(places) == 6
    assert INFINITY in places
    assert {Q.x for Q in places if not Q.is_infinity} == set(range(5))
