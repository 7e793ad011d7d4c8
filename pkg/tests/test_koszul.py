"""
Tests for multiplication maps and Koszul cohomology.
"""
import pytest

from app.cohomology.koszul import (
    duality_defect,
    kernel_side_corank,
    koszul_dim,
    mu_map,
    mu_pi,
    mult_map,
)
from app.core.exceptions import NotBasePointFree, NotReduced, SizeCapExceeded
from app.curves.curve import Place
from app.curves.divisor import Divisor, canonical_divisor
from app.torelli.constructions import build_d5_example
from app.torelli.invariants import extract_invariants


def test_mult_map_dimensions(genus_two):
    """Test H0(2 inf) x H0(2 inf) -> H0(4 inf)."""
    C = genus_two
    L = Divisor.at_infinity(C, 2)
    m = mult_map(C, L, L)
    assert (m.rows, m.cols) == (3, 4)
    assert m.rank == 3
    assert m.surjective
    assert m.block(1).shape == (3, 2)


def test_koszul_low_degrees(genus_two):
    """Test K_{0,0} = H0(F) and K_{0,1}(O, L) = 0."""
    C = genus_two
    L = Divisor.at_infinity(C, 5)
    O = Divisor.zero(C)
    assert koszul_dim(C, 0, 0, O, L).dim == 1
    assert koszul_dim(C, 0, 1, O, L).dim == 0


def test_koszul_slot_json(genus_two):
    """Test the slot report."""
    C = genus_two
    L = Divisor.at_infinity(C, 5)
    slot = koszul_dim(C, 1, 1, Divisor.zero(C), L)
    data = slot.to_json()
    assert data["p"] == 1 and data["q"] == 1
    assert data["dim"] == slot.kernel_dim - slot.incoming_rank
    assert data["L"] == [["inf", 5]]


def test_size_cap(genus_two):
    """Test that large differentials are refused."""
    C = genus_two
    with pytest.raises(SizeCapExceeded):
        koszul_dim(C, 1, 1, Divisor.zero(C), Divisor.at_infinity(C, 5), size_cap=1)


@pytest.mark.parametrize("p", [0, 1])
@pytest.mark.parametrize("q", [0, 1, 2])
def test_duality(genus_two, p, q):
    """Test that K_{p,q}(O, L) and K_{r-1-p,2-q}(K, L) have equal dimension."""
    C = genus_two
    assert duality_defect(C, p, q, Divisor.at_infinity(C, 5)) == 0


def test_twisted_duality(genus_two):
    """Test duality with a nontrivial twisting bundle."""
    C = genus_two
    F = Divisor.point(C, Place(0, 1))
    assert duality_defect(C, 0, 1, Divisor.at_infinity(C, 5), F) == 0


def test_duality_needs_base_point_free(genus_two):
    """Test that |inf| is rejected."""
    with pytest.raises(NotBasePointFree):
        duality_defect(genus_two, 0, 1, Divisor.at_infinity(genus_two, 1))


def test_vanishing_for_the_canonical_twist(genus_two, genus_three):
    """Test K_{d+g-3,1}(C, K, K + L) = 0 for small d."""
    for C, d in ((genus_two, 2), (genus_two, 3), (genus_three, 2)):
        K = canonical_divisor(C)
        L = Divisor.at_infinity(C, d)
        assert koszul_dim(C, d + C.genus - 3, 1, K, K + L).dim == 0


def test_mu_for_fibre_bundle_over_elliptic_curve(elliptic):
    """Test that mu is zero onto a line for a nontrivial 2-torsion class."""
    C = elliptic
    T = Divisor.point(C, Place(0, 0)) - Divisor.at_infinity(C, 1)
    m = mu_map(C, T, Divisor.zero(C))
    assert m.rank == 0
    assert m.rows == 1
    assert not mu_pi(C, T, Divisor.zero(C)).surjective


def test_mu_rejects_non_reduced_delta(genus_two):
    """Test that Delta must be reduced."""
    C = genus_two
    with pytest.raises(NotReduced):
        mu_pi(C, Divisor.at_infinity(C, 3), Divisor.point(C, Place(0, 1), 2))


def test_mu_corank_matches_kernel_side(genus_two):
    """Test the projection-formula chain on the degree-five example."""
    W = build_d5_example(genus_two)
    _, Delta = extract_invariants(W)
    report = mu_pi(genus_two, W.L_div, Delta)
    assert report.corank >= 1
    assert kernel_side_corank(genus_two, W.L_div, Delta) == report.corank


def test_multiplication_is_symmetric(genus_two, genus_three):
    """Test corank(H0(A) x H0(B)) = corank(H0(B) x H0(A))."""
    for C in (genus_two, genus_three):
        K = canonical_divisor(C)
        pairs = [
            (Divisor.at_infinity(C, 2), Divisor.at_infinity(C, 3)),
            (K + Divisor.point(C, Place(0, 0 if C.genus == 3 else 1)), Divisor.at_infinity(C, 2)),
            (K, K),
        ]
        for A, B in pairs:
            assert mult_map(C, A, B).corank == mult_map(C, B, A).corank


@pytest.mark.parametrize("p", [0, 1, 2])
@pytest.mark.parametrize("q", [1, 2])
def test_twisting_shifts_q(genus_two, p, q):
    """Test K_{p,q}(F, L) = K_{p,q-1}(F + L, L)."""
    C = genus_two
    L = Divisor.at_infinity(C, 5)
    for F in (Divisor.zero(C), Divisor.point(C, Place(0, 1))):
        assert koszul_dim(C, p, q, F, L).dim == koszul_dim(C, p, q - 1, F + L, L).dim
