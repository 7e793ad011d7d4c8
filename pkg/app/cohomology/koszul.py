"""
Multiplication maps between Riemann-Roch spaces and Koszul cohomology.

For line bundles F and L on a curve C, K_{p,q}(C, F, L) is the middle
cohomology of

    wedge^{p+1} H0(L) (x) H0(F + (q-1)L)
        -> wedge^p H0(L) (x) H0(F + qL)
        -> wedge^{p-1} H0(L) (x) H0(F + (q+1)L)

with d(s_I (x) t) = sum_k (-1)^k s_{I minus i_k} (x) (s_{i_k} t), the
index k counted from 0. Wedge bases are strictly increasing index tuples
in lexicographic order.
"""
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, NamedTuple, Optional, Tuple

import numpy as np

from app.algebra.exactlinalg import matmul, rank
from app.core.config import settings
from app.core.exceptions import (
    InternalBoundError,
    NotBasePointFree,
    NotInSpace,
    NotReduced,
    SizeCapExceeded,
)
from app.core.logging_config import logger
from app.curves.curve import HyperellipticCurve
from app.curves.divisor import Divisor, canonical_divisor
from app.curves.rrspace import RRSpace, is_base_point_free, rr_basis


@dataclass(frozen=True, eq=False)
class MultMap:
    """
    The multiplication H0(D1) (x) H0(D2) -> H0(D1 + D2).

    Column i * dim(right) + j holds the coordinates of
    left.basis[i] * right.basis[j] in target.basis.
    """

    left: RRSpace
    right: RRSpace
    target: RRSpace
    matrix: np.ndarray
    rank: int

    @property
    def rows(self) -> int:
        return self.target.dim

    @property
    def cols(self) -> int:
        return self.left.dim * self.right.dim

    @property
    def corank(self) -> int:
        return self.target.dim - self.rank

    @property
    def surjective(self) -> bool:
        return self.rank == self.target.dim

    def block(self, i: int) -> np.ndarray:
        """Matrix of multiplication by left.basis[i] from H0(D2) to H0(D1 + D2)."""
        m = self.right.dim
        return self.matrix[:, i * m:(i + 1) * m]


def mult_map(curve: HyperellipticCurve, D1: Divisor, D2: Divisor) -> MultMap:
    """
    Build the multiplication map of sections.

    Raises:
        NonSplitSupport: If a Riemann-Roch space cannot be computed
        InternalBoundError: If a product fails to land in H0(D1 + D2)
    """
    left, right = rr_basis(curve, D1), rr_basis(curve, D2)
    target = rr_basis(curve, D1 + D2)
    matrix = np.zeros((target.dim, left.dim * right.dim), dtype=np.int64)
    for i, s in enumerate(left.basis):
        for j, t in enumerate(right.basis):
            try:
                matrix[:, i * right.dim + j] = target.coordinates(curve.mul(s, t))
            except NotInSpace as exc:
                raise InternalBoundError(f"product of sections of {D1} and {D2} left the target: {exc}") from exc
    r = rank(matrix, curve.p) if matrix.size else 0
    logger.debug(f"mult_map {D1} x {D2}: {matrix.shape[0]}x{matrix.shape[1]}, rank {r}")
    return MultMap(left, right, target, matrix, r)


@dataclass(frozen=True)
class KoszulSlot:
    """One Koszul cohomology group K_{p,q}(C, F, L) and the data behind its dimension."""

    p: int
    q: int
    F: Divisor
    L: Divisor
    dim: int
    kernel_dim: int
    incoming_rank: int

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "F": self.F.to_json(),
            "L": self.L.to_json(),
            "dim": self.dim,
            "kernel_dim": self.kernel_dim,
            "incoming_rank": self.incoming_rank,
        }


class _Differential(NamedTuple):
    matrix: np.ndarray
    source_dim: int
    target_dim: int


def _wedge_basis(n: int, k: int) -> List[Tuple[int, ...]]:
    if k < 0 or k > n:
        return []
    return list(combinations(range(n), k))


def _differential(curve: HyperellipticCurve, wedge: int, F: Divisor, L: Divisor, q: int, cap: int) -> _Differential:
    """The matrix of d_{wedge,q} in the lexicographic wedge basis."""
    sections_L = rr_basis(curve, L)
    n = sections_L.dim
    source = _wedge_basis(n, wedge)
    target = _wedge_basis(n, wedge - 1)
    src_space = rr_basis(curve, F + q * L)
    m_src = src_space.dim
    source_dim = len(source) * m_src
    if source_dim == 0:
        return _Differential(np.zeros((0, 0), dtype=np.int64), 0, 0)
    if wedge == 0:
        return _Differential(np.zeros((0, source_dim), dtype=np.int64), source_dim, 0)

    m_tgt = rr_basis(curve, F + (q + 1) * L).dim
    target_dim = len(target) * m_tgt
    if source_dim * target_dim > cap:
        raise SizeCapExceeded(
            f"d_{{{wedge},{q}}} would be {target_dim}x{source_dim}, above the cap of {cap} entries"
        )
    mult = mult_map(curve, L, F + q * L)
    blocks = [mult.block(k) for k in range(n)]
    row_of: Dict[Tuple[int, ...], int] = {J: r for r, J in enumerate(target)}
    D = np.zeros((target_dim, source_dim), dtype=np.int64)
    prime = curve.p
    for c, I in enumerate(source):
        for k, index in enumerate(I):
            J = I[:k] + I[k + 1:]
            r = row_of[J]
            sign = 1 if k % 2 == 0 else prime - 1
            D[r * m_tgt:(r + 1) * m_tgt, c * m_src:(c + 1) * m_src] = (sign * blocks[index]) % prime
    return _Differential(D, source_dim, target_dim)


def koszul_dim(
    curve: HyperellipticCurve,
    p: int,
    q: int,
    F: Divisor,
    L: Divisor,
    size_cap: Optional[int] = None,
) -> KoszulSlot:
    """
    Dimension of K_{p,q}(C, F, L).

    Raises:
        SizeCapExceeded: If a differential has more entries than the cap
        InternalBoundError: If consecutive differentials do not compose to zero
    """
    cap = settings.koszul_size_cap if size_cap is None else size_cap
    outgoing = _differential(curve, p, F, L, q, cap)
    if outgoing.source_dim == 0:
        return KoszulSlot(p, q, F, L, 0, 0, 0)
    incoming = _differential(curve, p + 1, F, L, q - 1, cap)

    prime = curve.p
    out_rank = rank(outgoing.matrix, prime) if outgoing.matrix.size else 0
    in_rank = rank(incoming.matrix, prime) if incoming.matrix.size else 0
    if outgoing.matrix.size and incoming.matrix.size:
        composite = matmul(outgoing.matrix, incoming.matrix, prime)
        if composite.any():
            raise InternalBoundError(f"Koszul differentials at ({p},{q}) do not compose to zero")

    kernel_dim = outgoing.source_dim - out_rank
    dim = kernel_dim - in_rank
    if dim < 0:
        raise InternalBoundError(f"negative Koszul dimension at ({p},{q})")
    logger.debug(f"K_{p},{q}(F={F}, L={L}) = {dim} (kernel {kernel_dim}, image {in_rank})")
    return KoszulSlot(p, q, F, L, dim, kernel_dim, in_rank)


def duality_defect(
    curve: HyperellipticCurve,
    p: int,
    q: int,
    L: Divisor,
    F: Optional[Divisor] = None,
) -> int:
    """
    |dim K_{p,q}(C, F, L) - dim K_{r-1-p,2-q}(C, K - F, L)| with r = h0(L) - 1.

    Zero whenever L is base point free; F defaults to the trivial bundle.

    Raises:
        NotBasePointFree: If |L| has a base point
    """
    if not is_base_point_free(curve, L):
        raise NotBasePointFree(f"|{L}| has base points")
    F = Divisor.zero(curve) if F is None else F
    r = rr_basis(curve, L).dim - 1
    left = koszul_dim(curve, p, q, F, L)
    right = koszul_dim(curve, r - 1 - p, 2 - q, canonical_divisor(curve) - F, L)
    return abs(left.dim - right.dim)


class MuReport(NamedTuple):
    surjective: bool
    corank: int
    rank: int


def _check_delta(Delta: Divisor) -> None:
    if not Delta.is_zero and not (Delta.is_effective and Delta.is_reduced):
        raise NotReduced(f"{Delta} is not a reduced effective divisor")


def mu_map(curve: HyperellipticCurve, L_div: Divisor, Delta: Divisor) -> MultMap:
    """H0(K + L) (x) H0(K - L + Delta) -> H0(2K + Delta)."""
    _check_delta(Delta)
    K = canonical_divisor(curve)
    return mult_map(curve, K + L_div, K - L_div + Delta)


def mu_pi(curve: HyperellipticCurve, L_div: Divisor, Delta: Divisor) -> MuReport:
    """
    Surjectivity and corank of the multiplication map mu_pi.

    Raises:
        NotReduced: If Delta is neither zero nor reduced effective
    """
    mu = mu_map(curve, L_div, Delta)
    logger.info(f"mu_pi for L = {L_div}, Delta = {Delta}: rank {mu.rank}, corank {mu.corank}")
    return MuReport(mu.surjective, mu.corank, mu.rank)


def kernel_side_corank(curve: HyperellipticCurve, L_div: Divisor, Delta: Divisor) -> int:
    """
    dim K_{d+g-3,1}(C, L - Delta, K + L).

    By duality against K_{0,1}(C, K - L + Delta, K + L) this equals the
    corank of mu_pi whenever K + L is base point free.
    """
    _check_delta(Delta)
    K = canonical_divisor(curve)
    p = L_div.degree + curve.genus - 3
    return koszul_dim(curve, p, 1, L_div - Delta, K + L_div).dim
