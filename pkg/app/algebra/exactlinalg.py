"""
Exact arithmetic over prime fields F_p.

Scalars are plain Python ints reduced into [0, p). Univariate polynomials
are immutable `Poly` values with ascending coefficients; their arithmetic
delegates to sympy's dense GF(p) routines (which use descending lists).
Matrices are numpy int64 arrays reduced mod p.
"""
import math
from dataclasses import dataclass
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import isprime
from sympy.ntheory import sqrt_mod
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import (
    gf_add,
    gf_diff,
    gf_div,
    gf_edf_zassenhaus,
    gf_factor_sqf,
    gf_gcd,
    gf_mul,
    gf_neg,
    gf_pow,
    gf_pow_mod,
    gf_sqf_list,
    gf_sub,
)

from app.core.config import settings
from app.core.exceptions import BadPrime, ZeroPolynomial
from app.core.logging_config import logger

FieldElem = int
"""An element of F_p, stored as an int in [0, p)."""

NEG_INFINITY = -math.inf

# Below this bound products of up to 2**20 terms fit in int64.
_SMALL_PRIME = 2**20


def check_prime(p: int) -> int:
    """Return p if it is a prime greater than 3, else raise BadPrime."""
    if not isinstance(p, (int, np.integer)) or p <= 3 or not isprime(int(p)):
        raise BadPrime(f"characteristic must be a prime p > 3, got {p}")
    return int(p)


@dataclass(frozen=True)
class PrimeField:
    """The prime field F_p."""

    p: int

    def __post_init__(self):
        check_prime(self.p)

    def __call__(self, value: int) -> FieldElem:
        return int(value) % self.p

    def inv(self, value: int) -> FieldElem:
        value = int(value) % self.p
        if value == 0:
            raise ZeroDivisionError("0 has no inverse in F_p")
        return pow(value, -1, self.p)

    def is_square(self, value: int) -> bool:
        """True for 0 and for nonzero quadratic residues."""
        return self.sqrt(value) is not None

    def sqrt(self, value: int) -> Optional[FieldElem]:
        """The smaller square root of value, or None if value is a non-residue."""
        value = int(value) % self.p
        if value == 0:
            return 0
        root = sqrt_mod(value, self.p)
        if root is None:
            return None
        root = int(root)
        return min(root, self.p - root)


@dataclass(frozen=True)
class Poly:
    """
    Univariate polynomial over F_p with ascending coefficients.

    The coefficient tuple is canonical: reduced mod p with no trailing
    zeros, so the zero polynomial is the empty tuple and equality of
    values is equality of polynomials.
    """

    coeffs: Tuple[int, ...]
    p: int

    def __post_init__(self):
        cs = [int(c) % self.p for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    # Construction

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], p: int) -> "Poly":
        return cls(tuple(coeffs), p)

    @classmethod
    def zero(cls, p: int) -> "Poly":
        return cls((), p)

    @classmethod
    def constant(cls, value: int, p: int) -> "Poly":
        return cls((value,), p)

    @classmethod
    def x(cls, p: int) -> "Poly":
        return cls((0, 1), p)

    @classmethod
    def monomial(cls, degree: int, p: int, coeff: int = 1) -> "Poly":
        return cls((0,) * degree + (coeff,), p)

    @classmethod
    def linear(cls, root: int, p: int) -> "Poly":
        """The monic linear polynomial x - root."""
        return cls((-root, 1), p)

    @classmethod
    def from_roots(cls, roots: Iterable[int], p: int) -> "Poly":
        result = cls.constant(1, p)
        for r in roots:
            result = result * cls.linear(r, p)
        return result

    @classmethod
    def _from_dense(cls, dense: Sequence[int], p: int) -> "Poly":
        return cls(tuple(int(c) for c in reversed(dense)), p)

    def _dense(self) -> List[int]:
        return [ZZ(c) for c in reversed(self.coeffs)]

    # Basic properties

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> Union[int, float]:
        """Degree, with NEG_INFINITY for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INFINITY

    @property
    def lc(self) -> FieldElem:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def is_monic(self) -> bool:
        return self.lc == 1

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def coeff(self, i: int) -> FieldElem:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    # Arithmetic

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.p != self.p:
                raise ValueError(f"polynomials over F_{self.p} and F_{other.p} cannot be combined")
            return other
        if isinstance(other, (int, np.integer)):
            return Poly.constant(int(other), self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly._from_dense(gf_add(self._dense(), other._dense(), self.p, ZZ), self.p)

    __radd__ = __add__

    def __neg__(self):
        return Poly._from_dense(gf_neg(self._dense(), self.p, ZZ), self.p)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly._from_dense(gf_sub(self._dense(), other._dense(), self.p, ZZ), self.p)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero or other.is_zero:
            return Poly.zero(self.p)
        return Poly._from_dense(gf_mul(self._dense(), other._dense(), self.p, ZZ), self.p)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        q, r = gf_div(self._dense(), other._dense(), self.p, ZZ)
        return Poly._from_dense(q, self.p), Poly._from_dense(r, self.p)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        return Poly._from_dense(gf_pow(self._dense(), n, self.p, ZZ), self.p)

    def exact_div(self, other: "Poly") -> "Poly":
        """Quotient self / other, raising ValueError when other does not divide self."""
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ValueError(f"{other} does not divide {self}")
        return q

    def scale(self, c: int) -> "Poly":
        return Poly(tuple(c * a for a in self.coeffs), self.p)

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        return self.scale(pow(self.lc, -1, self.p))

    def gcd(self, other: "Poly") -> "Poly":
        """Monic gcd (zero when both inputs are zero)."""
        other = self._coerce(other)
        return Poly._from_dense(gf_gcd(self._dense(), other._dense(), self.p, ZZ), self.p)

    def deriv(self) -> "Poly":
        return Poly._from_dense(gf_diff(self._dense(), self.p, ZZ), self.p)

    def __call__(self, x0: int) -> FieldElem:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x0 + c) % self.p
        return acc

    def shift(self, x0: int) -> "Poly":
        """The polynomial t -> self(x0 + t)."""
        t_plus = Poly((x0, 1), self.p)
        result = Poly.zero(self.p)
        for c in reversed(self.coeffs):
            result = result * t_plus + c
        return result

    def taylor(self, x0: int, n: int) -> np.ndarray:
        """First n Taylor coefficients of self at x0, as an int64 array."""
        out = np.zeros(n, dtype=np.int64)
        shifted = self.shift(x0).coeffs[:n]
        out[: len(shifted)] = shifted
        return out

    def order_at(self, x0: int) -> Union[int, float]:
        """Multiplicity of x0 as a root (math.inf for the zero polynomial)."""
        if self.is_zero:
            return math.inf
        shifted = self.shift(x0).coeffs
        return next(i for i, c in enumerate(shifted) if c)

    def remove_root(self, x0: int, times: int) -> "Poly":
        """Divide out (x - x0)**times exactly."""
        if times <= 0 or self.is_zero:
            return self
        return self.exact_div(Poly.linear(x0, self.p) ** times)

    def to_list(self) -> List[int]:
        return list(self.coeffs)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "x" if i == 1 else f"x^{i}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms)

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)}, p={self.p})"


class RootReport(NamedTuple):
    """Rational roots with multiplicities, sorted by root."""

    roots: List[Tuple[FieldElem, int]]
    splits: bool


def _linear_part_roots(g: List[int], p: int, method: str) -> List[int]:
    """Rational roots of a monic squarefree dense polynomial g."""
    if len(g) <= 1:
        return []
    if method == "scan":
        coeffs = np.array([int(c) for c in g], dtype=object if p >= _SMALL_PRIME else np.int64)
        xs = np.arange(p, dtype=coeffs.dtype)
        acc = np.zeros(p, dtype=coeffs.dtype)
        for c in coeffs:
            acc = (acc * xs + c) % p
        return [int(x) for x in np.flatnonzero(acc == 0)]

    x = [ZZ.one, ZZ.zero]
    frobenius = gf_pow_mod(x, p, g, p, ZZ)
    h = gf_gcd(g, gf_sub(frobenius, x, p, ZZ), p, ZZ)
    if len(h) <= 1:
        return []
    return [int(-fac[1]) % p for fac in gf_edf_zassenhaus(h, 1, p, ZZ)]


def poly_roots(f: Poly, method: Optional[str] = None) -> RootReport:
    """
    Roots of f in F_p with multiplicities.

    The squarefree decomposition isolates each multiplicity; within a
    squarefree part the linear factors come from gcd(g, x^p - x) followed
    by equal-degree splitting, or from an exhaustive scan when requested
    and p is small enough.

    Raises:
        ZeroPolynomial: If f is zero
    """
    if f.is_zero:
        raise ZeroPolynomial("poly_roots of the zero polynomial")
    method = method or settings.root_method
    if method == "scan" and f.p > settings.root_scan_limit:
        logger.debug(f"p={f.p} exceeds root_scan_limit, using equal-degree splitting")
        method = "splitting"

    _, factors = gf_sqf_list(f._dense(), f.p, ZZ)
    roots = []
    for g, multiplicity in factors:
        roots.extend((r, multiplicity) for r in _linear_part_roots(g, f.p, method))
    roots.sort()
    splits = sum(m for _, m in roots) == f.degree
    return RootReport(roots, splits)


def irreducible_factors(f: Poly) -> List[Poly]:
    """Distinct monic irreducible factors of a nonzero polynomial."""
    if f.is_zero:
        raise ZeroPolynomial("factoring the zero polynomial")
    _, sqf = gf_sqf_list(f._dense(), f.p, ZZ)
    out = []
    for g, _ in sqf:
        _, facs = gf_factor_sqf(g, f.p, ZZ)
        out.extend(Poly._from_dense(fac, f.p) for fac in facs)
    return sorted(out, key=lambda q: (len(q.coeffs), q.coeffs))


# Dense matrices mod p


class KernelResult(NamedTuple):
    rank: int
    kernel: np.ndarray


def rref(M: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form over F_p and the pivot columns."""
    A = np.array(M, dtype=np.int64) % p
    rows, cols = A.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        candidates = np.flatnonzero(A[r:, c])
        if candidates.size == 0:
            continue
        piv = r + int(candidates[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        column = A[:, c].copy()
        column[r] = 0
        hits = np.flatnonzero(column)
        if hits.size:
            A[hits] = (A[hits] - np.outer(column[hits], A[r])) % p
        pivots.append(c)
        r += 1
    return A, pivots


def rank_kernel(M: np.ndarray, p: int) -> KernelResult:
    """
    Rank and right kernel of M over F_p.

    Kernel vectors are the rows of the returned array, one per free
    column: each is the unique kernel vector equal to the unit vector on
    the free columns. This basis is canonical for the kernel.
    """
    M = np.asarray(M, dtype=np.int64)
    rows, cols = M.shape
    if rows == 0:
        return KernelResult(0, np.eye(cols, dtype=np.int64))
    R, pivots = rref(M, p)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    kernel = np.zeros((len(free), cols), dtype=np.int64)
    for k, fc in enumerate(free):
        kernel[k, fc] = 1
        for i, pc in enumerate(pivots):
            kernel[k, pc] = (-R[i, fc]) % p
    return KernelResult(len(pivots), kernel)


def rank(M: np.ndarray, p: int) -> int:
    M = np.asarray(M, dtype=np.int64)
    if M.size == 0:
        return 0
    return len(rref(M, p)[1])


def matmul(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """Product mod p, switching to Python ints when int64 could overflow."""
    inner = A.shape[1] if A.ndim == 2 else 0
    if p < _SMALL_PRIME and inner < 2**20:
        return (A @ B) % p
    return ((A.astype(object) @ B.astype(object)) % p).astype(np.int64)


def echelon_rows(vectors: np.ndarray, p: int) -> np.ndarray:
    """Nonzero rows of the reduced echelon form of the given row vectors."""
    vectors = np.asarray(vectors, dtype=np.int64)
    if vectors.shape[0] == 0:
        return vectors
    R, pivots = rref(vectors, p)
    return R[: len(pivots)]
