"""
Truncated power series over F_p.

A `TruncatedSeries` keeps the coefficients of t^0 .. t^(precision-1);
everything above is unknown rather than zero, so combining two series
keeps the smaller precision. Inverses and square roots are computed by
Newton iteration, doubling the correct precision at every step.
"""
from typing import Sequence

import numpy as np

from app.algebra.exactlinalg import Poly, _SMALL_PRIME


def _convolve(a: np.ndarray, b: np.ndarray, n: int, p: int) -> np.ndarray:
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    if p < _SMALL_PRIME:
        return np.convolve(a[:n], b[:n])[:n] % p
    out = [0] * n
    for i, ai in enumerate(a[:n].tolist()):
        if ai:
            for j, bj in enumerate(b[: n - i].tolist()):
                out[i + j] += ai * bj
    return np.array([c % p for c in out], dtype=np.int64)


class TruncatedSeries:
    """Power series in t over F_p, known up to t^(precision-1)."""

    def __init__(self, coeffs: Sequence[int], p: int, precision: int):
        self.p = p
        self.precision = precision
        c = np.zeros(precision, dtype=np.int64)
        given = np.asarray(coeffs, dtype=np.int64)[:precision] % p
        c[: len(given)] = given
        self.c = c

    @classmethod
    def from_poly(cls, poly: Poly, precision: int) -> "TruncatedSeries":
        return cls(poly.coeffs, poly.p, precision)

    @classmethod
    def taylor(cls, poly: Poly, x0: int, precision: int) -> "TruncatedSeries":
        """Expansion of poly in t = x - x0."""
        return cls(poly.taylor(x0, precision), poly.p, precision)

    def __getitem__(self, i: int) -> int:
        return int(self.c[i])

    def __len__(self) -> int:
        return self.precision

    def coefficients(self) -> np.ndarray:
        return self.c.copy()

    def truncate(self, precision: int) -> "TruncatedSeries":
        return TruncatedSeries(self.c, self.p, min(precision, self.precision))

    def _check(self, other: "TruncatedSeries"):
        if other.p != self.p:
            raise ValueError("series over different fields")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        n = min(self.precision, other.precision)
        return TruncatedSeries(self.c[:n] + other.c[:n], self.p, n)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        n = min(self.precision, other.precision)
        return TruncatedSeries(self.c[:n] - other.c[:n], self.p, n)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(-self.c, self.p, self.precision)

    def __mul__(self, other) -> "TruncatedSeries":
        if isinstance(other, (int, np.integer)):
            return TruncatedSeries(self.c * (int(other) % self.p), self.p, self.precision)
        self._check(other)
        n = min(self.precision, other.precision)
        return TruncatedSeries(_convolve(self.c, other.c, n, self.p), self.p, n)

    __rmul__ = __mul__

    def valuation(self) -> int:
        """Index of the first nonzero known coefficient, or precision if none is."""
        nz = np.flatnonzero(self.c)
        return int(nz[0]) if nz.size else self.precision

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; the constant term must be nonzero."""
        if self.precision == 0:
            return self
        c0 = int(self.c[0])
        if c0 == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        x = TruncatedSeries([pow(c0, -1, self.p)], self.p, 1)
        prec = 1
        while prec < self.precision:
            prec = min(2 * prec, self.precision)
            x = TruncatedSeries(x.c, self.p, prec)
            correction = -(self.truncate(prec) * x)
            correction.c[0] = (correction.c[0] + 2) % self.p
            x = x * correction
        return x

    def sqrt(self, root0: int) -> "TruncatedSeries":
        """
        Square root with constant term root0, where root0^2 is the constant term.

        Newton step y <- (y + s / y) / 2 on y^2 = s.
        """
        root0 %= self.p
        if root0 == 0 or (root0 * root0 - int(self.c[0])) % self.p:
            raise ValueError("root0 must be a nonzero square root of the constant term")
        half = pow(2, -1, self.p)
        y = TruncatedSeries([root0], self.p, 1)
        prec = 1
        while prec < self.precision:
            prec = min(2 * prec, self.precision)
            y = TruncatedSeries(y.c, self.p, prec)
            y = (y + self.truncate(prec) * y.inverse()) * half
        return y

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncatedSeries)
            and self.p == other.p
            and self.precision == other.precision
            and np.array_equal(self.c, other.c)
        )

    def __repr__(self) -> str:
        return f"TruncatedSeries({self.c.tolist()}, p={self.p}, precision={self.precision})"
