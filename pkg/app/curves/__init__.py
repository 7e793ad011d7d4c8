"""Hyperelliptic curves, divisors and Riemann-Roch spaces."""
