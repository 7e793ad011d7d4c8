"""Weierstrass data, surface invariants and the Torelli decision layer."""
