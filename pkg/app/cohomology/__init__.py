"""Multiplication maps and Koszul cohomology on curves."""
