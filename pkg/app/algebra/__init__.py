"""Exact arithmetic over prime fields."""
