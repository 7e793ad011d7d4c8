"""Database models."""

