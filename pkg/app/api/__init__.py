"""Command handlers and file schemas."""
