"""File-format helpers."""
