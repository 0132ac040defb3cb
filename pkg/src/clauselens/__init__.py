"""Contract annotation engine and reading service."""

__version__ = "0.1.0"
