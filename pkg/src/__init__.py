"""Exact evaluation and verification engine for the graph invariant phi."""

__version__ = "0.1.0"
