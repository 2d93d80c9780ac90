"""Exact symmetric-function calculus over Q(q, t) with Macdonald operators."""

__version__ = "0.1.0"
