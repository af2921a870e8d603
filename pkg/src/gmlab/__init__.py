"""Exact laboratory for algebras of generalized Monster type built from transposition systems."""

__version__ = "0.1.0"
