"""Exact computations in the motivic Hall algebra of graded stacks."""

__version__ = "0.1.0"
