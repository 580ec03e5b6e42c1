"""Numerical laboratory for Caputo fractional operators and the integral
inequalities built on them for m-convex functions."""

__version__ = "0.1.0"
