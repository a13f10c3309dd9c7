"""Exact-arithmetic toolkit for curve-configuration dual graphs, cyclic
quotient singularities, orbifold degree calculus, and the classification
rules for extremal germs with reducible central fiber."""

__version__ = "0.1.0"
