"""Exact-arithmetic calculus of super Lie algebra extensions.

Finite-dimensional super Lie algebras are given by structure constants
over exact rationals.  The library implements graded cochains with the
full Koszul sign bookkeeping, the covariant exterior derivative and its
curvature identity, extraction and reconstruction of extensions from
connection/curvature data, equivalence and splitting witnesses, graded
Chevalley cohomology, and the cohomological obstruction to (and
classification of) extensions inducing a prescribed outer action.
"""

__version__ = "0.1.0"
