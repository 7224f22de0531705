"""Exact Schubert calculus for types A, B, C, D.

Double Schubert polynomials via divided differences, multi-Schur
Pfaffian/determinant formulas for vexillary (signed) permutations, and
machine checks of the supporting operator identities.
"""

__version__ = "0.1.0"
