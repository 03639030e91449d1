"""
Knots: braids and invariants of simple minimal knots.

Builds the closed braid of the knot K(N,p,q,phase) swept out by a branch
point of a polynomial germ, computes Alexander and Jones polynomials exactly,
matches them against a knot catalog, and certifies every crossing with an
independent numeric oracle.
"""

__version__ = "1.0.0"
__description__ = "Braid words, invariants and identification of simple minimal knots"
__all__ = [
    "analyzers",
    "core",
    "data",
    "utils",
]
