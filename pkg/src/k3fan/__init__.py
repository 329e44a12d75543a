"""Exact combinatorics of the fans in II(1,17), their integral affine spheres and Weierstrass normal forms."""

__version__ = "0.1.0"
