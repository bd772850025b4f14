"""Minimal generators of F_2[x_1..x_n] over the mod-2 Steenrod algebra."""

__version__ = "0.1.0"
