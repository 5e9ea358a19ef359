"""Numerics for the extrema of strictly stable processes."""

__version__ = "0.1.0"
