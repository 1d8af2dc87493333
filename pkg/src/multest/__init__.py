"""Exact ideal calculus for multiplicity estimates on compactified groups."""

__version__ = "0.1.0"
