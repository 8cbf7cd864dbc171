"""Exact computer algebra for quadruple covers of abelian surfaces."""

__version__ = "0.1.0"
