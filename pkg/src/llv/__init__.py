"""Exact LLV decompositions of hyper-Kaehler cohomology."""

__version__ = "0.1.0"
