"""Exact continued-fraction algebra and the induced-transformation
machinery for contracted Farey expansions."""

__version__ = "0.1.0"
