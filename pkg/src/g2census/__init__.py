"""Exact census of flat G2-instanton data on flat orbifolds."""

__version__ = "0.1.0"
