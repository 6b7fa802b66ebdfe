"""Numerical positive-definiteness checks for tempered distributions on R."""
__version__ = "0.1.0"
