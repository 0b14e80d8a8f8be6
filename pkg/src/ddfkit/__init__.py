"""Disjoint difference families, frequency hopping sequences and their
LFSR and finite-geometry constructions."""
from .kernels import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
