"""
dirac-scs: Dirac fermions coupled to a pairing field in 1+1 dimensions.
"""

from .constants import __version__

__all__ = ["__version__"]
