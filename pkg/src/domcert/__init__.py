"""
domcert - discrete harmonic maps into CAT(-1) targets and domination certificates
"""

# Import version from internal module
from .version import __version__

# Define what symbols are exported from this package
__all__ = ["__version__"]
