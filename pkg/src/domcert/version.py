"""Single source of truth for the domcert version."""

__version__ = "0.3.0"
