"""
domcert commands package
"""

__all__ = [
    "certify",
    "config",
    "desing",
    "fixture",
    "pipeline",
    "rigidity",
    "schema",
    "solve",
]

from . import (
    certify,
    config,
    desing,
    fixture,
    pipeline,
    rigidity,
    schema,
    solve,
)
