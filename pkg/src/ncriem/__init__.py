"""Exact verification toolkit for bimodule connections.

Covers the bicovariant calculus on finite groups (with S3 worked in full) and
the 3D calculus on quantum SU(2).
"""
from __future__ import annotations

__version__ = "0.1.0"
