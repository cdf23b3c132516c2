"""Garside structures on complex braid groups: conjugacy and parabolic closures."""

from .garside import Element, GarsideStructure, build_structure

__all__ = ["Element", "GarsideStructure", "build_structure"]
