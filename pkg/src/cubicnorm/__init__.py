"""Verified computation for the family x^3 - (t^3-1) y^3 + 3 (t^3-1) x y + (t^3-1)^2 = +-1."""

from .errors import CubicNormError
from .ring import ModularRingElement, RingContext, RingElement

__all__ = ["CubicNormError", "ModularRingElement", "RingContext", "RingElement"]
__version__ = "0.1.0"
