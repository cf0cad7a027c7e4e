"""
Monomial testing engine.

Decides whether a polynomial given as an arithmetic circuit, a formula or a
structured product of sums has a monomial of a given degree with small
exponents, via group-algebra substitution and polynomial identity testing.
"""

from .utils.config import settings

__version__ = settings.VERSION
