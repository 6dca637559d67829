"""Enhanced Burnside rings, orbifold zeta functions and Berglund-Hubsch duality."""

__version__ = "0.1.0"
