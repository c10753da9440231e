"""
Tropicalization Moduli Toolkit
==============================

Weighted leaf-labeled multigraphs, weighted contractions, the compactified
moduli space of tropicalizations and its comparison with the boundary
stratification of the moduli space of stable curves.
"""

__version__ = "1.0.0"
__author__ = "Tropical Geometry Tools Team"
