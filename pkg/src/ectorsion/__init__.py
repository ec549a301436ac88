"""Elliptic curves with torsion Z/8 and Z/2 x Z/6: families, heights, rank-3 search and sieving."""
from .catalog import catalog_list, get_entry, specialize
from .curves import Curve, GeneralCurve, Point
from .heights import canonical_height, regulator
from .torsion import torsion_structure

__version__ = "0.1.0"
__all__ = ["Curve", "GeneralCurve", "Point", "catalog_list", "get_entry", "specialize",
           "canonical_height", "regulator", "torsion_structure"]
