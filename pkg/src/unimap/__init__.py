"""Combinatorics of unicellular maps.

A unicellular map is a connected graph embedded on a closed orientable
surface so that the complement of the graph is a single topological
disc.  This package represents such maps by pairs of permutations on
half-edges, implements the surgery operations (slicing a vertex,
gluing vertices), the reduction to a trivalent scheme, bijections with
plane trees decorated by triples of half-edges, the labelled (spanning
tree of a quadrangulation) variants, exhaustive enumeration for small
sizes, and Monte-Carlo estimators of asymptotic constants.
"""

from .errors import MapError
from .maps import CombMap, RootedMap, canonicalize, genus, make_map

__all__ = [
    "MapError",
    "CombMap",
    "RootedMap",
    "canonicalize",
    "genus",
    "make_map",
]

__version__ = "0.1.0"
