"""Slicing a vertex and gluing half-edges.

Both operations rewrite only ``beta`` (the vertex cycles); ``alpha`` is
untouched and half-edge labels are preserved, so marks can be tracked
across a surgery without bookkeeping.  Slicing a vertex by a cut set
``C`` splits its cycle into one block per element of ``C``; gluing an
ordered tuple of half-edges on distinct vertices concatenates their
cycles.  The two operations are mutually inverse.
"""

from dataclasses import dataclass

from . import permutations as perm
from .errors import DuplicateHalfEdge, EmptyCutSet, HalfEdgeNotOnVertex, SameVertex
from .maps import CombMap, vertex_cycle, vertex_of


@dataclass(frozen=True)
class SliceSpec:
    """A vertex id and a set of half-edges of that vertex to cut at."""

    vertex: int
    cut_set: frozenset

    def __init__(self, vertex, cut_set):
        object.__setattr__(self, "vertex", vertex)
        object.__setattr__(self, "cut_set", frozenset(cut_set))


@dataclass(frozen=True)
class GlueSpec:
    """An ordered tuple of half-edges incident to pairwise distinct vertices."""

    tuple: tuple

    def __init__(self, halfedges):
        object.__setattr__(self, "tuple", tuple(halfedges))


def slice_vertex(m, spec):
    """Split the cycle of ``spec.vertex`` before each element of the cut set.

    The cycle is first rotated to start at ``min(cut_set)``, which makes
    the resulting blocks deterministic.  The result has ``|C| - 1`` more
    vertices than ``m`` and may be disconnected.
    """
    cut = spec.cut_set
    if not cut:
        raise EmptyCutSet("cut set must be non-empty")
    cyc = vertex_cycle(m, spec.vertex)
    if not cut <= set(cyc):
        raise HalfEdgeNotOnVertex(
            f"cut set {sorted(cut)} not contained in vertex {spec.vertex}"
        )
    start = cyc.index(min(cut))
    cyc = cyc[start:] + cyc[:start]
    blocks = []
    for h in cyc:
        if h in cut:
            blocks.append([h])
        else:
            blocks[-1].append(h)
    beta = list(m.beta)
    for block in blocks:
        for a, b in zip(block, block[1:] + block[:1]):
            beta[a - 1] = b
    beta = tuple(beta)
    return CombMap(n=m.n, alpha=m.alpha, beta=beta, gamma=perm.compose(beta, m.alpha))


def glue_halfedges(m, spec):
    """Merge the vertices of ``spec.tuple`` into one cycle.

    With tuple ``(i_1, ..., i_k)`` and vertex cycles written from the
    ``i_l``, the merged cycle is their concatenation.  The result has
    ``k - 1`` fewer vertices than ``m``.
    """
    hs = spec.tuple
    if len(hs) != len(set(hs)):
        raise DuplicateHalfEdge(f"repeated half-edge in {hs}")
    if len(hs) < 2:
        raise SameVertex("gluing needs at least two half-edges")
    vids = [vertex_of(m, h) for h in hs]
    if len(set(vids)) != len(vids):
        raise SameVertex(f"half-edges {hs} are not on pairwise distinct vertices")
    merged = []
    for h in hs:
        merged.extend(perm.cycle_through(m.beta, h))
    beta = list(m.beta)
    for a, b in zip(merged, merged[1:] + merged[:1]):
        beta[a - 1] = b
    beta = tuple(beta)
    return CombMap(n=m.n, alpha=m.alpha, beta=beta, gamma=perm.compose(beta, m.alpha))
