"""Opening a dominant map into a tree with triples, and closing back.

A trivalent node of a dominant unicellular map in canonical form is
*intertwined* when its three core half-edges, read in clockwise order
(the vertex cycle) starting from the smallest label e1, satisfy
e1 < e3 < e2.  Slicing an intertwined node by its core half-edges
keeps the map unicellular and dominant and drops the genus by one; a
dominant map of genus g has exactly 2g intertwined nodes, hence
2^g g! opening sequences.

Opening g times yields a plane tree in which each sliced node leaves a
triple of marked vertices; the union of the triples is non-singular
(its skeleton is trivalent with the marks as leaves).  Conversely,
each triple is closed by gluing its incoming half-edges in increasing
label order — the only circular order that keeps the map unicellular.
These two maps (open, close) are mutually inverse.
"""

from dataclasses import dataclass

from . import permutations as perm
from .errors import (InvalidSequence, NotDominant, NotIntertwined, Singular,
                     TooFewMarks)
from .maps import (RootedMap, canonicalize, genus, is_unicellular,
                   require_canonical, vertex_of)
from .scheme import _Core, _chain_walk, _core_vertex, _submap_canonical, \
    prune_core
from .surgery import GlueSpec, SliceSpec, glue_halfedges, slice_vertex
from .trees import TreeStructure


@dataclass(frozen=True)
class OpeningSequence:
    """Vertices (v_1, ..., v_g): v_g intertwined in the map itself, each
    earlier v_i intertwined in the map with v_g, ..., v_{i+1} sliced.

    Each v_i is a vertex id in the canonical labels of the map it is
    sliced from (genus drops by one per step).
    """

    nodes: tuple


@dataclass(frozen=True)
class TreeWithTriples:
    """A plane tree with g pairwise disjoint non-singular vertex triples.

    ``triples`` is an ordered list of frozensets of three vertex ids;
    the order is the opening order.  Validity is checked on
    construction.
    """

    tree: RootedMap
    triples: tuple

    def __post_init__(self):
        object.__setattr__(self, "triples",
                           tuple(frozenset(c) for c in self.triples))
        tm = self.tree.map
        require_canonical(tm)
        if genus(tm) != 0:
            raise ValueError("base of a tree with triples must have genus 0")
        seen = set()
        for c in self.triples:
            if len(c) != 3:
                raise ValueError(f"triple {sorted(c)} does not have 3 vertices")
            if c & seen:
                raise ValueError("triples are not pairwise disjoint")
            seen |= c
        if self.triples and not is_non_singular(tm, seen):
            raise Singular("union of the triples is singular")


@dataclass(frozen=True)
class SkeletonReport:
    """Skeleton of a marked vertex set: the union of pairwise paths with
    its unmarked degree-2 chains contracted.

    ``degrees`` maps skeleton vertex ids to degrees; ``in_marks`` flags
    the skeleton vertices that carry a mark.
    """

    skeleton: RootedMap
    degrees: dict
    in_marks: dict


def _steiner_edges(ts, marks):
    """Opening half-edges of the union of pairwise paths between marks."""
    count = {}
    for w in marks:
        for o in ts.path_openings(w):
            count[o] = count.get(o, 0) + 1
    p = len(marks)
    return {o for o, c in count.items() if 0 < c < p}


def _steiner_degrees(ts, edges):
    deg = {}
    m = ts.map
    for o in edges:
        for h in (o, m.alpha[o - 1]):
            v = ts.vertex_of(h)
            deg[v] = deg.get(v, 0) + 1
    return deg


def is_non_singular(t, marks):
    """True iff the skeleton of ``marks`` is trivalent with all marks leaves.

    Equivalently, in the union of pairwise paths, every marked vertex
    has degree 1 and every unmarked vertex degree 2 or 3.
    """
    marks = set(marks)
    if len(marks) < 2:
        raise TooFewMarks("need at least two marked vertices")
    ts = t if isinstance(t, TreeStructure) else TreeStructure(t)
    deg = _steiner_degrees(ts, _steiner_edges(ts, marks))
    for v, d in deg.items():
        if v in marks:
            if d != 1:
                return False
        elif d > 3:
            return False
    return True


def skeleton(t, marks):
    """Skeleton of a marked vertex set in a plane tree.

    Builds the union of pairwise paths, transfers the root by the
    counterclockwise rule when the root edge is not part of it, and
    contracts the maximal chains of unmarked degree-2 vertices.
    """
    marks = set(marks)
    if len(marks) < 2:
        raise TooFewMarks("need at least two marked vertices")
    ts = t if isinstance(t, TreeStructure) else TreeStructure(t)
    m = ts.map
    edges = _steiner_edges(ts, marks)
    kset = set()
    for o in edges:
        kset.add(o)
        kset.add(m.alpha[o - 1])
    beta = {}
    for h in kset:
        k = m.beta[h - 1]
        while k not in kset:
            k = m.beta[k - 1]
        beta[h] = k
    # root transfer
    if 1 in kset:
        root = 1
    else:
        r_vertices = {ts.vertex_of(h) for h in kset}
        if ts.root_vertex in r_vertices:
            h_att = 1
        else:
            v = min(r_vertices, key=lambda u: ts.depth[u])
            h_att = m.alpha[ts.parent[v][1] - 1]
        inv = perm.inverse(m.beta)
        c = inv[h_att - 1]
        while c not in kset:
            c = inv[c - 1]
        root = c
    core = _Core(frozenset(kset), beta, root, {}, {})
    # skeleton vertices: marks, and branching vertices of the path union
    deg = {}
    for h in kset:
        v = ts.vertex_of(h)
        deg[v] = deg.get(v, 0) + 1
    keep = {v for v, d in deg.items() if d != 2 or v in marks}
    stubs = [h for h in kset if ts.vertex_of(h) in keep]

    def walk(start):
        f = start
        while True:
            o = m.alpha[f - 1]
            if ts.vertex_of(o) in keep:
                return o
            f = beta[o]

    s_alpha = {h: walk(h) for h in stubs}
    s_beta = {h: beta[h] for h in stubs}
    f = root
    while ts.vertex_of(f) not in keep:
        f = m.alpha[beta[f] - 1]
    smap, rel = _submap_canonical(s_alpha, s_beta, f)
    degrees = {}
    in_marks = {}
    for cyc in perm.cycles(smap.map.beta):
        degrees[cyc[0]] = len(cyc)
    for h in stubs:
        sv = vertex_of(smap.map, rel[h])
        in_marks[sv] = ts.vertex_of(h) in marks
    return SkeletonReport(skeleton=smap, degrees=degrees, in_marks=in_marks)


def incoming_half_edge(t, triples, v):
    """The half-edge at a marked vertex of its first edge toward the rest.

    Well-defined because the marked set is non-singular: all paths from
    ``v`` to other marked vertices leave through the same edge.
    """
    marks = set()
    for c in triples:
        marks |= set(c)
    if v not in marks:
        raise Singular(f"{v} is not a marked vertex")
    ts = t if isinstance(t, TreeStructure) else TreeStructure(t)
    if not is_non_singular(ts, marks):
        raise Singular("marked set is singular")
    m = ts.map
    # direction of any other mark
    u = min(marks - {v})
    path_v = ts.ancestor_path(v)
    path_u = ts.ancestor_path(u)
    j = 0
    while j < len(path_v) and j < len(path_u) and path_v[j] == path_u[j]:
        j += 1
    if j == len(path_v):
        # u is below v: leave via the child opening toward u
        return ts.path_openings(u)[len(path_v) - 1]
    # otherwise the path starts upward, through the stub of v's parent edge
    return m.alpha[ts.parent[v][1] - 1]


def tree_with_triples_to_dict(tc):
    """JSON form: the tree in map format plus a ``triples`` list."""
    from .maps import map_to_dict
    d = map_to_dict(tc.tree.map, root=1)
    d["triples"] = [sorted(c) for c in tc.triples]
    return d


def tree_with_triples_from_dict(d):
    """Inverse of :func:`tree_with_triples_to_dict`; validity re-checked."""
    from .maps import map_from_dict
    tm, _ = map_from_dict(d)
    triples = tuple(frozenset(c) for c in d.get("triples", []))
    return TreeWithTriples(tree=RootedMap(map=tm), triples=triples)


def _node_stubs(m):
    """Clockwise core half-edge triples at each node of a dominant map."""
    cm = require_canonical(m)
    core = prune_core(cm)
    deg = {}
    for h in core.halfedges:
        v = _core_vertex(core, h)
        deg.setdefault(v, []).append(h)
    chains = all(len(stubs) in (2, 3) for stubs in deg.values())
    nodes = {v: stubs for v, stubs in deg.items() if len(stubs) >= 3}
    if not chains or not nodes:
        raise NotDominant("the scheme of the map is not trivalent")
    out = {}
    for v, stubs in nodes.items():
        e1 = min(stubs)
        e2 = core.beta[e1]
        e3 = core.beta[e2]
        out[vertex_of(cm, e1)] = (e1, e2, e3)
    return out


def intertwined_nodes(m):
    """Vertex ids of the intertwined nodes of a dominant map (2g of them)."""
    out = [v for v, (e1, e2, e3) in _node_stubs(m).items() if e1 < e3 < e2]
    return sorted(out)


def slice_intertwined(m, v):
    """Slice an intertwined node by its core half-edges and re-canonicalize.

    Returns ``(map, rel)``: the resulting dominant unicellular map of
    genus g-1 rooted at the original root, and the relabeling that
    tracks half-edges across the surgery.
    """
    cm = require_canonical(m)
    stubs = _node_stubs(cm).get(v)
    if stubs is None or not (stubs[0] < stubs[2] < stubs[1]):
        raise NotIntertwined(f"vertex {v} is not an intertwined node")
    sliced = slice_vertex(cm, SliceSpec(v, stubs))
    if not is_unicellular(sliced):
        raise NotIntertwined(f"slicing {v} disconnected the face")
    return canonicalize(sliced, 1)


def opening_sequences(m):
    """Iterate over all opening sequences of a dominant map.

    Sequences are produced depth-first; there are 2^g g! of them, each
    a tuple (v_1, ..., v_g) with v_g sliced first.
    """
    cm = require_canonical(m)
    g = genus(cm)

    def rec(cur, gg):
        if gg == 0:
            yield ()
            return
        for v in intertwined_nodes(cur):
            nxt, _ = slice_intertwined(cur, v)
            for rest in rec(nxt.map, gg - 1):
                yield rest + (v,)

    for nodes in rec(cm, g):
        yield OpeningSequence(nodes=nodes)


def open_phi(m, seq):
    """Open a dominant map along an opening sequence.

    Slices v_g, then v_{g-1}, ..., then v_1, tracking the vertices born
    at each step down to the final plane tree.  Returns the tree with
    its g ordered triples.
    """
    cm = require_canonical(m)
    g = genus(cm)
    nodes = seq.nodes if isinstance(seq, OpeningSequence) else tuple(seq)
    if len(nodes) != g:
        raise InvalidSequence(
            f"sequence length {len(nodes)} does not match genus {g}")
    cur = cm
    tracked = []
    for i in range(g - 1, -1, -1):
        v = nodes[i]
        try:
            stubs = _node_stubs(cur).get(v)
        except NotDominant as exc:
            raise InvalidSequence(str(exc))
        if stubs is None or not (stubs[0] < stubs[2] < stubs[1]):
            raise InvalidSequence(f"vertex {v} is not intertwined at step {i + 1}")
        sliced = slice_vertex(cur, SliceSpec(v, stubs))
        if not is_unicellular(sliced):
            raise InvalidSequence(f"slicing {v} disconnected the face")
        rooted, rel = canonicalize(sliced, 1)
        cur = rooted.map
        tracked = [tuple(rel[h - 1] for h in tr) for tr in tracked]
        tracked.insert(0, tuple(rel[h - 1] for h in stubs))
    triples = [frozenset(vertex_of(cur, h) for h in tr) for tr in tracked]
    return TreeWithTriples(tree=RootedMap(map=cur), triples=tuple(triples))


def close_psi(tc):
    """Close a tree with g triples back into an opened dominant map.

    For i = 1..g the incoming half-edges of triple i are glued in
    increasing label order (the only order that keeps the map
    unicellular); the map is re-canonicalized after each gluing and the
    created vertex recorded.  Returns (map, opening sequence).
    """
    tm = tc.tree.map
    ts = TreeStructure(tm)
    tracked = [tuple(sorted(incoming_half_edge(ts, tc.triples, v)
                            for v in c)) for c in tc.triples]
    cur = tm
    recorded = []
    for i, _ in enumerate(tc.triples):
        h1, h2, h3 = sorted(tracked[i])
        glued = glue_halfedges(cur, GlueSpec((h1, h2, h3)))
        if not is_unicellular(glued):
            raise InvalidSequence("gluing in increasing order broke the face")
        rooted, rel = canonicalize(glued, 1)
        cur = rooted.map
        recorded.append(vertex_of(cur, rel[h1 - 1]))
        tracked = [tuple(rel[h - 1] for h in tr) for tr in tracked]
    return RootedMap(map=cur), OpeningSequence(nodes=tuple(recorded))
