"""Core and scheme of a unicellular map, and the tree decomposition.

The *core* of a unicellular map is obtained by recursively erasing its
degree-1 vertices; contracting the maximal chains of degree-2 vertices
of the core yields the *scheme*, a unicellular map of the same genus
with all vertex degrees at least 3.  The surviving vertices are the
*nodes* of the map.  Slicing the map at every node by its incident
core half-edges breaks it into one plane tree per scheme edge; each
tree carries a marked vertex (the far end of the chain) and the first
tree additionally remembers the original root edge.  ``decompose`` and
``recompose`` implement this correspondence exactly, in both
directions.

A map is *dominant* when its scheme is trivalent (4g-2 vertices of
degree 3, hence 6g-3 edges).
"""

from dataclasses import dataclass

from . import permutations as perm
from .errors import GenusZero, InconsistentDecomposition, NotUnicellular
from .maps import (CombMap, RootedMap, canonicalize, genus, is_unicellular,
                   make_map, require_canonical, vertex_of)
from .surgery import GlueSpec, SliceSpec, glue_halfedges, slice_vertex
from .trees import TreeStructure, is_in_T, is_right_of


@dataclass(frozen=True)
class Scheme:
    """A unicellular map with min degree 3, plus a fixed edge order.

    ``edge_origins[i - 1]`` is the origin half-edge of the i-th edge;
    edge 1 is the root edge (origin half-edge 1), the others are
    ordered by first appearance along the face tour, each oriented
    from its smaller half-edge.
    """

    map: RootedMap
    edge_origins: tuple


@dataclass(frozen=True)
class DoublyMarkedTree:
    """A plane tree with a marked vertex off the root, past the root edge."""

    tree: RootedMap
    mark: int


@dataclass(frozen=True)
class Decomposition:
    """A scheme, one doubly-marked tree per scheme edge, and a root mark.

    ``root_mark`` is an oriented edge of ``trees[0]``, stored as the
    ordered pair (origin half-edge, opposite half-edge); it records the
    root edge of the original map and satisfies the right-of-the-mark
    condition in the first tree.
    """

    scheme: Scheme
    trees: tuple
    root_mark: tuple


class _Core:
    """Working view of the core of a map, in the original labels."""

    def __init__(self, halfedges, beta, root, attached, exit_halfedge):
        self.halfedges = halfedges
        self.beta = beta
        self.root = root
        self.attached = attached
        self._exit = exit_halfedge


def _core_vertex(core, h):
    """Vertex id of a core half-edge, minimum over the full beta-cycle."""
    best = h
    k = core.beta[h]
    while k != h:
        best = min(best, k)
        k = core.beta[k]
    return best


def _submap_canonical(alpha, beta, root, size=None):
    """Canonicalize a connected unicellular sub-map given by dicts.

    ``alpha`` may be a full permutation tuple or a dict; ``beta`` is a
    dict on the sub-map's half-edges.  The face tour starting at
    ``root`` must close up on exactly the support of ``beta``.
    Returns ``(RootedMap, rel)`` with ``rel`` a dict old -> new label.
    """
    a = (lambda h: alpha[h - 1]) if not isinstance(alpha, dict) else alpha.__getitem__
    rel = {}
    h = root
    for new in range(1, len(beta) + 1):
        if h in rel:
            raise NotUnicellular("face tour closed early on the sub-map")
        rel[h] = new
        h = beta[a(h)]
    if h != root:
        raise NotUnicellular("face tour does not cover the sub-map")
    n2 = len(beta)
    new_alpha = [0] * n2
    new_beta = [0] * n2
    for old, new in rel.items():
        new_alpha[new - 1] = rel[a(old)]
        new_beta[new - 1] = rel[beta[old]]
    m = make_map(tuple(new_alpha), tuple(new_beta))
    return RootedMap(map=m), rel


def prune_core(m):
    """Erase the degree-1 vertices of a unicellular map, recursively.

    Returns a core object carrying: the surviving half-edges, the
    induced vertex rotations, the core root half-edge (following the
    counterclockwise transfer rule when the root edge was pruned), and
    the pruned stubs attached to each core vertex.  All labels are the
    ones of ``m``.
    """
    cm = require_canonical(m)
    if genus(cm) == 0:
        raise GenusZero("a tree prunes down to nothing")
    cycles = perm.cycles(cm.beta)
    vert = {}
    for cyc in cycles:
        for h in cyc:
            vert[h] = cyc[0]
    alive = [True] * (2 * cm.n + 1)
    degree = {cyc[0]: len(cyc) for cyc in cycles}
    exit_halfedge = {}
    stack = [cyc[0] for cyc in cycles if len(cyc) == 1]
    while stack:
        v = stack.pop()
        h = next(k for k in perm.cycle_through(cm.beta, v) if alive[k])
        exit_halfedge[v] = h
        o = cm.alpha[h - 1]
        alive[h] = alive[o] = False
        w = vert[o]
        degree[w] -= 1
        if degree[w] == 1:
            stack.append(w)
    halfedges = frozenset(h for h in range(1, 2 * cm.n + 1) if alive[h])
    beta = {}
    for h in halfedges:
        k = cm.beta[h - 1]
        while not alive[k]:
            k = cm.beta[k - 1]
        beta[h] = k
    attached = {}
    for h in range(1, 2 * cm.n + 1):
        if not alive[h] and vert[h] not in exit_halfedge:
            attached.setdefault(vert[h], []).append(h)
    attached = {v: tuple(sorted(hs)) for v, hs in attached.items()}
    if alive[1]:
        root = 1
    else:
        # climb from the root edge to its attachment stub on the core,
        # then turn counterclockwise (beta backward) to the first
        # surviving half-edge
        v = vert[1]
        if v not in exit_halfedge:
            h_att = 1
        else:
            while True:
                h_att = cm.alpha[exit_halfedge[v] - 1]
                if vert[h_att] not in exit_halfedge:
                    break
                v = vert[h_att]
        full_inv = perm.inverse(cm.beta)
        c = full_inv[h_att - 1]
        while not alive[c]:
            c = full_inv[c - 1]
        root = c
    return _Core(halfedges, beta, root, attached, exit_halfedge)


def _chain_walk(core, alpha, nodes, start):
    """Follow a chain of degree-2 core vertices from a node half-edge.

    Returns the arrival half-edge at the far node (the stub pointing
    back along the chain).
    """
    f = start
    while True:
        o = alpha[f - 1]
        if _core_vertex(core, o) in nodes:
            return o
        # degree-2 vertex: continue through its other core half-edge
        f = core.beta[o]


def contract_to_scheme(core, m):
    """Contract the degree-2 chains of a core into scheme edges.

    Returns ``(scheme, chains)`` where ``chains`` maps each scheme
    half-edge (in the scheme's canonical labels) to the core half-edge
    starting the corresponding chain in that direction.
    """
    alpha = m.map.alpha if isinstance(m, RootedMap) else m.alpha
    deg = {}
    for h in core.halfedges:
        v = _core_vertex(core, h)
        deg[v] = deg.get(v, 0) + 1
    nodes = {v for v, d in deg.items() if d >= 3}
    node_stubs = [h for h in core.halfedges if _core_vertex(core, h) in nodes]
    s_alpha = {h: _chain_walk(core, alpha, nodes, h) for h in node_stubs}
    s_beta = {h: core.beta[h] for h in node_stubs}
    # the scheme root: walk back from the core root to the chain's start
    f = core.root
    while _core_vertex(core, f) not in nodes:
        other = core.beta[f]
        f = alpha[other - 1]
    smap, rel = _submap_canonical(s_alpha, s_beta, f)
    chains = {rel[h]: h for h in node_stubs}
    origins = sorted({min(h, smap.map.alpha[h - 1])
                      for h in range(1, len(node_stubs) + 1)})
    scheme = Scheme(map=smap, edge_origins=tuple(origins))
    return scheme, chains


def scheme_of(m):
    """The scheme of a unicellular map of genus at least 1."""
    return contract_to_scheme(prune_core(m), m)[0]


def is_dominant(m):
    """True iff the scheme of ``m`` is trivalent."""
    cm = require_canonical(m)
    if genus(cm) == 0:
        return False
    s = scheme_of(cm)
    sm = s.map.map
    return all(len(c) == 3 for c in perm.cycles(sm.beta))


def decompose(m):
    """Split a unicellular map into its scheme and edge-indexed trees.

    The map is sliced at every node by its incident core half-edges;
    the component associated with scheme edge i, rooted at the first
    edge of the chain, is a plane tree whose marked vertex is the far
    chain end.  The original root edge is recorded as an oriented edge
    of tree 1.
    """
    cm = require_canonical(m)
    core = prune_core(cm)
    scheme, chains = contract_to_scheme(core, cm)
    deg = {}
    for h in core.halfedges:
        v = _core_vertex(core, h)
        deg.setdefault(v, []).append(h)
    sliced = cm
    for v, stubs in deg.items():
        if len(stubs) >= 3:
            sliced = slice_vertex(sliced, SliceSpec(vertex_of(sliced, v), stubs))
    trees = []
    rels = []
    k = len(scheme.edge_origins)
    for i in range(1, k + 1):
        s_origin = scheme.edge_origins[i - 1]
        s_end = scheme.map.map.alpha[s_origin - 1]
        c_start = chains[s_origin]
        c_back = chains[s_end]
        comp_beta = {}
        h = c_start
        while h not in comp_beta:
            comp_beta[h] = sliced.beta[h - 1]
            h = sliced.gamma[h - 1]
        tree, rel = _submap_canonical(cm.alpha, comp_beta, c_start)
        mark = vertex_of(tree.map, rel[c_back])
        trees.append(DoublyMarkedTree(tree=tree, mark=mark))
        rels.append(rel)
    if 1 not in rels[0]:
        raise InconsistentDecomposition("root edge did not land in tree 1")
    root_mark = (rels[0][1], rels[0][cm.alpha[0]])
    d = Decomposition(scheme=scheme, trees=tuple(trees), root_mark=root_mark)
    return d


def recompose(d):
    """Rebuild the unicellular map encoded by a decomposition.

    Inverse of ``decompose``: trees are substituted for the scheme
    edges, the chain ends are glued back at every scheme vertex in its
    rotation order, and the result is canonicalized at the recorded
    root mark.
    """
    smap = d.scheme.map.map
    k = len(d.scheme.edge_origins)
    if len(d.trees) != k:
        raise InconsistentDecomposition(
            f"expected {k} trees, got {len(d.trees)}")
    offsets = []
    total = 0
    for dt in d.trees:
        offsets.append(total)
        total += 2 * dt.tree.map.n
    # big-map half-edge carried by each scheme half-edge
    carrier = {}
    for i, dt in enumerate(d.trees):
        s_origin = d.scheme.edge_origins[i]
        s_end = smap.alpha[s_origin - 1]
        ts = TreeStructure(dt.tree.map)
        if not is_in_T(ts, dt.mark):
            raise InconsistentDecomposition(
                f"tree {i + 1} with mark {dt.mark} is not doubly marked")
        openings = ts.path_openings(dt.mark)
        carrier[s_origin] = offsets[i] + 1
        carrier[s_end] = offsets[i] + dt.tree.map.alpha[openings[-1] - 1]
    if not is_right_of(d.trees[0].tree.map, d.trees[0].mark, d.root_mark[0]):
        raise InconsistentDecomposition("root mark is not right of the mark")
    big_alpha = [0] * total
    big_beta = [0] * total
    for i, dt in enumerate(d.trees):
        o = offsets[i]
        for h in range(1, 2 * dt.tree.map.n + 1):
            big_alpha[o + h - 1] = o + dt.tree.map.alpha[h - 1]
            big_beta[o + h - 1] = o + dt.tree.map.beta[h - 1]
    big = make_map(tuple(big_alpha), tuple(big_beta))
    for cyc in perm.cycles(smap.beta):
        spec = GlueSpec(tuple(carrier[s] for s in cyc))
        big = glue_halfedges(big, spec)
    root = offsets[0] + d.root_mark[0]
    if not is_unicellular(big):
        raise InconsistentDecomposition("reglued map is not unicellular")
    rooted, _ = canonicalize(big, root)
    return rooted
