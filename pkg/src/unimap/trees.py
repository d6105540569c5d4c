"""Plane-tree utilities on the canonical permutation encoding.

A plane tree with n edges is a unicellular map of genus 0.  In
canonical form the face tour is gamma = (1, ..., 2n) and the pairing
alpha is a matched-parenthesis involution: the smaller half-edge of
each edge is the *opening* half-edge (first visit, walking away from
the root) and its partner is the *closing* one.  This module exposes
the rooted-tree structure hidden in that encoding: parents, depths,
the ancestor path of a vertex, Dyck-word conversion, exhaustive
enumeration, and the side predicates on marked trees used by the
scheme decomposition.

A marked tree (t, nu) is *doubly marked* when nu differs from the root
vertex and the path from the root vertex to nu starts with the root
edge.  An oriented edge is always represented by its origin half-edge
h (the edge runs from the vertex of h to the vertex of alpha(h)).
"""

from . import permutations as perm
from .errors import NotCanonical, UnknownVertex
from .maps import CombMap, canonical_gamma, make_map, require_canonical


def tree_from_dyck(word):
    """Build the canonical plane tree encoded by a Dyck word.

    ``word`` is a sequence over {1, 0} (up/down) of length 2n; entry
    h-1 tells whether half-edge h opens or closes an edge.

    >>> t = tree_from_dyck((1, 0, 1, 0))
    >>> t.alpha
    (2, 1, 4, 3)
    >>> tree_from_dyck((1, 1, 0, 0)).alpha
    (4, 3, 2, 1)
    """
    if len(word) % 2 or not len(word):
        raise ValueError("Dyck word must have positive even length")
    alpha = [0] * len(word)
    stack = []
    for h, step in enumerate(word, start=1):
        if step:
            stack.append(h)
        else:
            if not stack:
                raise ValueError("unbalanced Dyck word")
            o = stack.pop()
            alpha[o - 1] = h
            alpha[h - 1] = o
    if stack:
        raise ValueError("unbalanced Dyck word")
    alpha = tuple(alpha)
    return make_map(alpha, perm.compose(canonical_gamma(len(word) // 2), alpha))


def dyck_from_tree(t):
    """Dyck word of a canonical plane tree (1 = opening half-edge)."""
    require_canonical(t)
    return tuple(1 if h < t.alpha[h - 1] else 0 for h in range(1, 2 * t.n + 1))


def all_trees(n):
    """Iterate over all canonical plane trees with n edges.

    Trees are produced in lexicographic order of their Dyck words;
    there are Catalan(n) of them.
    """

    def words(ups, downs):
        if ups == 0:
            yield (0,) * downs
            return
        for rest in words(ups - 1, downs):
            yield (1,) + rest
        if downs > ups:
            for rest in words(ups, downs - 1):
                yield (0,) + rest

    for w in words(n, n):
        yield tree_from_dyck(w)


class TreeStructure:
    """Rooted-tree view of a canonical plane tree.

    Precomputes, per vertex id: parent vertex, depth, and the opening
    half-edge of the parent edge.  The root vertex is the vertex of
    half-edge 1.
    """

    def __init__(self, t):
        if isinstance(t, CombMap):
            m = t
        else:
            m = t.map
        require_canonical(m)
        self.map = m
        self.vertex_table = {}
        for cyc in perm.cycles(m.beta):
            v = cyc[0]
            for h in cyc:
                self.vertex_table[h] = v
        self.root_vertex = self.vertex_table[1]
        # parent[v] = (parent vertex, opening half-edge of the parent edge)
        self.parent = {}
        self.depth = {self.root_vertex: 0}
        for h in range(1, 2 * m.n + 1):
            if h < m.alpha[h - 1]:
                p = self.vertex_table[h]
                c = self.vertex_table[m.alpha[h - 1]]
                self.parent[c] = (p, h)
                self.depth[c] = self.depth[p] + 1

    def vertices(self):
        return sorted(self.depth)

    def vertex_of(self, h):
        return self.vertex_table[h]

    def ancestor_path(self, v):
        """Vertices from the root vertex down to v (inclusive)."""
        if v not in self.depth:
            raise UnknownVertex(f"no vertex {v}")
        path = [v]
        while path[-1] != self.root_vertex:
            path.append(self.parent[path[-1]][0])
        path.reverse()
        return path

    def path_openings(self, v):
        """Opening half-edges of the path edges from the root vertex to v."""
        return [self.parent[u][1] for u in self.ancestor_path(v)[1:]]

    def subtree_vertices(self, h):
        """Vertices of the subtree hanging below opening half-edge h."""
        if not h < self.map.alpha[h - 1]:
            raise ValueError(f"half-edge {h} is not an opening half-edge")
        lo, hi = h, self.map.alpha[h - 1]
        return sorted({self.vertex_table[k] for k in range(lo + 1, hi + 1)})


def is_in_T(t, nu):
    """Membership in the doubly-marked tree class.

    True iff nu is distinct from the root vertex and the simple path
    from the root vertex to nu contains the root edge, i.e. nu lies in
    the subtree below half-edge 1.
    """
    ts = t if isinstance(t, TreeStructure) else TreeStructure(t)
    if nu not in ts.depth:
        raise UnknownVertex(f"no vertex {nu}")
    if nu == ts.root_vertex:
        return False
    return ts.path_openings(nu)[0] == 1


def _beta_arc_contains(beta, start, stop, h):
    """True iff h lies strictly between start and stop along beta."""
    k = beta[start - 1]
    while k != stop:
        if k == h:
            return True
        k = beta[k - 1]
    return False


def is_right_of(t, nu, eps):
    """Side predicate for oriented edges relative to a marked vertex.

    ``eps`` is an oriented edge given by its origin half-edge.  Writing
    p(nu) for the oriented path from the root vertex to nu: an edge of
    p(nu) is at the right of nu iff it is oriented as p(nu); any other
    edge belongs to a subtree hanging at a vertex v of p(nu), and is at
    the right iff v is the root vertex, or v is an internal path vertex
    and the subtree is attached on the right-hand side of the path.  In
    the permutation encoding the right-hand side at an internal path
    vertex is the arc of its vertex cycle from the outgoing path
    half-edge to the incoming one.
    """
    ts = t if isinstance(t, TreeStructure) else TreeStructure(t)
    if not is_in_T(ts, nu):
        raise ValueError(f"({nu}) is not a valid doubly-marked vertex")
    m = ts.map
    openings = ts.path_openings(nu)
    path_vertices = ts.ancestor_path(nu)
    on_path = {}
    for j, o in enumerate(openings):
        on_path[o] = j
        on_path[m.alpha[o - 1]] = j
    if eps in on_path:
        return eps < m.alpha[eps - 1]
    # climb from the origin vertex of eps to the path
    path_set = {v: j for j, v in enumerate(path_vertices)}
    x = ts.vertex_of(eps)
    s = eps
    while x not in path_set:
        x, s = ts.parent[x]
    j = path_set[x]
    if x == ts.root_vertex:
        return True
    if x == nu:
        return False
    h_out = openings[j]
    h_in = m.alpha[openings[j - 1] - 1]
    return _beta_arc_contains(m.beta, h_out, h_in, s)


def count_right_of(t, nu):
    """Number of oriented edges at the right of nu (out of 2n)."""
    ts = TreeStructure(t)
    m = ts.map
    return sum(1 for h in range(1, 2 * m.n + 1) if is_right_of(ts, nu, h))
