"""Maps as permutation triples on half-edges ``[1, 2n]``.

A map of size ``n`` is a triple ``(alpha, beta, gamma)`` of permutations
of ``[1, 2n]`` with ``gamma = beta o alpha`` and ``alpha`` a fixed-point
free involution.  Cycles of ``alpha`` are the edges, cycles of ``beta``
the vertices (half-edges read in clockwise order around the vertex), and
cycles of ``gamma`` the faces.  A unicellular map has a single
``gamma``-cycle; its canonical rooted representative is the labeling
with ``gamma = (1, 2, ..., 2n)`` and root half-edge 1.

Vertices are identified by the minimal half-edge label on their
``beta``-cycle.  Maps are immutable; every operation returns new values.
"""

import json
from dataclasses import dataclass

from . import permutations as perm
from .errors import (
    LengthMismatch,
    NotCanonical,
    NotConnected,
    NotUnicellular,
    UnknownVertex,
)


@dataclass(frozen=True)
class CombMap:
    """A map ``(alpha, beta, gamma)`` with ``gamma = beta o alpha``.

    Do not call the constructor directly: use :func:`make_map`, which
    validates the invariants and computes ``gamma``.
    """

    n: int
    alpha: tuple
    beta: tuple
    gamma: tuple

    @property
    def size(self):
        return 2 * self.n

    def half_edges(self):
        return range(1, 2 * self.n + 1)


@dataclass(frozen=True)
class RootedMap:
    """A unicellular map in canonical form: ``gamma = (1, 2, ..., 2n)``.

    The root is always half-edge 1.
    """

    map: CombMap

    @property
    def n(self):
        return self.map.n

    @property
    def root(self):
        return 1


def make_map(alpha, beta):
    """Build a CombMap from ``alpha`` and ``beta``, computing ``gamma``.

    ``alpha`` must be a fixed-point-free involution of the same length as
    ``beta``; raises LengthMismatch or NotInvolution otherwise.
    """
    if len(alpha) != len(beta):
        raise LengthMismatch(f"alpha has length {len(alpha)}, beta {len(beta)}")
    if len(alpha) % 2 != 0 or len(alpha) == 0:
        raise LengthMismatch(f"half-edge count {len(alpha)} is not even positive")
    perm.check_involution(alpha)
    gamma = perm.compose(beta, alpha)
    return CombMap(n=len(alpha) // 2, alpha=tuple(alpha), beta=tuple(beta), gamma=gamma)


def canonical_gamma(n):
    """The face cycle ``(1, 2, ..., 2n)`` as a permutation."""
    return tuple(list(range(2, 2 * n + 1)) + [1])


def is_canonical(m):
    return m.gamma == canonical_gamma(m.n)


def require_canonical(m):
    cm = m.map if isinstance(m, RootedMap) else m
    if not is_canonical(cm):
        raise NotCanonical("map is not in canonical form (gamma != (1,...,2n))")
    return cm


def is_connected(m):
    """True iff alpha and gamma act transitively on the half-edges."""
    size = 2 * m.n
    seen = [False] * (size + 1)
    stack = [1]
    seen[1] = True
    count = 0
    while stack:
        h = stack.pop()
        count += 1
        for nxt in (m.alpha[h - 1], m.gamma[h - 1]):
            if not seen[nxt]:
                seen[nxt] = True
                stack.append(nxt)
    return count == size


def is_unicellular(m):
    """True iff the map has exactly one face."""
    return perm.cycle_count(m.gamma) == 1


def genus(m):
    """Genus from the Euler formula ``|beta| + |gamma| = |alpha| + 2 - 2g``."""
    if not is_connected(m):
        raise NotConnected("genus is only defined for connected maps")
    v = perm.cycle_count(m.beta)
    f = perm.cycle_count(m.gamma)
    g2 = m.n + 2 - v - f
    assert g2 % 2 == 0 and g2 >= 0, "Euler formula broken"
    return g2 // 2


def vertex_of(m, h):
    """Vertex id (minimal label of the beta-cycle) of half-edge ``h``."""
    if not 1 <= h <= 2 * m.n:
        raise UnknownVertex(f"half-edge {h} out of range")
    best = h
    j = m.beta[h - 1]
    while j != h:
        if j < best:
            best = j
        j = m.beta[j - 1]
    return best


def vertices(m):
    """Sorted list of vertex ids."""
    return [c[0] for c in perm.cycles(m.beta)]


def vertex_cycle(m, v):
    """Beta-cycle of vertex ``v`` written starting at its id."""
    if not 1 <= v <= 2 * m.n:
        raise UnknownVertex(f"vertex id {v} out of range")
    cyc = perm.cycle_through(m.beta, v)
    if min(cyc) != v:
        raise UnknownVertex(f"{v} is not a vertex id (not minimal on its cycle)")
    return cyc


def vertex_degree(m, v):
    return len(vertex_cycle(m, v))


def vertex_table(m):
    """Dict half-edge -> vertex id, computed in one pass."""
    table = {}
    for cyc in perm.cycles(m.beta):
        vid = cyc[0]
        for h in cyc:
            table[h] = vid
    return table


def canonicalize(m, root=1):
    """Canonical representative of a unicellular map, rooted at ``root``.

    Returns ``(RootedMap, rel)`` where ``rel`` is the relabeling
    permutation used (``rel[h - 1]`` is the new label of half-edge ``h``);
    ``rel`` sends ``root`` to 1 and the face tour to ``(1, 2, ..., 2n)``.
    """
    size = 2 * m.n
    if not 1 <= root <= size:
        raise UnknownVertex(f"root half-edge {root} out of range")
    rel = [0] * size
    h = root
    for new in range(1, size + 1):
        if rel[h - 1]:
            raise NotUnicellular("gamma has more than one cycle")
        rel[h - 1] = new
        h = m.gamma[h - 1]
    if h != root:
        raise NotUnicellular("face tour did not close up")
    rel = tuple(rel)
    alpha = perm.conjugate(m.alpha, rel)
    beta = perm.conjugate(m.beta, rel)
    out = CombMap(n=m.n, alpha=alpha, beta=beta, gamma=canonical_gamma(m.n))
    return RootedMap(out), rel


def relabel_vertex(m_new, rel, old_id):
    """Push a vertex id through the relabeling returned by canonicalize.

    Valid whenever the vertex was not itself split or merged by the
    operation that produced ``m_new``.
    """
    return vertex_of(m_new, rel[old_id - 1])


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------

def map_to_dict(m, root=None):
    cm = m.map if isinstance(m, RootedMap) else m
    d = {"n": cm.n, "alpha": list(cm.alpha), "beta": list(cm.beta)}
    if root is not None:
        d["root"] = root
    return d


def map_from_dict(d):
    """Load a map from its JSON dict; gamma is always recomputed.

    Returns ``(CombMap, root)`` with root defaulting to 1.
    """
    m = make_map(tuple(d["alpha"]), tuple(d["beta"]))
    if "n" in d and d["n"] != m.n:
        raise LengthMismatch(f"declared n={d['n']} but permutations have n={m.n}")
    return m, int(d.get("root", 1))


def dump_map(m, path, root=None):
    with open(path, "w") as fh:
        json.dump(map_to_dict(m, root=root), fh)
        fh.write("\n")


def load_map(path):
    with open(path) as fh:
        return map_from_dict(json.load(fh))
