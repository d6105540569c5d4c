"""Labelled trees and maps, and the generating series behind them.

A labelling gives every vertex an integer, the root vertex getting 0,
with adjacent labels differing by at most one.  On a tree this is the
same as choosing an increment in {-1, 0, +1} per edge, so a tree with
n edges has 3^n labellings.  Labels travel through the opening and
closing surgeries unchanged, which forces the three vertices of each
triple to share a label: well-labelled trees with triples correspond
to labelled dominant maps.

The number of lattice walks with steps in {-1, 0, +1} is tabulated
exactly, and the classical generating-series identities relating
walks, Motzkin paths and labelled doubly-marked trees are checked with
exact rational arithmetic.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (MissingLabel, OrderTooLarge, OutOfRange,
                     UnequalTripleLabels)
from .maps import RootedMap, require_canonical, vertex_of, vertices
from .trees import TreeStructure

MOTZKIN_DEFAULT_BOUND = 30


@dataclass(frozen=True)
class Labelling:
    """Integer labels on the vertices of a map, root vertex labelled 0."""

    values: dict

    def __getitem__(self, v):
        try:
            return self.values[v]
        except KeyError:
            raise MissingLabel(f"vertex {v} has no label")


def validate_labelling(m, labelling):
    """Check a labelling: total, root vertex 0, adjacent labels differ <= 1."""
    cm = require_canonical(m)
    vals = labelling.values if isinstance(labelling, Labelling) else labelling
    for v in vertices(cm):
        if v not in vals:
            raise MissingLabel(f"vertex {v} has no label")
    if vals[vertex_of(cm, 1)] != 0:
        raise MissingLabel("root vertex must be labelled 0")
    for h in range(1, 2 * cm.n + 1):
        a = vals[vertex_of(cm, h)]
        b = vals[vertex_of(cm, cm.alpha[h - 1])]
        if abs(a - b) > 1:
            raise MissingLabel(
                f"labels {a} and {b} differ by more than 1 across an edge")
    return True


@dataclass(frozen=True)
class LabelledTree:
    """A plane tree with one increment in {-1, 0, +1} per edge.

    Edges are indexed 0..n-1 by the rank of their opening half-edge.
    Vertex labels are the partial sums along the path from the root
    vertex, which is labelled 0.
    """

    tree: RootedMap
    increments: tuple

    def __post_init__(self):
        tm = self.tree.map
        require_canonical(tm)
        if len(self.increments) != tm.n:
            raise MissingLabel(
                f"need {tm.n} edge increments, got {len(self.increments)}")
        if any(d not in (-1, 0, 1) for d in self.increments):
            raise MissingLabel("edge increments must be -1, 0 or +1")

    def edge_rank(self):
        """Opening half-edge of each edge, in increasing order."""
        tm = self.tree.map
        return sorted(h for h in range(1, 2 * tm.n + 1)
                      if h < tm.alpha[h - 1])

    def labels(self):
        """Vertex labels as a Labelling."""
        ts = TreeStructure(self.tree)
        rank = {o: i for i, o in enumerate(self.edge_rank())}
        vals = {ts.root_vertex: 0}
        for v in ts.vertices():
            if v == ts.root_vertex:
                continue
            vals[v] = sum(self.increments[rank[o]]
                          for o in ts.path_openings(v))
        return Labelling(values=vals)


@dataclass(frozen=True)
class WellLabelledTriples:
    """A labelled tree with triples whose three labels agree."""

    base: object  # TreeWithTriples
    labelled: LabelledTree

    def __post_init__(self):
        if self.labelled.tree.map != self.base.tree.map:
            raise MissingLabel("labelling is for a different tree")
        vals = self.labelled.labels().values
        for c in self.base.triples:
            got = {vals[v] for v in c}
            if len(got) != 1:
                raise UnequalTripleLabels(
                    f"triple {sorted(c)} carries labels {sorted(got)}")


def labelled_phi(m, labelling, seq):
    """Open a labelled dominant map into a well-labelled tree with triples.

    Vertex labels ride along the slicings: the three vertices born from
    a sliced node all inherit its label, so the result is well-labelled.
    """
    from .bijection import open_phi
    cm = require_canonical(m)
    validate_labelling(cm, labelling)
    vals = labelling.values if isinstance(labelling, Labelling) else labelling
    # labels keyed by half-edge survive relabelings
    by_halfedge = {h: vals[vertex_of(cm, h)] for h in range(1, 2 * cm.n + 1)}
    tc = open_phi(cm, seq)
    tm = tc.tree.map
    # half-edge h of the tree is rel(...(rel(h))) of the original; but the
    # opening never moves labels between half-edges of a common vertex, so
    # labels can be pushed through open_phi by re-running it on labels.
    # Instead, recompute directly: re-run the slicing with label transport.
    lab_tree = _transport_labels(cm, by_halfedge, seq)
    ts = TreeStructure(tc.tree)
    rank = sorted(h for h in range(1, 2 * tm.n + 1) if h < tm.alpha[h - 1])
    incs = []
    tvals = {v: lab_tree[v] for v in vertices(tm)}
    for o in rank:
        child = ts.vertex_of(tm.alpha[o - 1])
        parent = ts.vertex_of(o)
        incs.append(tvals[child] - tvals[parent])
    lt = LabelledTree(tree=tc.tree, increments=tuple(incs))
    return WellLabelledTriples(base=tc, labelled=lt)


def _transport_labels(cm, by_halfedge, seq):
    """Push half-edge labels through the slicings of an opening sequence."""
    from .bijection import OpeningSequence, _node_stubs
    from .maps import canonicalize, is_unicellular
    from .surgery import SliceSpec, slice_vertex
    from .errors import InvalidSequence
    nodes = seq.nodes if isinstance(seq, OpeningSequence) else tuple(seq)
    cur = cm
    labels = dict(by_halfedge)
    for i in range(len(nodes) - 1, -1, -1):
        v = nodes[i]
        stubs = _node_stubs(cur).get(v)
        if stubs is None:
            raise InvalidSequence(f"vertex {v} is not a node at step {i + 1}")
        sliced = slice_vertex(cur, SliceSpec(v, stubs))
        if not is_unicellular(sliced):
            raise InvalidSequence(f"slicing {v} disconnected the face")
        rooted, rel = canonicalize(sliced, 1)
        cur = rooted.map
        labels = {rel[h - 1]: x for h, x in labels.items()}
    return {vertex_of(cur, h): x for h, x in labels.items()}


def labelled_psi(wlt):
    """Close a well-labelled tree with triples into a labelled map.

    The three equal labels of each triple become the label of the
    vertex the gluing creates.
    """
    from .bijection import close_psi
    vals = wlt.labelled.labels().values  # raises if inconsistent
    tc = wlt.base
    by_halfedge = {h: vals[vertex_of(tc.tree.map, h)]
                   for h in range(1, 2 * tc.tree.map.n + 1)}
    m, seq = close_psi(tc)
    # gluing merges vertices of equal label; labels keyed by half-edge
    # survive, tracked through close_psi by replaying the relabelings
    from .surgery import GlueSpec, glue_halfedges
    from .bijection import incoming_half_edge
    from .maps import canonicalize
    ts = TreeStructure(tc.tree)
    tracked = [tuple(sorted(incoming_half_edge(ts, tc.triples, v)
                            for v in c)) for c in tc.triples]
    cur = tc.tree.map
    labels = dict(by_halfedge)
    for i in range(len(tc.triples)):
        glued = glue_halfedges(cur, GlueSpec(tuple(sorted(tracked[i]))))
        rooted, rel = canonicalize(glued, 1)
        cur = rooted.map
        labels = {rel[h - 1]: x for h, x in labels.items()}
        tracked = [tuple(rel[h - 1] for h in tr) for tr in tracked]
    out = {vertex_of(cur, h): x for h, x in labels.items()}
    assert cur == m.map
    return m, seq, Labelling(values=out)


@dataclass
class MotzkinTable:
    """Counts of lattice walks with steps in {-1, 0, +1}.

    ``count(m, i)`` is the number of walks of length m from 0 to i; the
    table is symmetric in i and grows one row per length.
    """

    bound: int = MOTZKIN_DEFAULT_BOUND
    _rows: list = field(default_factory=lambda: [{0: 1}])

    def count(self, m, i):
        if m < 0:
            raise OutOfRange("walk length must be nonnegative")
        if m > self.bound:
            raise OrderTooLarge(
                f"walk length {m} exceeds the table bound {self.bound}")
        while len(self._rows) <= m:
            prev = self._rows[-1]
            row = {}
            for j, c in prev.items():
                for d in (-1, 0, 1):
                    row[j + d] = row.get(j + d, 0) + c
            self._rows.append(row)
        return self._rows[m].get(i, 0)


def motzkin_count(m, i, bound=MOTZKIN_DEFAULT_BOUND):
    """Number of {-1, 0, +1}-walks of length m from 0 to i."""
    return MotzkinTable(bound=bound).count(m, i)


# ---------------------------------------------------------------------------
# exact series helpers (coefficient lists of Fractions, index = order)

def _mul(a, b, order):
    out = [Fraction(0)] * (order + 1)
    for i, ai in enumerate(a):
        if not ai or i > order:
            continue
        for j, bj in enumerate(b):
            if i + j > order:
                break
            out[i + j] += ai * bj
    return out


def _inv(a, order):
    """Multiplicative inverse of a series with a[0] != 0."""
    out = [Fraction(0)] * (order + 1)
    out[0] = 1 / Fraction(a[0])
    for k in range(1, order + 1):
        s = Fraction(0)
        for j in range(1, k + 1):
            if j < len(a):
                s += a[j] * out[k - j]
        out[k] = -s / a[0]
    return out


def _compose(a, b, order):
    """a(b(z)) for b with zero constant term."""
    assert not b[0]
    out = [Fraction(0)] * (order + 1)
    power = [Fraction(1)] + [Fraction(0)] * order
    for i, ai in enumerate(a):
        if i > order:
            break
        if ai:
            for k in range(order + 1):
                out[k] += ai * power[k]
        power = _mul(power, b, order)
    return out


def _excursion_series(order):
    """E with E = 1 + tE + t^2 E^2: nonnegative walks ending at 0."""
    e = [Fraction(0)] * (order + 1)
    e[0] = Fraction(1)
    for m in range(1, order + 1):
        s = e[m - 1]
        for i in range(m - 1):
            s += e[i] * e[m - 2 - i]
        e[m] = s
    return e


def _tree_gf(order):
    """C with C = 1 + 3zC^2: plane trees weighted 3 per edge."""
    c = [Fraction(0)] * (order + 1)
    c[0] = Fraction(1)
    for m in range(1, order + 1):
        c[m] = 3 * sum(c[i] * c[m - 1 - i] for i in range(m))
    return c


def _doubly_marked_labelled(i, order):
    """Labelled doubly-marked trees whose marked vertex has label i.

    Exhaustive over trees with up to ``order`` edges: for a mark at
    depth d there are 3^(n-d) ways off the path and one walk of length
    d ending at i per tabulated count.
    """
    from .trees import TreeStructure, all_trees, is_in_T
    table = MotzkinTable(bound=order)
    out = [0] * (order + 1)
    for n in range(1, order + 1):
        total = 0
        for t in all_trees(n):
            ts = TreeStructure(t)
            for v in ts.vertices():
                if v == ts.root_vertex or not is_in_T(ts, v):
                    continue
                d = len(ts.path_openings(v))
                total += 3 ** (n - d) * table.count(d, i)
        out[n] = total
    return out


def series_checks(max_order=12, brute_order=6):
    """Exact identities among the walk and tree series, up to a given order.

    Returns a dict of named booleans; every one should be True.
    """
    order = max_order
    E = _excursion_series(order)
    table = MotzkinTable(bound=order)
    t = [Fraction(0), Fraction(1)] + [Fraction(0)] * (order - 1)
    tE = _mul(t, E, order)
    # M0 = 1 / (1 - t - 2t^2 E)
    denom = [Fraction(1)] * 1 + [Fraction(0)] * order
    denom[0], denom[1] = Fraction(1), Fraction(-1)
    twoT2E = _mul(_mul(t, t, order), E, order)
    for k in range(order + 1):
        denom[k] -= 2 * twoT2E[k]
    M0 = _inv(denom, order)
    checks = {}
    # E solves its quadratic and matches nonnegative-excursion DP
    quad = [Fraction(1)] + [Fraction(0)] * order
    quad = [quad[k] + (E[k - 1] if k >= 1 else 0) for k in range(order + 1)]
    E2 = _mul(E, E, order)
    quad = [quad[k] + (E2[k - 2] if k >= 2 else 0) for k in range(order + 1)]
    checks["excursion_quadratic"] = quad == E
    checks["excursion_dp"] = all(
        E[m] == _nonneg_excursions(m) for m in range(order + 1))
    # M0 matches the central walk counts and the closed form
    checks["central_walks"] = all(
        M0[m] == table.count(m, 0) for m in range(order + 1))
    onepl = [Fraction(1), Fraction(1)] + [Fraction(0)] * (order - 1)
    onem3 = [Fraction(1), Fraction(-3)] + [Fraction(0)] * (order - 1)
    lhs = _mul(_mul(M0, M0, order), _mul(onepl, onem3, order), order)
    checks["central_closed_form"] = lhs == [Fraction(1)] + [Fraction(0)] * order
    # M_i = M0 (tE)^i matches the walk counts to i, and i -> -i symmetry
    ok = True
    Mi = list(M0)
    for i in range(1, 6):
        Mi = _mul(Mi, tE, order)
        ok = ok and all(Mi[m] == table.count(m, i) for m in range(order + 1))
    checks["shifted_walks"] = ok
    checks["walk_symmetry"] = all(
        table.count(m, i) == table.count(m, -i)
        for m in range(order + 1) for i in range(m + 1))
    # C = 1 + 3zC^2 and its closed form via (1 - 6zC)^2 = 1 - 12z
    C = _tree_gf(order)
    sq = [Fraction(1)] + [Fraction(0)] * order
    zC = _mul(t, C, order)
    for k in range(order + 1):
        sq[k] -= 6 * zC[k]
    sq = _mul(sq, sq, order)
    target = [Fraction(1), Fraction(-12)] + [Fraction(0)] * (order - 1)
    checks["tree_gf_closed_form"] = sq == target
    # N_i(z) = M_i(z C(z)^2) - [i = 0] counts labelled doubly-marked trees
    # with mark label i (checked exhaustively to brute_order)
    u = _mul(t, _mul(C, C, order), order)
    ok = True
    Mi = list(M0)
    for i in range(0, 4):
        if i > 0:
            Mi = _mul(Mi, tE, order)
        Ni = _compose(Mi, u, order)
        if i == 0:
            Ni[0] -= 1
        brute = _doubly_marked_labelled(i, brute_order)
        ok = ok and all(Ni[n] == brute[n] for n in range(brute_order + 1))
    checks["doubly_marked_labelled"] = ok
    return checks


def _nonneg_excursions(m):
    """Walks of length m, 0 to 0, staying nonnegative (Motzkin numbers)."""
    row = {0: 1}
    for _ in range(m):
        new = {}
        for j, c in row.items():
            for d in (-1, 0, 1):
                if j + d >= 0:
                    new[j + d] = new.get(j + d, 0) + c
        row = new
    return row.get(0, 0)
