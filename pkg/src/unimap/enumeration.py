"""Exhaustive generators and closed-form counters for unicellular maps.

A canonical unicellular map with n edges is determined by a
fixed-point-free involution on 2n half-edges (the face permutation is
pinned to (1, 2, ..., 2n)), so exhaustive enumeration walks the
(2n-1)!! involutions and filters by genus.  Closed formulas cover
plane trees, doubly-marked trees, trivalent schemes and the asymptotic
number of dominant maps.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import permutations as perm
from .errors import GenusOutOfRange, OutOfRange, ResourceBound
from .maps import RootedMap, canonical_gamma, genus, make_map
from .scheme import is_dominant, scheme_of

DEFAULT_BUDGET = 10 ** 8


def involutions(n):
    """Fixed-point-free involutions on [1, 2n], smallest unpaired first.

    Yields (2n-1)!! permutations as tuples.
    """
    size = 2 * n
    pairing = [0] * size

    def rec(done):
        i = 0
        while i < size and pairing[i]:
            i += 1
        if i == size:
            yield tuple(pairing)
            return
        for j in range(i + 1, size):
            if not pairing[j]:
                pairing[i], pairing[j] = j + 1, i + 1
                yield from rec(done + 1)
                pairing[i], pairing[j] = 0, 0

    yield from rec(0)


def enum_unicellular(g, n, budget=DEFAULT_BUDGET):
    """All rooted unicellular maps of genus g with n edges, canonical form.

    The face permutation is (1, ..., 2n) and beta = gamma o alpha; maps
    are yielded in lexicographic order of alpha.
    """
    if g < 0 or n < 1 or n < 2 * g:
        raise GenusOutOfRange(f"no unicellular maps of genus {g} with {n} edges")
    gam = canonical_gamma(n)
    count = 0
    for alpha in involutions(n):
        count += 1
        if count > budget:
            raise ResourceBound(f"enumeration budget {budget} exhausted")
        beta = perm.compose(gam, alpha)
        if perm.cycle_count(beta) == n + 1 - 2 * g:
            yield RootedMap(map=make_map(alpha, beta))


def enum_dominant(g, n, budget=DEFAULT_BUDGET):
    """Dominant (trivalent-scheme) unicellular maps of genus g with n edges."""
    for m in enum_unicellular(g, n, budget):
        if is_dominant(m.map):
            yield m


def enum_schemes(g, budget=DEFAULT_BUDGET):
    """All schemes of genus g: unicellular maps with minimum degree 3.

    Iterates edge counts from 2g to 6g-3 and keeps the maps that equal
    their own scheme.  Yields (n, map) pairs.
    """
    if g < 1:
        raise GenusOutOfRange("schemes need genus at least 1")
    for n in range(2 * g, 6 * g - 2):
        for m in enum_unicellular(g, n, budget):
            degs = [len(c) for c in perm.cycles(m.map.beta)]
            if min(degs) >= 3:
                yield n, m


def _triple_lists(vs, g):
    """Ordered lists of g pairwise-disjoint triples from a vertex list."""
    if g == 0:
        yield ()
        return
    import itertools
    for first in itertools.combinations(vs, 3):
        rest = [v for v in vs if v not in first]
        for tail in _triple_lists(rest, g - 1):
            yield (first,) + tail


def enum_trees_with_triples(g, n, budget=DEFAULT_BUDGET):
    """All trees with n edges and g ordered disjoint non-singular triples.

    These are exactly the openings of dominant genus-g maps; there are
    2^g g! of them per map.
    """
    from .bijection import TreeWithTriples, is_non_singular
    from .maps import vertices
    from .trees import TreeStructure, all_trees
    if g < 0 or n + 1 - 3 * g < 0:
        raise GenusOutOfRange(f"no trees with {g} triples on {n} edges")
    count = 0
    for t in all_trees(n):
        ts = TreeStructure(t)
        vs = vertices(t)
        for triples in _triple_lists(vs, g):
            count += 1
            if count > budget:
                raise ResourceBound(f"enumeration budget {budget} exhausted")
            union = set().union(*triples) if triples else set()
            if g and not is_non_singular(ts, union):
                continue
            if any(not is_non_singular(ts, set(c)) for c in triples):
                continue
            yield TreeWithTriples(tree=RootedMap(map=t),
                                  triples=tuple(frozenset(c) for c in triples))


def catalan(n):
    if n < 0:
        raise OutOfRange("Catalan numbers start at n = 0")
    return math.comb(2 * n, n) // (n + 1)


def halfT(n):
    """Number of doubly-marked trees with n edges: binom(2n, n) / 2."""
    if n < 1:
        raise OutOfRange("doubly-marked trees need at least one edge")
    return math.comb(2 * n, n) // 2


def marked_trees(g, n):
    """Trees with n edges carrying g ordered pairwise-disjoint vertex
    triples (no non-singularity requirement): (2n)! / (6^g n! (n+1-3g)!).
    """
    if g < 0 or n + 1 - 3 * g < 0:
        raise OutOfRange(f"no trees with {g} triples on {n} edges")
    return math.factorial(2 * n) // (
        6 ** g * math.factorial(n) * math.factorial(n + 1 - 3 * g))


def dominant_schemes(g):
    """Number of trivalent schemes of genus g: 2 (6g-3)! / (12^g g! (3g-2)!)."""
    if g < 1:
        raise OutOfRange("trivalent schemes need genus at least 1")
    return 2 * math.factorial(6 * g - 3) // (
        12 ** g * math.factorial(g) * math.factorial(3 * g - 2))


def tstar(g):
    """Number of trivalent scheme shapes weighted by openings:
    2 (6g-3)! / ((3g)! (3g-2)!)."""
    if g < 1:
        raise OutOfRange("needs genus at least 1")
    return 2 * math.factorial(6 * g - 3) // (
        math.factorial(3 * g) * math.factorial(3 * g - 2))


def u_asym(g, n):
    """First-order asymptotics of the number of genus-g unicellular maps:
    n^{(6g-3)/2} 4^n / (12^g g! sqrt(pi))."""
    if g < 0 or n < 1:
        raise OutOfRange("needs g >= 0 and n >= 1")
    return n ** ((6 * g - 3) / 2) * 4.0 ** n / (
        12 ** g * math.factorial(g) * math.sqrt(math.pi))


def _tree_series(order):
    """Coefficients of T(z) = sum_n (n+1)/2 Cat(n) z^n for n >= 1."""
    return [Fraction(0)] + [Fraction((n + 1) * catalan(n), 2)
                            for n in range(1, order + 1)]


def _series_mul(a, b, order):
    out = [Fraction(0)] * (order + 1)
    for i, ai in enumerate(a[:order + 1]):
        if not ai:
            continue
        for j, bj in enumerate(b[:order + 1 - i]):
            out[i + j] += ai * bj
    return out


def _series_pow(a, k, order):
    out = [Fraction(0)] * (order + 1)
    out[0] = Fraction(1)
    for _ in range(k):
        out = _series_mul(out, a, order)
    return out


def eq_doublerooting_check(g, n_max, budget=DEFAULT_BUDGET):
    """Check U_g(z) = z d/dz sum over genus-g schemes of T^{e(s)} / e(s).

    T counts doubly-rooted trees by half the edge count of the scheme
    edge they subdivide; the derivative re-roots the map.  Returns the
    two coefficient lists (enumerated, predicted) for n = 0..n_max.
    """
    edge_counts = [n for n, _ in enum_schemes(g, budget)]
    T = _tree_series(n_max)
    rhs = [Fraction(0)] * (n_max + 1)
    for e in edge_counts:
        for i, c in enumerate(_series_pow(T, e, n_max)):
            rhs[i] += Fraction(c, e)
    predicted = [n * rhs[n] for n in range(n_max + 1)]
    counted = [Fraction(0)] * (n_max + 1)
    for n in range(2 * g, n_max + 1):
        counted[n] = Fraction(sum(1 for _ in enum_unicellular(g, n, budget)))
    return counted, predicted


@dataclass
class CountTable:
    """Rows (g, n, count, generator) ready for CSV output."""

    rows: list = field(default_factory=list)

    def add(self, g, n, count, generator):
        self.rows.append((g, n, count, generator))

    def to_csv(self):
        lines = ["g,n,count,generator"]
        for g, n, count, generator in self.rows:
            lines.append(f"{g},{n},{count},{generator}")
        return "\n".join(lines) + "\n"


def count_unicellular(g, n, budget=DEFAULT_BUDGET):
    return sum(1 for _ in enum_unicellular(g, n, budget))


def count_dominant(g, n, budget=DEFAULT_BUDGET):
    return sum(1 for _ in enum_dominant(g, n, budget))
