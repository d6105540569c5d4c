"""Random generation and the statistics that estimate map counts.

Uniform labelled plane trees are drawn by the cycle lemma; dominant
maps and well-labelled trees with triples follow by rejection and by
closing.  The cubes of the label-class sizes drive everything: with
X(k) vertices of label k, the rescaled statistic

    W_n = sum_k X(k)^3 / (gamma^2 n^{5/2}),    gamma = 3^{1/2} 2^{-1/4},

has moments that give the asymptotic count of genus-g maps, namely
t_g = lim n^{-(6g-3)/2} 4^{-n} |U_{g,n}|, in two ways: through
E[W_n^g] directly, and through the probability that 3g independent
uniform vertices split into g equal-label triples.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels
from .errors import EmptyClass, OutOfRange
from .maps import RootedMap, vertex_of
from .trees import TreeStructure, tree_from_dyck

GAMMA = math.sqrt(3.0) / 2.0 ** 0.25
GAMMA2 = 3.0 / math.sqrt(2.0)


class SeededRng:
    """PCG64 generator with a fixed integer seed."""

    def __init__(self, seed=0):
        self.seed = int(seed)
        self.gen = np.random.Generator(np.random.PCG64(self.seed))


def _dyck_steps(n, rng):
    r = rng.gen.random(2 * n + 1)
    steps = np.empty(2 * n, dtype=np.int8)
    _kernels.fill_dyck(r, steps)
    return steps


def sample_plane_tree(n, rng):
    """Uniform plane tree with n edges (cycle lemma)."""
    if n < 1:
        raise OutOfRange("a plane tree needs at least one edge")
    steps = _dyck_steps(n, rng)
    word = [1 if s == 1 else 0 for s in steps]
    return RootedMap(map=tree_from_dyck(word))


def sample_labelled_tree(n, rng):
    """Uniform labelled tree: tree and edge increments drawn independently."""
    from .labelled import LabelledTree
    if n < 1:
        raise OutOfRange("a labelled tree needs at least one edge")
    steps = _dyck_steps(n, rng)
    rinc = rng.gen.random(n)
    incs = tuple(int(min(int(x * 3.0), 2)) - 1 for x in rinc)
    word = [1 if s == 1 else 0 for s in steps]
    return LabelledTree(tree=RootedMap(map=tree_from_dyck(word)),
                        increments=incs)


def _vertex_ids_by_creation(steps):
    """Map creation index -> vertex id (minimum half-edge of the vertex)."""
    ids = [1]
    for pos, s in enumerate(steps, start=1):
        if s == 1:
            ids.append(pos + 1)
    return ids


def w_statistic(t, n=None):
    """W_n = sum of cubed label-class sizes over gamma^2 n^{5/2}.

    Accepts a LabelledTree or a raw array of vertex labels.
    """
    if hasattr(t, "labels"):
        vals = t.labels().values
        labels = np.fromiter(vals.values(), dtype=np.int64)
    else:
        labels = np.asarray(t, dtype=np.int64)
    if n is None:
        n = labels.shape[0] - 1
    s, _, _ = _kernels.label_class_cubes(labels, labels.shape[0])
    return float(s) / (GAMMA2 * n ** 2.5)


def sample_tree_with_triples(g, n, rng, max_tries=10 ** 6):
    """Uniform tree with g ordered disjoint non-singular triples.

    Draws a uniform tree and 3g uniform distinct vertices grouped into
    triples, and rejects until the union is non-singular.
    """
    from .bijection import TreeWithTriples, is_non_singular
    if n + 1 < 3 * g or g < 1:
        raise OutOfRange(f"no trees with {g} triples on {n} edges")
    for _ in range(max_tries):
        steps = _dyck_steps(n, rng)
        picks = rng.gen.choice(n + 1, size=3 * g, replace=False)
        word = [1 if s == 1 else 0 for s in steps]
        tree = tree_from_dyck(word)
        ids = _vertex_ids_by_creation(steps)
        marks = [ids[p] for p in picks]
        triples = tuple(frozenset(marks[3 * i:3 * i + 3]) for i in range(g))
        ts = TreeStructure(tree)
        if not is_non_singular(ts, set(marks)):
            continue
        return TreeWithTriples(tree=RootedMap(map=tree), triples=triples)
    raise EmptyClass(f"no valid triple configuration found in {max_tries} tries")


def sample_dominant_map(g, n, rng, max_tries=10 ** 6):
    """Uniform dominant unicellular map of genus g with n edges.

    Closes a uniform tree with g triples; uniformity carries over
    because opening and closing are mutually inverse and every map has
    the same number (2^g g!) of openings.
    """
    from .bijection import close_psi
    tc = sample_tree_with_triples(g, n, rng, max_tries)
    m, _ = close_psi(tc)
    return m


def sample_well_labelled(g, n, rng, max_tries=10 ** 7):
    """Uniform well-labelled tree with g triples (equal labels per triple).

    A uniform labelled tree is drawn; each triple picks a label class
    with probability proportional to (class size)^3 and then three
    class vertices with replacement, which makes every ordered choice
    of triples equally likely given the tree, with total weight 1/S^g
    where S is the sum of cubed class sizes.  Accepting the draw with
    probability (S / (n+1)^3)^g then makes the law uniform; draws with
    repeated vertices or a singular union are rejected wholesale.
    """
    steps, rinc, labels, marks = _well_labelled_raw(g, n, rng, max_tries)
    return _wrap_well_labelled(g, steps, rinc, marks)


def _well_labelled_raw(g, n, rng, max_tries=10 ** 7):
    """Accepted draw as raw arrays: (steps, increments, labels, marks).

    ``marks`` holds g lists of three creation indices; labels are
    indexed by creation order.
    """
    from .bijection import is_non_singular
    if n + 1 < 3 * g or g < 1:
        raise OutOfRange(f"no trees with {g} triples on {n} edges")
    denom = float(n + 1) ** 3
    for _ in range(max_tries):
        steps = _dyck_steps(n, rng)
        rinc = rng.gen.random(n)
        labels = np.empty(n + 1, dtype=np.int64)
        _kernels.tree_labels(steps, rinc, labels)
        s, lo, hi = _kernels.label_class_cubes(labels, n + 1)
        if rng.gen.random() >= (float(s) / denom) ** g:
            continue
        counts = np.bincount((labels - lo).astype(np.int64))
        weights = counts.astype(np.float64) ** 3
        weights /= weights.sum()
        marks = []
        for _ in range(g):
            k = rng.gen.choice(weights.shape[0], p=weights)
            members = np.flatnonzero(labels - lo == k)
            marks.append([int(members[j]) for j in
                          rng.gen.integers(0, members.shape[0], size=3)])
        flat = [v for tr in marks for v in tr]
        if len(set(flat)) != 3 * g:
            continue
        word = [1 if x == 1 else 0 for x in steps]
        tree = tree_from_dyck(word)
        ids = _vertex_ids_by_creation(steps)
        ts = TreeStructure(tree)
        if not is_non_singular(ts, {ids[v] for v in flat}):
            continue
        return steps, rinc, labels, marks
    raise EmptyClass(f"no accepted draw in {max_tries} tries")


def _wrap_well_labelled(g, steps, rinc, marks):
    from .bijection import TreeWithTriples
    from .labelled import LabelledTree, WellLabelledTriples
    word = [1 if x == 1 else 0 for x in steps]
    tree = tree_from_dyck(word)
    ids = _vertex_ids_by_creation(steps)
    triples = tuple(frozenset(ids[v] for v in tr) for tr in marks)
    incs = tuple(int(min(int(x * 3.0), 2)) - 1 for x in rinc)
    base = TreeWithTriples(tree=RootedMap(map=tree), triples=triples)
    lt = LabelledTree(tree=base.tree, increments=incs)
    return WellLabelledTriples(base=base, labelled=lt)


@dataclass
class Estimate:
    """A Monte-Carlo estimate with its standard error."""

    g: int
    n: int
    samples: int
    method: str
    value: float
    stderr: float

    def csv_row(self):
        return (f"{self.g},{self.n},{self.samples},{self.method},"
                f"{self.value!r},{self.stderr!r}")

    @staticmethod
    def csv_header():
        return "g,n,samples,method,value,stderr"


def _batch_cubes(n, samples, rng, chunk=1024):
    out = np.empty(samples, dtype=np.int64)
    done = 0
    while done < samples:
        b = min(chunk, samples - done)
        rshuffle = rng.gen.random((b, 2 * n + 1))
        rinc = rng.gen.random((b, n))
        _kernels.batch_label_cubes(rshuffle, rinc, out[done:done + b])
        done += b
    return out


def tg_limit(g):
    """Conjectural limit the estimators target: t_0 exactly, via the
    moments of W for g >= 1 only through the estimators themselves."""
    if g == 0:
        return 2.0 / math.sqrt(math.pi)
    raise OutOfRange("closed forms are only wired in for genus 0")


def estimate_tg_moment(g, n, samples, rng):
    """Estimate t_g as 2 gamma^{2g} E[W_n^g] / (12^g g! sqrt(pi)).

    For g = 0 the estimator is deterministic and equals 2/sqrt(pi).
    """
    if g == 0:
        return Estimate(g=0, n=n, samples=samples, method="moment",
                        value=2.0 / math.sqrt(math.pi), stderr=0.0)
    cubes = _batch_cubes(n, samples, rng)
    w = cubes.astype(np.float64) / (GAMMA2 * float(n) ** 2.5)
    vals = w ** g
    factor = 2.0 * GAMMA ** (2 * g) / (
        12 ** g * math.factorial(g) * math.sqrt(math.pi))
    mean = float(vals.mean())
    sd = float(vals.std(ddof=1)) / math.sqrt(samples)
    return Estimate(g=g, n=n, samples=samples, method="moment",
                    value=factor * mean, stderr=factor * sd)


def estimate_tg_probability(g, n, samples, rng):
    """Estimate t_g as 2 n^{g/2} P / (12^g g! sqrt(pi)), with P the
    probability that 3g independent uniform vertices of a uniform
    labelled tree form g triples of equal labels.

    P is computed exactly per sample as (S / (n+1)^3)^g.
    """
    if g == 0:
        return Estimate(g=0, n=n, samples=samples, method="probability",
                        value=2.0 / math.sqrt(math.pi), stderr=0.0)
    cubes = _batch_cubes(n, samples, rng)
    p = (cubes.astype(np.float64) / float(n + 1) ** 3) ** g
    factor = 2.0 * float(n) ** (g / 2.0) / (
        12 ** g * math.factorial(g) * math.sqrt(math.pi))
    mean = float(p.mean())
    sd = float(p.std(ddof=1)) / math.sqrt(samples)
    return Estimate(g=g, n=n, samples=samples, method="probability",
                    value=factor * mean, stderr=factor * sd)


@dataclass
class LabelHistogram:
    """Exact class sizes of a labelled tree, indexed by label value."""

    counts: dict

    @staticmethod
    def from_labels(labels):
        vals, counts = np.unique(np.asarray(labels), return_counts=True)
        return LabelHistogram(counts={int(v): int(c)
                                      for v, c in zip(vals, counts)})


@dataclass
class ProfileMeasure:
    """A finitely supported measure on gamma n^{-1/4} Z with exact masses.

    ``masses`` maps the integer position k to a Fraction; the physical
    atom sits at gamma n^{-1/4} k.
    """

    n: int
    g: int
    masses: dict = field(default_factory=dict)

    def scale(self):
        return GAMMA * self.n ** -0.25

    def total_mass(self):
        return sum(self.masses.values(), Fraction(0))

    def csv_rows(self):
        rows = ["k,position,mass"]
        for k in sorted(self.masses):
            rows.append(f"{k},{k * self.scale()!r},{self.masses[k]}")
        return rows


def profile_measure(g, n, labels, mark_labels):
    """Distance profile of a labelled one-face map seen from a random vertex.

    With lambda the minimum label, the vertex at position k >= 1 counts
    the X(lambda + k - 1) vertices of that label; closing the g triples
    removes two of the three marked vertices each, and the root face
    contributes the atom at 0.  Masses are exact with denominator
    n + 2 - 2g, and sum to exactly 1.
    """
    labels = np.asarray(labels, dtype=np.int64)
    lam = int(labels.min())
    denom = n + 2 - 2 * g
    masses = {0: Fraction(1, denom)}
    vals, counts = np.unique(labels, return_counts=True)
    for v, c in zip(vals, counts):
        k = int(v) - lam + 1
        masses[k] = masses.get(k, Fraction(0)) + Fraction(int(c), denom)
    for ml in mark_labels:
        k = int(ml) - lam + 1
        masses[k] -= Fraction(2, denom)
    return ProfileMeasure(n=n, g=g, masses=masses)


def _labels_of(w):
    """Label array (any order) from a WellLabelledTriples or raw array."""
    if hasattr(w, "labelled"):
        vals = w.labelled.labels().values
        return np.fromiter(vals.values(), dtype=np.int64)
    return np.asarray(w, dtype=np.int64)


def radius(w, n=None):
    """gamma n^{-1/4} (max label - min label + 1)."""
    labels = _labels_of(w)
    if n is None:
        n = labels.shape[0] - 1
    return GAMMA * n ** -0.25 * float(labels.max() - labels.min() + 1)


def profile_of(wlt):
    """Corrected profile of one well-labelled tree with triples."""
    vals = wlt.labelled.labels().values
    labels = np.fromiter(vals.values(), dtype=np.int64)
    mark_labels = [vals[min(c)] for c in wlt.base.triples]
    n = wlt.labelled.tree.map.n
    return profile_measure(len(wlt.base.triples), n, labels, mark_labels)


def profile_statistics(g, n, samples, rng):
    """Pooled profile over uniform well-labelled trees with g triples.

    Returns (pooled ProfileMeasure, list of radii); the pooled masses
    remain exact Fractions, so the result is bit-reproducible for a
    fixed seed.
    """
    pooled = {}
    radii = []
    for _ in range(samples):
        steps, rinc, labels, marks = _well_labelled_raw(g, n, rng)
        mark_labels = [int(labels[tr[0]]) for tr in marks]
        pm = profile_measure(g, n, labels, mark_labels)
        for k, mass in pm.masses.items():
            pooled[k] = pooled.get(k, Fraction(0)) + mass
        radii.append(radius(labels, n=n))
    out = ProfileMeasure(n=n, g=g,
                         masses={k: m / samples for k, m in pooled.items()})
    return out, radii
