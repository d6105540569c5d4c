"""Permutations of ``[1, 2n]`` stored as tuples of images.

A permutation ``p`` on ``[1, size]`` is a tuple of length ``size`` whose
entry at index ``i - 1`` is the image of ``i``.  All half-edge labels in
this package are 1-based; the off-by-one is confined to this module.
"""

from .errors import LengthMismatch, NotInvolution

Perm = tuple


def identity(size):
    """The identity permutation on ``[1, size]``."""
    return tuple(range(1, size + 1))


def apply(p, i):
    """Image of ``i`` under ``p``."""
    return p[i - 1]


def compose(p, q):
    """The permutation ``p o q``, i.e. ``i -> p(q(i))``."""
    if len(p) != len(q):
        raise LengthMismatch(f"composing lengths {len(p)} and {len(q)}")
    return tuple(p[x - 1] for x in q)


def inverse(p):
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x - 1] = i + 1
    return tuple(inv)


def conjugate(p, rel):
    """The permutation ``rel o p o rel^-1`` (relabeling of ``p`` by ``rel``)."""
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[rel[i] - 1] = rel[x - 1]
    return tuple(out)


def is_permutation(p):
    return sorted(p) == list(range(1, len(p) + 1))


def cycles(p):
    """Cycles of ``p``, each written from its minimum, sorted by minimum.

    >>> cycles((1, 2, 3, 4))
    [(1,), (2,), (3,), (4,)]
    >>> cycles((4, 5, 1, 3, 6, 2))
    [(1, 4, 3), (2, 5, 6)]
    """
    seen = [False] * len(p)
    out = []
    for start in range(1, len(p) + 1):
        if seen[start - 1]:
            continue
        cyc = []
        i = start
        while not seen[i - 1]:
            seen[i - 1] = True
            cyc.append(i)
            i = p[i - 1]
        out.append(tuple(cyc))
    return out


def cycle_count(p):
    """Number of cycles of ``p`` (written ``|p|`` in cycle-count identities)."""
    seen = [False] * len(p)
    count = 0
    for start in range(len(p)):
        if seen[start]:
            continue
        count += 1
        i = start
        while not seen[i]:
            seen[i] = True
            i = p[i] - 1
    return count


def cycle_through(p, i):
    """The cycle of ``p`` containing ``i``, written starting at ``i``."""
    cyc = [i]
    j = p[i - 1]
    while j != i:
        cyc.append(j)
        j = p[j - 1]
    return tuple(cyc)


def from_cycles(size, cycle_list):
    """Build a permutation from a list of cycles; missing points are fixed.

    >>> from_cycles(4, [(1, 3), (2, 4)])
    (3, 4, 1, 2)
    """
    images = list(range(1, size + 1))
    for cyc in cycle_list:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            images[a - 1] = b
    return tuple(images)


def check_involution(p):
    """Raise NotInvolution unless ``p`` is a fixed-point-free involution."""
    for i, x in enumerate(p):
        if x == i + 1:
            raise NotInvolution(f"fixed point at {i + 1}")
        if p[x - 1] != i + 1:
            raise NotInvolution(f"not an involution at {i + 1}")
