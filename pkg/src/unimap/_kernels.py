"""Compiled inner loops for sampling and exhaustive counting.

Random plane trees come from the cycle lemma: shuffle n up-steps among
2n+1 steps, rotate to start right after the unique minimum of the
prefix sums, and drop the trailing down-step.  Labels are propagated
with an explicit stack while reading the resulting balanced word.

All randomness enters as pre-drawn uniform floats, so results are
bit-reproducible for a fixed seed.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def fill_dyck(rshuffle, steps):
    """Uniform balanced word (n ups, n downs) into ``steps`` (+-1).

    ``rshuffle`` holds 2n+1 uniforms; the word is drawn by the cycle
    lemma from a shuffled sequence with one extra down-step.
    """
    m = rshuffle.shape[0]  # 2n + 1
    n = (m - 1) // 2
    buf = np.empty(m, dtype=np.int8)
    for i in range(m):
        buf[i] = 1 if i < n else -1
    for i in range(m - 1, 0, -1):
        j = int(rshuffle[i] * (i + 1))
        if j > i:
            j = i
        buf[i], buf[j] = buf[j], buf[i]
    # position after which the prefix sum first attains its minimum
    best = 0
    best_pos = -1
    s = 0
    for i in range(m):
        s += buf[i]
        if s < best:
            best = s
            best_pos = i
    for i in range(2 * n):
        steps[i] = buf[(best_pos + 1 + i) % m]


@njit(cache=True)
def tree_labels(steps, rinc, labels):
    """Vertex labels of a uniformly labelled tree read off a balanced word.

    Vertex 0 is the root; the k-th up-step creates vertex k whose label
    differs from its parent's by an increment in {-1, 0, +1} drawn from
    ``rinc[k-1]``.  Returns the number of vertices.
    """
    n = steps.shape[0] // 2
    stack = np.empty(n + 1, dtype=np.int64)
    stack[0] = 0
    labels[0] = 0
    top = 0
    k = 0
    for i in range(2 * n):
        if steps[i] == 1:
            inc = int(rinc[k] * 3.0) - 1
            if inc > 1:
                inc = 1
            lab = stack[top] + inc
            k += 1
            labels[k] = lab
            top += 1
            stack[top] = lab
        else:
            top -= 1
    return n + 1


@njit(cache=True)
def label_class_cubes(labels, nv):
    """Sum over label classes of (class size)^3, and the label range.

    Returns (S, min label, max label).
    """
    lo = labels[0]
    hi = labels[0]
    for i in range(nv):
        if labels[i] < lo:
            lo = labels[i]
        if labels[i] > hi:
            hi = labels[i]
    width = hi - lo + 1
    counts = np.zeros(width, dtype=np.int64)
    for i in range(nv):
        counts[labels[i] - lo] += 1
    s = np.int64(0)
    for c in counts:
        s += c * c * c
    return s, lo, hi


@njit(cache=True)
def batch_label_cubes(rshuffle, rinc, out_s):
    """S = sum of cubed label-class sizes for a batch of labelled trees."""
    b = rshuffle.shape[0]
    n = rinc.shape[1]
    steps = np.empty(2 * n, dtype=np.int8)
    labels = np.empty(n + 1, dtype=np.int64)
    for t in range(b):
        fill_dyck(rshuffle[t], steps)
        nv = tree_labels(steps, rinc[t], labels)
        s, _, _ = label_class_cubes(labels, nv)
        out_s[t] = s


@njit(cache=True)
def count_trivalent_schemes(n):
    """Number of fixed-point-free involutions a on [1, 2n] such that every
    cycle of (1 ... 2n) o a has length 3.

    These are the canonical unicellular maps that are their own
    trivalent scheme; the face count, hence the genus, is forced by the
    vertex count.
    """
    m = 2 * n
    pair = np.zeros(m + 1, dtype=np.int64)
    stack_i = np.empty(m + 1, dtype=np.int64)
    stack_j = np.empty(m + 1, dtype=np.int64)
    depth = 0
    total = np.int64(0)
    # iterative smallest-unpaired-first pairing with backtracking
    i = 1
    j = 1
    while True:
        while i <= m and pair[i] != 0:
            i += 1
        if i > m:
            # complete involution: check all vertex cycles have length 3
            good = True
            seen = np.zeros(m + 1, dtype=np.int8)
            for h in range(1, m + 1):
                if seen[h]:
                    continue
                length = 0
                c = h
                while seen[c] == 0:
                    seen[c] = 1
                    length += 1
                    nxt = pair[c] + 1  # beta = gamma o alpha
                    if nxt > m:
                        nxt = 1
                    c = nxt
                if length != 3:
                    good = False
                    break
            if good:
                total += 1
            # backtrack
            if depth == 0:
                return total
            depth -= 1
            i = stack_i[depth]
            j = stack_j[depth]
            pair[i] = 0
            pair[j] = 0
            j += 1
            continue
        found = False
        while j <= m:
            if pair[j] == 0 and j != i:
                found = True
                break
            j += 1
        if not found:
            if depth == 0:
                return total
            depth -= 1
            i = stack_i[depth]
            j = stack_j[depth]
            pair[i] = 0
            pair[j] = 0
            j += 1
            continue
        pair[i] = j
        pair[j] = i
        stack_i[depth] = i
        stack_j[depth] = j
        depth += 1
        i = 1
        j = i + 1
