"""Recursive-design classification.

A regular design is recursive when all of its columns can be reached from
some linearly independent starting set by repeatedly forming c1*w1 + c2*w2
from two distinct already-reached columns, where the result must itself be a
column of the design. Coefficient regimes, from most to least restrictive:

    type I   : c1, c2 in {1, q-1}
    type II  : c1 in {1, q-1}, c2 unrestricted (nonzero)
    type III : both coefficients unrestricted (nonzero)

Type I implies type II implies type III by set inclusion of the regimes.
"""

import enum
from itertools import combinations

import numpy as np

from .designs import GeneratorSet
from .errors import InputError
from .fieldmath import PrimeLevel, rank_mod


class RecursiveType(enum.Enum):
    TYPE_I = "TypeI"
    TYPE_II = "TypeII"
    TYPE_III = "TypeIII"
    NOT_RECURSIVE = "NotRecursive"

    def __str__(self):
        return self.value


def _closure_reaches_all(cols, start, c1_vals, c2_vals, q) -> bool:
    """Saturate the reachable set from `start`; True if all columns land."""
    n, d = cols.shape
    pows = q ** np.arange(d - 1, -1, -1)
    code_of = {int(c): i for i, c in enumerate(cols @ pows)}
    reached = np.zeros(n, dtype=bool)
    reached[list(start)] = True
    c1 = np.asarray(sorted(c1_vals), dtype=np.int64)
    c2 = np.asarray(sorted(c2_vals), dtype=np.int64)
    while reached.sum() < n:
        V = cols[np.flatnonzero(reached)]
        t = len(V)
        combo = (
            c1[:, None, None, None, None] * V[None, :, None, None, :]
            + c2[None, None, :, None, None] * V[None, None, None, :, :]
        ) % q
        codes = combo @ pows
        # the two source columns must be distinct
        same = np.eye(t, dtype=bool)
        codes = np.where(same[None, :, None, :], -1, codes)
        added = False
        for code in np.unique(codes):
            idx = code_of.get(int(code))
            if idx is not None and not reached[idx]:
                reached[idx] = True
                added = True
        if not added:
            return False
    return True


def classify(gen: GeneratorSet) -> RecursiveType:
    """Strongest recursive type of the design, or NOT_RECURSIVE.

    Tries every linearly independent (n-m)-subset of the n columns as the
    starting set; the successful start need not be the defining independent
    columns.
    """
    q = gen.q
    cols = gen.column_vectors()
    n, d = cols.shape
    starts = [
        s for s in combinations(range(n), d) if rank_mod(cols[list(s)], q) == d
    ]
    regimes = (
        (RecursiveType.TYPE_I, {1, q - 1}, {1, q - 1}),
        (RecursiveType.TYPE_II, {1, q - 1}, set(range(1, q))),
        (RecursiveType.TYPE_III, set(range(1, q)), set(range(1, q))),
    )
    for label, c1_vals, c2_vals in regimes:
        if any(_closure_reaches_all(cols, s, c1_vals, c2_vals, q) for s in starts):
            return label
    return RecursiveType.NOT_RECURSIVE


def count_recursive(q: PrimeLevel, n: int):
    """Tally (type I, type II, type III) over the reduced two-independent-
    column generator space; counts are cumulative, a type-I design adds to
    all three.
    """
    from .optimal import enumerate_q2_generators

    if q not in (5, 7):
        raise InputError(f"counts are tabulated for q in {{5, 7}}, got {q}")
    if not 3 <= n <= q + 1:
        raise InputError(f"n={n} out of range 3..{q + 1} for q={q}")
    c1 = c2 = c3 = 0
    for gen in enumerate_q2_generators(q, n):
        label = classify(gen)
        if label is RecursiveType.TYPE_I:
            c1 += 1
            c2 += 1
            c3 += 1
        elif label is RecursiveType.TYPE_II:
            c2 += 1
            c3 += 1
        elif label is RecursiveType.TYPE_III:
            c3 += 1
    return c1, c2, c3
