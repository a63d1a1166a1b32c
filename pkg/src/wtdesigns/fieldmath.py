"""Arithmetic over Z_q for an odd prime q.

Primality validation, matrix rank over the prime field, and deterministic
tuple enumeration. Everything here is pure and cheap; every other module
builds on these.
"""

from itertools import product
from typing import Iterator

import numpy as np

from .errors import InputError

# A validated odd-prime level count. Plain int at runtime; the alias marks
# values that went through check_odd_prime.
PrimeLevel = int


def check_odd_prime(q) -> PrimeLevel:
    """Validate that q is an odd prime and return it as a plain int.

    Trial division only. Level counts stay far below 10**4 in practice,
    so deterministic trial division beats any probabilistic test on
    simplicity alone.
    """
    if isinstance(q, bool) or not isinstance(q, (int, np.integer)):
        raise InputError(f"level count must be an integer, got {q!r}")
    q = int(q)
    if q < 3:
        raise InputError(f"level count must be at least 3, got {q}")
    if q % 2 == 0:
        raise InputError(f"level count must be odd, got even value {q}")
    d = 3
    while d * d <= q:
        if q % d == 0:
            raise InputError(
                f"level count must be prime, got composite {q} = {d} * {q // d}"
            )
        d += 2
    return q


def rank_mod(M, q: PrimeLevel) -> int:
    """Rank of an integer matrix over the field with q elements.

    Gaussian elimination with exact integer arithmetic mod q.
    """
    A = np.atleast_2d(np.asarray(M, dtype=np.int64)) % q
    if A.ndim != 2:
        raise InputError("rank_mod expects a 2-D array")
    nrow, ncol = A.shape
    r = 0
    for c in range(ncol):
        piv = None
        for i in range(r, nrow):
            if A[i, c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), -1, q)
        A[r] = (A[r] * inv) % q
        for i in range(nrow):
            if i != r and A[i, c]:
                A[i] = (A[i] - A[i, c] * A[r]) % q
        r += 1
        if r == nrow:
            break
    return r


def enumerate_tuples(q: PrimeLevel, k: int) -> Iterator[tuple]:
    """All q**k tuples of Z_q^k in lexicographic order, last coordinate fastest.

    The ordering is part of the contract: design row order, file output and
    test goldens all depend on it being stable.
    """
    if k < 1:
        raise InputError(f"tuple length must be at least 1, got {k}")
    return product(range(q), repeat=k)


def full_factorial(q: PrimeLevel, k: int) -> np.ndarray:
    """The q**k x k level array whose rows follow enumerate_tuples order."""
    if k < 1:
        raise InputError(f"column count must be at least 1, got {k}")
    idx = np.arange(q**k, dtype=np.int64)
    cols = [(idx // q**j) % q for j in range(k - 1, -1, -1)]
    return np.stack(cols, axis=1)
