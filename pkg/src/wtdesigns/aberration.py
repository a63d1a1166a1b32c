"""Aliasing measures: the beta wordlength pattern and its sequential ordering.

For a design with rows x_i and the orthonormal contrast basis p_u,

    beta_k = N^-2 * sum over exponent vectors u with |u|_1 = k of
             | sum_i prod_j p_{u_j}(x_ij) |^2,

with each u_j capped at q-1. The pattern (beta_1, ..., beta_K), K = n(q-1),
quantifies how much degree-k polynomial structure is aliased with the mean;
designs are ranked by sequentially minimizing beta_3, beta_4, ...
(strength-2 arrays already have beta_1 = beta_2 = 0).
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .designs import Design
from .errors import InputError
from .orthopoly import OrthonormalBasis, orthonormal_basis

DEFAULT_TOL = 1e-8


@dataclass(frozen=True)
class BetaPattern:
    q: int
    n: int
    values: tuple

    @property
    def full_length(self) -> int:
        return self.n * (self.q - 1)


@lru_cache(maxsize=None)
def compositions(k: int, n: int, cap: int) -> np.ndarray:
    """All vectors u in {0..cap}^n with sum k, as an array, fixed order."""
    out = []
    cur = [0] * n

    def rec(pos, remaining):
        if pos == n - 1:
            if remaining <= cap:
                cur[pos] = remaining
                out.append(tuple(cur))
            return
        for v in range(min(cap, remaining) + 1):
            cur[pos] = v
            rec(pos + 1, remaining - v)

    rec(0, k)
    arr = np.array(out, dtype=np.int64).reshape(len(out), n)
    arr.setflags(write=False)
    return arr


def _check_k(design: Design, k: int):
    K = design.n_factors * (design.q - 1)
    if not 1 <= k <= K:
        raise InputError(f"k={k} out of range 1..{K}")


def beta_k(design: Design, k: int, basis: OrthonormalBasis = None) -> float:
    """Single aliasing measure beta_k, by direct enumeration of exponents."""
    _check_k(design, k)
    if basis is None:
        basis = orthonormal_basis(design.q)
    elif basis.q != design.q:
        raise InputError("basis level count does not match the design")
    N, n = design.rows.shape
    V = basis.values[:, design.rows]  # (q, N, n): V[u, i, j] = p_u(x_ij)
    comps = compositions(k, n, design.q - 1)
    prod = np.ones((len(comps), N))
    for j in range(n):
        prod *= V[comps[:, j], :, j]
    sums = prod.sum(axis=1)
    return max(float((sums * sums).sum()) / N**2, 0.0)


def _pattern_by_pairs(design: Design, basis: OrthonormalBasis) -> np.ndarray:
    """Full pattern (beta_0, ..., beta_K) at once.

    Uses the identity sum_u t^|u| |sum_i prod_j p_{u_j}(x_ij)|^2
    = sum over row pairs (i, i') of prod_j G_t(x_ij, x_i'j) where
    G_t(x, y) = sum_u t^u p_u(x) p_u(y): per column, convolve the
    degree-indexed kernel coefficients. Cost O(N^2 K q), independent of the
    number of exponent vectors, and exactly equal to the direct sum.
    """
    q = design.q
    B = basis.values
    N, n = design.rows.shape
    G = np.einsum("ua,ub->abu", B, B)  # (q, q, q): degree-indexed kernel
    coeffs = np.ones((N * N, 1))
    for j in range(n):
        col = design.rows[:, j]
        A = G[col[:, None], col[None, :]].reshape(N * N, q)
        L = coeffs.shape[1]
        nxt = np.zeros((N * N, L + q - 1))
        for d in range(q):
            nxt[:, d : d + L] += A[:, d : d + 1] * coeffs
        coeffs = nxt
    return coeffs.sum(axis=0) / N**2


def beta_pattern(design: Design, k_max: int = None, basis: OrthonormalBasis = None) -> BetaPattern:
    """The pattern (beta_1, ..., beta_k_max); full length n(q-1) by default."""
    K = design.n_factors * (design.q - 1)
    if k_max is None:
        k_max = K
    _check_k(design, k_max)
    if basis is None:
        basis = orthonormal_basis(design.q)
    if k_max <= 4 and design.runs > 512:
        # cheaper to enumerate a few exponent shells than to convolve pairs
        vals = [beta_k(design, k, basis) for k in range(1, k_max + 1)]
    else:
        vals = _pattern_by_pairs(design, basis)[1 : k_max + 1]
    vals = np.maximum(np.asarray(vals, dtype=float), 0.0)
    return BetaPattern(q=design.q, n=design.n_factors, values=tuple(vals.tolist()))


def compare_patterns(a, b, tol: float = DEFAULT_TOL) -> int:
    """Sequential comparison: -1, 0 or 1.

    The first index where the entries differ by more than
    tol * max(1, a_k, b_k) decides; patterns with no such index are equal.
    """
    va = a.values if isinstance(a, BetaPattern) else tuple(a)
    vb = b.values if isinstance(b, BetaPattern) else tuple(b)
    if len(va) != len(vb):
        raise InputError("patterns must have equal length to compare")
    for x, y in zip(va, vb):
        if abs(x - y) > tol * max(1.0, x, y):
            return -1 if x < y else 1
    return 0


def beta_sum_check(design: Design, basis: OrthonormalBasis = None) -> float:
    """Numerically computed sum of the full pattern, sum_k beta_k.

    For a design whose N rows are distinct this must equal q^n / N - 1,
    a consequence of the completeness of the contrast basis. Returned as a
    value so callers can assert it against the closed form.
    """
    if basis is None:
        basis = orthonormal_basis(design.q)
    full = _pattern_by_pairs(design, basis)
    return float(full[1:].sum())
