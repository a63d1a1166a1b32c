"""Optimal level-permutation searches.

Closed-form shift vectors for both design families, exhaustive best-shift
search over all q^m shift vectors, and the generator-space search over all
regular designs with two independent columns (q^2 runs).

Families:
    linear   : the design with dependent columns shifted by b
    williams : the Williams transformation of that shifted design
"""

from dataclasses import dataclass
from itertools import combinations, product
from typing import Optional

import numpy as np

from .aberration import (
    DEFAULT_TOL,
    beta_k,
    beta_pattern,
    compositions,
)
from .designs import (
    Design,
    GeneratorSet,
    expand,
    linear_permute,
    williams,
    williams_table,
)
from .errors import CapExceededError, InputError
from .fieldmath import PrimeLevel, check_odd_prime, full_factorial
from .orthopoly import orthonormal_basis

FAMILIES = ("linear", "williams")
SEARCH_CAP = 2_000_000
_DIRECT_LIMIT = 2048  # below this many candidates, rank full patterns directly


def center_preimage(q: PrimeLevel) -> int:
    """The level that the Williams transformation sends to the middle level.

    Equals (q-1)/4 when q = 1 mod 4 and (3q-1)/4 when q = 3 mod 4.
    """
    q = check_odd_prime(q)
    return (q - 1) // 4 if q % 4 == 1 else (3 * q - 1) // 4


def optimal_shift_williams(gen: GeneratorSet) -> list:
    """Closed-form shift vector for the Williams family.

    Component i is (1 - sum_j c_ij) * center_preimage(q) mod q. The
    Williams-transformed design at this shift is mirror-symmetric, so its
    odd-degree aliasing measures all vanish.
    """
    g = center_preimage(gen.q)
    sums = gen.C.sum(axis=1)
    return [int(((1 - s) * g) % gen.q) for s in sums]


def optimal_shift_linear(gen: GeneratorSet) -> list:
    """Closed-form shift vector for the plain linear-permutation family.

    Component i is (1 - sum_j c_ij) * (q-1)/2 mod q; the shifted design is
    mirror-symmetric around the center level.
    """
    half = (gen.q - 1) // 2
    sums = gen.C.sum(axis=1)
    return [int(((1 - s) * half) % gen.q) for s in sums]


def build_design(gen: GeneratorSet, b, family: str) -> Design:
    """The family member at shift vector b."""
    if family not in FAMILIES:
        raise InputError(f"family must be one of {FAMILIES}, got {family!r}")
    design = linear_permute(gen, b)
    return williams(design) if family == "williams" else design


@dataclass(frozen=True)
class SearchReport:
    """Outcome of an exhaustive shift search."""

    family: str
    generators: list
    b: list
    pattern: tuple
    ties: list
    evaluations: int
    decided_k: Optional[int]

    def to_json_dict(self, q: int, n: int) -> dict:
        return {
            "q": q,
            "n": n,
            "family": self.family,
            "generators": self.generators,
            "b": self.b,
            "beta": list(self.pattern),
            "ties": self.ties,
            "evaluations": self.evaluations,
            "decided_k": self.decided_k,
        }


def _keep_minimal(values: np.ndarray, tol: float) -> np.ndarray:
    mn = float(values.min())
    return values <= mn + tol * max(1.0, mn)


def _rank_candidates(patterns: np.ndarray, tol: float):
    """Sequentially filter candidate rows; returns (kept indices, decided_k)."""
    alive = np.arange(patterns.shape[0])
    decided = None
    for k in range(patterns.shape[1]):
        vals = patterns[alive, k]
        keep = _keep_minimal(vals, tol)
        if not keep.all():
            decided = k + 1
            alive = alive[keep]
        if len(alive) == 1:
            break
    return alive, decided


def shift_grid_beta(gen: GeneratorSet, family: str, k: int, basis=None) -> np.ndarray:
    """beta_k of every shift vector at once, as an array of shape (q,)*m.

    Each exponent vector u touches at most k columns, so its contribution
    depends only on the shifts of the dependent columns in its support.
    Summing small per-support tables over the full shift grid evaluates all
    q^m candidates for the price of the tables.
    """
    if family not in FAMILIES:
        raise InputError(f"family must be one of {FAMILIES}, got {family!r}")
    if basis is None:
        basis = orthonormal_basis(gen.q)
    q, m, n = gen.q, gen.m, gen.n
    d = n - m
    base = full_factorial(q, d)
    N = base.shape[0]
    dep = (base @ gen.C.T) % q
    relabel = williams_table(q) if family == "williams" else np.arange(q)
    B = basis.values
    ind_vals = [B[:, relabel[base[:, j]]] for j in range(d)]
    dep_tabs = [
        np.stack([B[:, relabel[(dep[:, i] + s) % q]] for s in range(q)])
        for i in range(m)
    ]  # (q shifts, q degrees, N)
    letters = "abcdefgh"
    total = np.zeros((q,) * m)
    const = 0.0
    for u in compositions(k, n, q - 1):
        support = np.flatnonzero(u)
        fixed = np.ones(N)
        dep_axes = []
        arrays = []
        for j in support:
            if j < d:
                fixed = fixed * ind_vals[j][u[j]]
            else:
                dep_axes.append(j - d)
                arrays.append(dep_tabs[j - d][:, u[j], :])
        if not dep_axes:
            s = float(fixed.sum())
            const += s * s / N**2
            continue
        spec = ",".join(["n"] + [letters[i] + "n" for i in range(len(dep_axes))])
        spec += "->" + letters[: len(dep_axes)]
        sums = np.einsum(spec, fixed, *arrays)
        term = sums * sums / N**2
        shape = [1] * m
        for ax in dep_axes:
            shape[ax] = q
        total += term.reshape(shape)
    return total + const


def _patterns_for(gen, family, b_list, k_max, basis) -> np.ndarray:
    rows = []
    for b in b_list:
        design = build_design(gen, b, family)
        rows.append(beta_pattern(design, k_max, basis).values)
    return np.asarray(rows, dtype=float)


def search_shifts(
    gen: GeneratorSet,
    family: str,
    k_max: int = None,
    cap: int = SEARCH_CAP,
    tol: float = DEFAULT_TOL,
) -> SearchReport:
    """Exhaustively evaluate all q^m shift vectors and rank them sequentially.

    The winner is the lexicographically smallest shift vector among all
    pattern minimizers; the tie list holds every minimizer. Large shift
    spaces are pruned one degree at a time with the grid evaluation, which
    is exact, so the result never depends on the pruning path.
    """
    if family not in FAMILIES:
        raise InputError(f"family must be one of {FAMILIES}, got {family!r}")
    q, m = gen.q, gen.m
    total = q**m
    if total > cap:
        raise CapExceededError(
            f"shift space of size {total} exceeds the cap of {cap}"
        )
    K = gen.n * (q - 1)
    if k_max is None:
        k_max = K
    if not 1 <= k_max <= K:
        raise InputError(f"k_max={k_max} out of range 1..{K}")
    basis = orthonormal_basis(q)
    shape = (q,) * m

    if total <= _DIRECT_LIMIT:
        b_list = [list(t) for t in product(range(q), repeat=m)]
        patterns = _patterns_for(gen, family, b_list, k_max, basis)
        alive, decided = _rank_candidates(patterns, tol)
        winner = int(alive[0])
        return SearchReport(
            family=family,
            generators=gen.C.tolist(),
            b=b_list[winner],
            pattern=tuple(patterns[winner].tolist()),
            ties=[b_list[i] for i in alive],
            evaluations=total,
            decided_k=decided,
        )

    # staged pruning over the full grid
    alive_idx = np.arange(total)
    decided = None
    k = 0
    while k < k_max and len(alive_idx) > _DIRECT_LIMIT:
        k += 1
        if k > 5:
            # supports get wide and the grid tables stop paying off;
            # fall back to per-candidate evaluation of the survivors
            vals = np.array(
                [
                    beta_k(
                        build_design(gen, np.unravel_index(i, shape), family),
                        k,
                        basis,
                    )
                    for i in alive_idx
                ]
            )
        else:
            vals = shift_grid_beta(gen, family, k, basis).reshape(-1)[alive_idx]
        keep = _keep_minimal(vals, tol)
        if not keep.all():
            decided = k
            alive_idx = alive_idx[keep]

    b_list = [list(map(int, np.unravel_index(i, shape))) for i in alive_idx]
    patterns = _patterns_for(gen, family, b_list, k_max, basis)
    sub_alive, sub_decided = _rank_candidates(patterns, tol)
    if sub_decided is not None:
        decided = sub_decided
    winner = int(sub_alive[0])
    return SearchReport(
        family=family,
        generators=gen.C.tolist(),
        b=b_list[winner],
        pattern=tuple(patterns[winner].tolist()),
        ties=[b_list[i] for i in sub_alive],
        evaluations=total,
        decided_k=decided,
    )


def enumerate_q2_generators(q: PrimeLevel, n: int):
    """All reduced generator sets for q^2-run designs with n columns.

    Dependent columns are pairs (c1, c2) with c1 in 1..(q-1)/2 and
    c2 in 1..q-1; distinct columns must point in distinct projective
    directions, and the direction set is kept in canonical ascending order.
    Yields exactly C(q-1, n-2) * ((q-1)/2)^(n-2) generator sets.
    """
    q = check_odd_prime(q)
    if not 3 <= n <= q + 1:
        raise InputError(f"n={n} out of range 3..{q + 1} for q={q}")
    m = n - 2
    half = (q - 1) // 2
    for slopes in combinations(range(1, q), m):
        for scales in product(range(1, half + 1), repeat=m):
            C = [[c1, (c1 * s) % q] for c1, s in zip(scales, slopes)]
            yield GeneratorSet(q, C)


@dataclass(frozen=True)
class FamilyBest:
    """Winner of a generator-space search for one family."""

    family: str
    generators: list
    b: list
    beta3: float
    beta4: float
    pattern: tuple
    ties: list
    evaluations: int
    decided_k: Optional[int]


@dataclass(frozen=True)
class Q2Report:
    q: int
    n: int
    standard_generators: list
    standard_beta3: float
    standard_beta4: float
    standard_pattern: tuple
    linear: FamilyBest
    williams: FamilyBest

    def to_json_dict(self) -> dict:
        def fam(f):
            return {
                "family": f.family,
                "generators": f.generators,
                "b": f.b,
                "beta": [f.beta3, f.beta4],
                "ties": f.ties,
                "evaluations": f.evaluations,
                "decided_k": f.decided_k,
            }

        return {
            "q": self.q,
            "n": self.n,
            "standard": {
                "generators": self.standard_generators,
                "beta": [self.standard_beta3, self.standard_beta4],
            },
            "linear": fam(self.linear),
            "williams": fam(self.williams),
        }


def standard_generators(q: PrimeLevel, n: int) -> GeneratorSet:
    """The common q^2-run choice: columns x1, x2, x1+x2, x1+2*x2, ..."""
    if not 3 <= n <= q + 1:
        raise InputError(f"n={n} out of range 3..{q + 1} for q={q}")
    return GeneratorSet(q, [[1, s] for s in range(1, n - 1)])


def _family_best(q, n, family, candidates, basis, tol) -> FamilyBest:
    shift_of = (
        optimal_shift_linear if family == "linear" else optimal_shift_williams
    )
    evals = []
    for gen in candidates:
        b = shift_of(gen)
        design = build_design(gen, b, family)
        b3 = beta_k(design, 3, basis)
        b4 = beta_k(design, 4, basis)
        evals.append((gen, b, design, b3, b4))

    decided = None
    vals3 = np.array([e[3] for e in evals])
    keep = _keep_minimal(vals3, tol)
    if not keep.all():
        decided = 3
    alive = [e for e, kp in zip(evals, keep) if kp]
    vals4 = np.array([e[4] for e in alive])
    keep = _keep_minimal(vals4, tol)
    if not keep.all():
        decided = 4
    alive = [e for e, kp in zip(alive, keep) if kp]

    if len(alive) > 1:
        patterns = np.array(
            [beta_pattern(e[2], basis=basis).values for e in alive]
        )
        idx, sub_decided = _rank_candidates(patterns, tol)
        if sub_decided is not None:
            decided = sub_decided
        alive = [alive[i] for i in idx]

    alive.sort(key=lambda e: e[0].C.tolist())
    win = alive[0]
    return FamilyBest(
        family=family,
        generators=win[0].C.tolist(),
        b=list(win[1]),
        beta3=win[3],
        beta4=win[4],
        pattern=tuple(beta_pattern(win[2], basis=basis).values),
        ties=[e[0].C.tolist() for e in alive],
        evaluations=len(evals),
        decided_k=decided,
    )


def search_q2(q: PrimeLevel, n: int, tol: float = DEFAULT_TOL) -> Q2Report:
    """Full generator-space search for the best design of each family.

    Every reduced generator set is evaluated at its closed-form shift; the
    per-family winner minimizes the aliasing pattern sequentially, with all
    pattern-equal generator sets reported as ties.
    """
    basis = orthonormal_basis(q)
    std = standard_generators(q, n)
    std_pattern = beta_pattern(expand(std), basis=basis)
    candidates = list(enumerate_q2_generators(q, n))
    linear = _family_best(q, n, "linear", candidates, basis, tol)
    will = _family_best(q, n, "williams", candidates, basis, tol)
    return Q2Report(
        q=q,
        n=n,
        standard_generators=std.C.tolist(),
        standard_beta3=std_pattern.values[2],
        standard_beta4=std_pattern.values[3],
        standard_pattern=std_pattern.values,
        linear=linear,
        williams=will,
    )
