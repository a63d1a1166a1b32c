"""Designs, generator sets, level permutations and the Williams transformation.

A regular design with N = q^(n-m) runs is specified by m linear generators:
column n-m+i equals c_i1 x_1 + ... + c_i(n-m) x_(n-m) mod q over the full
factorial in the independent columns. Shifting dependent columns by constants
(a linear level permutation) and applying the Williams transformation
elementwise are the two constructions everything else evaluates.
"""

from itertools import combinations

import numpy as np

from .errors import CapExceededError, InputError
from .fieldmath import PrimeLevel, check_odd_prime, full_factorial, rank_mod

RUN_CAP = 10**6  # guard against accidental q^(n-m) blowups


class Design:
    """Immutable N x n array of levels in {0, ..., q-1}."""

    __slots__ = ("q", "rows")

    def __init__(self, q: PrimeLevel, rows):
        self.q = check_odd_prime(q)
        arr = np.asarray(rows, dtype=np.int64)
        if arr.ndim != 2 or arr.size == 0:
            raise InputError("design rows must form a nonempty 2-D array")
        if arr.min() < 0 or arr.max() >= self.q:
            raise InputError(f"design entries must lie in 0..{self.q - 1}")
        arr = arr.copy()
        arr.setflags(write=False)
        self.rows = arr

    @property
    def runs(self) -> int:
        return self.rows.shape[0]

    @property
    def n_factors(self) -> int:
        return self.rows.shape[1]

    def __repr__(self):
        return f"Design(q={self.q}, N={self.runs}, n={self.n_factors})"


class GeneratorSet:
    """m x (n-m) coefficient array defining a regular design.

    Validation enforces the strength-2 guard: among the n implied coefficient
    vectors (unit vectors for the independent columns, rows of C for the
    dependent ones) no two may be proportional mod q, and no row of C may be
    zero.
    """

    __slots__ = ("q", "C", "m", "n")

    def __init__(self, q: PrimeLevel, C):
        self.q = check_odd_prime(q)
        arr = np.atleast_2d(np.asarray(C, dtype=np.int64))
        if arr.ndim != 2 or arr.size == 0:
            raise InputError("generator coefficients must form a 2-D array")
        arr = arr % self.q
        self.m, d = arr.shape
        self.n = self.m + d
        if not arr.any(axis=1).all():
            raise InputError("generator rows must be nonzero")
        cols = self.column_vectors(arr)
        prop = _proportional_pairs(cols, self.q)
        if prop:
            i, j = prop[0]
            raise InputError(
                f"columns {i + 1} and {j + 1} are proportional mod {self.q}; "
                "the design would not have strength 2"
            )
        arr.setflags(write=False)
        self.C = arr

    def column_vectors(self, arr=None) -> np.ndarray:
        """Coefficient vectors of all n columns in the independent basis."""
        if arr is None:
            arr = self.C
        d = arr.shape[1]
        return np.vstack([np.eye(d, dtype=np.int64), arr])

    def __repr__(self):
        return f"GeneratorSet(q={self.q}, C={self.C.tolist()})"


def _proportional_pairs(vectors: np.ndarray, q: int):
    """Pairs (i, j) of rows that are proportional mod q (includes zero rows)."""
    V = np.asarray(vectors, dtype=np.int64) % q
    # rows u, v are proportional over the field iff every 2x2 minor vanishes
    outer = V[:, None, :, None] * V[None, :, None, :]
    minors = (outer - outer.transpose(0, 1, 3, 2)) % q
    prop = (minors == 0).all(axis=(2, 3))
    out = []
    for i in range(len(V)):
        for j in range(i + 1, len(V)):
            if prop[i, j]:
                out.append((i, j))
    return out


def expand(gen: GeneratorSet, cap: int = RUN_CAP) -> Design:
    """Expand a generator set into its regular design.

    Independent columns run through the full factorial in enumerate_tuples
    order; dependent column i is the generator linear combination mod q.
    """
    d = gen.n - gen.m
    runs = gen.q**d
    if runs > cap:
        raise CapExceededError(
            f"run count {runs} exceeds the cap of {cap}; raise cap= to proceed"
        )
    base = full_factorial(gen.q, d)
    dep = (base @ gen.C.T) % gen.q
    return Design(gen.q, np.hstack([base, dep]))


def linear_permute(gen: GeneratorSet, b) -> Design:
    """The design with dependent column i shifted by b[i] mod q."""
    b = np.asarray(b, dtype=np.int64).ravel()
    if b.size != gen.m:
        raise InputError(f"shift vector has length {b.size}, expected {gen.m}")
    base_design = expand(gen)
    d = gen.n - gen.m
    rows = base_design.rows.copy()
    rows[:, d:] = (rows[:, d:] + b % gen.q) % gen.q
    return Design(gen.q, rows)


def williams_value(x: int, q: PrimeLevel) -> int:
    """The Williams transformation of a single level.

    W(x) = 2x for x < q/2 and 2(q - x) - 1 otherwise. A bijection of Z_q.
    """
    q = check_odd_prime(q)
    if not 0 <= x < q:
        raise InputError(f"level {x} out of range for q={q}")
    return 2 * x if 2 * x < q else 2 * (q - x) - 1


def williams_inverse(x: int, q: PrimeLevel) -> int:
    """Inverse of the Williams transformation: x/2 for even x, q-(x+1)/2 odd."""
    q = check_odd_prime(q)
    if not 0 <= x < q:
        raise InputError(f"level {x} out of range for q={q}")
    return x // 2 if x % 2 == 0 else q - (x + 1) // 2


def williams_table(q: PrimeLevel) -> np.ndarray:
    """Lookup table t with t[x] = williams_value(x, q)."""
    return np.array([williams_value(x, q) for x in range(q)], dtype=np.int64)


def williams(design: Design) -> Design:
    """Apply the Williams transformation elementwise."""
    return Design(design.q, williams_table(design.q)[design.rows])


def add_constant(design: Design, s: int) -> Design:
    """Shift every entry of the design by s mod q."""
    return Design(design.q, (design.rows + int(s)) % design.q)


def strength(design: Design, t_max: int = None) -> int:
    """Largest t <= t_max such that every t-column projection is balanced.

    Returns 0 when even single columns are unbalanced.
    """
    n = design.n_factors
    if t_max is None:
        t_max = n
    if t_max > n:
        raise InputError(f"t_max={t_max} exceeds the column count {n}")
    q, N, rows = design.q, design.runs, design.rows
    best = 0
    for t in range(1, t_max + 1):
        if N % q**t != 0:
            return best
        want = N // q**t
        ok = True
        for cols in combinations(range(n), t):
            codes = rows[:, cols] @ (q ** np.arange(t - 1, -1, -1))
            counts = np.bincount(codes, minlength=q**t)
            if (counts != want).any():
                ok = False
                break
        if not ok:
            return best
        best = t
    return best


def _canonical_rows(design: Design) -> np.ndarray:
    order = np.lexsort(design.rows.T[::-1])
    return design.rows[order]


def same_design(a: Design, b: Design) -> bool:
    """True iff the two designs have equal row multisets."""
    if a.q != b.q or a.rows.shape != b.rows.shape:
        raise InputError("designs must share q and shape to be compared")
    return bool(np.array_equal(_canonical_rows(a), _canonical_rows(b)))


def is_mirror_symmetric(design: Design) -> bool:
    """True iff reflecting every level (x -> q-1-x) reproduces the design."""
    reflected = Design(design.q, (design.q - 1) - design.rows)
    return same_design(design, reflected)


def save_design(design: Design, path) -> None:
    """Write the text format: header '# q=Q N=N n=N', then one row per line."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# q={design.q} N={design.runs} n={design.n_factors}\n")
        for row in design.rows:
            fh.write(" ".join(str(int(v)) for v in row) + "\n")


def load_design(path) -> Design:
    """Read the text format written by save_design. Round-trip is lossless."""
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if not header.startswith("#"):
            raise InputError(f"{path}: missing '# q=.. N=.. n=..' header line")
        fields = dict(
            part.split("=", 1) for part in header.lstrip("# ").split() if "=" in part
        )
        try:
            q = int(fields["q"])
            N = int(fields["N"])
            n = int(fields["n"])
        except (KeyError, ValueError) as exc:
            raise InputError(f"{path}: malformed header {header!r}") from exc
        rows = []
        for lineno, line in enumerate(fh, start=2):
            line = line.strip()
            if not line:
                continue
            vals = line.split()
            if len(vals) != n:
                raise InputError(f"{path}:{lineno}: expected {n} values")
            rows.append([int(v) for v in vals])
    if len(rows) != N:
        raise InputError(f"{path}: header promised {N} rows, found {len(rows)}")
    return Design(q, rows)
