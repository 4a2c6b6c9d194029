"""Method of types: enumeration and log-domain arithmetic of empirical types.

For an alphabet of size k and block length n, the types are the compositions
of n into k nonnegative parts.  Everything downstream (n-fold smoothing
quantities, pure-state fidelity sums) folds over these types, which is what
makes the n-fold evaluations polynomial in n:

    number of types       = C(n+k-1, k-1) <= (n+1)^k
    |T_n^t|               = n! / prod(counts!)
    (n+1)^-k 2^{nH(t)}   <= |T_n^t| <= 2^{nH(t)}
    per-sequence prob     = 2^{-n(H(t) + D(t||p))}
    P(T_n^t)              in [(n+1)^-k 2^{-nD(t||p)}, 2^{-nD(t||p)}]

Enumeration order is lexicographic in the counts vector and documented, so
CSV dumps are reproducible bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from ._num import LN2, NEG_INF, lse2, log2_safe, xlog2x
from .errors import BudgetExceededError, InputError
from .prob_core import Dist

TYPE_BUDGET = 10**8


def num_types(alphabet_size: int, n: int) -> int:
    return math.comb(n + alphabet_size - 1, alphabet_size - 1)


def _check_budget(alphabet_size, n, budget=TYPE_BUDGET):
    if alphabet_size < 1 or n < 0:
        raise InputError("need alphabet_size >= 1 and n >= 0")
    count = num_types(alphabet_size, n)
    if count > budget:
        raise BudgetExceededError(
            f"{count} types for alphabet {alphabet_size}, n={n} exceeds budget {budget}")
    return count


@dataclass(frozen=True, eq=False)
class TypeVector:
    """Counts per symbol; the empirical distribution scaled by n."""

    counts: tuple

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        if any(c < 0 for c in self.counts):
            raise InputError("negative count")

    def __eq__(self, other):
        return isinstance(other, TypeVector) and self.counts == other.counts

    def __hash__(self):
        return hash(self.counts)

    @property
    def n(self):
        return sum(self.counts)

    @property
    def alphabet_size(self):
        return len(self.counts)

    def as_dist(self, labels=None):
        n = self.n
        if n == 0:
            raise InputError("empty type has no distribution")
        w = np.array(self.counts, dtype=float) / n
        return Dist.from_weights(w, labels)


def log2_factorial_table(n: int) -> np.ndarray:
    """log2(i!) for i = 0..n via log-gamma."""
    return gammaln(np.arange(n + 1, dtype=float) + 1.0) / LN2


def composition_blocks(n: int, k: int, budget: int = TYPE_BUDGET):
    """Yield numpy (rows, k) blocks of all compositions of n into k parts.

    Lexicographically ascending across the whole stream.  Each block fixes
    the first k-2 coordinates and vectorizes the last two, so folds over
    millions of types stay in numpy.
    """
    _check_budget(k, n, budget)
    if k == 1:
        yield np.array([[n]], dtype=np.int64)
        return

    def emit(prefix, rem):
        if len(prefix) == k - 2:
            j = np.arange(rem + 1, dtype=np.int64)
            block = np.empty((rem + 1, k), dtype=np.int64)
            block[:, :k - 2] = prefix
            block[:, k - 2] = j
            block[:, k - 1] = rem - j
            yield block
        else:
            for c in range(rem + 1):
                yield from emit(prefix + [c], rem - c)

    yield from emit([], n)


def enumerate_types(alphabet_size: int, n: int, budget: int = TYPE_BUDGET):
    """All types as TypeVector records, lexicographic."""
    out = []
    for block in composition_blocks(n, alphabet_size, budget):
        out.extend(TypeVector(tuple(row)) for row in block)
    return out


def log2_type_class_size(t: TypeVector) -> float:
    """log2 of the exact multinomial n! / prod(counts!)."""
    n = t.n
    table = log2_factorial_table(n)
    return float(table[n] - sum(table[c] for c in t.counts))


def log2_iid_prob(t: TypeVector, p: Dist) -> float:
    """Per-sequence log2-probability sum(counts * log2 p); -inf off support."""
    if t.alphabet_size != p.size:
        raise InputError("alphabet size mismatch between type and distribution")
    counts = np.array(t.counts, dtype=float)
    logs = log2_safe(p.weights)
    if np.any((counts > 0) & ~np.isfinite(logs)):
        return NEG_INF
    mask = counts > 0
    return float(np.sum(counts[mask] * logs[mask]))


@dataclass(frozen=True)
class TypeRecord:
    type: TypeVector
    log2_class_size: float
    log2_iid_prob_per_seq: float
    log2_mass: float


@dataclass(frozen=True)
class TypeDecomposition:
    """Per-type mass decomposition of the n-fold i.i.d. law of p."""

    n: int
    alphabet: tuple
    records: tuple

    def log2_total_mass(self) -> float:
        return lse2(np.array([r.log2_mass for r in self.records]))


def decompose(p: Dist, n: int, budget: int = TYPE_BUDGET) -> TypeDecomposition:
    """Exact per-type masses of p^(x n); checks its own sandwich invariants."""
    k = p.size
    _check_budget(k, n, budget)
    table = log2_factorial_table(n)
    logs = log2_safe(p.weights)
    records = []
    masses = []
    log_np1 = k * math.log2(n + 1) if n > 0 else 0.0
    for block in composition_blocks(n, k, budget):
        cls = table[n] - table[block].sum(axis=1)
        safe_logs = np.where(np.isfinite(logs), logs, 0.0)
        seq = np.where(
            (block * ~np.isfinite(logs)[None, :]).sum(axis=1) > 0,
            NEG_INF,
            block @ safe_logs,
        )
        mass = cls + seq
        for i, row in enumerate(block):
            t = TypeVector(tuple(row))
            records.append(TypeRecord(t, float(cls[i]), float(seq[i]), float(mass[i])))
            masses.append(mass[i])
            if n > 0:
                # Eq-numt style sandwich on the class size
                h = float(-xlog2x(row / n).sum()) * n
                assert cls[i] <= h + 1e-9
                assert cls[i] >= h - log_np1 - 1e-9
            if np.isfinite(mass[i]):
                d_rel = -seq[i] - (float(-xlog2x(row / max(n, 1)).sum()) * n)
                assert mass[i] <= -d_rel + 1e-9
                assert mass[i] >= -d_rel - log_np1 - 1e-9
    total = lse2(np.array(masses))
    if abs(total) > 1e-9:
        raise AssertionError(f"type masses sum to 2^{total}, expected 1")
    return TypeDecomposition(n, p.labels, tuple(records))
