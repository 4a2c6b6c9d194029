"""Classical distributions and Renyi-type information quantities.

All quantities are in bits (log base 2).  The conventions used throughout:

    H(p)        = -sum p log2 p                       Shannon entropy
    H_a(p)      = (1/(1-a)) log2 sum p^a              Renyi entropy
    D(t||p)     = sum t log2 (t/p)                    relative entropy
    D_a(p||q)   = (1/(a-1)) log2 sum p^a q^(1-a)
                  - (1/(a-1)) log2 sum p              (subnormalized correction)
    Hbar_a(A|R) = (1/(1-a)) log2 sum_x p(x) sum_a p(a|x)^a
    I_a(R:A)    = inf_sigma D_a(p_RA || p_R x sigma)

0*log0 = 0 everywhere.  A zero raised to a negative power never produces a
numeric infinity; the support rules decide when a divergence is +inf.
Orders inside |alpha - 1| < 1e-6 are routed to the Shannon limits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ._num import LN2, lse2, log2_safe, project_to_simplex, xlog2x
from .errors import AlphabetMismatchError, InputError

SUM_TOL = 1e-12
ALPHA_ONE_BAND = 1e-6


def _freeze(arr):
    arr = np.array(arr, dtype=float)
    arr.setflags(write=False)
    return arr


def _default_labels(k):
    return tuple(str(i) for i in range(k))


@dataclass(frozen=True, eq=False)
class Dist:
    """Finite probability vector over a labeled alphabet.

    `subnormalized=True` relaxes the normalization to sum <= 1 + 1e-12,
    which is what the Petz divergence's trace-correction term expects.
    """

    labels: tuple
    weights: np.ndarray
    subnormalized: bool = False

    def __eq__(self, other):
        if not isinstance(other, Dist):
            return NotImplemented
        return (self.labels == other.labels
                and self.subnormalized == other.subnormalized
                and np.array_equal(self.weights, other.weights))

    def __post_init__(self):
        w = _freeze(self.weights)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(self.labels) != w.size:
            raise InputError("labels and weights must have equal length")
        if w.size == 0:
            raise InputError("empty alphabet")
        if np.any(w < 0):
            raise InputError("negative probability mass")
        s = float(w.sum())
        if self.subnormalized:
            if s > 1.0 + SUM_TOL:
                raise InputError(f"subnormalized weights sum to {s} > 1")
        elif abs(s - 1.0) > SUM_TOL:
            raise InputError(f"weights sum to {s}, expected 1 within {SUM_TOL}")

    @classmethod
    def from_weights(cls, weights, labels=None, subnormalized=False):
        w = np.asarray(weights, dtype=float)
        return cls(labels if labels is not None else _default_labels(w.size), w,
                   subnormalized)

    @classmethod
    def uniform(cls, k, labels=None):
        return cls.from_weights(np.full(k, 1.0 / k), labels)

    @classmethod
    def point_mass(cls, k, index, labels=None):
        w = np.zeros(k)
        w[index] = 1.0
        return cls.from_weights(w, labels)

    @property
    def size(self):
        return self.weights.size

    def support(self):
        return np.nonzero(self.weights > 0)[0]

    def total(self):
        return float(self.weights.sum())

    def to_json(self):
        return {"labels": list(self.labels), "weights": [float(w) for w in self.weights]}

    @classmethod
    def from_json(cls, obj, subnormalized=False):
        try:
            labels = tuple(obj["labels"])
            weights = [float(w) for w in obj["weights"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed Dist JSON: {exc}") from exc
        return cls(labels, np.array(weights), subnormalized)


@dataclass(frozen=True, eq=False)
class JointDist:
    """Bipartite probability matrix p(x, a) with marginal/conditional access.

    Rows are the R alphabet, columns the A alphabet.
    """

    row_labels: tuple
    col_labels: tuple
    matrix: np.ndarray

    def __eq__(self, other):
        if not isinstance(other, JointDist):
            return NotImplemented
        return (self.row_labels == other.row_labels
                and self.col_labels == other.col_labels
                and np.array_equal(self.matrix, other.matrix))

    def __post_init__(self):
        m = _freeze(self.matrix)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "row_labels", tuple(self.row_labels))
        object.__setattr__(self, "col_labels", tuple(self.col_labels))
        if m.ndim != 2 or m.shape != (len(self.row_labels), len(self.col_labels)):
            raise InputError("matrix shape must match label counts")
        if np.any(m < 0):
            raise InputError("negative probability mass")
        s = float(m.sum())
        if abs(s - 1.0) > SUM_TOL:
            raise InputError(f"matrix sums to {s}, expected 1 within {SUM_TOL}")

    @classmethod
    def from_matrix(cls, matrix, row_labels=None, col_labels=None):
        m = np.asarray(matrix, dtype=float)
        rl = row_labels if row_labels is not None else _default_labels(m.shape[0])
        cl = col_labels if col_labels is not None else _default_labels(m.shape[1])
        return cls(rl, cl, m)

    @property
    def shape(self):
        return self.matrix.shape

    def marginal_row(self):
        """Marginal on R (the paper's p_R)."""
        return Dist(self.row_labels, self.matrix.sum(axis=1))

    def marginal_col(self):
        """Marginal on A."""
        return Dist(self.col_labels, self.matrix.sum(axis=0))

    def conditional(self, x):
        """p(.|x) on A; defined only where the row mass is positive."""
        row = self.matrix[x]
        px = float(row.sum())
        if px <= 0:
            raise InputError(f"conditional undefined: p(x={x}) = 0")
        return Dist(self.col_labels, row / px)

    def merge_cols(self, a, b):
        """Coarse-grain A by merging two output symbols (a data processing)."""
        if a == b:
            raise InputError("cannot merge a column with itself")
        keep = [i for i in range(self.matrix.shape[1]) if i != b]
        m = self.matrix[:, keep].copy()
        new_a = keep.index(a)
        m[:, new_a] += self.matrix[:, b]
        labels = tuple(self.col_labels[i] for i in keep)
        return JointDist(self.row_labels, labels, m)

    def to_json(self):
        return {
            "row_labels": list(self.row_labels),
            "col_labels": list(self.col_labels),
            "matrix": [[float(v) for v in row] for row in self.matrix],
        }

    @classmethod
    def from_json(cls, obj):
        try:
            rl = tuple(obj["row_labels"])
            cl = tuple(obj["col_labels"])
            m = [[float(v) for v in row] for row in obj["matrix"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed JointDist JSON: {exc}") from exc
        return cls(rl, cl, np.array(m))


def _check_alphabet(p: Dist, q: Dist):
    if p.labels != q.labels:
        raise AlphabetMismatchError(f"alphabets differ: {p.labels} vs {q.labels}")


def shannon_entropy(p: Dist) -> float:
    """H(p) = -sum p log2 p."""
    return float(-xlog2x(p.weights).sum())


def renyi_entropy(p: Dist, alpha: float) -> float:
    """H_alpha(p); alpha=1 is the Shannon limit, alpha=inf gives -log2 max p."""
    if alpha < 0:
        raise InputError("Renyi order must be >= 0")
    w = p.weights[p.weights > 0]
    if np.isinf(alpha):
        return float(-np.log2(w.max()))
    if abs(alpha - 1.0) < ALPHA_ONE_BAND:
        return shannon_entropy(p)
    # (1/(1-alpha)) log2 sum p^alpha, summed over the support only
    return float(lse2(alpha * np.log2(w)) / (1.0 - alpha))


def relative_entropy(t: Dist, p: Dist) -> float:
    """D(t||p) in bits; +inf when supp(t) is not contained in supp(p)."""
    _check_alphabet(t, p)
    tw, pw = t.weights, p.weights
    if np.any((tw > 0) & (pw <= 0)):
        return float("inf")
    mask = tw > 0
    return float(np.sum(tw[mask] * (np.log2(tw[mask]) - np.log2(pw[mask]))))


def petz_divergence_classical(p: Dist, q: Dist, alpha: float) -> float:
    """D_alpha(p||q) for classical (commuting) inputs.

    Includes the -(1/(alpha-1)) log2 sum(p) correction so subnormalized p is
    handled.  Support rules: +inf when alpha > 1 and supp(p) is not inside
    supp(q), or when alpha < 1 and the supports are disjoint.
    """
    _check_alphabet(p, q)
    if alpha <= 0:
        raise InputError("Petz order must be positive")
    pw, qw = p.weights, q.weights
    tr_p = float(pw.sum())
    if tr_p <= 0:
        raise InputError("zero total mass")
    if abs(alpha - 1.0) < ALPHA_ONE_BAND:
        if np.any((pw > 0) & (qw <= 0)):
            return float("inf")
        mask = pw > 0
        return float(np.sum(pw[mask] * (np.log2(pw[mask]) - np.log2(qw[mask]))) / tr_p)
    if alpha > 1 and np.any((pw > 0) & (qw <= 0)):
        return float("inf")
    both = (pw > 0) & (qw > 0)
    if not np.any(both):
        return float("inf")  # orthogonal supports, alpha < 1
    log_q_terms = alpha * np.log2(pw[both]) + (1.0 - alpha) * np.log2(qw[both])
    log_q = lse2(log_q_terms)
    return float((log_q - np.log2(tr_p)) / (alpha - 1.0))


def petz_cond_entropy_bar(j: JointDist, alpha: float) -> float:
    """Hbar_alpha(A|R) = -D_alpha(p_RA || I_A x p_R), evaluated classically.

    alpha = 0 is the support-counting limit log2 sum_x p(x) |supp p(.|x)|.
    """
    if alpha < 0:
        raise InputError("order must be nonnegative")
    px = j.matrix.sum(axis=1)
    if abs(alpha - 1.0) < ALPHA_ONE_BAND:
        # Shannon conditional entropy H(A|R)
        total = 0.0
        for x in range(j.shape[0]):
            if px[x] > 0:
                total += px[x] * shannon_entropy(j.conditional(x))
        return float(total)
    # (1/(1-alpha)) log2 sum_x p(x) sum_a p(a|x)^alpha
    terms = []
    for x in range(j.shape[0]):
        if px[x] <= 0:
            continue
        cond = j.matrix[x] / px[x]
        inner = lse2(alpha * log2_safe(cond[cond > 0]))
        terms.append(np.log2(px[x]) + inner)
    return float(lse2(np.array(terms)) / (1.0 - alpha))


class MutualInfoResult(NamedTuple):
    value: float
    sigma: Dist


def _sibson_coefficients(j: JointDist, alpha: float):
    """c_a = sum_x p(x,a)^alpha p(x)^(1-alpha); zero columns stay zero."""
    px = j.matrix.sum(axis=1)
    c = np.zeros(j.shape[1])
    for a in range(j.shape[1]):
        col = j.matrix[:, a]
        mask = (col > 0) & (px > 0)
        if np.any(mask):
            c[a] = float(np.sum(np.exp2(alpha * np.log2(col[mask])
                                        + (1 - alpha) * np.log2(px[mask]))))
    return c


def petz_mutual_divergence(j: JointDist, sigma: Dist, alpha: float) -> float:
    """D_alpha(p_RA || p_R x sigma) for a given reference sigma on A."""
    if sigma.labels != j.col_labels:
        raise AlphabetMismatchError("sigma must live on the A alphabet")
    px = j.matrix.sum(axis=1)
    pw = j.matrix.ravel()
    qw = np.outer(px, sigma.weights).ravel()
    if abs(alpha - 1.0) < ALPHA_ONE_BAND:
        if np.any((pw > 0) & (qw <= 0)):
            return float("inf")
        m = pw > 0
        return float(np.sum(pw[m] * (np.log2(pw[m]) - np.log2(qw[m]))))
    if alpha > 1 and np.any((pw > 0) & (qw <= 0)):
        return float("inf")
    both = (pw > 0) & (qw > 0)
    if not np.any(both):
        return float("inf")
    log_q = lse2(alpha * np.log2(pw[both]) + (1.0 - alpha) * np.log2(qw[both]))
    return float(log_q / (alpha - 1.0))


def petz_mutual_info(j: JointDist, alpha: float, polish_iters: int = 300) -> MutualInfoResult:
    """I_alpha(R:A) = inf_sigma D_alpha(p_RA || p_R x sigma), with minimizer.

    The Sibson-style stationary point sigma*(a) proportional to
    (sum_x p(x) p(a|x)^alpha)^(1/alpha) seeds a projected-gradient polish;
    the closed form is a candidate, not trusted ground truth.
    """
    if alpha <= 0:
        raise InputError("order must be positive")
    if abs(alpha - 1.0) < ALPHA_ONE_BAND:
        raise InputError("alpha = 1 is the ordinary mutual information; "
                         "use the Shannon quantities instead")
    c = _sibson_coefficients(j, alpha)
    live = c > 0
    sigma = np.zeros_like(c)
    sigma[live] = c[live] ** (1.0 / alpha)
    sigma /= sigma.sum()

    def objective(w):
        return petz_mutual_divergence(j, Dist(j.col_labels, w), alpha)

    best_w, best_v = sigma, objective(sigma)
    w = sigma.copy()
    for it in range(polish_iters):
        # grad_a of D wrt sigma_a is -c_a sigma_a^(-alpha) / (Q ln 2)
        pos = live & (w > 0)
        q_val = float(np.sum(c[pos] * w[pos] ** (1.0 - alpha)))
        grad = np.zeros_like(w)
        grad[pos] = -c[pos] * w[pos] ** (-alpha) / (q_val * LN2)
        cand = project_to_simplex(w - (0.25 / (1.0 + it)) * grad)
        # keep the iterate on the live support
        cand[~live] = 0.0
        if cand.sum() <= 0:
            break
        cand /= cand.sum()
        v = objective(cand)
        if v < best_v - 1e-15:
            best_v, best_w = v, cand
        w = cand
    return MutualInfoResult(float(best_v), Dist(j.col_labels, best_w))


def expected_cond_renyi(j: JointDist, t: Dist, alpha: float) -> float:
    """E_{x~t} H_alpha(p(.|x)) for a distribution t on the R alphabet."""
    if t.labels != j.row_labels:
        raise AlphabetMismatchError("t must live on the R alphabet")
    px = j.matrix.sum(axis=1)
    if np.any((t.weights > 0) & (px <= 0)):
        raise InputError("t places mass where conditionals are undefined")
    total = 0.0
    for x in np.nonzero(t.weights > 0)[0]:
        total += t.weights[x] * renyi_entropy(j.conditional(int(x)), alpha)
    return float(total)
