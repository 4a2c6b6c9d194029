"""Exact (or provably sandwiched) one-shot smoothing quantities.

The trace-distance smoothing of the conditional min-entropy of a classical
joint p(x,a) at level lambda has the closed form

    eps^d = sum_{x,a} (p(x,a) - 2^-lambda p(x))_+

with the elementwise minimum as the optimal smoothing, and the mutual
max-information analogue is the linear program

    eps^d = min_sigma sum_{x,a} (p(x,a) - 2^lambda p(x) sigma(a))_+ .

For distances between subnormalized objects the trace distance carries the
mass-deficit term (1/2)||p - q||_1 + (1/2)(sum p - sum q), which is what
makes the elementwise minimum exactly optimal.

n-fold values fold over joint types, never over sequences, and the
complement 1 - eps is accumulated directly as sum min(...) in the log
domain.  Acceptance reads log2(1 - eps) down to about -n E, so computing
1 - (sum of positive parts) would cancel catastrophically.

The purified-distance quantity for a pure state with Schmidt distribution p
is not exactly computable at n-fold; it is sandwiched via

    B_n = sum_t P(t) min(1, sqrt(2^-nr / |T_n^t|)),
    B_n / (n+1)^(|X|/2) <= F* <= B_n,

where the per-type optimum is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from ._num import (
    LN2,
    NEG_INF,
    eps_from_log2_one_minus,
    log2_one_minus_eps_from_log2_fid,
    log2_safe,
    lse2,
)
from .errors import BudgetExceededError, InputError
from .prob_core import Dist, JointDist
from .types_method import composition_blocks, log2_factorial_table, num_types

IID_BUDGET = 10**8


@dataclass(frozen=True, eq=False)
class OneShotResult:
    """A smoothing value eps with a stable complement and a certificate.

    `log2_one_minus` is log2(1 - value), computed without cancellation.
    `certificate` is the optimizing smoothing object where it is small
    enough to materialize (single-copy ops), else None.
    `bound_kind` is "exact", or "upper"/"lower" for one-sided bounds on
    the true eps.
    """

    value: float
    log2_one_minus: float
    certificate: object
    bound_kind: str


@dataclass(frozen=True, eq=False)
class SchmidtState:
    """Pure bipartite state |rho> = sum_x sqrt(p(x)) |x>|x>."""

    schmidt_dist: Dist


def _result(value, log2_one_minus, certificate, bound_kind):
    value = min(max(float(value), 0.0), 1.0)
    return OneShotResult(value, float(log2_one_minus), certificate, bound_kind)


def eps_d_cond_classical(j: JointDist, lam: float) -> OneShotResult:
    """Trace-distance smoothing of the conditional min-entropy, exact.

    The cap is 2^-lambda p(x) per cell; the elementwise minimum attains the
    optimum and is returned as the certificate (a subnormalized matrix).
    """
    px = j.matrix.sum(axis=1)
    cap = math.pow(2.0, -lam) * px[:, None]
    smoothed = np.minimum(j.matrix, cap)
    one_minus = float(smoothed.sum())
    value = float(np.maximum(j.matrix - cap, 0.0).sum())
    return _result(value, log2_safe(one_minus), smoothed, "exact")


def eps_d_mutual_classical(j: JointDist, lam: float) -> OneShotResult:
    """Trace-distance smoothing of the mutual max-information, exact LP.

    min over sigma on A of sum (p(x,a) - 2^lambda p(x) sigma(a))_+, posed
    with auxiliary excess variables.  Needs lambda >= 0 so that every
    conditional can be renormalized under its cap.
    """
    if lam < 0:
        raise InputError(
            "lambda must be >= 0: for lambda < 0 the caps cannot carry a "
            "normalized conditional, so the smoothing set is empty")
    kx, ka = j.shape
    px = j.matrix.sum(axis=1)
    scale = math.pow(2.0, lam)
    n_var = ka + kx * ka
    cost = np.concatenate([np.zeros(ka), np.ones(kx * ka)])
    a_ub = np.zeros((kx * ka, n_var))
    b_ub = np.zeros(kx * ka)
    for x in range(kx):
        for a in range(ka):
            row = x * ka + a
            a_ub[row, a] = -scale * px[x]
            a_ub[row, ka + row] = -1.0
            b_ub[row] = -j.matrix[x, a]
    a_eq = np.zeros((1, n_var))
    a_eq[0, :ka] = 1.0
    res = linprog(cost, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=[1.0],
                  bounds=[(0, None)] * n_var, method="highs")
    if not res.success:
        raise InputError(f"LP solver failed: {res.message}")
    sigma = np.maximum(res.x[:ka], 0.0)
    sigma /= sigma.sum()
    cap = scale * np.outer(px, sigma)
    one_minus = float(np.minimum(j.matrix, cap).sum())
    value = float(np.maximum(j.matrix - cap, 0.0).sum())
    return _result(value, log2_safe(one_minus), Dist(j.col_labels, sigma), "exact")


def _joint_type_fold(j: JointDist, n: int, log2_cap_per_type, budget=IID_BUDGET):
    """LSE over joint types of log2|T^s| + min(log2 v1, log2_cap_per_type(s)).

    `log2_cap_per_type` receives (block counts, row-marginal counts,
    col-marginal counts) and returns the per-sequence log2 cap for each
    type in the block.
    """
    kx, ka = j.shape
    k = kx * ka
    if num_types(k, n) > budget:
        raise BudgetExceededError(
            f"{num_types(k, n)} joint types at n={n} exceed budget {budget}")
    log_p = log2_safe(j.matrix.ravel())
    dead = ~np.isfinite(log_p)
    log_p_safe = np.where(dead, 0.0, log_p)
    row_of = np.repeat(np.arange(kx), ka)
    col_of = np.tile(np.arange(ka), kx)
    row_ind = np.zeros((k, kx))
    row_ind[np.arange(k), row_of] = 1.0
    col_ind = np.zeros((k, ka))
    col_ind[np.arange(k), col_of] = 1.0
    table = log2_factorial_table(n)
    block_lses = []
    for block in composition_blocks(n, k, budget):
        counts = block.astype(float)
        log_class = table[n] - table[block].sum(axis=1)
        v1 = counts @ log_p_safe
        invalid = (counts[:, dead].sum(axis=1) > 0) if dead.any() else None
        rows = counts @ row_ind
        cols = counts @ col_ind
        v2 = log2_cap_per_type(counts, rows, cols)
        v = log_class + np.minimum(v1, v2)
        if invalid is not None:
            v = np.where(invalid, NEG_INF, v)
        finite = v[np.isfinite(v)]
        if finite.size:
            block_lses.append(lse2(finite))
    return lse2(np.array(block_lses))


def eps_d_cond_iid(j: JointDist, n: int, r: float, budget=IID_BUDGET) -> OneShotResult:
    """Exact eps^d for the conditional min-entropy of p^(x n) at level n*r.

    1 - eps = sum over joint types s of |T_n^s| min(v1, v2) with v1 the
    per-sequence joint probability and v2 = 2^-nr times the per-sequence
    R-marginal probability.
    """
    px = j.matrix.sum(axis=1)
    log_px = log2_safe(px)
    dead_x = ~np.isfinite(log_px)
    log_px_safe = np.where(dead_x, 0.0, log_px)

    def cap(counts, rows, cols):
        v2 = -n * r + rows @ log_px_safe
        if dead_x.any():
            v2 = np.where(rows[:, dead_x].sum(axis=1) > 0, NEG_INF, v2)
        return v2

    l2om = _joint_type_fold(j, n, cap, budget)
    return _result(eps_from_log2_one_minus(l2om), l2om, None, "exact")


def eps_d_mutual_iid_fixed_sigma(j: JointDist, sigma: Dist, n: int, r: float,
                                 budget=IID_BUDGET) -> OneShotResult:
    """eps^d upper bound for the mutual max-information with product sigma.

    Smoothing against the fixed reference sigma^(x n) is feasible, so the
    resulting value is an upper bound on the true eps; its exponent still
    matches the achievability side, which uses product references.
    """
    if sigma.labels != j.col_labels:
        raise InputError("sigma must live on the A alphabet")
    if r < 0:
        raise InputError("rate must be >= 0 for a feasible smoothing")
    px = j.matrix.sum(axis=1)
    log_px = log2_safe(px)
    dead_x = ~np.isfinite(log_px)
    log_px_safe = np.where(dead_x, 0.0, log_px)
    log_s = log2_safe(sigma.weights)
    dead_s = ~np.isfinite(log_s)
    log_s_safe = np.where(dead_s, 0.0, log_s)

    def cap(counts, rows, cols):
        v2 = n * r + rows @ log_px_safe + cols @ log_s_safe
        bad = np.zeros(counts.shape[0], dtype=bool)
        if dead_x.any():
            bad |= rows[:, dead_x].sum(axis=1) > 0
        if dead_s.any():
            bad |= cols[:, dead_s].sum(axis=1) > 0
        return np.where(bad, NEG_INF, v2)

    l2om = _joint_type_fold(j, n, cap, budget)
    return _result(eps_from_log2_one_minus(l2om), l2om, sigma, "upper")


def _row_bhattacharyya_opt(w, cap, budget):
    """Maximize sum sqrt(w q) over 0 <= q <= cap (scalar), sum q <= budget.

    KKT clip-renormalize: start from q proportional to w, clip entries at
    the cap, redistribute the remaining budget over the rest.  Terminates
    in at most len(w) passes because the clip set only grows.
    """
    k = w.size
    q = np.zeros(k)
    if cap <= 0 or budget <= 0:
        return q
    if cap * k <= budget:
        return np.full(k, cap)
    clipped = np.zeros(k, dtype=bool)
    for _ in range(k + 1):
        rem = budget - cap * clipped.sum()
        w_rest = w[~clipped].sum()
        if w_rest <= 0 or rem <= 0:
            break
        prop = rem * w / w_rest
        viol = (~clipped) & (prop > cap)
        if not viol.any():
            break
        clipped |= viol
    rem = budget - cap * clipped.sum()
    w_rest = w[~clipped].sum()
    q[clipped] = cap
    if w_rest > 0 and rem > 0:
        q[~clipped] = rem * w[~clipped] / w_rest
    return q


def eps_P_cond_classical(j: JointDist, lam: float) -> OneShotResult:
    """Purified-distance smoothing of the conditional min-entropy, exact.

    F* = max sum sqrt(p(x,a) q(x,a)) subject to q(x,a) <= 2^-lambda p(x)
    and sum_a q(x,a) <= p(x); the optimum separates across rows and each
    row is a clip-renormalize problem.  eps = sqrt(1 - F*^2).
    """
    kx, _ = j.shape
    px = j.matrix.sum(axis=1)
    cap = math.pow(2.0, -lam)
    q = np.zeros_like(j.matrix)
    fid = 0.0
    for x in range(kx):
        if px[x] <= 0:
            continue
        q[x] = _row_bhattacharyya_opt(j.matrix[x], cap * px[x], px[x])
        fid += float(np.sqrt(j.matrix[x] * q[x]).sum())
    fid = min(fid, 1.0)
    value = math.sqrt(max(1.0 - fid * fid, 0.0))
    l2om = log2_one_minus_eps_from_log2_fid(log2_safe(fid))
    return _result(value, l2om, q, "exact")


def eps_P_cond_pure_bounds(s: SchmidtState, n: int, r: float,
                           budget=IID_BUDGET):
    """Lower and upper bounds on eps^P for the n-fold pure state.

    B_n = sum_t P(t) min(1, sqrt(2^-nr/|T_n^t|)) folds over Schmidt types;
    the optimal fidelity F* lies in [B_n / (n+1)^(|X|/2), B_n], and both
    ends convert to eps bounds via eps = sqrt(1 - F^2).  Returns the pair
    (lower, upper) of OneShotResult on eps.
    """
    p = s.schmidt_dist
    k = p.size
    if num_types(k, n) > budget:
        raise BudgetExceededError(f"{num_types(k, n)} types exceed budget")
    table = log2_factorial_table(n)
    log_p = log2_safe(p.weights)
    dead = ~np.isfinite(log_p)
    log_p_safe = np.where(dead, 0.0, log_p)
    terms = []
    deficit_terms = []
    for block in composition_blocks(n, k, budget):
        counts = block.astype(float)
        log_class = table[n] - table[block].sum(axis=1)
        seq = counts @ log_p_safe
        if dead.any():
            seq = np.where(counts[:, dead].sum(axis=1) > 0, NEG_INF, seq)
        log_mass = log_class + seq
        log_per_type = np.minimum(0.0, 0.5 * (-n * r - log_class))
        v = log_mass + log_per_type
        finite = v[np.isfinite(v)]
        if finite.size:
            terms.append(lse2(finite))
        # deficit 1 - B_n = sum_t mass * (1 - f_t), exact when every f_t = 1
        short = log_per_type < 0
        if np.any(short & np.isfinite(log_mass)):
            gap = np.log2(-np.expm1(log_per_type[short] * LN2))
            w = log_mass[short] + gap
            w = w[np.isfinite(w)]
            if w.size:
                deficit_terms.append(lse2(w))
    log_deficit = lse2(np.array(deficit_terms))
    if log_deficit <= -1.0:
        # B_n near 1: go through the deficit for full precision
        log_b = math.log1p(-math.pow(2.0, log_deficit)) / LN2
    else:
        log_b = min(lse2(np.array(terms)), 0.0)
    log_f_hi = log_b
    log_f_lo = log_b - 0.5 * k * math.log2(n + 1)
    # larger fidelity means smaller eps: F <= B_n gives the eps lower bound
    lo_val = math.sqrt(max(1.0 - math.pow(2.0, log_f_hi) ** 2, 0.0))
    hi_val = math.sqrt(max(1.0 - math.pow(2.0, log_f_lo) ** 2, 0.0))
    lower = _result(lo_val, log2_one_minus_eps_from_log2_fid(log_f_hi), None, "lower")
    upper = _result(hi_val, log2_one_minus_eps_from_log2_fid(log_f_lo), None, "upper")
    return lower, upper


def purified_bounds_from_trace(res: OneShotResult):
    """Two-sided bounds eps^d <= eps^P <= sqrt(eps^d) for pure states.

    Post-processes a trace-distance result into purified-distance bounds;
    the exponents coincide, so this is the pure-state substitute for a
    separate eps^P evaluator.
    """
    eps = res.value
    lower = _result(eps, res.log2_one_minus, None, "lower")
    root = math.sqrt(eps)
    # 1 - sqrt(eps) = (1 - eps) / (1 + sqrt(eps))
    l2om = res.log2_one_minus - math.log2(1.0 + root)
    upper = _result(root, l2om, None, "upper")
    return lower, upper
