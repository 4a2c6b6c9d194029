"""Closed-form strong converse exponents, each in its stated equivalent forms.

Families and their defining optimizations (all rates r and values in bits
per copy):

    cond-trace        sup_{0<=a<=1} (1-a){r - Hbar_a(A|R)}
    mutual-trace      sup_{0<=a<=1} (1-a){I_a(R:A) - r}
    cond-purified     sup_{1/2<=a<=1} inf_t {2D(t||p) + ((1-a)/a)(r - E_t H_a(p(.|x)))}
    cond-pure         inf_t {2D(t||p) + |r + H(t)|^+}
                      = sup_{0<=s<=1} {s r - (2-s) log2 sum_x p^(2/(2-s))}
    mutual-pure       sup_{b>1} ((b-1)/b){2 H_b(R) - r}
    ir                sup_{0<=a<=1} (1-a){r - H_a(p)}
    comp-classical    sup_{b>1} ((b-1)/b){H_b(p) - r}
    comp-blind        sup_{b>1} ((b-1)/b){2H_b(p) - 2r}
    comparison-cond   inf_t {D(t||p) + |r + H(t) + D(t||p)|^+}
    comparison-mutual sup_{b>1} ((b-1)/b){2 H_{2b-1}(R) - r}

Every inner infimum over the simplex of c*D(t||p) + E_t g has the exact
Gibbs tilt minimizer t*(x) proportional to p(x) 2^(-g(x)/c) with value
-c log2 sum_x p(x) 2^(-g(x)/c); the tilts are validated against simplex
grid oracles before being trusted (see the oracles module).

|x|^+ is realized as sup_{s in [0,1]} s*x wherever that exchanges a sup
and an inf, exactly as in the derivations.  beta > 1 families are
reparameterized by u = (beta-1)/beta in [0, 1], with the u = 1 endpoint
evaluated analytically through the min-entropy.

1-D suprema use a 2001-point grid plus golden-section polish; continuity
in the order parameter holds on the compact reparameterized intervals and
unimodality is never assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._num import log2_safe, lse2, maximize_1d, xlog2x
from .errors import InputError
from .matrix_core import HermitianOp, partial_trace, sandwiched_cond_entropy
from .one_shot import SchmidtState
from .prob_core import (
    Dist,
    JointDist,
    expected_cond_renyi,
    petz_cond_entropy_bar,
    petz_mutual_divergence,
    petz_mutual_info,
    relative_entropy,
    renyi_entropy,
    shannon_entropy,
)

GRID = 2001
IDENTITY_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class ExponentValue:
    """Nonnegative exponent (bits of decay per copy) plus its witness.

    The witness holds the optimizing order parameter and, for tilt-based
    forms, the tilted distribution; `replay_witness` reproduces `value`
    from it.
    """

    value: float
    witness: dict

    def __post_init__(self):
        if not (self.value >= -1e-12):
            raise InputError(f"exponent must be nonnegative, got {self.value}")
        object.__setattr__(self, "value", max(float(self.value), 0.0))


CURVE_DIRECTION = {
    "cond-trace": "nondecreasing",
    "mutual-trace": "nonincreasing",
    "cond-purified": "nondecreasing",
    "pa": "nondecreasing",
    "cond-pure": "nondecreasing",
    "mutual-pure": "nonincreasing",
    "ir": "nondecreasing",
    "split": "nonincreasing",
    "comp-classical": "nonincreasing",
    "comp-blind": "nonincreasing",
    "comparison-cond": "nondecreasing",
    "comparison-mutual": "nonincreasing",
}


@dataclass(frozen=True, eq=False)
class ExponentCurve:
    """Sorted (r, ExponentValue) samples for one exponent family."""

    family: str
    rs: tuple
    values: tuple

    def __post_init__(self):
        if len(self.rs) != len(self.values) or not self.rs:
            raise InputError("curve needs matching, nonempty grids")
        if any(b <= a for a, b in zip(self.rs, self.rs[1:])):
            raise InputError("r grid must be strictly increasing")

    def monotone_ok(self, tol: float = 1e-9) -> bool:
        direction = CURVE_DIRECTION.get(self.family)
        vals = [v.value for v in self.values]
        if direction == "nondecreasing":
            return all(b >= a - tol for a, b in zip(vals, vals[1:]))
        if direction == "nonincreasing":
            return all(b <= a + tol for a, b in zip(vals, vals[1:]))
        return True


def gibbs_tilt(weights, g, c):
    """Minimize c*D(t||p) + E_t g over the simplex; returns (value, t*).

    t*(x) proportional to p(x) 2^(-g(x)/c); value -c log2 sum p 2^(-g/c).
    Entries with p(x) = 0 stay at zero.
    """
    if c <= 0:
        raise InputError("tilt needs c > 0")
    log_p = log2_safe(weights)
    logs = log_p - np.asarray(g, dtype=float) / c
    log_z = lse2(logs[np.isfinite(logs)])
    t = np.where(np.isfinite(logs), np.exp2(logs - log_z), 0.0)
    t /= t.sum()
    return float(-c * log_z), t


def _pos_part(x):
    return max(float(x), 0.0)


# ---------------------------------------------------------------------------
# classical trace-distance families


def cond_trace_objective(j: JointDist, r: float, alpha: float) -> float:
    return (1.0 - alpha) * (r - petz_cond_entropy_bar(j, alpha))


def exp_cond_trace_classical(j: JointDist, r: float) -> ExponentValue:
    """Conditional min-entropy smoothing exponent, trace distance."""
    alpha, val = maximize_1d(lambda a: cond_trace_objective(j, r, a), 0.0, 1.0, GRID)
    return ExponentValue(_pos_part(val), {"alpha": alpha})


def mutual_trace_objective(j: JointDist, r: float, alpha: float,
                           sigma: Dist) -> float:
    if alpha >= 1.0 - 1e-12:
        return 0.0
    return (1.0 - alpha) * (petz_mutual_divergence(j, sigma, alpha) - r)


def _sibson_value(j: JointDist, alpha: float) -> float:
    """Closed-form inf_sigma D_alpha(p||p_R x sigma) used on grid scans.

    The alpha -> 0 endpoint is I_0 = -log2 max_a sum_{x: p(x,a)>0} p(x),
    the best single-column support mass.
    """
    px = j.matrix.sum(axis=1)
    if alpha <= 1e-9:
        w = [(px[(j.matrix[:, a] > 0)]).sum() for a in range(j.shape[1])]
        return float(-math.log2(max(w)))
    terms = []
    for a in range(j.shape[1]):
        col = j.matrix[:, a]
        mask = (col > 0) & (px > 0)
        if np.any(mask):
            c = lse2(alpha * np.log2(col[mask]) + (1 - alpha) * np.log2(px[mask]))
            terms.append(c / alpha)
    return float(alpha / (alpha - 1.0) * lse2(np.array(terms)))


def exp_mutual_trace_classical(j: JointDist, r: float) -> ExponentValue:
    """Mutual max-information smoothing exponent, trace distance.

    Grid scans use the closed-form Sibson value; the winning order is then
    re-solved with the polished minimizer so the witness sigma is explicit.
    """

    def grid_obj(alpha):
        if alpha >= 1.0 - 1e-9:
            return 0.0
        return (1.0 - alpha) * (_sibson_value(j, alpha) - r)

    alpha, _ = maximize_1d(grid_obj, 0.0, 1.0, GRID)
    if alpha >= 1.0 - 1e-9:
        return ExponentValue(0.0, {"alpha": 1.0, "sigma": list(j.marginal_col().weights)})
    if alpha <= 1e-9:
        # order-0 endpoint: the best sigma is a point mass on the column
        # with the largest supported marginal mass
        px = j.matrix.sum(axis=1)
        w = np.array([(px[(j.matrix[:, a] > 0)]).sum() for a in range(j.shape[1])])
        sigma = Dist.point_mass(j.shape[1], int(np.argmax(w)), j.col_labels)
        val = mutual_trace_objective(j, r, 0.0, sigma)
        return ExponentValue(_pos_part(val), {"alpha": 0.0,
                                              "sigma": list(sigma.weights)})
    inner = petz_mutual_info(j, alpha)
    val = mutual_trace_objective(j, r, alpha, inner.sigma)
    return ExponentValue(_pos_part(val), {"alpha": alpha,
                                          "sigma": list(inner.sigma.weights)})


def exp_state_splitting(j: JointDist, r: float) -> ExponentValue:
    """Classical state splitting shares the mutual-trace formula."""
    if r < 0:
        raise InputError("communication rate must be >= 0")
    return exp_mutual_trace_classical(j, r)


# ---------------------------------------------------------------------------
# classical purified-distance family (privacy amplification)


def cond_purified_objective(j: JointDist, r: float, alpha: float, t: Dist) -> float:
    s = (1.0 - alpha) / alpha
    return 2.0 * relative_entropy(t, j.marginal_row()) + s * (
        r - expected_cond_renyi(j, t, alpha))


def _cond_purified_inner(j: JointDist, r: float, alpha: float):
    """Exact inner infimum over t via the Gibbs tilt with c = 2."""
    s = (1.0 - alpha) / alpha
    px = j.matrix.sum(axis=1)
    h = np.zeros(j.shape[0])
    for x in range(j.shape[0]):
        if px[x] > 0:
            h[x] = s * (r - renyi_entropy(j.conditional(x), alpha))
        else:
            h[x] = np.inf  # never charged by the tilt
    val, t = gibbs_tilt(px, h, 2.0)
    return val, t


def exp_cond_purified_classical(j: JointDist, r: float) -> ExponentValue:
    """Eq-claconditional form: sup over alpha in [1/2, 1] of the tilted inner inf.

    This is also the privacy amplification strong converse exponent for a
    classical adversary.
    """

    def obj(alpha):
        return _cond_purified_inner(j, r, alpha)[0]

    alpha, val = maximize_1d(obj, 0.5, 1.0, GRID)
    _, t_star = _cond_purified_inner(j, r, alpha)
    return ExponentValue(_pos_part(val), {"alpha": alpha, "t_star": list(t_star)})


def cond_purified_variational_objective(j: JointDist, r: float, t: Dist,
                                        taus) -> float:
    """Raw variational objective 2D(t||p) + E_t D(tau^x||rho^x) + |r + E_t D(tau^x||I)|^+."""
    px = j.marginal_row()
    d_rho = 0.0
    d_eye = 0.0
    for x in np.nonzero(t.weights > 0)[0]:
        tau = np.asarray(taus[x], dtype=float)
        cond = j.conditional(int(x)).weights
        mask = tau > 0
        d_rho += t.weights[x] * float(
            np.sum(tau[mask] * (np.log2(tau[mask]) - log2_safe(cond)[mask])))
        d_eye += t.weights[x] * float(np.sum(xlog2x(tau)))
    return 2.0 * relative_entropy(t, px) + d_rho + _pos_part(r + d_eye)


def exp_cond_purified_variational(j: JointDist, r: float) -> ExponentValue:
    """Sion-exchanged form of the purified conditional exponent.

    |x|^+ becomes sup over s in [0,1] of s*x; for fixed s both inner infima
    are exponential-family tilts: tau*_x proportional to p(.|x)^(1/(1+s))
    and then t* from the outer c = 2 tilt of the per-symbol values.
    """
    px = j.matrix.sum(axis=1)

    def parts(s):
        g = np.zeros(j.shape[0])
        taus = []
        for x in range(j.shape[0]):
            if px[x] <= 0:
                g[x] = np.inf
                taus.append(np.zeros(j.shape[1]))
                continue
            cond = j.matrix[x] / px[x]
            logs = log2_safe(cond) / (1.0 + s)
            log_z = lse2(logs[np.isfinite(logs)])
            tau = np.where(np.isfinite(logs), np.exp2(logs - log_z), 0.0)
            tau /= tau.sum()
            mask = tau > 0
            d_rho = float(np.sum(tau[mask] * (np.log2(tau[mask])
                                              - np.log2(cond[mask]))))
            d_eye = float(np.sum(xlog2x(tau)))
            g[x] = d_rho + s * d_eye
            taus.append(tau)
        val, t_star = gibbs_tilt(px, g, 2.0)
        return s * r + val, t_star, taus

    s_star, val = maximize_1d(lambda s: parts(s)[0], 0.0, 1.0, GRID)
    _, t_star, taus = parts(s_star)
    return ExponentValue(_pos_part(val), {
        "s": s_star, "t_star": list(t_star),
        "tau_star": [list(t) for t in taus]})


# ---------------------------------------------------------------------------
# pure-state families (input: Schmidt distribution)


def cond_pure_sup_objective(p: Dist, r: float, s: float) -> float:
    """s r - (2-s) log2 sum_x p(x)^(2/(2-s))."""
    logs = (2.0 / (2.0 - s)) * log2_safe(p.weights)
    return s * r - (2.0 - s) * lse2(logs[np.isfinite(logs)])


def cond_pure_primal_objective(p: Dist, r: float, t: Dist) -> float:
    return 2.0 * relative_entropy(t, p) + _pos_part(r + shannon_entropy(t))


def _tilt_family(p: Dist, c: float) -> Dist:
    """Member p^c / Z of the tilt family through p."""
    logs = c * log2_safe(p.weights)
    log_z = lse2(logs[np.isfinite(logs)])
    w = np.where(np.isfinite(logs), np.exp2(logs - log_z), 0.0)
    return Dist(p.labels, w / w.sum())


def exp_cond_pure_forms(state: SchmidtState, r: float):
    """(sup form, inf form) of the pure-state conditional exponent.

    The infimum is taken over the exponent-c tilt family p^c, c in [1, 2],
    which contains every KKT point of the primal objective.
    """
    p = state.schmidt_dist
    s_star, sup_val = maximize_1d(lambda s: cond_pure_sup_objective(p, r, s),
                                  0.0, 1.0, GRID)

    def neg_primal(c):
        return -cond_pure_primal_objective(p, r, _tilt_family(p, c))

    c_star, neg = maximize_1d(neg_primal, 1.0, 2.0, GRID)
    t_star = _tilt_family(p, c_star)
    return (s_star, _pos_part(sup_val)), (t_star, _pos_part(-neg))


def exp_cond_pure(state: SchmidtState, r: float) -> ExponentValue:
    """inf_t {2D(t||p) + |r + H(t)|^+}; both closed forms, equality asserted."""
    (s_star, sup_val), (t_star, inf_val) = exp_cond_pure_forms(state, r)
    if abs(sup_val - inf_val) > IDENTITY_TOL:
        raise ArithmeticError(
            f"variational identity violated: sup {sup_val} vs inf {inf_val}")
    return ExponentValue(sup_val, {"s": s_star, "t_star": list(t_star.weights)})


def mutual_pure_objective(p: Dist, r: float, u: float) -> float:
    """u (2 H_{1/(1-u)}(p) - r), with the u = 1 min-entropy endpoint."""
    if u <= 0.0:
        return 0.0
    if u >= 1.0:
        return 2.0 * renyi_entropy(p, np.inf) - r
    return u * (2.0 * renyi_entropy(p, 1.0 / (1.0 - u)) - r)


def exp_mutual_pure(state: SchmidtState, r: float) -> ExponentValue:
    p = state.schmidt_dist
    u, val = maximize_1d(lambda x: mutual_pure_objective(p, r, x), 0.0, 1.0, GRID)
    beta = float("inf") if u >= 1.0 else 1.0 / (1.0 - u)
    return ExponentValue(_pos_part(val), {"u": u, "beta": beta})


# ---------------------------------------------------------------------------
# general-state lower bound (Proposition-9 style)


def _marginal_renyi(rho_ra: HermitianOp, dims, beta: float) -> float:
    rho_r = partial_trace(rho_ra.entries, dims, keep=0)
    evals = np.maximum(np.linalg.eigvalsh(rho_r), 0.0)
    return renyi_entropy(Dist.from_weights(evals / evals.sum()), beta)


def mutual_lower_general_objective(rho_ra: HermitianOp, r: float, alpha: float,
                                   dims, warm=None, restarts=4,
                                   maxiter=2500):
    """((1-a)/a){H_b(R) - Hstar_a(R|A) - r} with 1/a + 1/b = 2.

    Returns (value, minimizing sigma entries); the sigma can warm-start the
    neighboring alpha on a grid scan.
    """
    alpha = min(max(alpha, 0.5), 1.0)
    if alpha >= 1.0 - 1e-9:
        return 0.0, warm
    beta = alpha / (2.0 * alpha - 1.0)
    h_beta = _marginal_renyi(rho_ra, dims, beta)
    h_cond, sigma = sandwiched_cond_entropy(rho_ra, alpha, dims,
                                            restarts=restarts,
                                            warm_start=warm, maxiter=maxiter)
    val = (1.0 - alpha) / alpha * (h_beta - h_cond - r)
    return val, sigma.entries


def exp_mutual_lower_bound_general(rho_ra: HermitianOp, r: float, dims,
                                   grid: int = 33) -> ExponentValue:
    """Certified lower bound on the mutual smoothing exponent for any state.

    The inner sandwiched conditional entropy is a Nelder-Mead solve, so the
    alpha scan uses a coarser grid than the closed-form families, with warm
    starts carried along the grid.
    """
    warm = [None]

    def obj(alpha):
        restarts = 4 if warm[0] is None else 2
        val, sigma = mutual_lower_general_objective(
            rho_ra, r, alpha, dims, warm=warm[0], restarts=restarts,
            maxiter=1500)
        if sigma is not None:
            warm[0] = sigma
        return val

    alpha, val = maximize_1d(obj, 0.5, 1.0 - 1e-6, num=grid, tol=1e-6)
    return ExponentValue(_pos_part(val), {"alpha": alpha, "raw": float(val)})


# ---------------------------------------------------------------------------
# intrinsic randomness and compression


def intrinsic_objective(p: Dist, r: float, alpha: float) -> float:
    return (1.0 - alpha) * (r - renyi_entropy(p, alpha))


def exp_intrinsic_randomness(p: Dist, r: float) -> ExponentValue:
    if r < 0:
        raise InputError("extraction rate must be >= 0")
    alpha, val = maximize_1d(lambda a: intrinsic_objective(p, r, a), 0.0, 1.0, GRID)
    return ExponentValue(_pos_part(val), {"alpha": alpha})


def intrinsic_variational_objective(p: Dist, r: float, q: Dist) -> float:
    d = relative_entropy(q, p)
    return d + _pos_part(r - shannon_entropy(q) - d)


def exp_intrinsic_variational(p: Dist, r: float) -> ExponentValue:
    """inf_q {D(q||p) + |r - H(q) - D(q||p)|^+} over the tilt family p^c.

    The KKT points of the primal sit inside c in [0, 1] (c = 0 is uniform,
    c = 1 is p itself), so the primal scan is exact.
    """
    if r < 0:
        raise InputError("extraction rate must be >= 0")

    def neg_primal(c):
        return -intrinsic_variational_objective(p, r, _tilt_family(p, c))

    c_star, neg = maximize_1d(neg_primal, 0.0, 1.0, GRID)
    q_star = _tilt_family(p, c_star)
    return ExponentValue(_pos_part(-neg), {"s": 1.0 - c_star,
                                           "q_star": list(q_star.weights)})


def compression_objective(p: Dist, r: float, u: float) -> float:
    if u <= 0.0:
        return 0.0
    if u >= 1.0:
        return renyi_entropy(p, np.inf) - r
    return u * (renyi_entropy(p, 1.0 / (1.0 - u)) - r)


def exp_classical_compression(p: Dist, r: float) -> ExponentValue:
    if r < 0:
        raise InputError("compression rate must be >= 0")
    u, val = maximize_1d(lambda x: compression_objective(p, r, x), 0.0, 1.0, GRID)
    beta = float("inf") if u >= 1.0 else 1.0 / (1.0 - u)
    return ExponentValue(_pos_part(val), {"u": u, "beta": beta})


def exp_blind_compression(p: Dist, r: float) -> ExponentValue:
    """Blind quantum compression of a source with spectrum p: twice the
    classical value at the same beta witness."""
    base = exp_classical_compression(p, r)
    return ExponentValue(2.0 * base.value, dict(base.witness))


# ---------------------------------------------------------------------------
# appendix comparison forms (classical trace formulas on a pure state)


def comparison_cond_sup_objective(p: Dist, r: float, alpha: float) -> float:
    """(1-a)(r + H_{2-a}(p)): the Legendre form via Hbar on the pure state."""
    return (1.0 - alpha) * (r + renyi_entropy(p, 2.0 - alpha))


def comparison_cond_primal_objective(p: Dist, r: float, t: Dist) -> float:
    d = relative_entropy(t, p)
    return d + _pos_part(r + shannon_entropy(t) + d)


def exp_cond_trace_pure_comparison_forms(state: SchmidtState, r: float):
    p = state.schmidt_dist
    alpha, sup_val = maximize_1d(
        lambda a: comparison_cond_sup_objective(p, r, a), 0.0, 1.0, GRID)

    def neg_primal(c):
        return -comparison_cond_primal_objective(p, r, _tilt_family(p, c))

    c_star, neg = maximize_1d(neg_primal, 1.0, 2.0, GRID)
    return (alpha, _pos_part(sup_val)), (c_star, _pos_part(-neg))


def exp_cond_trace_pure_comparison(state: SchmidtState, r: float) -> ExponentValue:
    """inf_t {D(t||p) + |r + H(t) + D(t||p)|^+}: the classical conditional
    trace formula specialized to a pure state (not its true exponent)."""
    (alpha, sup_val), (c_star, inf_val) = \
        exp_cond_trace_pure_comparison_forms(state, r)
    if abs(sup_val - inf_val) > IDENTITY_TOL:
        raise ArithmeticError(
            f"comparison identity violated: {sup_val} vs {inf_val}")
    t_star = _tilt_family(state.schmidt_dist, c_star)
    return ExponentValue(inf_val, {"alpha": alpha, "s": c_star - 1.0,
                                   "t_star": list(t_star.weights)})


def comparison_mutual_beta_objective(p: Dist, r: float, u: float) -> float:
    """u (2 H_{(1+u)/(1-u)}(p) - r), i.e. order 2*beta - 1 at beta = 1/(1-u)."""
    if u <= 0.0:
        return 0.0
    if u >= 1.0:
        return 2.0 * renyi_entropy(p, np.inf) - r
    return u * (2.0 * renyi_entropy(p, (1.0 + u) / (1.0 - u)) - r)


def comparison_mutual_alpha_objective(p: Dist, r: float, alpha: float) -> float:
    """(1-a)(I_a - r) with the pure-state identity I_a = 2 H_{2/a - 1}(p)."""
    if alpha <= 0.0:
        return 2.0 * renyi_entropy(p, np.inf) - r
    if alpha >= 1.0:
        return 0.0
    logs = (2.0 / alpha - 1.0) * log2_safe(p.weights)
    return -alpha * lse2(logs[np.isfinite(logs)]) - (1.0 - alpha) * r


def exp_mutual_trace_pure_comparison_forms(state: SchmidtState, r: float):
    p = state.schmidt_dist
    u, v_beta = maximize_1d(lambda x: comparison_mutual_beta_objective(p, r, x),
                            0.0, 1.0, GRID)
    alpha, v_alpha = maximize_1d(
        lambda a: comparison_mutual_alpha_objective(p, r, a), 0.0, 1.0, GRID)
    return (u, _pos_part(v_beta)), (alpha, _pos_part(v_alpha))


def exp_mutual_trace_pure_comparison(state: SchmidtState, r: float) -> ExponentValue:
    """sup_{b>1} ((b-1)/b){2 H_{2b-1}(R) - r}: the classical mutual trace
    formula specialized to a pure state (not its true exponent)."""
    (u, v_beta), (alpha, v_alpha) = exp_mutual_trace_pure_comparison_forms(state, r)
    if abs(v_beta - v_alpha) > IDENTITY_TOL:
        raise ArithmeticError(
            f"comparison identity violated: {v_beta} vs {v_alpha}")
    beta = float("inf") if u >= 1.0 else 1.0 / (1.0 - u)
    return ExponentValue(v_beta, {"u": u, "beta": beta, "alpha": alpha})


# ---------------------------------------------------------------------------
# witness replay


def replay_witness(family: str, obj, r: float, witness: dict) -> float:
    """Evaluate the family's raw objective at a stored witness.

    `obj` is the family input (JointDist, Dist, SchmidtState, or a
    (HermitianOp, dims) pair for the general lower bound).
    """
    if family == "cond-trace":
        return _pos_part(cond_trace_objective(obj, r, witness["alpha"]))
    if family in ("mutual-trace", "split"):
        if witness["alpha"] >= 1.0 - 1e-9:
            return 0.0
        sigma = Dist(obj.col_labels, np.asarray(witness["sigma"]))
        return _pos_part(mutual_trace_objective(obj, r, witness["alpha"], sigma))
    if family in ("cond-purified", "pa"):
        t = Dist(obj.row_labels, np.asarray(witness["t_star"]))
        return _pos_part(cond_purified_objective(obj, r, witness["alpha"], t))
    if family == "cond-purified-var":
        t = Dist(obj.row_labels, np.asarray(witness["t_star"]))
        return _pos_part(cond_purified_variational_objective(
            obj, r, t, witness["tau_star"]))
    if family == "cond-pure":
        return _pos_part(cond_pure_sup_objective(obj.schmidt_dist, r, witness["s"]))
    if family == "mutual-pure":
        return _pos_part(mutual_pure_objective(obj.schmidt_dist, r, witness["u"]))
    if family == "ir":
        return _pos_part(intrinsic_objective(obj, r, witness["alpha"]))
    if family == "ir-var":
        q = Dist(obj.labels, np.asarray(witness["q_star"]))
        return _pos_part(intrinsic_variational_objective(obj, r, q))
    if family == "comp-classical":
        return _pos_part(compression_objective(obj, r, witness["u"]))
    if family == "comp-blind":
        return _pos_part(2.0 * compression_objective(obj, r, witness["u"]))
    if family == "comparison-cond":
        t = Dist(obj.schmidt_dist.labels, np.asarray(witness["t_star"]))
        return _pos_part(comparison_cond_primal_objective(obj.schmidt_dist, r, t))
    if family == "comparison-mutual":
        return _pos_part(comparison_mutual_beta_objective(
            obj.schmidt_dist, r, witness["u"]))
    if family == "mutual-lower-general":
        rho, dims = obj
        val, _ = mutual_lower_general_objective(rho, r, witness["alpha"], dims)
        return _pos_part(val)
    raise InputError(f"unknown family {family!r}")
