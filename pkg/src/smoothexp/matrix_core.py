"""Small-dimension Hermitian operator quantities, in bits.

Covers what the lemma-level property checks and the general mutual
information lower bound need: fidelity / trace / purified distances,
Petz and sandwiched Renyi divergences with their support rules, the
max-relative entropy, pinching, and a derivative-free minimizer for the
sandwiched conditional Renyi entropy

    Hstar_alpha(A|B) = -inf_{sigma_B} Dstar_alpha(rho_AB || I_A x sigma_B).

Dimensions are deliberately tiny (eig is capped at 32); no attempt at
BLAS-grade performance.  Fractional matrix powers go through the spectral
decomposition with eigenvalues clamped at 1e-14 so that 0^(negative) never
appears; whether a divergence is +inf is decided by the support rules, not
by floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from ._num import lse2
from .errors import InputError

HERMITICITY_TOL = 1e-10
PSD_TOL = 1e-9
EIG_CLAMP = 1e-14
ALPHA_ONE_BAND = 1e-6
MAX_DIM = 32


@dataclass(frozen=True, eq=False)
class HermitianOp:
    """Dense Hermitian matrix with PSD/trace metadata."""

    entries: np.ndarray

    def __post_init__(self):
        m = np.array(self.entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InputError("entries must be a square matrix")
        if np.max(np.abs(m - m.conj().T)) > HERMITICITY_TOL:
            raise InputError("matrix is not Hermitian within 1e-10")
        m = 0.5 * (m + m.conj().T)
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def trace(self) -> float:
        return float(np.real(np.trace(self.entries)))

    @property
    def is_psd(self) -> bool:
        return bool(np.min(np.linalg.eigvalsh(self.entries)) >= -PSD_TOL)

    @classmethod
    def from_matrix(cls, m):
        return cls(np.asarray(m))

    @classmethod
    def diagonal(cls, values):
        return cls(np.diag(np.asarray(values, dtype=complex)))

    @classmethod
    def identity(cls, d):
        return cls(np.eye(d, dtype=complex))

    @classmethod
    def random_psd(cls, rng, d, trace=None):
        g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        m = g @ g.conj().T
        if trace is not None:
            m *= trace / np.real(np.trace(m))
        return cls(m)

    @classmethod
    def random_state(cls, rng, d):
        return cls.random_psd(rng, d, trace=1.0)

    @classmethod
    def random_pure(cls, rng, d):
        v = rng.normal(size=d) + 1j * rng.normal(size=d)
        v /= np.linalg.norm(v)
        return cls(np.outer(v, v.conj()))

    def to_json(self):
        return {
            "dim": self.dim,
            "re": np.real(self.entries).tolist(),
            "im": np.imag(self.entries).tolist(),
        }

    @classmethod
    def from_json(cls, obj):
        try:
            re = np.asarray(obj["re"], dtype=float)
            im = np.asarray(obj["im"], dtype=float)
            d = int(obj["dim"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed HermitianOp JSON: {exc}") from exc
        if re.shape != (d, d) or im.shape != (d, d):
            raise InputError("re/im shapes do not match dim")
        return cls(re + 1j * im)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues (descending) and the unitary of eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def eig(h: HermitianOp) -> Spectrum:
    """Spectral decomposition; validates reconstruction and unitarity."""
    if h.dim > MAX_DIM:
        raise InputError(f"dimension {h.dim} exceeds the eig cap {MAX_DIM}")
    vals, vecs = np.linalg.eigh(h.entries)
    order = np.argsort(vals)[::-1]
    vals, vecs = vals[order], vecs[:, order]
    scale = max(np.max(np.abs(vals)), 1.0)
    recon = vecs @ np.diag(vals) @ vecs.conj().T
    if np.max(np.abs(recon - h.entries)) > 1e-8 * scale:
        raise InputError("eigendecomposition failed the reconstruction check")
    if np.max(np.abs(vecs.conj().T @ vecs - np.eye(h.dim))) > 1e-9:
        raise InputError("eigenvectors are not unitary within 1e-9")
    vals.setflags(write=False)
    vecs.setflags(write=False)
    return Spectrum(vals, vecs)


def _power(h: HermitianOp, exponent: float, clamp: float = EIG_CLAMP) -> np.ndarray:
    """h^exponent by spectral calculus; eigenvalues below clamp act as 0."""
    s = eig(h)
    vals = np.where(s.eigenvalues > clamp, s.eigenvalues, 0.0)
    out = np.zeros(vals.size)
    pos = vals > 0
    out[pos] = vals[pos] ** exponent
    return s.eigenvectors @ np.diag(out) @ s.eigenvectors.conj().T


def _support_projector(h: HermitianOp, clamp: float = EIG_CLAMP) -> np.ndarray:
    s = eig(h)
    cols = s.eigenvectors[:, s.eigenvalues > clamp]
    return cols @ cols.conj().T


def _supp_contained(r: HermitianOp, s: HermitianOp, tol=1e-9) -> bool:
    p = _support_projector(s)
    leak = r.entries - p @ r.entries @ p
    return np.max(np.abs(leak)) <= tol * max(1.0, np.max(np.abs(r.entries)))


def _supp_overlap(r: HermitianOp, s: HermitianOp, tol=1e-12) -> bool:
    pr = _support_projector(r)
    ps = _support_projector(s)
    return float(np.real(np.trace(pr @ ps))) > tol


def _require_psd(*ops):
    for op in ops:
        if not op.is_psd:
            raise InputError("operator must be positive semi-definite")


def fidelity(r: HermitianOp, s: HermitianOp) -> float:
    """F(r, s) = ||sqrt(r) sqrt(s)||_1 = tr sqrt(sqrt(r) s sqrt(r))."""
    _require_psd(r, s)
    root = _power(r, 0.5)
    inner = HermitianOp(root @ s.entries @ root)
    vals = np.linalg.eigvalsh(inner.entries)
    return float(np.sqrt(np.maximum(vals, 0.0)).sum())


def trace_distance(r: HermitianOp, s: HermitianOp) -> float:
    """d(r, s) = (1/2) ||r - s||_1."""
    _require_psd(r, s)
    vals = np.linalg.eigvalsh(r.entries - s.entries)
    return float(0.5 * np.abs(vals).sum())


def trace_distance_generalized(r: HermitianOp, s: HermitianOp) -> float:
    """(1/2)||r - s||_1 + (1/2)|tr r - tr s|, for subnormalized inputs."""
    return trace_distance(r, s) + 0.5 * abs(r.trace - s.trace)


def fidelity_generalized(r: HermitianOp, s: HermitianOp) -> float:
    """F(r,s) + sqrt((1 - tr r)(1 - tr s)) for subnormalized inputs."""
    extra = max(1.0 - r.trace, 0.0) * max(1.0 - s.trace, 0.0)
    return fidelity(r, s) + math.sqrt(extra)


def purified_distance(r: HermitianOp, s: HermitianOp) -> float:
    """P(r, s) = sqrt(1 - F^2); generalized fidelity for subnormalized input."""
    f = fidelity_generalized(r, s)
    return float(math.sqrt(max(1.0 - min(f, 1.0) ** 2, 0.0)))


def relative_entropy_quantum(r: HermitianOp, s: HermitianOp) -> float:
    """Umegaki D(r||s) = tr r (log2 r - log2 s); +inf off support."""
    _require_psd(r, s)
    if not _supp_contained(r, s):
        return float("inf")
    sr, ss = eig(r), eig(s)
    pos_r = sr.eigenvalues > EIG_CLAMP
    term_r = float(np.sum(sr.eigenvalues[pos_r] * np.log2(sr.eigenvalues[pos_r])))
    # tr r log2 s = sum_j log2(b_j) <v_j| r |v_j>
    term_s = 0.0
    for j in range(s.dim):
        b = ss.eigenvalues[j]
        w = float(np.real(ss.eigenvectors[:, j].conj() @ r.entries @ ss.eigenvectors[:, j]))
        if b > EIG_CLAMP and w > 1e-15:
            term_s += w * np.log2(b)
    return float(term_r - term_s)


def _check_alpha(alpha):
    if alpha <= 0:
        raise InputError("Renyi order must be positive")


def petz_divergence(r: HermitianOp, s: HermitianOp, alpha: float) -> float:
    """Petz D_alpha(r||s) with the -(1/(alpha-1)) log2 tr r correction."""
    _require_psd(r, s)
    _check_alpha(alpha)
    if abs(alpha - 1.0) < ALPHA_ONE_BAND:
        return relative_entropy_quantum(r, s) / r.trace
    if alpha > 1 and not _supp_contained(r, s):
        return float("inf")
    if alpha < 1 and not _supp_overlap(r, s):
        return float("inf")
    sr, ss = eig(r), eig(s)
    # Q_alpha = sum_ij a_i^alpha b_j^(1-alpha) |<u_i|v_j>|^2, in log domain
    overlaps = np.abs(sr.eigenvectors.conj().T @ ss.eigenvectors) ** 2
    terms = []
    for i in range(r.dim):
        a = sr.eigenvalues[i]
        if a <= EIG_CLAMP:
            continue
        for j in range(s.dim):
            b = ss.eigenvalues[j]
            w = overlaps[i, j]
            if b <= EIG_CLAMP or w <= 1e-18:
                continue
            terms.append(alpha * np.log2(a) + (1 - alpha) * np.log2(b) + np.log2(w))
    log_q = lse2(np.array(terms))
    return float((log_q - np.log2(r.trace)) / (alpha - 1.0))


def sandwiched_divergence(r: HermitianOp, s: HermitianOp, alpha: float) -> float:
    """Sandwiched Dstar_alpha(r||s), computed through log-domain eigenvalues."""
    _require_psd(r, s)
    _check_alpha(alpha)
    if abs(alpha - 1.0) < ALPHA_ONE_BAND:
        return relative_entropy_quantum(r, s) / r.trace
    if alpha > 1 and not _supp_contained(r, s):
        return float("inf")
    if alpha < 1 and not _supp_overlap(r, s):
        return float("inf")
    c = (1.0 - alpha) / (2.0 * alpha)
    half = _power(s, c)
    proj = _support_projector(s)
    r_eff = proj @ r.entries @ proj
    inner = HermitianOp(half @ r_eff @ half)
    vals = np.linalg.eigvalsh(inner.entries)
    vals = vals[vals > EIG_CLAMP]
    if vals.size == 0:
        return float("inf")
    log_qstar = lse2(alpha * np.log2(vals))
    return float((log_qstar - np.log2(r.trace)) / (alpha - 1.0))


def max_relative_entropy(r: HermitianOp, s: HermitianOp) -> float:
    """D_max(r||s) = log2 inf{lambda : r <= lambda s}; +inf off support."""
    _require_psd(r, s)
    if not _supp_contained(r, s):
        return float("inf")
    inv_half = _power(s, -0.5)
    m = inv_half @ r.entries @ inv_half
    top = float(np.max(np.linalg.eigvalsh(HermitianOp(m).entries)))
    if top <= 0:
        return float("-inf")
    return float(np.log2(top))


def num_distinct_eigenvalues(h: HermitianOp, tol: float = 1e-10) -> int:
    vals = np.sort(np.linalg.eigvalsh(h.entries))
    scale = max(1.0, float(np.max(np.abs(vals))))
    return int(1 + np.sum(np.diff(vals) > tol * scale))


def pinch(channel_of: HermitianOp, x: HermitianOp, tol: float = 1e-10) -> HermitianOp:
    """Pinching channel of the first argument applied to the second."""
    if channel_of.dim != x.dim:
        raise InputError("dimension mismatch")
    s = eig(channel_of)
    scale = max(1.0, float(np.max(np.abs(s.eigenvalues))))
    out = np.zeros_like(x.entries)
    i = 0
    d = channel_of.dim
    while i < d:
        j = i + 1
        while j < d and abs(s.eigenvalues[j] - s.eigenvalues[j - 1]) <= tol * scale:
            j += 1
        block = s.eigenvectors[:, i:j]
        p = block @ block.conj().T
        out = out + p @ x.entries @ p
        i = j
    return HermitianOp(out)


def projector_leq(a: HermitianOp, b: HermitianOp) -> np.ndarray:
    """Projector {a <= b}: span of nonpositive eigenvectors of a - b."""
    vals, vecs = np.linalg.eigh(a.entries - b.entries)
    cols = vecs[:, vals <= 0]
    return cols @ cols.conj().T


def partial_trace(m: np.ndarray, dims, keep: int) -> np.ndarray:
    """Trace out one subsystem of a bipartite matrix; keep in {0, 1}."""
    da, db = dims
    t = m.reshape(da, db, da, db)
    if keep == 0:
        return np.einsum("ikjk->ij", t)
    return np.einsum("kikj->ij", t)


def kron(a: HermitianOp, b: HermitianOp) -> HermitianOp:
    return HermitianOp(np.kron(a.entries, b.entries))


def sandwiched_cond_entropy(rho_ab: HermitianOp, alpha: float, dims,
                            restarts: int = 8, seed: int = 0,
                            warm_start=None, maxiter: int = 4000):
    """Hstar_alpha(A|B) and its minimizing sigma_B.

    Minimizes Dstar_alpha(rho_AB || I_A x sigma_B) over density matrices
    sigma_B = L L^dag / tr(L L^dag) with restarted Nelder-Mead.  Derivative
    free search is reliable at these dimensions (each subsystem <= 4); the
    restarts are seeded explicitly so runs are reproducible.
    """
    da, db = dims
    if da * db != rho_ab.dim:
        raise InputError("dims do not factor the operator dimension")
    if da > 4 or db > 4:
        raise InputError("sandwiched_cond_entropy is capped at 4x4 subsystems")
    if alpha < 0.5:
        raise InputError("order must be >= 1/2")
    eye_a = np.eye(da, dtype=complex)

    def sigma_from_params(params):
        l = (params[:db * db] + 1j * params[db * db:]).reshape(db, db)
        m = l @ l.conj().T
        tr = np.real(np.trace(m))
        if tr <= 1e-300:
            return np.eye(db, dtype=complex) / db
        return m / tr

    def objective(params):
        sigma = sigma_from_params(params)
        ref = HermitianOp(np.kron(eye_a, sigma))
        val = sandwiched_divergence(rho_ab, ref, alpha)
        return val if np.isfinite(val) else 1e6

    rng = np.random.default_rng(seed)
    rho_b = partial_trace(rho_ab.entries, dims, keep=1)
    rho_b = rho_b / np.real(np.trace(rho_b))
    starts = []
    if warm_start is not None:
        starts.append(warm_start)
    for base in (rho_b + 1e-6 * np.eye(db), np.eye(db, dtype=complex) / db):
        starts.append(base)
    while len(starts) < restarts:
        g = rng.normal(size=(db, db)) + 1j * rng.normal(size=(db, db))
        starts.append(g @ g.conj().T)
    best_val, best_params = np.inf, None
    for mat in starts[:restarts]:
        try:
            l0 = np.linalg.cholesky(np.asarray(mat, dtype=complex)
                                    + 1e-9 * np.eye(db))
        except np.linalg.LinAlgError:
            l0 = np.eye(db, dtype=complex)
        x0 = np.concatenate([np.real(l0).ravel(), np.imag(l0).ravel()])
        res = minimize(objective, x0, method="Nelder-Mead",
                       options={"xatol": 1e-10, "fatol": 1e-13,
                                "maxiter": maxiter, "maxfev": maxiter})
        if res.fun < best_val:
            best_val, best_params = res.fun, res.x
    sigma_star = sigma_from_params(best_params)
    return float(-best_val), HermitianOp(sigma_star)
