"""Shared numeric helpers: base-2 log arithmetic and 1-D maximization.

Everything here works in bits (log base 2).  Mass accumulations that can
span hundreds of binary orders of magnitude go through `lse2`; plain linear
sums are reserved for small alphabets.
"""

from __future__ import annotations

import math

import numpy as np

LN2 = math.log(2.0)
NEG_INF = float("-inf")


def lse2(a, axis=None):
    """log2(sum(2**a)) with -inf treated as empty terms."""
    a = np.asarray(a, dtype=float)
    if a.size == 0:
        return NEG_INF
    m = np.max(a, axis=axis, keepdims=axis is not None)
    if axis is None:
        if not np.isfinite(m):
            return float(m) if m == NEG_INF else float(m)
        return float(m + np.log2(np.sum(np.exp2(a - m))))
    safe_m = np.where(np.isfinite(m), m, 0.0)
    s = np.sum(np.exp2(a - safe_m), axis=axis)
    out = np.squeeze(safe_m, axis=axis) + np.log2(np.maximum(s, np.finfo(float).tiny))
    out = np.where(np.isfinite(np.squeeze(m, axis=axis)), out, np.squeeze(m, axis=axis))
    return out


def xlog2x(w):
    """Elementwise w*log2(w) with the 0*log0 = 0 convention."""
    w = np.asarray(w, dtype=float)
    out = np.zeros_like(w)
    pos = w > 0
    out[pos] = w[pos] * np.log2(w[pos])
    return out


def log2_safe(w):
    """Elementwise log2 mapping 0 to -inf without warnings."""
    w = np.asarray(w, dtype=float)
    out = np.full_like(w, NEG_INF)
    pos = w > 0
    out[pos] = np.log2(w[pos])
    return out


def log2_one_minus_eps_from_log2_fid(log2_fid):
    """log2(1 - eps) for eps = sqrt(1 - F^2), given log2(F).

    Uses 1 - sqrt(1-F^2) = F^2 / (1 + sqrt(1-F^2)) so the result stays
    accurate when F is exponentially small.
    """
    if log2_fid == NEG_INF:
        return NEG_INF
    two_log_f = 2.0 * log2_fid
    # sqrt(1 - F^2) without cancellation; expm1 saturates at -1 for tiny F
    one_minus_f2 = -math.expm1(two_log_f * LN2)
    root = math.sqrt(max(one_minus_f2, 0.0))
    return two_log_f - math.log2(1.0 + root)


def eps_from_log2_one_minus(log2_one_minus):
    """eps = 1 - 2**log2_one_minus computed through expm1."""
    if log2_one_minus == NEG_INF:
        return 1.0
    return -math.expm1(log2_one_minus * LN2)


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_max(f, lo, hi, tol):
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def maximize_1d(f, lo, hi, num=2001, tol=1e-10):
    """Grid scan then golden-section refinement of a continuous objective.

    Unimodality is not assumed; the grid locates the best bracket and the
    golden section only polishes inside it.  Returns (argmax, max).
    """
    xs = np.linspace(lo, hi, num)
    vals = np.array([f(float(x)) for x in xs])
    i = int(np.argmax(vals))
    best_x, best_v = float(xs[i]), float(vals[i])
    a = float(xs[max(i - 1, 0)])
    b = float(xs[min(i + 1, num - 1)])
    if b > a:
        x, v = _golden_max(f, a, b, tol)
        if v > best_v:
            best_x, best_v = x, v
    return best_x, best_v


def project_to_simplex(v):
    """Euclidean projection onto {x >= 0, sum x = 1} (sort based rule)."""
    v = np.asarray(v, dtype=float)
    u = np.sort(v)[::-1]
    css = np.cumsum(u)
    rho = np.nonzero(u + (1.0 - css) / np.arange(1, v.size + 1) > 0)[0][-1]
    lam = (1.0 - css[rho]) / (rho + 1.0)
    return np.maximum(v + lam, 0.0)
