import itertools
import math

import numpy as np
import pytest

from smoothexp import Dist, InputError, JointDist
from smoothexp.one_shot import (
    SchmidtState,
    eps_P_cond_classical,
    eps_P_cond_pure_bounds,
    eps_d_cond_classical,
    eps_d_cond_iid,
    eps_d_mutual_classical,
    eps_d_mutual_iid_fixed_sigma,
    purified_bounds_from_trace,
)

UNIFORM22 = JointDist.from_matrix(np.full((2, 2), 0.25))
CORRELATED = JointDist.from_matrix([[0.5, 0.0], [0.0, 0.5]])


def rand_joint(rng, kx, ka, floor=1e-3):
    m = rng.random((kx, ka)) + floor
    return JointDist.from_matrix(m / m.sum())


def brute_cond_one_minus(j, n, r):
    """Direct sum over all |X A|^n sequences of min(v1, 2^-nr * v_R)."""
    px = j.matrix.sum(axis=1)
    flat = j.matrix.ravel()
    marg = np.repeat(px, j.shape[1])
    v1, v2 = flat.copy(), marg.copy()
    for _ in range(n - 1):
        v1 = np.multiply.outer(v1, flat).ravel()
        v2 = np.multiply.outer(v2, marg).ravel()
    return float(np.minimum(v1, math.pow(2.0, -n * r) * v2).sum())


def brute_mutual_fixed_sigma_one_minus(j, sigma, n, r):
    px = j.matrix.sum(axis=1)
    flat = j.matrix.ravel()
    ref = np.outer(px, sigma.weights).ravel()
    v1, v2 = flat.copy(), ref.copy()
    for _ in range(n - 1):
        v1 = np.multiply.outer(v1, flat).ravel()
        v2 = np.multiply.outer(v2, ref).ravel()
    return float(np.minimum(v1, math.pow(2.0, n * r) * v2).sum())


class TestEpsDCondClassical:
    def test_uniform_lambda1_zero(self):
        res = eps_d_cond_classical(UNIFORM22, 1.0)
        assert res.value == 0.0
        assert res.bound_kind == "exact"

    def test_uniform_lambda2(self):
        res = eps_d_cond_classical(UNIFORM22, 2.0)
        assert res.value == pytest.approx(0.5, abs=1e-15)
        assert 2.0 ** res.log2_one_minus == pytest.approx(0.5, abs=1e-15)

    def test_uniform_lambda10_tail(self):
        res = eps_d_cond_classical(UNIFORM22, 10.0)
        assert res.value == pytest.approx(1.0 - 2.0 ** -9, abs=1e-15)
        assert res.log2_one_minus == pytest.approx(-9.0, abs=1e-12)

    def test_certificate_feasible(self):
        rng = np.random.default_rng(0)
        for _ in range(10):
            j = rand_joint(rng, 3, 2)
            lam = float(rng.uniform(-1, 4))
            res = eps_d_cond_classical(j, lam)
            cap = 2.0 ** -lam * j.matrix.sum(axis=1)[:, None]
            q = res.certificate
            assert np.all(q >= -1e-15)
            assert np.all(q <= cap + 1e-10)
            assert np.all(q.sum(axis=1) <= j.matrix.sum(axis=1) + 1e-10)
            # complement consistency
            assert abs(1.0 - res.value - 2.0 ** res.log2_one_minus) <= 1e-9

    def test_monotone_in_lambda(self):
        rng = np.random.default_rng(1)
        j = rand_joint(rng, 2, 3)
        vals = [eps_d_cond_classical(j, lam).value for lam in np.linspace(-2, 6, 17)]
        assert all(vals[i] <= vals[i + 1] + 1e-12 for i in range(len(vals) - 1))


class TestEpsDCondIid:
    def test_n1_reduces_to_classical(self):
        rng = np.random.default_rng(2)
        for _ in range(5):
            j = rand_joint(rng, 2, 3)
            lam = float(rng.uniform(0, 3))
            a = eps_d_cond_iid(j, 1, lam)
            b = eps_d_cond_classical(j, lam)
            assert a.log2_one_minus == pytest.approx(b.log2_one_minus, abs=1e-12)

    def test_uniform_rate_one_is_zero(self):
        for n in (1, 5, 20):
            res = eps_d_cond_iid(UNIFORM22, n, 1.0)
            assert res.value == pytest.approx(0.0, abs=1e-12)

    def test_brute_force_small_n(self):
        rng = np.random.default_rng(3)
        for kx, ka in ((2, 2), (3, 2)):
            for _ in range(5):
                j = rand_joint(rng, kx, ka)
                r = float(rng.uniform(0.1, 1.5))
                for n in (1, 2, 3):
                    got = 2.0 ** eps_d_cond_iid(j, n, r).log2_one_minus
                    want = brute_cond_one_minus(j, n, r)
                    assert got == pytest.approx(want, rel=1e-12)

    def test_example_joint_n8(self):
        j = JointDist.from_matrix([[0.4, 0.1], [0.2, 0.3]])
        from smoothexp.prob_core import petz_cond_entropy_bar
        r = petz_cond_entropy_bar(j, 1.0) + 0.5
        got = 2.0 ** eps_d_cond_iid(j, 8, r).log2_one_minus
        want = brute_cond_one_minus(j, 8, r)
        assert got == pytest.approx(want, rel=1e-11)

    def test_n50_runs(self):
        j = JointDist.from_matrix([[0.4, 0.1], [0.2, 0.3]])
        res = eps_d_cond_iid(j, 50, 1.5)
        assert 0.0 < res.value < 1.0
        assert res.log2_one_minus < 0.0


class TestEpsDMutualClassical:
    def test_product_lambda0(self):
        j = JointDist.from_matrix(np.outer([0.3, 0.7], [0.6, 0.4]))
        res = eps_d_mutual_classical(j, 0.0)
        assert res.value == pytest.approx(0.0, abs=1e-9)
        assert res.certificate.weights == pytest.approx([0.6, 0.4], abs=1e-6)

    def test_correlated_lambda0(self):
        res = eps_d_mutual_classical(CORRELATED, 0.0)
        assert res.value == pytest.approx(0.5, abs=1e-9)

    def test_correlated_lambda1_zero(self):
        res = eps_d_mutual_classical(CORRELATED, 1.0)
        assert res.value == pytest.approx(0.0, abs=1e-9)

    def test_negative_lambda_rejected(self):
        with pytest.raises(InputError):
            eps_d_mutual_classical(CORRELATED, -0.5)

    def test_monotone_in_lambda(self):
        rng = np.random.default_rng(4)
        j = rand_joint(rng, 2, 2)
        vals = [eps_d_mutual_classical(j, lam).value for lam in np.linspace(0, 2, 9)]
        assert all(vals[i] >= vals[i + 1] - 1e-9 for i in range(len(vals) - 1))


class TestEpsDMutualIidFixedSigma:
    def test_n1_matches_objective(self):
        rng = np.random.default_rng(5)
        for _ in range(5):
            j = rand_joint(rng, 2, 2)
            w = rng.random(2) + 0.2
            sigma = Dist(j.col_labels, w / w.sum())
            r = float(rng.uniform(0, 1.5))
            res = eps_d_mutual_iid_fixed_sigma(j, sigma, 1, r)
            cap = 2.0 ** r * np.outer(j.matrix.sum(axis=1), sigma.weights)
            want = float(np.maximum(j.matrix - cap, 0.0).sum())
            assert res.value == pytest.approx(want, abs=1e-12)

    def test_product_with_marginal_sigma(self):
        j = JointDist.from_matrix(np.outer([0.3, 0.7], [0.6, 0.4]))
        sigma = j.marginal_col()
        for n, r in ((1, 0.0), (4, 0.3), (10, 1.0)):
            res = eps_d_mutual_iid_fixed_sigma(j, sigma, n, r)
            assert res.value == pytest.approx(0.0, abs=1e-12)

    def test_brute_force_correlated(self):
        sigma = Dist(CORRELATED.col_labels, np.array([0.5, 0.5]))
        for n in range(1, 9):
            got = 2.0 ** eps_d_mutual_iid_fixed_sigma(CORRELATED, sigma, n, 0.5).log2_one_minus
            want = brute_mutual_fixed_sigma_one_minus(CORRELATED, sigma, n, 0.5)
            assert got == pytest.approx(want, rel=1e-11)

    def test_upper_bound_vs_lp(self):
        # a feasible product sigma can never beat the single-copy optimum
        rng = np.random.default_rng(6)
        for _ in range(5):
            j = rand_joint(rng, 2, 3)
            lam = float(rng.uniform(0, 1))
            w = rng.random(3) + 0.2
            sigma = Dist(j.col_labels, w / w.sum())
            fixed = eps_d_mutual_iid_fixed_sigma(j, sigma, 1, lam)
            best = eps_d_mutual_classical(j, lam)
            assert fixed.value >= best.value - 1e-9


class TestEpsPCondClassical:
    def test_uniform_lambda1_zero(self):
        res = eps_P_cond_classical(UNIFORM22, 1.0)
        assert res.value == pytest.approx(0.0, abs=1e-9)

    def test_uniform_lambda2(self):
        res = eps_P_cond_classical(UNIFORM22, 2.0)
        assert res.value == pytest.approx(math.sqrt(0.5), abs=1e-12)

    def test_unconstrained_lambda(self):
        rng = np.random.default_rng(7)
        j = rand_joint(rng, 2, 3)
        res = eps_P_cond_classical(j, -30.0)
        assert res.value == pytest.approx(0.0, abs=1e-9)

    def test_certificate_feasible(self):
        rng = np.random.default_rng(8)
        for _ in range(10):
            j = rand_joint(rng, 3, 3)
            lam = float(rng.uniform(0, 3))
            res = eps_P_cond_classical(j, lam)
            q = res.certificate
            px = j.matrix.sum(axis=1)
            assert np.all(q >= -1e-15)
            assert np.all(q <= 2.0 ** -lam * px[:, None] + 1e-10)
            assert np.all(q.sum(axis=1) <= px + 1e-10)

    def test_trace_below_purified(self):
        rng = np.random.default_rng(9)
        for _ in range(10):
            j = rand_joint(rng, 2, 2)
            for lam in np.linspace(-1, 4, 11):
                d = eps_d_cond_classical(j, lam).value
                p = eps_P_cond_classical(j, lam).value
                assert d <= p + 1e-9

    def test_kkt_beats_naive_feasible_points(self):
        rng = np.random.default_rng(10)
        j = rand_joint(rng, 2, 3)
        lam = 1.3
        res = eps_P_cond_classical(j, lam)
        px = j.matrix.sum(axis=1)
        cap = 2.0 ** -lam * px[:, None]
        best_f = np.sqrt(j.matrix * res.certificate).sum()
        for _ in range(200):
            q = np.minimum(rng.random(j.matrix.shape) * cap, cap)
            over = q.sum(axis=1) / px
            q = np.where(over[:, None] > 1, q / over[:, None], q)
            assert np.sqrt(j.matrix * q).sum() <= best_f + 1e-9


class TestEpsPCondPureBounds:
    def test_nonpositive_rate_is_exact_zero(self):
        s = SchmidtState(Dist.from_weights([0.7, 0.3]))
        lo, hi = eps_P_cond_pure_bounds(s, 1, 0.0)
        assert lo.value == pytest.approx(0.0, abs=1e-12)
        assert lo.bound_kind == "lower" and hi.bound_kind == "upper"

    def test_point_mass_single_type(self):
        s = SchmidtState(Dist.from_weights([1.0, 0.0]))
        for n, r in ((1, 0.5), (5, 0.3), (12, 1.0)):
            lo, hi = eps_P_cond_pure_bounds(s, n, r)
            # single type class: B_n = min(1, 2^(-nr/2)) and F* = B_n exactly
            b = min(1.0, 2.0 ** (-n * r / 2.0))
            assert lo.value == pytest.approx(math.sqrt(1 - b * b), abs=1e-12)

    def test_sandwich_width(self):
        s = SchmidtState(Dist.from_weights([0.7, 0.3]))
        n, r = 100, 0.5
        lo, hi = eps_P_cond_pure_bounds(s, n, r)
        # log2 fidelity gap is exactly (|X|/2) log2(n+1)
        gap = lo.log2_one_minus - hi.log2_one_minus
        assert gap <= 2 * (2 / 2) * math.log2(n + 1) + 1e-9
        assert lo.value <= hi.value + 1e-15

    def test_ordering_lower_below_upper(self):
        s = SchmidtState(Dist.from_weights([0.5, 0.3, 0.2]))
        for n, r in ((3, 0.4), (30, 0.8)):
            lo, hi = eps_P_cond_pure_bounds(s, n, r)
            assert lo.value <= hi.value + 1e-15
            assert lo.log2_one_minus >= hi.log2_one_minus - 1e-12


class TestPurifiedBoundsFromTrace:
    def test_brackets(self):
        res = eps_d_cond_classical(UNIFORM22, 2.0)
        lo, hi = purified_bounds_from_trace(res)
        assert lo.value == pytest.approx(0.5)
        assert hi.value == pytest.approx(math.sqrt(0.5))
        assert hi.log2_one_minus == pytest.approx(
            math.log2((1 - math.sqrt(0.5))), abs=1e-12)
