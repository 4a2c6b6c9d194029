import numpy as np
import pytest

from smoothexp import Dist, InputError
from smoothexp.matrix_core import (
    HermitianOp,
    eig,
    fidelity,
    kron,
    max_relative_entropy,
    num_distinct_eigenvalues,
    partial_trace,
    petz_divergence,
    pinch,
    purified_distance,
    relative_entropy_quantum,
    sandwiched_cond_entropy,
    sandwiched_divergence,
    trace_distance,
)
from smoothexp.prob_core import petz_divergence_classical, renyi_entropy


def rand_state(rng, d):
    return HermitianOp.random_state(rng, d)


class TestHermitianOp:
    def test_rejects_non_hermitian(self):
        with pytest.raises(InputError):
            HermitianOp.from_matrix([[0.0, 1.0], [0.0, 0.0]])

    def test_metadata(self):
        h = HermitianOp.diagonal([0.7, 0.3])
        assert h.dim == 2
        assert h.trace == pytest.approx(1.0)
        assert h.is_psd
        assert not HermitianOp.diagonal([1.0, -0.5]).is_psd

    def test_json_round_trip(self):
        rng = np.random.default_rng(0)
        h = rand_state(rng, 3)
        h2 = HermitianOp.from_json(h.to_json())
        assert np.allclose(h.entries, h2.entries)


class TestEig:
    def test_identity(self):
        s = eig(HermitianOp.identity(4))
        assert s.eigenvalues == pytest.approx(np.ones(4))

    def test_diag(self):
        s = eig(HermitianOp.diagonal([3.0, 1.0]))
        assert s.eigenvalues == pytest.approx([3.0, 1.0])

    def test_random_reconstruction(self):
        rng = np.random.default_rng(1)
        for _ in range(10):
            h = HermitianOp.random_psd(rng, 4)
            s = eig(h)
            recon = s.eigenvectors @ np.diag(s.eigenvalues) @ s.eigenvectors.conj().T
            scale = max(1.0, np.max(np.abs(s.eigenvalues)))
            assert np.max(np.abs(recon - h.entries)) <= 1e-8 * scale


class TestDistances:
    def test_self_fidelity_is_trace(self):
        rng = np.random.default_rng(2)
        rho = rand_state(rng, 3)
        assert fidelity(rho, rho) == pytest.approx(1.0, abs=1e-9)

    def test_orthogonal_pure(self):
        a = HermitianOp.diagonal([1.0, 0.0])
        b = HermitianOp.diagonal([0.0, 1.0])
        assert fidelity(a, b) == pytest.approx(0.0, abs=1e-9)
        assert trace_distance(a, b) == pytest.approx(1.0, abs=1e-12)
        assert purified_distance(a, b) == pytest.approx(1.0, abs=1e-9)

    def test_diagonal_reduces_to_bhattacharyya(self):
        p = np.array([0.2, 0.5, 0.3])
        q = np.array([0.6, 0.1, 0.3])
        f = fidelity(HermitianOp.diagonal(p), HermitianOp.diagonal(q))
        assert f == pytest.approx(np.sqrt(p * q).sum(), abs=1e-10)

    def test_identical_states(self):
        rng = np.random.default_rng(3)
        rho = rand_state(rng, 2)
        assert trace_distance(rho, rho) == 0.0
        assert purified_distance(rho, rho) == pytest.approx(0.0, abs=1e-7)

    def test_fuchs_van_de_graaf(self):
        rng = np.random.default_rng(4)
        for _ in range(50):
            r, s = rand_state(rng, 2), rand_state(rng, 2)
            d = trace_distance(r, s)
            p = purified_distance(r, s)
            assert d <= p + 1e-9
            assert p <= np.sqrt(2 * d) + 1e-9


class TestDivergences:
    def test_zero_on_self(self):
        rng = np.random.default_rng(5)
        rho = rand_state(rng, 3)
        for alpha in (0.6, 2.0):
            assert petz_divergence(rho, rho, alpha) == pytest.approx(0.0, abs=1e-9)
            assert sandwiched_divergence(rho, rho, alpha) == pytest.approx(0.0, abs=1e-9)

    def test_commuting_matches_classical(self):
        rng = np.random.default_rng(6)
        for alpha in (0.4, 1.0, 2.5):
            w1 = rng.random(3) + 0.05
            w2 = rng.random(3) + 0.05
            p = Dist.from_weights(w1 / w1.sum())
            q = Dist.from_weights(w2 / w2.sum())
            dq = petz_divergence(HermitianOp.diagonal(p.weights),
                                 HermitianOp.diagonal(q.weights), alpha)
            ds = sandwiched_divergence(HermitianOp.diagonal(p.weights),
                                       HermitianOp.diagonal(q.weights), alpha)
            dc = petz_divergence_classical(p, q, alpha)
            assert dq == pytest.approx(dc, abs=1e-9)
            assert ds == pytest.approx(dc, abs=1e-9)

    def test_sandwiched_below_petz(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            r, s = rand_state(rng, 2), rand_state(rng, 2)
            assert sandwiched_divergence(r, s, 2.0) <= petz_divergence(r, s, 2.0) + 1e-9

    def test_support_rule(self):
        r = HermitianOp.diagonal([0.5, 0.5])
        s = HermitianOp.diagonal([1.0, 0.0])
        assert petz_divergence(r, s, 2.0) == np.inf
        assert sandwiched_divergence(r, s, 2.0) == np.inf

    def test_alpha_one_matches_umegaki(self):
        rng = np.random.default_rng(8)
        r, s = rand_state(rng, 2), rand_state(rng, 2)
        assert petz_divergence(r, s, 1.0 + 1e-9) == pytest.approx(
            relative_entropy_quantum(r, s), abs=1e-6)


class TestMaxRelativeEntropy:
    def test_self(self):
        rng = np.random.default_rng(9)
        rho = rand_state(rng, 3)
        assert max_relative_entropy(rho, rho) == pytest.approx(0.0, abs=1e-9)

    def test_doubling(self):
        rng = np.random.default_rng(10)
        s = rand_state(rng, 2)
        r = HermitianOp(2.0 * s.entries)
        assert max_relative_entropy(r, s) == pytest.approx(1.0, abs=1e-9)

    def test_support_violation(self):
        r = HermitianOp.diagonal([0.5, 0.5])
        s = HermitianOp.diagonal([1.0, 0.0])
        assert max_relative_entropy(r, s) == np.inf

    def test_sandwiched_limit(self):
        rng = np.random.default_rng(11)
        for _ in range(10):
            r, s = rand_state(rng, 2), rand_state(rng, 2)
            big = sandwiched_divergence(r, s, 2.0 ** 10)
            assert abs(big - max_relative_entropy(r, s)) <= 1e-2


class TestPinch:
    def test_commuting_fixed_point(self):
        base = HermitianOp.diagonal([2.0, 1.0, 1.0])
        x = HermitianOp.diagonal([0.3, 0.5, 0.2])
        assert np.allclose(pinch(base, x).entries, x.entries, atol=1e-12)

    def test_identity_base(self):
        rng = np.random.default_rng(12)
        x = rand_state(rng, 3)
        assert np.allclose(pinch(HermitianOp.identity(3), x).entries, x.entries,
                           atol=1e-10)

    def test_pinching_inequality(self):
        rng = np.random.default_rng(13)
        for _ in range(30):
            base = HermitianOp.random_psd(rng, 3)
            sigma = HermitianOp.random_psd(rng, 3)
            v = num_distinct_eigenvalues(base)
            gap = v * pinch(base, sigma).entries - sigma.entries
            assert np.min(np.linalg.eigvalsh(HermitianOp(gap).entries)) >= -1e-9

    def test_trace_preserving_and_idempotent(self):
        rng = np.random.default_rng(14)
        base = HermitianOp.random_psd(rng, 4)
        x = rand_state(rng, 4)
        once = pinch(base, x)
        twice = pinch(base, once)
        assert once.trace == pytest.approx(x.trace, abs=1e-10)
        assert np.allclose(once.entries, twice.entries, atol=1e-9)


class TestSandwichedCondEntropy:
    def test_maximally_mixed_pair(self):
        rho = HermitianOp(np.eye(4, dtype=complex) / 4.0)
        val, sigma = sandwiched_cond_entropy(rho, 1.5, (2, 2), restarts=4)
        assert val == pytest.approx(1.0, abs=1e-6)
        assert sigma.trace == pytest.approx(1.0, abs=1e-9)

    def test_pure_product(self):
        rng = np.random.default_rng(15)
        a = HermitianOp.random_pure(rng, 2)
        b = HermitianOp.random_pure(rng, 2)
        rho = kron(a, b)
        val, _ = sandwiched_cond_entropy(rho, 0.8, (2, 2), restarts=4)
        assert val == pytest.approx(0.0, abs=1e-6)

    def test_pure_state_duality(self):
        # for pure rho_AB: Hstar_alpha(A|B) = -H_beta(schmidt), 1/alpha+1/beta=2
        rng = np.random.default_rng(16)
        p = np.array([0.8, 0.2])
        v = np.zeros(4, dtype=complex)
        v[0] = np.sqrt(p[0])
        v[3] = np.sqrt(p[1])
        rho = HermitianOp(np.outer(v, v.conj()))
        for alpha in (0.7, 0.9):
            beta = alpha / (2 * alpha - 1)
            val, _ = sandwiched_cond_entropy(rho, alpha, (2, 2), restarts=6)
            expected = -renyi_entropy(Dist.from_weights(p), beta)
            assert val == pytest.approx(expected, abs=1e-5)


class TestPartialTrace:
    def test_product(self):
        rng = np.random.default_rng(17)
        a, b = rand_state(rng, 2), rand_state(rng, 3)
        m = np.kron(a.entries, b.entries)
        assert np.allclose(partial_trace(m, (2, 3), keep=0), a.entries, atol=1e-12)
        assert np.allclose(partial_trace(m, (2, 3), keep=1), b.entries, atol=1e-12)
