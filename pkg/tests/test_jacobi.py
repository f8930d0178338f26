import math

import numpy as np
import pytest

from nevtrans.errors import CutError, PoleError
from nevtrans.herglotz import RealizedFunction
from nevtrans.jacobi import (
    BlockJacobi,
    build_J0,
    build_Jhat0,
    m_cf,
    m_resolvent,
    quadrature_m0,
)
from nevtrans.specialfn import m0_gamma, m0_gammahat
from nevtrans.transforms import iterate_gamma_hat


def random_jacobi(seed, d, N):
    rng = np.random.default_rng(seed)
    a = []
    b = []
    for _ in range(N):
        G = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        a.append((G + G.conj().T) / 2)
    for _ in range(N - 1):
        G = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        b.append(G + 3 * np.eye(d))  # keep well away from singular
    return BlockJacobi.of(a, b)


class TestBuilders:
    def test_J0_scalar_entries(self):
        J = build_J0(1, 3)
        assert all(abs(x[0, 0]) == 0 for x in J.a)
        assert abs(J.b[0][0, 0] - 1 / math.sqrt(2)) < 1e-16
        assert abs(J.b[1][0, 0] - 0.5) < 1e-16

    def test_J0_block_entries(self):
        J = build_J0(2, 2)
        assert np.max(np.abs(J.b[0] - np.eye(2) / math.sqrt(2))) < 1e-16

    def test_Jhat0_dense(self):
        J = build_Jhat0(1, 2)
        assert np.array_equal(J.dense(), np.array([[0, 1], [1, 0]], dtype=complex))

    def test_size_validation(self):
        with pytest.raises(ValueError):
            build_J0(1, 1)
        with pytest.raises(ValueError):
            build_Jhat0(0, 3)

    def test_corner_embedding_exact(self):
        for N in (2, 5, 9):
            big = build_Jhat0(2, N + 1).dense()
            small = build_Jhat0(2, N).dense()
            assert np.array_equal(big[: 2 * N, : 2 * N], small)
            bigc = build_J0(3, N + 1).dense()
            smallc = build_J0(3, N).dense()
            assert np.array_equal(bigc[: 3 * N, : 3 * N], smallc)


class TestMResolvent:
    def test_single_block(self):
        J = BlockJacobi.of([[[0.0]]], [])
        assert abs(m_resolvent(J, 1j)[0, 0] - 1j) < 1e-15

    def test_jhat0_depth_two(self):
        J = build_Jhat0(1, 2)
        assert abs(m_resolvent(J, 2j)[0, 0] - 0.4j) < 1e-15

    def test_conjugate_symmetry(self):
        J = random_jacobi(3, 2, 6)
        for lam in (1 + 1j, -2 + 0.5j, 0.3 - 2j):
            M1 = m_resolvent(J, np.conj(lam))
            M2 = m_resolvent(J, lam).conj().T
            assert np.max(np.abs(M1 - M2)) < 1e-13

    def test_matches_dense_inverse(self):
        J = random_jacobi(4, 2, 5)
        lam = 0.7 + 1.3j
        dense = np.linalg.inv(J.dense() - lam * np.eye(10))[:2, :2]
        assert np.max(np.abs(m_resolvent(J, lam) - dense)) < 1e-12

    def test_pole_error(self):
        J = build_Jhat0(1, 2)  # eigenvalues -1, 1
        with pytest.raises(PoleError):
            m_resolvent(J, 1.0 + 0j)


class TestMCf:
    def test_convergents_match_iteration_values(self):
        lam = 2j
        # successive convergents 0.5i, 0.4i, 0.41666...i
        assert abs(m_cf(BlockJacobi.of([[[0.0]]], []), lam)[0, 0] - 0.5j) < 1e-15
        assert abs(m_cf(build_Jhat0(1, 2), lam)[0, 0] - 0.4j) < 1e-15
        assert abs(m_cf(build_Jhat0(1, 3), lam)[0, 0] - 0.5j / 1.2) < 1e-15

    def test_depth_one_closed_form(self):
        J = BlockJacobi.of([[[0.7]]], [])
        lam = 1 + 1j
        assert abs(m_cf(J, lam)[0, 0] + 1.0 / (lam - 0.7)) < 1e-15

    def test_agreement_with_resolvent(self):
        rng = np.random.default_rng(9)
        for seed in range(4):
            J = random_jacobi(seed, 2, 6)
            for _ in range(25):
                lam = complex(rng.uniform(-4, 4), rng.choice([-1, 1]) * rng.uniform(0.3, 3))
                M1 = m_resolvent(J, lam)
                M2 = m_cf(J, lam)
                assert np.max(np.abs(M1 - M2)) <= 1e-12 * (1.0 + np.max(np.abs(M1)))

    def test_interlacing_with_iteration(self):
        # the fraction of the free-Schroedinger truncation is the N-th step of
        # the fixed-point iteration started from zero, block case included
        for d in (1, 2):
            F = RealizedFunction.zero(d)
            for lam in (2j, 1 + 1.5j):
                trace = iterate_gamma_hat(F, lam, 8)
                for N in range(2, 9):
                    got = m_cf(build_Jhat0(d, N), lam)
                    assert np.max(np.abs(got - trace.values[N - 1])) < 1e-12

    def test_pole_error(self):
        with pytest.raises(PoleError):
            m_cf(build_Jhat0(1, 2), 1.0 + 0j)


class TestTruncationConvergence:
    def test_jhat0_limit(self):
        lam = 1 + 2j
        errs = [
            abs(m_resolvent(build_Jhat0(1, N), lam)[0, 0] - m0_gammahat(lam))
            for N in range(10, 210, 10)
        ]
        # monotone decrease until the double-precision floor swallows it
        for e1, e2 in zip(errs, errs[1:]):
            if e1 < 1e-14:
                break
            assert e2 <= e1
        assert errs[-1] < 1e-8

    def test_j0_limit(self):
        lam = 2j
        err = abs(m_resolvent(build_J0(1, 400), lam)[0, 0] - m0_gamma(lam))
        assert err < 1e-10


class TestQuadrature:
    def test_kind1_matches_closed_form(self):
        assert abs(quadrature_m0(2j, 10_000, 1) - m0_gamma(2j)) < 1e-10

    def test_kind2_matches_closed_form(self):
        assert abs(quadrature_m0(2j, 10_000, 2) - m0_gammahat(2j)) < 1e-10

    def test_asymptotic(self):
        y = 1e3
        assert abs(quadrature_m0(1j * y, 10_000, 1) - 1j / y) < 1e-9

    def test_cut_rejection(self):
        with pytest.raises(CutError):
            quadrature_m0(0.5 + 0j, 100, 1)
        with pytest.raises(CutError):
            quadrature_m0(1.5 + 0j, 100, 2)

    def test_bad_kind(self):
        with pytest.raises(ValueError):
            quadrature_m0(2j, 100, 3)


class TestChebyshevRecurrence:
    def test_regenerate_coefficients(self):
        # Lanczos on the discretized Chebyshev weight must reproduce the
        # matrix entries b0 = 1/sqrt(2), b_k = 1/2
        n = 4000
        i = np.arange(1, n + 1)
        t = np.cos((2 * i - 1) * np.pi / (2 * n))
        w = np.full(n, 1.0 / n)
        k_coeffs = 6
        a = np.zeros(k_coeffs)
        b = np.zeros(k_coeffs - 1)
        p_prev = np.zeros(n)
        p = np.ones(n)
        for k in range(k_coeffs):
            a[k] = np.sum(w * t * p * p)
            q = (t - a[k]) * p - (b[k - 1] * p_prev if k > 0 else 0.0)
            if k < k_coeffs - 1:
                b[k] = math.sqrt(np.sum(w * q * q))
                p_prev, p = p, q / b[k]
        assert np.max(np.abs(a)) < 1e-13
        assert abs(b[0] - 1 / math.sqrt(2)) < 1e-10
        assert np.max(np.abs(b[1:] - 0.5)) < 1e-10


class TestStructure:
    def test_truncate(self):
        J = build_Jhat0(1, 6)
        assert np.array_equal(J.truncate(3).dense(), build_Jhat0(1, 3).dense())
        with pytest.raises(ValueError):
            J.truncate(7)

    def test_json_round_trip(self):
        J = random_jacobi(5, 2, 4)
        J2 = BlockJacobi.from_json(J.to_json())
        assert np.array_equal(J.dense(), J2.dense())

    def test_json_dim_mismatch(self):
        import json as jsonlib

        doc = jsonlib.loads(build_Jhat0(1, 3).to_json())
        doc["d"] = 2
        with pytest.raises(ValueError):
            BlockJacobi.from_json(jsonlib.dumps(doc))

    def test_validation(self):
        with pytest.raises(ValueError):
            BlockJacobi.of([[[1j]]], [])  # non-Hermitian diagonal
        with pytest.raises(ValueError):
            BlockJacobi.of([[[0.0]], [[0.0]]], [[[0.0]]])  # singular off-diagonal
