"""Named verification suites: each check returns (name, passed, detail).

The CLI ``verify`` subcommand runs a suite by name; the test suite runs all
of them.  Every tolerance is pinned here.
"""

from __future__ import annotations

import math

import numpy as np

from . import canonical, jacobi, kac, realize, transforms
from .herglotz import (
    RealizedFunction,
    SampleSet,
    class_n0_interval_gram,
    evaluate,
    is_psd_gram,
    min_eig,
    nevanlinna_gram,
    random_contraction_resolvent,
    random_nevanlinna,
)
from .specialfn import m0_gamma, m0_gammahat


def _grid_lambdas(count: int = 100) -> list:
    """Deterministic grid with |Im lam| in [0.5, 5]."""
    out = []
    res = np.linspace(-3.0, 3.0, 10)
    ims = np.linspace(0.5, 5.0, 5)
    for re in res:
        for im in ims:
            out.append(complex(re, im))
            out.append(complex(re, -im))
    return out[:count]


def check_fixed_points():
    worst = 0.0
    for lam in _grid_lambdas():
        val = m0_gammahat(lam)
        worst = max(worst, abs(transforms.gamma_hat(np.array([[val]]), lam)[0, 0] - val))
        g = m0_gamma(lam)
        for d in (1, 3):
            M = g * np.eye(d)
            worst = max(worst, float(np.linalg.norm(transforms.gamma(M, lam) - M, 2)))
    return worst < 1e-12, f"max fixed-point residual {worst:.3e} (tol 1e-12)"


def check_quadrature():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(20):
        lam = complex(rng.uniform(-3, 3), rng.choice([-1, 1]) * rng.uniform(0.5, 4))
        worst = max(worst, abs(jacobi.quadrature_m0(lam, 10_000, 1) - m0_gamma(lam)))
        worst = max(worst, abs(jacobi.quadrature_m0(lam, 10_000, 2) - m0_gammahat(lam)))
    return worst < 1e-10, f"max quadrature error {worst:.3e} (tol 1e-10)"


def check_contraction():
    tr = transforms.iterate_gamma_hat(RealizedFunction.zero(1), 2j, 30)
    ok = tr.residuals[-1] <= 1e-14
    worst_ratio = 0.0
    for k, ratio in enumerate(tr.ratios):
        if tr.residuals[k + 1] <= 1e-14:
            break
        worst_ratio = max(worst_ratio, ratio)
    ok = ok and worst_ratio <= 0.25 + 1e-10
    return ok, (
        f"final residual {tr.residuals[-1]:.3e} (tol 1e-14), "
        f"max ratio {worst_ratio:.6f} (bound 0.25)"
    )


def check_uniform_grid():
    F = RealizedFunction.zero(1)
    worst = 0.0
    for re in np.linspace(1.0, 2.0, 20):
        for im in np.linspace(1.5, 2.5, 20):
            tr = transforms.iterate_gamma_hat(F, complex(re, im), 20)
            worst = max(worst, tr.residuals[-1])
    return worst < 1e-10, f"max residual at n=20 over compact grid {worst:.3e} (tol 1e-10)"


def check_truncation():
    e1 = abs(jacobi.m_resolvent(jacobi.build_Jhat0(1, 200), 1 + 2j)[0, 0] - m0_gammahat(1 + 2j))
    e2 = abs(jacobi.m_resolvent(jacobi.build_J0(1, 400), 2j)[0, 0] - m0_gamma(2j))
    ok = e1 < 1e-8 and e2 < 1e-10
    return ok, f"free-Schroedinger N=200 error {e1:.3e} (tol 1e-8), Chebyshev N=400 error {e2:.3e} (tol 1e-10)"


def _random_subspace_realization(seed: int, d: int, n: int) -> realize.SubspaceRealization:
    F = random_contraction_resolvent(seed, d, n)
    return realize.SubspaceRealization.of(F.T, F.K)


def check_wollen():
    rng = np.random.default_rng(11)
    worst = 0.0
    worst_norm = 0.0
    simple_ok = True
    for trial in range(10):
        R = _random_subspace_realization(100 + trial, 3, 12)
        bT = realize.bold_T(R)
        worst_norm = max(worst_norm, float(np.linalg.norm(bT.T, 2)))
        for _ in range(20):
            lam = complex(rng.uniform(-3, 3), rng.choice([-1, 1]) * rng.uniform(0.3, 3))
            M = R.m_function(lam)
            err = np.max(np.abs(bT.m_function(lam) - np.linalg.inv(M) / (lam * lam - 1.0)))
            worst = max(worst, float(err))
        if realize.simplicity_check(R)[0] and not realize.simplicity_check(bT)[0]:
            simple_ok = False
    ok = worst < 1e-10 and worst_norm <= 1.0 + 1e-12 and simple_ok
    return ok, (
        f"max realization identity error {worst:.3e} (tol 1e-10), "
        f"max ||bold_T|| {worst_norm:.15f}, simplicity preserved: {simple_ok}"
    )


def check_chain():
    rng = np.random.default_rng(13)
    worst = 0.0
    corner_ok = True
    for trial in range(5):
        F = random_nevanlinna(50 + trial, 2, 6)
        lams = [complex(rng.uniform(-2, 2), rng.choice([-1, 1]) * rng.uniform(0.5, 3)) for _ in range(6)]
        for n in range(1, 7):
            C = realize.chain_A(F.K, F.T, n)
            if n >= 2:
                corner = C.assembled[: 2 * n, : 2 * n]
                if not np.array_equal(corner, jacobi.build_Jhat0(2, n).dense()):
                    corner_ok = False
            for lam in lams:
                # seed realizes the first iterate; depth n yields iterate n+1,
                # i.e. n applications of the map to the seed's value
                val = evaluate(F, lam)
                for _ in range(n):
                    val = transforms.gamma_hat(val, lam)
                got = realize.compressed_resolvent(C.assembled, C.m_basis(), lam)
                worst = max(worst, float(np.max(np.abs(got - val))))
    ok = worst < 1e-10 and corner_ok
    return ok, f"max chain realization error {worst:.3e} (tol 1e-10), corner embedding exact: {corner_ok}"


def check_kac():
    m = 52
    H = kac.kac_algorithm([0.0] * m, [1.0] * m, m)
    worst = max(
        float(np.max(np.abs(H.lengths() - 1.0))),
        max(abs(H.thetas[j] - (j + 1) * math.pi / 2.0) for j in range(51)),
    )
    first_ok = bool(
        np.max(np.abs(kac.evaluate_H(H, 0.5) - np.array([[0.0, 0.0], [0.0, 1.0]]))) < 1e-12
    )
    Ha = kac.kac_algorithm([1.0, 0.0, 0.0], [1.0, 1.0, 1.0], 4)
    worst = max(
        worst,
        abs(Ha.thetas[1] - 5 * math.pi / 4),
        abs(Ha.lengths()[1] - 2.0),
        abs(Ha.thetas[2] - 3 * math.pi / 2),
    )
    ok = worst < 1e-12 and first_ok
    return ok, f"max coefficient-recursion error {worst:.3e} (tol 1e-12), first interval exact: {first_ok}"


_COEFF_SETS = (
    ([1.0] + [0.0] * 30, [1.0] * 31),
    ([0.5, -0.3, 0.2, 0.0, -0.1] + [0.0] * 26, [1.2, 0.8, 1.0, 0.9, 1.1] + [1.0] * 26),
)


def check_hn_two_path():
    worst = 0.0
    prefix_ok = True
    for a, b in _COEFF_SETS:
        H = kac.kac_algorithm(a, b, 12)
        for n in range(1, 9):
            Hn = kac.hamiltonian_Hn(H, n)
            shifted = kac.kac_algorithm([0.0] * n + list(a), [1.0] * n + list(b), 12 + n)
            th1 = np.array(Hn.thetas)
            th2 = np.array(shifted.thetas)[: len(th1)]
            bp1 = np.array(Hn.breakpoints)
            bp2 = np.array(shifted.breakpoints)[: len(bp1)]
            worst = max(worst, float(np.max(np.abs(th1 - th2))), float(np.max(np.abs(bp1 - bp2))))
            H0 = kac.hamiltonian_H0(n + 1)
            if list(Hn.breakpoints[: n + 2]) != list(H0.breakpoints) or any(
                abs(x - y) > 0.0 for x, y in zip(Hn.thetas[: n + 1], H0.thetas)
            ):
                prefix_ok = False
    ok = worst < 1e-12 and prefix_ok
    return ok, f"max two-path deviation {worst:.3e} (tol 1e-12), prefix property exact: {prefix_ok}"


def check_kac_canonical():
    H0 = kac.hamiltonian_H0(70)
    est = canonical.m_canonical(H0, 2j, 1e-6)
    e1 = abs(est.center - m0_gammahat(2j))
    ok = est.converged and e1 < 1e-6 and est.radius < 1e-6 and est.truncation_T <= 60.0
    a, b = _COEFF_SETS[0]
    Ha = kac.kac_algorithm(a, b, 30)
    lam = 2j
    oracle = -1.0 / (lam - 1.0 + m0_gammahat(lam))
    est2 = canonical.m_canonical(Ha, lam, 1e-6)
    e2 = abs(est2.center - oracle)
    ok = ok and est2.converged and e2 < 2e-6
    return ok, (
        f"alternating Hamiltonian error {e1:.3e} (tol 1e-6, radius {est.radius:.3e} at T={est.truncation_T}), "
        f"a0=1 vs Schur oracle error {e2:.3e} (tol 2e-6)"
    )


def check_kernels():
    rng = np.random.default_rng(17)
    worst_nev = 0.0
    worst_int = 0.0
    for trial in range(50):
        d = int(rng.integers(1, 3))
        n = d + int(rng.integers(2, 6))
        pts = [complex(rng.uniform(-3, 3), rng.choice([-1, 1]) * rng.uniform(0.3, 3)) for _ in range(8)]
        vecs = [rng.standard_normal(d) + 1j * rng.standard_normal(d) for _ in range(8)]
        S = SampleSet.of(pts, vecs)
        F = random_nevanlinna(200 + trial, d, n)
        G = nevanlinna_gram(F, S)
        worst_nev = max(worst_nev, -min_eig(G) / (1.0 + np.linalg.norm(G, 2)))
        Fc = random_contraction_resolvent(300 + trial, d, n)
        G2 = class_n0_interval_gram(Fc, S)
        worst_int = max(worst_int, -min_eig(G2) / (1.0 + np.linalg.norm(G2, 2)))
    # dual-formula identity for the interval kernel
    Fc = random_contraction_resolvent(42, 2, 8)
    T, K = Fc.T, Fc.K
    rngl = np.random.default_rng(19)
    worst_id = 0.0
    eye8 = np.eye(8)
    eye2 = np.eye(2)
    defect = eye8 - T @ T
    for _ in range(20):
        lam = complex(rngl.uniform(-3, 3), rngl.uniform(0.3, 3))
        xi = complex(rngl.uniform(-3, 3), rngl.uniform(0.3, 3))
        xb = np.conj(xi)
        L = ((1 - lam * lam) * evaluate(Fc, lam) - (1 - xb * xb) * evaluate(Fc, xi).conj().T - (lam - xb) * eye2) / (lam - xb)
        Rm = K.conj().T @ np.linalg.solve(T - lam * eye8, defect @ np.linalg.solve(T - xb * eye8, K))
        worst_id = max(worst_id, float(np.max(np.abs(L - Rm))))
    ok = worst_nev <= 1e-10 and worst_int <= 1e-10 and worst_id < 1e-11
    return ok, (
        f"worst relative negative eigenvalue: nevanlinna {worst_nev:.3e}, interval {worst_int:.3e} "
        f"(tol 1e-10); dual-formula identity error {worst_id:.3e} (tol 1e-11)"
    )


def check_hamiltonian_scheme():
    H0 = kac.hamiltonian_H0(20)
    out = kac.gammahat_hamiltonian(H0)
    expected = kac.hamiltonian_H0(21)
    exact = list(out.breakpoints) == list(expected.breakpoints) and list(out.thetas) == list(expected.thetas)
    worst = 0.0
    for a, b in _COEFF_SETS:
        H = kac.kac_algorithm(a, b, 12)
        g = kac.gammahat_hamiltonian(H)
        h1 = kac.hamiltonian_Hn(H, 1)
        worst = max(
            worst,
            float(np.max(np.abs(np.array(g.breakpoints) - np.array(h1.breakpoints)))),
            float(np.max(np.abs(np.array(g.thetas) - np.array(h1.thetas)))),
        )
    ok = exact and worst <= 1e-12
    return ok, f"fixed Hamiltonian exact: {exact}; scheme vs shift construction deviation {worst:.3e} (tol 1e-12)"


SUITES = {
    "fixed-points": check_fixed_points,
    "quadrature": check_quadrature,
    "contraction": check_contraction,
    "uniform-grid": check_uniform_grid,
    "truncation": check_truncation,
    "wollen": check_wollen,
    "chain": check_chain,
    "kac": check_kac,
    "hn-two-path": check_hn_two_path,
    "kac-canonical": check_kac_canonical,
    "kernels": check_kernels,
    "hamiltonian-scheme": check_hamiltonian_scheme,
}


def run_suite(name: str):
    """Run one named suite; returns (passed, detail)."""
    return SUITES[name]()
