import numpy as np
import pytest

from herzkit.core import InputError, random_matrix
from herzkit.gamma2 import (
    MAX_GAMMA2_DIM,
    Gamma2Certificate,
    check_certificate,
    gamma2,
)

H2 = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex)
WIDTH_TOL = 1e-4


def h2_factorization_grid_oracle():
    """Independent value for the factorization norm of the 2x2 sign matrix.

    Upper: scan the one-angle family of unit factor rows
    u = (angles c, 3c), v = (angles 0, 2c); the Gram pattern matches the
    sign matrix exactly where cos 3c = -cos c, and the realized value is
    1 / |cos c| there.  Lower: the duality ratio ||H o B||_oo / ||B||_oo
    at the explicit test matrix B = H.  Both sides are solver-free.
    """
    c = np.linspace(0.01, np.pi - 0.01, 200001)
    residual = np.abs(np.cos(3 * c) + np.cos(c))
    feasible = np.abs(np.cos(c)) > 0.1
    idx = np.argmin(np.where(feasible, residual, np.inf))
    upper = 1.0 / abs(np.cos(c[idx]))

    sv = np.linalg.svd(H2 * H2, compute_uv=False)[0]
    lower = sv / np.linalg.svd(H2, compute_uv=False)[0]
    assert abs(upper - lower) < 1e-4, "oracle sides disagree"
    return lower, upper


def test_h2_matches_independent_grid_oracle():
    lo, up = h2_factorization_grid_oracle()
    bracket, cert = gamma2(H2, tol=1e-6)
    assert bracket.lower == pytest.approx(lo, abs=1e-3)
    assert bracket.upper == pytest.approx(up, abs=1e-3)
    assert check_certificate(H2, cert).ok


def test_rank_one_unimodular_has_norm_one():
    rng = np.random.default_rng(5)
    a = np.exp(2j * np.pi * rng.random(4))
    b = np.exp(2j * np.pi * rng.random(4))
    bracket, cert = gamma2(np.outer(a, b), tol=1e-6)
    assert bracket.lower == pytest.approx(1.0, abs=1e-6)
    assert bracket.upper == pytest.approx(1.0, abs=1e-6)
    assert check_certificate(np.outer(a, b), cert).ok


def test_all_ones_has_norm_one():
    J = np.ones((3, 3), dtype=complex)
    bracket, cert = gamma2(J, tol=1e-6)
    # witnessed ratios may sit a rounding error above the true value
    assert bracket.lower <= 1.0 + 1e-9
    assert bracket.upper >= 1.0 - 1e-9
    assert bracket.upper - bracket.lower <= 1e-5
    assert check_certificate(J, cert).ok


def test_bracket_width_meets_target_on_random_matrices():
    rng = np.random.default_rng(11)
    for t in range(12):
        n = int(rng.integers(2, 7))
        A = random_matrix(n, ensemble="gaussian", seed=100 + t)
        bracket, cert = gamma2(A, tol=WIDTH_TOL)
        width = bracket.upper - bracket.lower
        assert width <= WIDTH_TOL * (1 + bracket.upper)
        assert check_certificate(A, cert).ok


def test_zero_matrix_is_exact():
    bracket, cert = gamma2(np.zeros((3, 3)))
    assert bracket.lower == bracket.upper == 0.0
    assert check_certificate(np.zeros((3, 3)), cert).ok


def test_certificate_tampering_is_detected():
    J = np.ones((2, 2), dtype=complex)
    bracket, cert = gamma2(J, tol=1e-6)
    assert check_certificate(J, cert).ok

    # inflate a diagonal entry of P above the cap
    P_bad = cert.P.copy()
    P_bad[0, 0] = cert.t + 1.0
    bad = Gamma2Certificate(cert.t, P_bad, cert.Q, cert.min_eig, cert.dual_witness)
    res = check_certificate(J, bad)
    assert not res.ok
    assert any("cap" in r or "diag" in r for r in res.reasons)

    # lie about the eigenvalue floor
    bad2 = Gamma2Certificate(cert.t, -np.eye(2) + 0j, cert.Q, -1.0, None)
    assert not check_certificate(J, bad2).ok


def test_certificate_check_never_raises_on_garbage():
    J = np.ones((2, 2), dtype=complex)
    junk = Gamma2Certificate(1.0, np.zeros((3, 3)), np.zeros((2, 2)), 0.0, None)
    res = check_certificate(J, junk)
    assert not res.ok


def test_dimension_cap_enforced():
    big = np.zeros((MAX_GAMMA2_DIM + 1, MAX_GAMMA2_DIM + 1))
    big[0, 0] = 1.0
    with pytest.raises(Exception):
        gamma2(big)


def test_scaling_homogeneity():
    A = random_matrix(3, ensemble="gaussian", seed=42)
    b1, _ = gamma2(A, tol=1e-5)
    b2, _ = gamma2(2.5 * A, tol=1e-5)
    assert b2.midpoint == pytest.approx(2.5 * b1.midpoint, rel=1e-3)


def test_hermitian_conjugation_invariance():
    A = random_matrix(3, ensemble="gaussian", seed=43)
    b1, _ = gamma2(A, tol=1e-5)
    b2, _ = gamma2(A.conj().T, tol=1e-5)
    assert b1.midpoint == pytest.approx(b2.midpoint, rel=1e-3)
