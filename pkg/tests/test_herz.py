import numpy as np
import pytest

from herzkit.core import INF, InputError, random_matrix, schatten_norm
from herzkit.herz import (
    HerzDecomposition,
    HerzOptions,
    contract_diagonal,
    contract_product,
    herz_norm,
    herz_schur_product,
    herz_tensor,
    herz_truncate,
    matrix_product,
    pair_with_multiplier,
    represent,
    submultiplicativity_check,
)

CHEAP = HerzOptions(max_terms=6, iters=10, restarts=4, seed=0)


def test_p2_closed_form():
    rng = np.random.default_rng(2)
    for t in range(20):
        n = int(rng.integers(1, 7))
        C = random_matrix(n, ensemble="gaussian", seed=300 + t)
        res = herz_norm(C, 2)
        want = np.sum(np.abs(C))
        assert res.bracket.lower == pytest.approx(want, abs=1e-12)
        assert res.bracket.upper == pytest.approx(want, abs=1e-12)
        got = represent(res.best_decomposition)
        np.testing.assert_allclose(got, C, atol=1e-12)


def test_all_ones_at_p1_is_exactly_n_squared():
    J = np.ones((2, 2), dtype=complex)
    res = herz_norm(J, 1, CHEAP)
    assert res.bracket.lower >= 4 - 1e-6
    assert res.bracket.upper <= 4 + 1e-6


def test_decomposition_cost_matches_upper():
    C = random_matrix(3, ensemble="gaussian", seed=8)
    res = herz_norm(C, 1.5, CHEAP)
    assert res.best_decomposition.cost == pytest.approx(res.bracket.upper, rel=1e-12)
    np.testing.assert_allclose(represent(res.best_decomposition), C, atol=1e-9)


def test_single_matrix_unit_costs_one():
    E = np.zeros((3, 3), dtype=complex)
    E[0, 0] = 1.0
    res = herz_norm(E, 1, CHEAP)
    assert res.bracket.upper <= 1 + 1e-9
    assert res.bracket.lower >= 1 - 1e-9


def test_lower_is_witnessed_dual_value():
    C = random_matrix(3, ensemble="gaussian", seed=12)
    res = herz_norm(C, 3.0, CHEAP)
    dual = res.dual_functional
    if dual.get("kind") == "unimodular-pair":
        a, b = dual["a"], dual["b"]
        # rank-one unimodular symbols have multiplier norm exactly one,
        # so the pairing value is a legitimate lower bound
        assert abs(a @ C @ b) == pytest.approx(res.bracket.lower, abs=1e-9)
        assert np.max(np.abs(np.abs(a) - 1)) < 1e-12
        assert np.max(np.abs(np.abs(b) - 1)) < 1e-12


def test_build_rejects_mixed_shapes():
    with pytest.raises(InputError):
        HerzDecomposition.build(2, [(np.ones((2, 2)), np.ones((3, 3)))])
    with pytest.raises(InputError):
        HerzDecomposition.build(2, [], dim=None)


def test_truncation_never_raises_cost():
    C = random_matrix(4, ensemble="gaussian", seed=19)
    res = herz_norm(C, 1.5, CHEAP)
    d = res.best_decomposition
    d_cut = herz_truncate(d, [0, 2])
    assert d_cut.cost <= d.cost + 1e-12
    want = np.zeros_like(C)
    want[np.ix_([0, 2], [0, 2])] = C[np.ix_([0, 2], [0, 2])]
    np.testing.assert_allclose(represent(d_cut), want, atol=1e-9)


def test_tensor_multiplies_cost_and_represents_kron():
    x = HerzDecomposition.build(1.5, [(np.array([[2.0, 0], [0, 1.0]]) + 0j,
                                       np.ones((2, 2)) + 0j)])
    y = HerzDecomposition.build(1.5, [(np.eye(2) + 0j, np.ones((2, 2)) + 0j)])
    z = herz_tensor(x, y)
    assert z.dim == 4
    np.testing.assert_allclose(
        represent(z), np.kron(represent(x), represent(y)), atol=1e-13)
    assert z.cost == pytest.approx(x.cost * y.cost, rel=1e-12)
    with pytest.raises(InputError):
        herz_tensor(x, HerzDecomposition.build(2, [(np.eye(2) + 0j, np.eye(2) + 0j)]))


def test_schur_product_decomposition_exact_and_submultiplicative():
    rng = np.random.default_rng(30)
    for t in range(5):
        C = random_matrix(3, ensemble="gaussian", seed=400 + t)
        D = random_matrix(3, ensemble="gaussian", seed=500 + t)
        x = herz_norm(C, 1.5, CHEAP).best_decomposition
        y = herz_norm(D, 1.5, CHEAP).best_decomposition
        z = herz_schur_product(x, y)
        np.testing.assert_allclose(represent(z), C * D, atol=1e-12)
        assert z.cost <= x.cost * y.cost + 1e-9


def test_contract_product_recovers_matrix_product():
    A = random_matrix(3, ensemble="gaussian", seed=61)
    B = random_matrix(3, ensemble="gaussian", seed=62)
    E = np.kron(A, B)
    F = np.ones((9, 9), dtype=complex)
    # on a Kronecker pair against all-ones, the contraction along the
    # product pattern collapses to the ordinary matrix product
    np.testing.assert_allclose(contract_product(E, F), A @ B, atol=1e-12)


def test_contract_product_factors_on_kron_inputs():
    A = random_matrix(2, ensemble="gaussian", seed=63)
    B = random_matrix(2, ensemble="gaussian", seed=64)
    C = random_matrix(2, ensemble="gaussian", seed=65)
    D = random_matrix(2, ensemble="gaussian", seed=66)
    got = contract_product(np.kron(A, B), np.kron(C, D))
    np.testing.assert_allclose(got, (A * C) @ (B * D), atol=1e-12)


def test_contract_diagonal_on_kron_inputs():
    A = random_matrix(2, ensemble="gaussian", seed=67)
    B = random_matrix(2, ensemble="gaussian", seed=68)
    C = random_matrix(2, ensemble="gaussian", seed=69)
    D = random_matrix(2, ensemble="gaussian", seed=70)
    got = contract_diagonal(np.kron(A, B), np.kron(C, D))
    np.testing.assert_allclose(got, (A * B) * (C * D), atol=1e-12)


def test_matrix_product_shape_check():
    with pytest.raises(InputError):
        matrix_product(np.ones((2, 3)), np.ones((2, 3)))


def test_submultiplicativity_check_passes():
    C = random_matrix(3, ensemble="sign", seed=71)
    D = random_matrix(3, ensemble="gaussian", seed=72)
    for product in ("schur", "matrix"):
        rep = submultiplicativity_check(C, D, 1.5, product=product, opts=CHEAP)
        assert rep.passed, rep.to_obj()
    with pytest.raises(InputError):
        submultiplicativity_check(C, D, 1.5, product="direct")


def test_pairing_is_bilinear_sum():
    A = np.array([[1, 2j], [0, 1]], dtype=complex)
    C = np.array([[3, 1], [1, -1j]], dtype=complex)
    assert pair_with_multiplier(A, C) == pytest.approx(3 + 2j * 1 + 0 + 1 * (-1j))


def test_seed_decomposition_must_represent_input():
    C = random_matrix(2, ensemble="gaussian", seed=73)
    bogus = HerzDecomposition.build(1.5, [(np.eye(2) + 0j, np.eye(2) + 0j)])
    with pytest.raises(InputError):
        herz_norm(C, 1.5, HerzOptions(seed_decompositions=(bogus,)))


def test_caller_seed_can_only_help():
    C = np.ones((2, 2), dtype=complex)
    seed = HerzDecomposition.build(1, [(C, np.ones((2, 2)) + 0j)])
    res = herz_norm(C, 1, HerzOptions(iters=0, restarts=0,
                                      seed_decompositions=(seed,)))
    assert res.bracket.upper <= seed.cost + 1e-12


def test_refinement_cannot_break_representation():
    C = random_matrix(3, ensemble="sparse", seed=77)
    res = herz_norm(C, 1.2, HerzOptions(max_terms=8, iters=40, restarts=2))
    np.testing.assert_allclose(represent(res.best_decomposition), C, atol=1e-9)


def test_zero_matrix():
    res = herz_norm(np.zeros((2, 2)), 1.5)
    assert res.bracket.lower == res.bracket.upper == 0.0
    assert represent(res.best_decomposition).shape == (2, 2)
