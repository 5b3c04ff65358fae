"""Acceptance suite: one test per shipped guarantee, fixed tolerances.

Each test prints a single PASS line on success; a failure shows up as the
usual pytest report for that criterion.  Budgets are chosen so the whole
file stays well under five minutes.
"""

import numpy as np
import pytest

from herzkit import (
    INF,
    AscentOptions,
    HerzOptions,
    LinearOperatorOnSp,
    averaging_projection,
    averaging_projection_grid,
    cb_norm_ladder,
    check_certificate,
    classify_isometric,
    column_splice,
    dft_decompose,
    gamma2,
    herz_norm,
    herz_schur_product,
    isometry_forward_check,
    isometry_witness_search,
    multiplier_norm,
    pair_with_multiplier,
    partial_isometry_check,
    random_matrix,
    represent,
    row_splice,
    schatten_norm,
    sign_average_entry,
    splice_adjoint_defect,
    verify_diag_embed_diagram,
    verify_product_diagram,
)

HADAMARD2 = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex)

# cheap-but-valid search budgets: upper bounds stay true upper bounds and
# witnessed lower bounds stay true lower bounds at any budget, so the
# inequality criteria below are never at risk from a small budget
FAST_HERZ = HerzOptions(max_terms=5, iters=6, restarts=2, seed=0)
FAST_MULT = AscentOptions(restarts=0, seed=0)


def _ok(k, label):
    print(f"[criterion {k:02d}] {label}: PASS")


def _rank_one_unimodular(n, seed):
    rng = np.random.default_rng(seed)
    a = np.exp(2j * np.pi * rng.random(n))
    b = np.exp(2j * np.pi * rng.random(n))
    return np.outer(a, b), a, b


def test_criterion_01_p2_endpoint_exactness():
    # tolerance 1e-12, 100 random matrices with n <= 6
    for t in range(100):
        n = 1 + t % 6
        A = random_matrix(n, ensemble="gaussian", seed=100 + t)
        mb = multiplier_norm(A, 2)
        want = float(np.max(np.abs(A)))
        assert abs(mb.lower - want) <= 1e-12
        assert abs(mb.upper - want) <= 1e-12
        hb = herz_norm(A, 2).bracket
        want = float(np.sum(np.abs(A)))
        assert abs(hb.lower - want) <= 1e-12
        assert abs(hb.upper - want) <= 1e-12
    _ok(1, "p=2 norms agree with the entrywise closed forms to 1e-12")


def test_criterion_02_gamma2_certification():
    # widths within 1e-4 * (1 + upper) on 50 random matrices, every
    # certificate re-checks, rank-one unimodular pins to 1 +/- 1e-6
    for t in range(50):
        n = 2 + t % 5
        A = random_matrix(n, ensemble="gaussian", seed=1000 + t)
        b, cert = gamma2(A, tol=1e-4)
        assert b.upper - b.lower <= 1e-4 * (1 + b.upper)
        assert check_certificate(A, cert).ok

    R, _, _ = _rank_one_unimodular(4, seed=77)
    b, cert = gamma2(R, tol=1e-6)
    assert b.lower >= 1 - 1e-6 and b.upper <= 1 + 1e-6
    assert check_certificate(R, cert).ok

    # independent oracle for the 2x2 sign matrix: scan one-angle
    # factorizations u_j = (cos t_j, sin t_j), v_k = (cos s_k, sin s_k);
    # the Gram constraint forces cos(3c) = -cos(c), and the best grid
    # value brackets the true norm from above while the entrywise
    # duality ratio brackets it from below
    grid = np.linspace(1e-3, np.pi / 2 - 1e-3, 200001)
    feasible = np.abs(np.cos(3 * grid) + np.cos(grid)) < 2e-4
    upper_oracle = float(np.min(1.0 / np.abs(np.cos(grid[feasible]))))
    lower_oracle = (schatten_norm(HADAMARD2 * HADAMARD2, INF)
                    / schatten_norm(HADAMARD2, INF))
    assert upper_oracle - lower_oracle < 1e-4
    b2, _ = gamma2(HADAMARD2, tol=1e-6)
    assert b2.lower == pytest.approx(lower_oracle, abs=1e-3)
    assert b2.upper == pytest.approx(upper_oracle, abs=1e-3)
    _ok(2, "gamma2 brackets certified within 1e-4 and match the 2x2 oracle")


def test_criterion_03_diagram_verification():
    # exact identities over the full basis plus 16 random inputs at n=3
    symbols = [random_matrix(3, ensemble="gaussian", seed=50 + t)
               for t in range(3)]
    symbols += [np.ones((3, 3), dtype=complex), np.eye(3, dtype=complex)]
    for A in symbols:
        for rep in (verify_product_diagram(A, random_trials=16),
                    verify_diag_embed_diagram(A, random_trials=16)):
            assert rep.passed
            assert rep.max_deviation <= 1e-12
            assert rep.control_failed_as_expected
    _ok(3, "both factorization diagrams exact to 1e-12 with live controls")


def test_criterion_04_splice_structure():
    # adjointness to 1e-13 on 50 pairs, partial isometry, contractivity
    for t in range(50):
        X = random_matrix(9, ensemble="gaussian", seed=200 + t)
        Y = random_matrix(9, ensemble="gaussian", seed=300 + t)
        assert splice_adjoint_defect(X, Y) <= 1e-13
    assert partial_isometry_check(3).passed
    for p in (1.0, 1.5, 2.0, 3.0, INF):
        for t in range(50):
            X = random_matrix(9, ensemble="gaussian", seed=400 + t)
            base = schatten_norm(X, p)
            assert schatten_norm(column_splice(X), p) <= base + 1e-9
            assert schatten_norm(row_splice(X), p) <= base + 1e-9
    _ok(4, "splice maps adjoint, partially isometric, contractive on S_p")


def test_criterion_05_algebra_submultiplicativity():
    # p=2: exact entrywise-sum inequality for both products, 200 pairs
    for t in range(200):
        C = random_matrix(3, ensemble="gaussian", seed=2000 + t)
        D = random_matrix(3, ensemble="gaussian", seed=3000 + t)
        budget = float(np.sum(np.abs(C)) * np.sum(np.abs(D)))
        assert np.sum(np.abs(C @ D)) <= budget + 1e-12
        assert np.sum(np.abs(C * D)) <= budget + 1e-12

    # p in {1, 1.5, 3}: certified brackets, 100 pairs each exponent
    for t in range(100):
        C = random_matrix(3, ensemble="gaussian", seed=2000 + t)
        D = random_matrix(3, ensemble="gaussian", seed=3000 + t)
        for p in (1.0, 1.5, 3.0):
            up_c = herz_norm(C, p, FAST_HERZ).bracket.upper
            up_d = herz_norm(D, p, FAST_HERZ).bracket.upper
            lo = herz_norm(C * D, p, FAST_HERZ).bracket.lower
            assert lo <= up_c * up_d + 1e-6

    # the constructive product decomposition represents exactly and its
    # cost multiplies
    for t in range(10):
        C = random_matrix(3, ensemble="gaussian", seed=2000 + t)
        D = random_matrix(3, ensemble="gaussian", seed=3000 + t)
        x = herz_norm(C, 1.5, FAST_HERZ).best_decomposition
        y = herz_norm(D, 1.5, FAST_HERZ).best_decomposition
        z = herz_schur_product(x, y)
        assert np.max(np.abs(represent(z) - C * D)) <= 1e-12
        assert z.cost <= x.cost * y.cost + 1e-9
    _ok(5, "norm submultiplicativity for both products, constructively")


def test_criterion_06_duality_sandwich():
    # 100 random triples, p cycling {1, 1.5, 2, 3}
    for t in range(100):
        A = random_matrix(3, ensemble="gaussian", seed=4000 + t)
        C = random_matrix(3, ensemble="gaussian", seed=5000 + t)
        p = (1.0, 1.5, 2.0, 3.0)[t % 4]
        mu = multiplier_norm(A, p, opts=FAST_MULT, gamma2_tol=1e-3).upper
        hz = herz_norm(C, p, FAST_HERZ).bracket.upper
        assert abs(pair_with_multiplier(A, C)) <= mu * hz + 1e-6
    _ok(6, "trace pairing bounded by multiplier times predual upper bounds")


def test_criterion_07_averaging_projection():
    rng = np.random.default_rng(8)
    for t in range(10):
        R = random_matrix(9, ensemble="gaussian", seed=600 + t)
        T = LinearOperatorOnSp.from_function(
            3, lambda B, R=R: (R @ B.reshape(-1)).reshape(3, 3))
        sym = averaging_projection(T)
        # idempotence and fixing of multipliers, both bit for bit
        again = averaging_projection(LinearOperatorOnSp.from_multiplier(sym))
        np.testing.assert_array_equal(again, sym)
        for N in (3, 6):
            grid = averaging_projection_grid(T, N)
            assert np.max(np.abs(grid - sym)) <= 1e-10

    A = random_matrix(3, ensemble="gaussian", seed=611)
    fixed = averaging_projection(LinearOperatorOnSp.from_multiplier(A))
    np.testing.assert_array_equal(fixed, A)

    # extracting the diagonal never beats the operator norm on S_2
    for t in range(50):
        R = random_matrix(9, ensemble="gaussian", seed=700 + t)
        T = LinearOperatorOnSp.from_function(
            3, lambda B, R=R: (R @ B.reshape(-1)).reshape(3, 3))
        sym = averaging_projection(T)
        smax = float(np.linalg.svd(T.rep, compute_uv=False)[0])
        assert np.max(np.abs(sym)) <= smax + 1e-12
    _ok(7, "averaging projection idempotent, grid-consistent, contractive")


def test_criterion_08_inclusion_monotonicity():
    # brackets at p <= q in {1, 1.5, 2} must overlap monotonically
    exponents = (1.0, 1.5, 2.0)
    for t in range(50):
        A = random_matrix(3, ensemble="gaussian", seed=6000 + t)
        brackets = {p: multiplier_norm(A, p, opts=FAST_MULT, gamma2_tol=1e-3)
                    for p in exponents}
        for p in exponents:
            for q in exponents:
                if p <= q:
                    assert brackets[q].lower <= brackets[p].upper + 1e-6

    # amplification ladders: nondecreasing in the bracket order, constant
    # at p=2, never above the certified factorization norm
    for t in range(4):
        n = 2 + t % 2
        A = random_matrix(n, ensemble="gaussian", seed=6100 + t)
        g, _ = gamma2(A, tol=1e-4)
        for p in (1.5, 2.0):
            ladder = cb_norm_ladder(A, p, m_max=3, opts=FAST_MULT,
                                    gamma2_tol=1e-3)
            for i in range(len(ladder)):
                for j in range(i, len(ladder)):
                    assert ladder[i].lower <= ladder[j].upper + 1e-6
                assert ladder[i].lower <= g.upper + 1e-6
            if p == 2.0:
                vals = [lv.lower for lv in ladder]
                assert max(vals) - min(vals) <= 1e-12
    _ok(8, "multiplier norms shrink toward p=2 and ladders grow to gamma2")


def test_criterion_09_isometry_suite():
    curated_p = (1.0, 1.7, 3.0, 4.0, INF)
    zero_holed = np.ones((3, 3), dtype=complex)
    zero_holed[1, 2] = 0.0
    for p in curated_p:
        R, a, b = _rank_one_unimodular(3, seed=31)
        v = classify_isometric(R, p)
        assert v.is_isometric
        assert isometry_forward_check(v.a, v.b, p, trials=10).passed

        vz = classify_isometric(zero_holed, p)
        assert not vz.is_isometric and vz.reason == "zero_entry"
        wz = isometry_witness_search(zero_holed, p,
                                     AscentOptions(restarts=4, seed=0))
        assert wz.deviation >= 1e-3

        vh = classify_isometric(HADAMARD2, p)
        assert not vh.is_isometric
        wh = isometry_witness_search(HADAMARD2, p,
                                     AscentOptions(restarts=6, seed=0))
        assert wh.deviation >= 1e-4

    w4 = isometry_witness_search(HADAMARD2, 4, AscentOptions(restarts=6, seed=0))
    assert w4.deviation >= 1e-3

    # character decomposition: n^2 certified-isometric terms, exact rebuild
    for t in range(100):
        n = 2 + t % 4
        C = random_matrix(n, ensemble="gaussian", seed=7000 + t)
        terms = dft_decompose(C)
        assert len(terms) == n * n
        rebuilt = np.zeros_like(C)
        for term in terms:
            rebuilt += term.coefficient * np.outer(term.a, term.b)
            assert classify_isometric(np.outer(term.a, term.b), 4).is_isometric
        assert np.max(np.abs(rebuilt - C)) <= 1e-10

    # four sign flips recover a single coefficient to 1e-13
    S = random_matrix(4, ensemble="gaussian", seed=7777)
    s = np.array([1, -1, 1, -1], dtype=complex)
    u = np.array([-1, 1, 1, -1], dtype=complex)
    for (i0, j0) in ((0, 0), (1, 3), (3, 2)):
        got = sign_average_entry(S, s, u, i0, j0)
        assert abs(got - S[i0, j0]) <= 1e-13
    _ok(9, "isometric symbols classified, witnessed, and decomposed")


def test_criterion_10_closed_bracket_case():
    res = herz_norm(np.ones((2, 2), dtype=complex), 1)
    assert res.bracket.lower >= 4 - 1e-6
    assert res.bracket.upper <= 4 + 1e-6
    _ok(10, "all-ones 2x2 predual norm pinned to 4 within 1e-6")
