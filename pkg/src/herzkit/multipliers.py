"""Schur multiplier engine.

A symbol A acts on matrices by entrywise multiplication B |-> A * B; this
module estimates the operator norm of that action on each Schatten class,
with certified two-sided brackets:

* p = 2 is exact (the action is diagonal in the matrix-unit basis, so the
  norm is the largest entry modulus);
* p in {1, oo} delegate to the factorization-norm solver, whose value is the
  multiplier norm at both endpoints;
* other p get an ascent lower bound and an interpolation upper bound
  gamma2(A)^theta * maxabs(A)^(1-theta) with theta = |1 - 2/p|.

Also here: the amplification ladder toward the completely bounded norm, the
averaging projection from operators on S_p onto multiplier symbols, and the
inclusion monotonicity report for exponents in [1, 2].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .ascent import AscentOptions, AscentResult, norm_ascent
from .core import (
    INF,
    InputError,
    NormBracket,
    ResourceError,
    SchattenIndex,
    as_index,
    as_matrix,
    exact_bracket,
    schatten_norm,
)
from .gamma2 import Gamma2Certificate, gamma2

__all__ = [
    "apply_multiplier",
    "LinearOperatorOnSp",
    "multiplier_norm",
    "cb_norm_ladder",
    "averaging_projection",
    "averaging_projection_grid",
    "InclusionReport",
    "inclusion_monotonicity_report",
]

MAX_LADDER_DIM = 64


def apply_multiplier(A, B) -> np.ndarray:
    """Apply the multiplier with symbol A to B: the entrywise product A * B."""
    MA, MB = as_matrix(A), as_matrix(B)
    if MA.shape != MB.shape:
        raise InputError(
            f"symbol shape {MA.shape} does not match argument shape {MB.shape}")
    return MA * MB


def _vec(X: np.ndarray) -> np.ndarray:
    # column-major stacking: vec(e_rs) is the unit vector at index s*n + r
    return X.ravel(order="F")


def _unvec(v: np.ndarray, n: int) -> np.ndarray:
    return v.reshape((n, n), order="F")


class LinearOperatorOnSp:
    """A linear map on n x n matrices held as its (n^2) x (n^2) matrix.

    The representation acts on column-vectorized matrices: applying the
    operator to e_rs reads off the column of ``rep`` at index s*n + r.
    """

    def __init__(self, rep, n: Optional[int] = None):
        R = as_matrix(rep)
        if R.shape[0] != R.shape[1]:
            raise InputError(f"operator representation must be square, got {R.shape}")
        base = int(round(np.sqrt(R.shape[0])))
        if base * base != R.shape[0]:
            raise InputError(
                f"operator dimension {R.shape[0]} is not a perfect square")
        if n is not None and n != base:
            raise InputError(f"declared base {n} does not match rep size {R.shape[0]}")
        self.n = base
        self.rep = R

    @classmethod
    def from_function(cls, n: int, fn: Callable[[np.ndarray], np.ndarray]) -> "LinearOperatorOnSp":
        """Materialize a matrix function column by column on matrix units."""
        rep = np.zeros((n * n, n * n), dtype=complex)
        for s in range(n):
            for r in range(n):
                E = np.zeros((n, n), dtype=complex)
                E[r, s] = 1.0
                rep[:, s * n + r] = _vec(as_matrix(fn(E)))
        return cls(rep)

    @classmethod
    def from_multiplier(cls, A) -> "LinearOperatorOnSp":
        M = as_matrix(A)
        if M.shape[0] != M.shape[1]:
            raise InputError(f"multiplier symbol must be square, got {M.shape}")
        return cls(np.diag(_vec(M)))

    def apply(self, X) -> np.ndarray:
        M = as_matrix(X)
        if M.shape != (self.n, self.n):
            raise InputError(f"operand shape {M.shape}, expected {(self.n, self.n)}")
        return _unvec(self.rep @ _vec(M), self.n)

    def __call__(self, X) -> np.ndarray:
        return self.apply(X)


def multiplier_norm(A, p, opts: AscentOptions | None = None,
                    gamma2_tol: float = 1e-6) -> NormBracket:
    """Certified bracket for the Schur multiplier norm of A on S_p.

    The returned bracket always contains the true norm: lower bounds are
    witnessed ratios, upper bounds are the exact p = 2 value, the certified
    factorization norm at the endpoints, or the interpolation bound between
    them.  ``opts.restarts = 0`` keeps only the cheap structured witnesses.
    """
    pi = as_index(p)
    M = as_matrix(A)
    if M.shape[0] != M.shape[1]:
        raise InputError(f"multiplier symbol must be square, got {M.shape}")
    opts = opts or AscentOptions()
    if M.size == 0 or not np.any(M):
        return exact_bracket(0.0, "closed-form", detail="zero symbol")

    max_abs = float(np.max(np.abs(M)))
    if pi.value == 2.0:
        return exact_bracket(max_abs, "closed-form",
                             detail="largest entry modulus (diagonal action on S_2)")

    if pi.is_inf or pi.value == 1.0:
        bracket, cert = gamma2(M, tol=gamma2_tol, restarts=opts.restarts,
                               max_iter=opts.max_iter, seed=opts.seed,
                               thread_budget=opts.thread_budget)
        return bracket

    # general exponent: ascent lower, interpolation upper
    theta = abs(1.0 - 2.0 / pi.value)
    g2_bracket, _ = gamma2(M, tol=max(gamma2_tol, 1e-5), compute_lower=False,
                           seed=opts.seed)
    upper = (g2_bracket.upper ** theta) * (max_abs ** (1.0 - theta))
    res = norm_ascent(M, pi, opts)
    lower = min(res.value, upper + 0.5e-9 * (1.0 + upper))
    return NormBracket(
        lower, upper,
        {"kind": "test-matrix", "matrix": res.witness,
         "detail": f"Schur ratio on S_{pi.value:g}"},
        {"kind": "interpolation", "theta": theta,
         "gamma2_upper": g2_bracket.upper, "max_abs": max_abs},
        iterations=res.iterations,
        converged=(upper - lower) <= 1e-6 * (1.0 + upper),
    )


def _pad_witness(B: np.ndarray, new_dim: int) -> np.ndarray:
    out = np.zeros((new_dim, new_dim), dtype=complex)
    out[: B.shape[0], : B.shape[1]] = B
    return out


def cb_norm_ladder(A, p, m_max: int, opts: AscentOptions | None = None,
                   gamma2_tol: float = 1e-6) -> list[NormBracket]:
    """Brackets for the amplified norms ||Id_m (x) M_A|| for m = 1..m_max.

    Level m uses the symbol with an m x m all-ones outer block, whose
    multiplier is the m-fold amplification.  Lower witnesses from level m are
    zero-padded into level m+1 starts, so the reported lower bounds are
    nondecreasing up to re-evaluation rounding.  The ladder is constant at
    p = 2, and every value is dominated by the factorization norm, which the
    ladder approaches as completely bounded evidence (it never claims the
    limit).  At the endpoint exponents the factorization norm is invariant
    under the all-ones amplification, so levels reuse the base solve with the
    padded witness re-evaluated at full size.
    """
    pi = as_index(p)
    M = as_matrix(A)
    n = M.shape[0]
    if M.shape[0] != M.shape[1]:
        raise InputError(f"multiplier symbol must be square, got {M.shape}")
    if m_max < 1:
        raise InputError(f"m_max must be >= 1, got {m_max}")
    if m_max * n > MAX_LADDER_DIM:
        raise ResourceError(
            f"ladder size m_max*n = {m_max * n} exceeds cap {MAX_LADDER_DIM}")
    opts = opts or AscentOptions()

    if n == 0 or not np.any(M):
        return [exact_bracket(0.0, "closed-form", detail="zero symbol")
                for _ in range(m_max)]

    out: list[NormBracket] = []
    if pi.value == 2.0:
        val = float(np.max(np.abs(M)))
        for m in range(1, m_max + 1):
            out.append(exact_bracket(val, "closed-form",
                                     detail=f"level {m}: entry maximum, exact at p=2"))
        return out

    if pi.is_inf or pi.value == 1.0:
        base, cert = gamma2(M, tol=gamma2_tol, restarts=opts.restarts,
                            max_iter=opts.max_iter, seed=opts.seed,
                            thread_budget=opts.thread_budget)
        B0 = np.asarray(base.lower_certificate.get("matrix", np.zeros_like(M)))
        for m in range(1, m_max + 1):
            S = np.kron(np.ones((m, m)), M)
            Bm = _pad_witness(B0, m * n)
            nB = schatten_norm(Bm, INF)
            lower = schatten_norm(S * Bm, INF) / nB if nB > 0 else base.lower
            lower = min(max(lower, float(np.max(np.abs(M)))),
                        base.upper + 0.5e-9 * (1 + base.upper))
            out.append(NormBracket(
                lower, base.upper,
                {"kind": "test-matrix", "matrix": Bm,
                 "detail": f"level-{m} padded endpoint witness"},
                {"kind": "psd-block", "t": base.upper,
                 "detail": "amplification-invariant factorization bound"},
                iterations=base.iterations, converged=base.converged))
        return out

    prev_witness: Optional[np.ndarray] = None
    prev_lower = 0.0
    g2_bracket, _ = gamma2(M, tol=max(gamma2_tol, 1e-5), compute_lower=False,
                           seed=opts.seed)
    theta = abs(1.0 - 2.0 / pi.value)
    max_abs = float(np.max(np.abs(M)))
    upper = (g2_bracket.upper ** theta) * (max_abs ** (1.0 - theta))
    for m in range(1, m_max + 1):
        S = np.kron(np.ones((m, m)), M)
        extra = []
        if prev_witness is not None:
            extra.append(_pad_witness(prev_witness, m * n))
        res = norm_ascent(S, pi, opts, extra_starts=extra)
        lower = max(res.value, prev_lower)
        lower = min(lower, upper + 0.5e-9 * (1 + upper))
        out.append(NormBracket(
            lower, upper,
            {"kind": "test-matrix", "matrix": res.witness,
             "detail": f"level-{m} ascent witness"},
            {"kind": "interpolation", "theta": theta,
             "gamma2_upper": g2_bracket.upper, "max_abs": max_abs},
            iterations=res.iterations,
            converged=(upper - lower) <= 1e-6 * (1 + upper)))
        prev_witness, prev_lower = res.witness, lower
    return out


def averaging_projection(T: LinearOperatorOnSp) -> np.ndarray:
    """Project an operator on S_p onto multiplier symbols: d_rs = <T e_rs, e_rs>.

    The pairing is the bilinear trace pairing, so d_rs is just the (r, s)
    entry of T applied to the matrix unit e_rs -- the diagonal of the
    vectorized representation.  Exact: a multiplier is reproduced bit for bit.
    """
    return _unvec(np.diag(T.rep).copy(), T.n)


def averaging_projection_grid(T: LinearOperatorOnSp, N: int) -> np.ndarray:
    """Finite-grid average (1/N^2) sum_xy M_xy T M_xy-bar, as a symbol.

    The modulation symbols are [e^(i x r) e^(i y s)] over the uniform grid
    x, y in {2 pi m / N}.  For N >= n every off-diagonal character sum
    vanishes, so the average IS the projection; N < n aliases and is refused.
    """
    n = T.n
    if N < n:
        raise InputError(
            f"grid N = {N} aliases below the dimension n = {n}; need N >= n")
    rep = T.rep
    acc = np.zeros_like(rep)
    idx = np.arange(n)
    for mx in range(N):
        for my in range(N):
            x = 2.0 * np.pi * mx / N
            y = 2.0 * np.pi * my / N
            sym = np.exp(1j * x * idx)[:, None] * np.exp(1j * y * idx)[None, :]
            d = _vec(sym)
            acc += (d[:, None] * rep) * d.conj()[None, :]
    acc /= N * N
    return _unvec(np.diag(acc).copy(), n)


@dataclass
class InclusionReport:
    """Pairwise monotonicity evidence for exponents in [1, 2]."""

    pairs: list[dict] = field(default_factory=list)
    passed: bool = True

    def to_obj(self) -> dict:
        return {"pairs": [dict(p) for p in self.pairs], "passed": self.passed}


def inclusion_monotonicity_report(A, ps: Sequence[float],
                                  opts: AscentOptions | None = None,
                                  tol: float = 1e-6) -> InclusionReport:
    """Check lower(q) <= upper(p) + tol for every p <= q in ps (all in [1, 2]).

    The multiplier norm shrinks as the exponent moves from 1 toward 2, so each
    coarser lower bound must sit below each finer upper bound.  Exponents
    above 2 should be mirrored through the conjugate index by the caller.
    """
    indexed = [as_index(p) for p in ps]
    for pi in indexed:
        if pi.is_inf or pi.value > 2.0:
            raise InputError(
                f"inclusion report expects exponents in [1, 2]; got {pi!r}")
    M = as_matrix(A)
    opts = opts or AscentOptions()
    brackets = {pi.value: multiplier_norm(M, pi, opts) for pi in indexed}
    report = InclusionReport()
    vals = sorted(brackets)
    for i, p in enumerate(vals):
        for q in vals[i + 1:]:
            lower_q = brackets[q].lower
            upper_p = brackets[p].upper
            slack = upper_p + tol - lower_q
            ok = slack >= 0.0
            report.pairs.append({
                "p": p, "q": q, "lower_q": lower_q, "upper_p": upper_p,
                "slack": slack, "pass": ok,
            })
            report.passed = report.passed and ok
    return report
