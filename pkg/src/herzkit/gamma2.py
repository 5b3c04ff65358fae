"""Certified brackets for the factorization (Haagerup) norm of a symbol.

The computational definition used here: gamma2(A) <= t exactly when Hermitian
P and Q exist making the block [[P, A], [A^*, Q]] positive semidefinite with
every diagonal entry of P and Q at most t.  Equivalently it is the smallest
max_i ||x_i|| * max_j ||y_j|| over factorizations A = X Y^*, and it coincides
with the Schur-multiplier norm on S_oo (hence on S_1 by duality).  This block
feasibility form is taken as the definition the solver certifies against.

Upper bounds come from bisection over t with a Douglas-Rachford feasibility
iteration between the PSD cone and the affine cap set; every near-feasible
point is promoted to an exactly certified one by a diagonal shift (P + eps I,
Q + eps I at level t + eps), so the certified upper bound degrades gracefully
instead of jumping.  Lower bounds come from the S_oo multiplier ascent with a
stored dual witness.  Certificates are re-checkable from scratch with
``check_certificate``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .ascent import AscentOptions, norm_ascent
from .core import (
    INF,
    InputError,
    NormBracket,
    ResourceError,
    as_matrix,
    schatten_norm,
)

__all__ = ["Gamma2Certificate", "CertificateCheck", "gamma2", "check_certificate"]

MAX_GAMMA2_DIM = 32

# PSD slack allowed in a valid certificate, relative to 1 + t
CERT_EIG_SLACK = 1e-9
# slack allowed on the diagonal caps
CERT_DIAG_SLACK = 1e-9


@dataclass
class Gamma2Certificate:
    """Re-checkable evidence for a gamma2 bracket.

    t is the certified upper bound: the block [[P, A], [A^*, Q]] must be PSD
    up to CERT_EIG_SLACK with diag(P), diag(Q) <= t (up to CERT_DIAG_SLACK).
    ``dual_witness`` is a matrix B with ||B||_oo <= 1 whose Schur ratio
    ||A * B||_oo / ||B||_oo reproduces the lower bound.
    """

    t: float
    P: np.ndarray
    Q: np.ndarray
    min_eig: float
    dual_witness: np.ndarray


@dataclass
class CertificateCheck:
    """Outcome of an independent certificate re-verification."""

    ok: bool
    reasons: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def _block(P: np.ndarray, A: np.ndarray, Q: np.ndarray) -> np.ndarray:
    n = A.shape[0]
    Z = np.empty((2 * n, 2 * n), dtype=complex)
    Z[:n, :n] = P
    Z[:n, n:] = A
    Z[n:, :n] = A.conj().T
    Z[n:, n:] = Q
    return Z


def _psd_project(Z: np.ndarray) -> np.ndarray:
    Z = (Z + Z.conj().T) / 2
    w, U = np.linalg.eigh(Z)
    np.clip(w, 0.0, None, out=w)
    return (U * w) @ U.conj().T


def _cap_project(Z: np.ndarray, A: np.ndarray, t: float) -> np.ndarray:
    """Overwrite projection onto {off-diagonal blocks = A, diag caps <= t}."""
    n = A.shape[0]
    P = Z[:n, :n]
    Q = Z[n:, n:]
    P = (P + P.conj().T) / 2
    Q = (Q + Q.conj().T) / 2
    np.fill_diagonal(P, np.minimum(np.real(np.diag(P)), t))
    np.fill_diagonal(Q, np.minimum(np.real(np.diag(Q)), t))
    return _block(P, A, Q)


def _feasibility(A: np.ndarray, t: float, X0: np.ndarray, inner: int,
                 exit_tol: float) -> tuple[float, np.ndarray, np.ndarray, np.ndarray]:
    """Douglas-Rachford pass at level t.

    Returns the smallest PSD violation seen on an affine-feasible candidate,
    the (P, Q) achieving it, and the final driver state for warm-starting the
    next level.  The candidate with violation eps certifies t + eps.
    """
    n = A.shape[0]
    X = X0
    best_viol = np.inf
    best_P = X0[:n, :n]
    best_Q = X0[n:, n:]
    check_every = 5
    for it in range(inner):
        ZB = _cap_project(X, A, t)
        ZA = _psd_project(2 * ZB - X)
        X = X + ZA - ZB
        if it % check_every == check_every - 1 or it == inner - 1:
            cand = _cap_project(_psd_project(ZB), A, t)
            lam = np.linalg.eigvalsh(cand)[0]
            viol = max(0.0, -float(lam))
            if viol < best_viol:
                best_viol = viol
                best_P = cand[:n, :n].copy()
                best_Q = cand[n:, n:].copy()
            if viol <= exit_tol * (1.0 + t):
                break
    return best_viol, best_P, best_Q, X


def _certified_upper(A: np.ndarray, tol: float, inner: int,
                     max_steps: int = 60) -> tuple[float, np.ndarray, np.ndarray, int]:
    """Bisection with repair; returns (t, P, Q, steps) with an exact PSD cert."""
    n = A.shape[0]
    U, s, Vh = np.linalg.svd(A)
    t_hi = float(s[0])
    # spectral factorization gives a feasible start at t = ||A||_oo exactly
    P = (U * s) @ U.conj().T
    Q = (Vh.conj().T * s) @ Vh
    best_t, best_P, best_Q = t_hi, P, Q
    lo = float(np.max(np.abs(A)))
    hi = t_hi
    X = _block(P, A, Q)
    steps = 0
    while hi - lo > 0.25 * tol * (1.0 + hi) and steps < max_steps:
        steps += 1
        mid = (lo + hi) / 2
        viol, Pm, Qm, X = _feasibility(A, mid, X, inner, exit_tol=1e-13)
        t_rep = mid + viol
        if t_rep < best_t:
            best_t = t_rep
            best_P = Pm + viol * np.eye(n)
            best_Q = Qm + viol * np.eye(n)
        if viol <= 1e-9 * (1.0 + mid):
            hi = mid
        else:
            lo = mid
        hi = min(hi, best_t)
        if hi < lo:
            lo = hi
    return best_t, best_P, best_Q, steps


def gamma2(A, tol: float = 1e-6, restarts: int = 32, max_iter: int = 150,
           seed: int = 0, inner: int = 350, compute_lower: bool = True,
           thread_budget: int = 1) -> tuple[NormBracket, Gamma2Certificate]:
    """Certified bracket for gamma2(A) with a re-checkable certificate.

    Parameters
    ----------
    A : array_like
        Square symbol, n <= 32.
    tol : float
        Target relative bracket width; ``converged`` reports whether the
        bracket reached tol * (1 + upper).
    restarts, max_iter, seed : int
        Budget for the dual witness ascent on S_oo.
    inner : int
        Douglas-Rachford iterations per bisection level.
    compute_lower : bool
        With False, skip the ascent; the lower bound is then the entrywise
        maximum (still valid: every matrix unit is a witness).

    Returns
    -------
    (NormBracket, Gamma2Certificate)
    """
    M = as_matrix(A)
    n = M.shape[0]
    if M.shape[0] != M.shape[1]:
        raise InputError(f"gamma2 requires a square symbol, got {M.shape}")
    if n > MAX_GAMMA2_DIM:
        raise ResourceError(f"gamma2 handles n <= {MAX_GAMMA2_DIM}, got n = {n}")
    if n == 0 or not np.any(M):
        cert = Gamma2Certificate(0.0, np.zeros((n, n)), np.zeros((n, n)), 0.0,
                                 np.zeros((n, n)))
        zero = {"kind": "closed-form", "detail": "zero symbol"}
        bracket = NormBracket(0.0, 0.0, dict(zero), dict(zero), 0, True)
        return bracket, cert

    upper, P, Q, steps = _certified_upper(M, tol, inner)
    min_eig = float(np.linalg.eigvalsh(_block(P, M, Q))[0])

    max_abs = float(np.max(np.abs(M)))
    lower = max_abs
    i0, j0 = np.unravel_index(int(np.argmax(np.abs(M))), M.shape)
    witness = np.zeros_like(M)
    witness[i0, j0] = 1.0
    iterations = steps * inner
    if compute_lower:
        res = norm_ascent(M, INF, AscentOptions(restarts, max_iter, 1e-11, seed,
                                                thread_budget))
        iterations += res.iterations
        if res.value > lower:
            nw = schatten_norm(res.witness, INF)
            if nw > 0:
                lower, witness = res.value, res.witness / nw
    if lower > upper + 1e-7 * (1.0 + upper):
        # both sides are certified, so a real crossover means a solver bug
        raise RuntimeError(
            f"gamma2 internal inconsistency: lower {lower} > upper {upper}")
    lower = min(lower, upper + 0.5e-9 * (1.0 + upper))  # absorb float noise

    cert = Gamma2Certificate(upper, P, Q, min_eig, witness)
    converged = (upper - lower) <= tol * (1.0 + upper)
    bracket = NormBracket(
        lower, upper,
        {"kind": "test-matrix", "matrix": witness,
         "detail": "Schur ratio on S_oo"},
        {"kind": "psd-block", "t": upper, "min_eig": min_eig},
        iterations=iterations, converged=converged,
    )
    return bracket, cert


def check_certificate(A, cert: Gamma2Certificate,
                      tol: float = CERT_EIG_SLACK) -> CertificateCheck:
    """Re-verify a certificate from scratch; never raises on bad data.

    Checks: shapes, finiteness, PSD of the assembled block (both the stored
    min_eig field and a fresh eigendecomposition), diagonal caps against t,
    and the dual witness (norm at most 1, Schur ratio at most t).
    """
    reasons: list[str] = []
    try:
        M = as_matrix(A)
    except InputError as e:
        return CertificateCheck(False, [f"symbol: {e}"])
    n = M.shape[0]
    t = float(cert.t)
    if not np.isfinite(t) or t < 0:
        reasons.append(f"t must be finite and nonnegative, got {t}")
        return CertificateCheck(False, reasons)

    for name, Mat, shape in (("P", cert.P, (n, n)), ("Q", cert.Q, (n, n))):
        arr = np.asarray(Mat)
        if arr.shape != shape:
            reasons.append(f"{name} has shape {arr.shape}, expected {shape}")
    if reasons:
        return CertificateCheck(False, reasons)

    P = np.asarray(cert.P, dtype=complex)
    Q = np.asarray(cert.Q, dtype=complex)
    if not (np.all(np.isfinite(P.view(float))) and np.all(np.isfinite(Q.view(float)))):
        return CertificateCheck(False, ["P/Q entries must be finite"])

    herm_slack = 1e-8 * (1.0 + t)
    if np.max(np.abs(P - P.conj().T), initial=0.0) > herm_slack:
        reasons.append("P is not Hermitian")
    if np.max(np.abs(Q - Q.conj().T), initial=0.0) > herm_slack:
        reasons.append("Q is not Hermitian")

    eig_floor = -tol * (1.0 + t)
    if cert.min_eig < eig_floor:
        reasons.append(f"stated min_eig {cert.min_eig:.3e} below {eig_floor:.3e}")
    fresh = float(np.linalg.eigvalsh(_block(P, M, Q))[0]) if n else 0.0
    if fresh < eig_floor:
        reasons.append(f"recomputed min_eig {fresh:.3e} below {eig_floor:.3e}")

    cap = t + CERT_DIAG_SLACK * (1.0 + t)
    if n and float(np.max(np.real(np.diag(P)))) > cap:
        reasons.append("diag(P) exceeds t")
    if n and float(np.max(np.real(np.diag(Q)))) > cap:
        reasons.append("diag(Q) exceeds t")

    B = np.asarray(cert.dual_witness, dtype=complex)
    if B.shape != (n, n):
        reasons.append(f"dual witness has shape {B.shape}, expected {(n, n)}")
    else:
        nB = schatten_norm(B, INF) if n else 0.0
        if nB > 1.0 + 1e-9:
            reasons.append(f"dual witness has ||B||_oo = {nB:.6f} > 1")
        elif nB > 0:
            ratio = schatten_norm(M * B, INF) / nB
            if ratio > t + 1e-7 * (1.0 + t):
                reasons.append(
                    f"dual ratio {ratio:.6e} exceeds certified t {t:.6e}")
    return CertificateCheck(not reasons, reasons)
