"""Dense complex-matrix substrate for the toolkit.

Everything downstream consumes this module: Schatten norms computed from
singular values, the exponent type with exact conjugation at the endpoints,
Schur (entrywise) and Kronecker products, coordinate truncation, the bilinear
trace pairing, and seeded random ensembles.  All matrices are numpy complex
arrays; all randomness flows through ``numpy.random.default_rng(seed)`` so a
seed pins every downstream artifact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

import numpy as np

__all__ = [
    "InputError",
    "ResourceError",
    "SchattenIndex",
    "INF",
    "as_index",
    "as_matrix",
    "schatten_norm",
    "conjugate_index",
    "schur_product",
    "kron",
    "truncate",
    "trace_pairing",
    "random_matrix",
    "matrix_unit",
    "all_ones",
    "NormBracket",
]


class InputError(ValueError):
    """Malformed or out-of-contract input (maps to CLI exit code 2)."""


class ResourceError(RuntimeError):
    """Request exceeds the desk-scale caps this toolkit promises to handle."""


class SchattenIndex:
    """Exponent p in [1, oo] for Schatten classes.

    Infinity is held as a distinguished internal state rather than a float
    sentinel, so ``conjugate`` is exact at the endpoints: 1 <-> oo and
    2 -> 2 involve no arithmetic.  Finite exponents conjugate through
    p / (p - 1).
    """

    __slots__ = ("_finite",)

    def __init__(self, value: "float | None | SchattenIndex"):
        if isinstance(value, SchattenIndex):
            self._finite = value._finite
            return
        if value is None:
            self._finite = None
            return
        v = float(value)
        if math.isnan(v):
            raise InputError("Schatten exponent must not be NaN")
        if v == math.inf:
            self._finite = None
        elif v >= 1.0:
            self._finite = v
        else:
            raise InputError(f"Schatten exponent must be in [1, inf], got {v}")

    @property
    def is_inf(self) -> bool:
        return self._finite is None

    @property
    def value(self) -> float:
        """The exponent as an extended real (math.inf for the top endpoint)."""
        return math.inf if self._finite is None else self._finite

    def conjugate(self) -> "SchattenIndex":
        if self._finite is None:
            return SchattenIndex(1.0)
        p = self._finite
        if p == 1.0:
            return INF
        if p == 2.0:
            return SchattenIndex(2.0)
        return SchattenIndex(p / (p - 1.0))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, SchattenIndex):
            return self._finite == other._finite
        if isinstance(other, (int, float)):
            return self.value == float(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)

    def __repr__(self) -> str:
        return "SchattenIndex(inf)" if self.is_inf else f"SchattenIndex({self._finite:g})"


INF = SchattenIndex(math.inf)


def as_index(p: "float | None | SchattenIndex") -> SchattenIndex:
    """Coerce to a SchattenIndex; math.inf and None both mean the endpoint."""
    return p if isinstance(p, SchattenIndex) else SchattenIndex(p)


def conjugate_index(p: "float | SchattenIndex") -> SchattenIndex:
    """Conjugate exponent p* = p/(p-1); 1 <-> oo and 2 -> 2 are exact."""
    return as_index(p).conjugate()


def as_matrix(A: Any) -> np.ndarray:
    """Validate and return A as a 2-D complex128 array with finite entries."""
    M = np.asarray(A, dtype=complex)
    if M.ndim != 2:
        raise InputError(f"expected a 2-D matrix, got ndim={M.ndim}")
    if M.size and not np.all(np.isfinite(M)):
        raise InputError("matrix entries must be finite (no NaN/Inf)")
    return M


def _require_square(A: np.ndarray, who: str) -> int:
    if A.shape[0] != A.shape[1]:
        raise InputError(f"{who} requires a square matrix, got shape {A.shape}")
    return A.shape[0]


def schatten_norm(A: Any, p: "float | SchattenIndex") -> float:
    """Schatten p-norm: the l_p norm of the singular values.

    Parameters
    ----------
    A : array_like
        Any rectangular complex matrix.  A dimension-zero matrix has norm 0.
    p : float or SchattenIndex
        Exponent in [1, oo]; p = oo gives the largest singular value.

    Returns
    -------
    float
        (sum_i sigma_i^p)^(1/p), or max_i sigma_i at p = oo.
    """
    pi = as_index(p)
    M = as_matrix(A)
    if M.size == 0:
        return 0.0
    s = np.linalg.svd(M, compute_uv=False)
    if pi.is_inf:
        return float(s[0])
    if pi.value == 2.0:
        # Frobenius; cheaper and slightly more accurate than powering sigma
        return float(np.linalg.norm(s))
    return float(np.linalg.norm(s, ord=pi.value))


def schur_product(A: Any, B: Any) -> np.ndarray:
    """Entrywise (Schur) product A * B of two same-shaped matrices."""
    MA, MB = as_matrix(A), as_matrix(B)
    if MA.shape != MB.shape:
        raise InputError(f"shape mismatch for Schur product: {MA.shape} vs {MB.shape}")
    return MA * MB


def kron(A: Any, B: Any) -> np.ndarray:
    """Kronecker product under the pair-index convention pos(t, r) = t*n + r.

    The left factor carries the outer index: entry ((t,r),(u,s)) of the result
    is A[t,u] * B[r,s], which is exactly ``numpy.kron``.
    """
    return np.kron(as_matrix(A), as_matrix(B))


def truncate(A: Any, J: Iterable[int]) -> np.ndarray:
    """Zero out all rows and columns whose index is outside J.

    J is a set of coordinates of the (square) index set; the surviving block
    is the J x J corner pattern.  Idempotent, and truncation by the full index
    set is the identity.
    """
    M = as_matrix(A)
    n = _require_square(M, "truncate")
    idx = sorted(set(int(j) for j in J))
    if idx and (idx[0] < 0 or idx[-1] >= n):
        raise InputError(f"truncation index out of range for n={n}: {idx}")
    mask = np.zeros(n, dtype=bool)
    mask[idx] = True
    out = M.copy()
    out[~mask, :] = 0
    out[:, ~mask] = 0
    return out


def trace_pairing(A: Any, B: Any) -> complex:
    """Bilinear pairing <A, B> = sum_ij a_ij * b_ij = tr(A B^T).

    This is the duality pairing used throughout (bilinear, no conjugation):
    pairing a multiplier symbol against a matrix reads off weighted entries.
    """
    MA, MB = as_matrix(A), as_matrix(B)
    if MA.shape != MB.shape:
        raise InputError(f"shape mismatch for trace pairing: {MA.shape} vs {MB.shape}")
    return complex(np.sum(MA * MB))


_ENSEMBLES = ("gaussian", "unitary", "sign", "sparse")


def random_matrix(n: int, ensemble: str = "gaussian", seed: int = 0) -> np.ndarray:
    """Seeded n x n sample from one of four ensembles.

    gaussian : independent standard complex normal entries
    unitary  : Haar-distributed unitary (QR of a gaussian with phase fix)
    sign     : independent +-1 real entries
    sparse   : gaussian entries kept with probability 0.3, else zero

    The same (n, ensemble, seed) always reproduces the same matrix.
    """
    if n < 1:
        raise InputError(f"random_matrix needs n >= 1, got {n}")
    rng = np.random.default_rng(seed)
    if ensemble == "gaussian":
        return (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    if ensemble == "unitary":
        G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        Q, R = np.linalg.qr(G)
        d = np.diag(R)
        return Q * (d / np.abs(d))
    if ensemble == "sign":
        return (2.0 * rng.integers(0, 2, size=(n, n)) - 1.0).astype(complex)
    if ensemble == "sparse":
        G = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
        mask = rng.random((n, n)) < 0.3
        return G * mask
    raise InputError(f"unknown ensemble {ensemble!r}; expected one of {_ENSEMBLES}")


def matrix_unit(i: int, j: int, n: int, m: int | None = None) -> np.ndarray:
    """The n x m matrix with a single 1 at position (i, j)."""
    m = n if m is None else m
    E = np.zeros((n, m), dtype=complex)
    E[i, j] = 1.0
    return E


def all_ones(n: int, m: int | None = None) -> np.ndarray:
    """The n x m all-ones matrix (the neutral symbol for Schur products)."""
    return np.ones((n, n if m is None else m), dtype=complex)


@dataclass(frozen=True)
class NormBracket:
    """A certified two-sided norm estimate [lower, upper].

    Every norm estimate in the toolkit travels in one of these.  The
    certificates are plain dicts describing how each side was obtained
    (closed form, test matrix, interpolation exponents, PSD block, or a
    decomposition); matrices inside certificates are numpy arrays.
    ``converged`` is False when the requested width was not reached -- the
    bracket is then wide but still valid.
    """

    lower: float
    upper: float
    lower_certificate: dict = field(default_factory=dict)
    upper_certificate: dict = field(default_factory=dict)
    iterations: int = 0
    converged: bool = True

    def __post_init__(self):
        if self.lower > self.upper + 1e-9 * (1.0 + abs(self.upper)):
            raise InputError(
                f"invalid bracket: lower {self.lower} exceeds upper {self.upper}"
            )

    @property
    def width(self) -> float:
        return self.upper - self.lower

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lower + self.upper)

    def contains(self, x: float, slack: float = 0.0) -> bool:
        return self.lower - slack <= x <= self.upper + slack


def exact_bracket(value: float, kind: str, **extra: Any) -> NormBracket:
    """Zero-width bracket for closed-form values."""
    cert = {"kind": kind, **extra}
    return NormBracket(value, value, dict(cert), dict(cert), iterations=0, converged=True)
