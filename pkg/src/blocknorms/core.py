"""Dense complex matrix primitives.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  A "Hermitian
matrix" here is any square array returned by :func:`hermitize`,
:func:`real_part`, :func:`imag_part` and friends, which are exactly equal to
their conjugate transpose.  Block matrices ``[[A, X], [X*, B]]`` are carried by
:class:`PsdBlockMatrix`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatch,
    EigensolverFailure,
    HermitianResidueTooLarge,
    NotPsd,
    NotSquare,
)

HERM_TOL = 1e-12
PSD_TOL = 1e-10
COMMUTE_TOL = 1e-10


def as_matrix(M) -> np.ndarray:
    """Coerce ``M`` to a finite 2-D complex array (scalars become 1x1)."""
    arr = np.array(M, dtype=np.complex128)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix has non-finite entries")
    return arr


def _square(M) -> np.ndarray:
    arr = as_matrix(M)
    if arr.shape[0] != arr.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {arr.shape}")
    return arr


def adjoint(M: np.ndarray) -> np.ndarray:
    return M.conj().T


def frobenius(M: np.ndarray) -> float:
    return float(np.linalg.norm(M, "fro"))


def hermitize(M, tol: float = HERM_TOL) -> np.ndarray:
    """Return ``(M + M*)/2`` after checking ``M`` was Hermitian to ``tol``.

    The residue ``||M - M*||_F`` is compared against ``tol * max(1, ||M||_F)``.
    Anything larger is treated as a caller bug and raises
    :class:`HermitianResidueTooLarge` rather than being silently symmetrized.
    """
    M = _square(M)
    residue = frobenius(M - adjoint(M))
    if residue > tol * max(1.0, frobenius(M)):
        raise HermitianResidueTooLarge(
            f"||M - M*||_F = {residue:.3e} exceeds tolerance {tol:g}"
        )
    return (M + adjoint(M)) / 2


def real_part(X) -> np.ndarray:
    """Hermitian real part ``(X + X*)/2``."""
    X = _square(X)
    return (X + adjoint(X)) / 2


def imag_part(X) -> np.ndarray:
    """Hermitian imaginary part ``(X - X*)/(2i)``."""
    X = _square(X)
    return (X - adjoint(X)) / 2j


def eigvalsh(M: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix."""
    try:
        return np.linalg.eigvalsh(M)
    except np.linalg.LinAlgError as exc:
        raise EigensolverFailure(str(exc)) from exc


def eigh(M: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    try:
        return np.linalg.eigh(M)
    except np.linalg.LinAlgError as exc:
        raise EigensolverFailure(str(exc)) from exc


class Verdict(str, enum.Enum):
    POSITIVE_DEFINITE = "positive_definite"
    POSITIVE_SEMIDEFINITE = "positive_semidefinite"
    INDEFINITE = "indefinite"
    NEGATIVE_SEMIDEFINITE = "negative_semidefinite"
    NEGATIVE_DEFINITE = "negative_definite"


@dataclass(frozen=True)
class PositivityVerdict:
    verdict: Verdict
    min_eigenvalue: float
    max_eigenvalue: float
    tolerance_used: float

    @property
    def is_psd(self) -> bool:
        return self.verdict in (Verdict.POSITIVE_DEFINITE, Verdict.POSITIVE_SEMIDEFINITE)

    @property
    def is_pd(self) -> bool:
        return self.verdict is Verdict.POSITIVE_DEFINITE

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "min_eigenvalue": self.min_eigenvalue,
            "max_eigenvalue": self.max_eigenvalue,
            "tolerance_used": self.tolerance_used,
        }


def classify(lo: float, hi: float, threshold: float) -> Verdict:
    """Map an eigenvalue range to a verdict; ``threshold`` is absolute."""
    if lo > threshold:
        return Verdict.POSITIVE_DEFINITE
    if lo >= -threshold:
        return Verdict.POSITIVE_SEMIDEFINITE
    if hi < -threshold:
        return Verdict.NEGATIVE_DEFINITE
    if hi <= threshold:
        return Verdict.NEGATIVE_SEMIDEFINITE
    return Verdict.INDEFINITE


def positivity(M, tol: float = PSD_TOL) -> PositivityVerdict:
    """Classify a Hermitian matrix by the sign pattern of its spectrum.

    An eigenvalue counts as zero when its magnitude is at most
    ``tol * max(1, ||M||_2)``.
    """
    M = hermitize(M)
    w = eigvalsh(M)
    lo, hi = float(w[0]), float(w[-1])
    threshold = tol * max(1.0, abs(lo), abs(hi))
    return PositivityVerdict(classify(lo, hi, threshold), lo, hi, threshold)


def sqrt_psd(M, tol: float = PSD_TOL) -> np.ndarray:
    """Principal square root of a PSD matrix by spectral decomposition.

    Eigenvalues in ``[-tol * scale, 0)`` are clamped to zero; anything more
    negative raises :class:`NotPsd`.
    """
    M = hermitize(M)
    w, Q = eigh(M)
    scale = max(1.0, float(np.max(np.abs(w))))
    if w[0] < -tol * scale:
        raise NotPsd(f"minimum eigenvalue {w[0]:.3e} is below -{tol:g}*{scale:.3g}")
    root = (Q * np.sqrt(np.clip(w, 0.0, None))) @ adjoint(Q)
    return (root + adjoint(root)) / 2


def matrix_abs(X) -> np.ndarray:
    """``|X| = (X* X)^{1/2}``; its eigenvalues are the singular values of ``X``."""
    X = _square(X)
    G = adjoint(X) @ X
    G = (G + adjoint(G)) / 2
    w, Q = eigh(G)
    root = (Q * np.sqrt(np.clip(w, 0.0, None))) @ adjoint(Q)
    return (root + adjoint(root)) / 2


def commutes(P, Q, tol: float = COMMUTE_TOL) -> bool:
    """True iff ``||PQ - QP||_F <= tol * max(1, ||P||_F ||Q||_F)``."""
    P, Q = _square(P), _square(Q)
    if P.shape != Q.shape:
        raise DimensionMismatch(f"shapes {P.shape} and {Q.shape} differ")
    gap = frobenius(P @ Q - Q @ P)
    return gap <= tol * max(1.0, frobenius(P) * frobenius(Q))


def commutes_with_diagonal(X, a, tol: float = COMMUTE_TOL) -> bool:
    """Entrywise test of ``X diag(a) = diag(a) X``.

    ``X`` commutes with ``diag(a)`` exactly when every nonzero ``x_ij`` sits at
    a position with ``a_i == a_j``.  The tolerance is scaled the same way as in
    :func:`commutes` so both predicates agree.
    """
    X = _square(X)
    a = np.asarray(a, dtype=float).ravel()
    if a.shape[0] != X.shape[0]:
        raise DimensionMismatch(f"X is {X.shape}, a has length {a.shape[0]}")
    defect = np.abs(X * (a[:, None] - a[None, :]))
    D = np.diag(a).astype(np.complex128)
    return float(np.linalg.norm(defect)) <= tol * max(1.0, frobenius(X) * frobenius(D))


def is_hermitian(M: np.ndarray, tol: float = HERM_TOL) -> bool:
    return frobenius(M - adjoint(M)) <= tol * max(1.0, frobenius(M))


def is_diagonal(M: np.ndarray, tol: float = HERM_TOL) -> bool:
    off = M - np.diag(np.diag(M))
    return frobenius(off) <= tol * max(1.0, frobenius(M))


def is_normal(X: np.ndarray, tol: float = COMMUTE_TOL) -> bool:
    return commutes(X, adjoint(X), tol)


def unitarity_defect(U: np.ndarray) -> float:
    """``||U* U - I||_F``."""
    return frobenius(adjoint(U) @ U - np.eye(U.shape[1]))


# --- random ensembles -------------------------------------------------------


def rng_for(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def complex_normal(rng: np.random.Generator, shape) -> np.ndarray:
    """Entries with independent real and imaginary parts, ``E|z|^2 = 1``."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar-distributed unitary via QR with the diagonal phase fix."""
    Z = complex_normal(rng, (n, n))
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))


def random_psd(n: int, seed=None, rank: int | None = None) -> np.ndarray:
    """Complex Wishart matrix ``G* G`` with ``G`` of shape ``(rank or n, n)``.

    The same ``seed`` always gives a bitwise-identical matrix.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = seed if isinstance(seed, np.random.Generator) else rng_for(seed)
    G = complex_normal(rng, (rank if rank is not None else n, n))
    W = adjoint(G) @ G
    return (W + adjoint(W)) / 2


# --- block matrices ---------------------------------------------------------


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.complex128)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class PsdBlockMatrix:
    """``M = [[A, X], [X*, B]]`` with ``A`` of size ``n`` and ``B`` of size ``m``."""

    A: np.ndarray
    X: np.ndarray
    B: np.ndarray
    psd_certified: bool = False
    _full: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        A, X, B = _frozen(self.A), _frozen(self.X), _frozen(self.B)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "B", B)
        full = np.block([[A, X], [adjoint(X), B]])
        full.setflags(write=False)
        object.__setattr__(self, "_full", full)

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def m(self) -> int:
        return self.B.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        return self._full

    def __array__(self, dtype=None, copy=None):
        return np.array(self._full, dtype=dtype)

    def positivity(self, tol: float = PSD_TOL) -> PositivityVerdict:
        return positivity(self._full, tol)

    def require_psd(self, tol: float = PSD_TOL) -> "PsdBlockMatrix":
        """Return a certified copy, or raise :class:`NotPsd`."""
        if self.psd_certified:
            return self
        verdict = self.positivity(tol)
        if not verdict.is_psd:
            raise NotPsd(f"block matrix is {verdict.verdict.value} "
                         f"(min eigenvalue {verdict.min_eigenvalue:.3e})")
        return PsdBlockMatrix(self.A, self.X, self.B, psd_certified=True)


def assemble(A, X, B, certify: bool = False, tol: float = PSD_TOL) -> PsdBlockMatrix:
    """Build ``[[A, X], [X*, B]]`` from its blocks.

    ``A`` and ``B`` must be Hermitian (within :data:`HERM_TOL`).  With
    ``certify=True`` the result is additionally checked to be PSD.
    """
    A, B = hermitize(A), hermitize(B)
    X = as_matrix(X)
    if X.shape != (A.shape[0], B.shape[0]):
        raise DimensionMismatch(
            f"X has shape {X.shape}, expected {(A.shape[0], B.shape[0])}"
        )
    M = PsdBlockMatrix(A, X, B)
    return M.require_psd(tol) if certify else M


def split(M, n: int) -> PsdBlockMatrix:
    """Cut a Hermitian matrix into blocks with a leading ``n x n`` block."""
    M = hermitize(M)
    N = M.shape[0]
    if not 0 < n < N:
        raise DimensionMismatch(f"split point {n} must lie strictly inside 0..{N}")
    return PsdBlockMatrix(M[:n, :n], M[:n, n:], M[n:, n:])


def direct_sum(*blocks) -> np.ndarray:
    """Block-diagonal matrix ``blocks[0] ⊕ blocks[1] ⊕ ...``."""
    mats = [as_matrix(b) for b in blocks]
    rows = sum(b.shape[0] for b in mats)
    cols = sum(b.shape[1] for b in mats)
    out = np.zeros((rows, cols), dtype=np.complex128)
    r = c = 0
    for b in mats:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out
