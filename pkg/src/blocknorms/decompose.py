"""Unitary orbit decompositions of PSD block matrices.

Every PSD ``M = [[A, X], [X*, B]]`` can be written as

    M = U (A ⊕ 0) U* + V (0 ⊕ B) V*

with explicit unitaries.  Write ``M = S^2`` with ``S = [[C, Y], [Y*, D]]`` the
PSD square root and split ``S`` by rows into ``T = [[C, Y], [0, 0]]`` and
``R = [[0, 0], [Y*, D]]``.  Then ``M = T*T + R*R`` while ``TT* = A ⊕ 0`` and
``RR* = 0 ⊕ B``.  If ``T = W Σ Z*`` is an SVD then ``U = Z W*`` carries
``TT*`` onto ``T*T``; ``V`` comes from ``R`` the same way.

The two rotated variants first conjugate ``M`` by a fixed unitary that moves
``(A+B)/2 ∓ R(X)`` (resp. ``(A+B)/2 ± I(X)``) onto the diagonal blocks, then
apply the construction above and rotate back.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    PSD_TOL,
    PsdBlockMatrix,
    adjoint,
    direct_sum,
    eigvalsh,
    frobenius,
    hermitize,
    imag_part,
    matrix_abs,
    real_part,
    sqrt_psd,
    unitarity_defect,
)
from .errors import BlocksNotSquareEqual, DimensionMismatch, SvdFailure, UnitaryRecoveryFailure

UNITARY_TOL = 1e-10


@dataclass(frozen=True)
class Decomposition:
    """``M = U P U* + V Q V*`` with ``P = P_block ⊕ 0`` and ``Q = 0 ⊕ Q_block``."""

    U: np.ndarray
    V: np.ndarray
    P: np.ndarray
    Q: np.ndarray
    residual: float
    n: int

    @property
    def P_block(self) -> np.ndarray:
        return self.P[: self.n, : self.n]

    @property
    def Q_block(self) -> np.ndarray:
        return self.Q[self.n:, self.n:]

    def reconstruct(self) -> np.ndarray:
        return self.U @ self.P @ adjoint(self.U) + self.V @ self.Q @ adjoint(self.V)

    def to_dict(self) -> dict:
        from .io import matrix_to_json

        return {
            "U": matrix_to_json(self.U),
            "V": matrix_to_json(self.V),
            "P": matrix_to_json(self.P),
            "Q": matrix_to_json(self.Q),
            "residual": self.residual,
        }


@dataclass(frozen=True)
class AbsBound:
    """``M <= (U bound_P U* + V bound_Q V*) / 2`` with the gap spectrum."""

    bound_P: np.ndarray
    bound_Q: np.ndarray
    U: np.ndarray
    V: np.ndarray
    gap_spectrum: np.ndarray

    def gap(self) -> np.ndarray:
        return (self.U @ self.bound_P @ adjoint(self.U) + self.V @ self.bound_Q @ adjoint(self.V)) / 2

    def to_dict(self) -> dict:
        from .io import matrix_to_json

        return {
            "bound_P": matrix_to_json(self.bound_P),
            "bound_Q": matrix_to_json(self.bound_Q),
            "U": matrix_to_json(self.U),
            "V": matrix_to_json(self.V),
            "gap_spectrum": [float(v) for v in self.gap_spectrum],
        }


def _congruence(T: np.ndarray) -> np.ndarray:
    """Unitary ``U`` with ``U (T T*) U* = T* T``."""
    try:
        W, _, Zh = np.linalg.svd(T)
    except np.linalg.LinAlgError as exc:
        raise SvdFailure(str(exc)) from exc
    U = adjoint(Zh) @ adjoint(W)
    if unitarity_defect(U) > UNITARY_TOL:
        raise UnitaryRecoveryFailure(f"recovered factor is not unitary "
                                     f"(defect {unitarity_defect(U):.2e})")
    return U


def relative_residual(M: np.ndarray, U, P, V, Q) -> float:
    R = M - U @ P @ adjoint(U) - V @ Q @ adjoint(V)
    return frobenius(R) / max(1.0, frobenius(M))


def _orbit(M: np.ndarray, n: int, P_block: np.ndarray, Q_block: np.ndarray,
           tol: float) -> Decomposition:
    """Core construction on an already-rotated Hermitian PSD matrix ``M``."""
    N = M.shape[0]
    S = sqrt_psd(M, tol)
    T = np.zeros_like(S)
    R = np.zeros_like(S)
    T[:n, :] = S[:n, :]
    R[n:, :] = S[n:, :]
    U = _congruence(T)
    V = _congruence(R)
    P = direct_sum(P_block, np.zeros((N - n, N - n)))
    Q = direct_sum(np.zeros((n, n)), Q_block)
    return Decomposition(U, V, P, Q, relative_residual(M, U, P, V, Q), n)


def lemma1_decompose(M: PsdBlockMatrix, tol: float = PSD_TOL) -> Decomposition:
    """``M = U (A ⊕ 0) U* + V (0 ⊕ B) V*`` for any block sizes."""
    M = M.require_psd(tol)
    return _orbit(np.array(M.matrix), M.n, M.A, M.B, tol)


def _rotation(n: int) -> np.ndarray:
    """``J = [[I, -I], [I, I]] / sqrt(2)``."""
    I = np.eye(n)
    return np.block([[I, -I], [I, I]]).astype(np.complex128) / np.sqrt(2)


def _phase(n: int) -> np.ndarray:
    """``J1 = I ⊕ (-i I)``, which maps ``X`` to ``iX`` under conjugation."""
    return direct_sum(np.eye(n), -1j * np.eye(n))


def _rotated(M: PsdBlockMatrix, G: np.ndarray, P_block, Q_block, tol) -> Decomposition:
    K = hermitize(G @ M.matrix @ adjoint(G), tol=1e-10)
    inner = _orbit(K, M.n, P_block, Q_block, tol)
    U = adjoint(G) @ inner.U
    V = adjoint(G) @ inner.V
    M_full = np.array(M.matrix)
    return Decomposition(U, V, inner.P, inner.Q,
                         relative_residual(M_full, U, inner.P, V, inner.Q), M.n)


def _square_blocks(M: PsdBlockMatrix) -> None:
    if M.n != M.m:
        raise BlocksNotSquareEqual(f"blocks have sizes {M.n} and {M.m}")


def corollary_R_decompose(M: PsdBlockMatrix, tol: float = PSD_TOL) -> Decomposition:
    """``M = U ((A+B)/2 - R(X) ⊕ 0) U* + V (0 ⊕ (A+B)/2 + R(X)) V*``."""
    _square_blocks(M)
    M = M.require_psd(tol)
    mid = (M.A + M.B) / 2
    RX = real_part(M.X)
    return _rotated(M, _rotation(M.n), mid - RX, mid + RX, tol)


def corollary_I_decompose(M: PsdBlockMatrix, tol: float = PSD_TOL) -> Decomposition:
    """``M = U ((A+B)/2 + I(X) ⊕ 0) U* + V (0 ⊕ (A+B)/2 - I(X)) V*``."""
    _square_blocks(M)
    M = M.require_psd(tol)
    mid = (M.A + M.B) / 2
    IX = imag_part(M.X)
    G = _rotation(M.n) @ _phase(M.n)
    return _rotated(M, G, mid + IX, mid - IX, tol)


def corollary_abs_bound(M: PsdBlockMatrix, tol: float = PSD_TOL) -> AbsBound:
    """Upper bound of ``M`` by two orbits of ``A + B + |X - X*|``.

    Reuses the unitaries of :func:`corollary_I_decompose`; replacing ``±I(X)``
    by ``|I(X)| = |X - X*| / 2`` can only increase each summand.
    """
    D = corollary_I_decompose(M, tol)
    n = M.n
    block = M.A + M.B + matrix_abs(M.X - adjoint(M.X))
    block = (block + adjoint(block)) / 2
    zero = np.zeros((n, n))
    bound_P = direct_sum(block, zero)
    bound_Q = direct_sum(zero, block)
    upper = (D.U @ bound_P @ adjoint(D.U) + D.V @ bound_Q @ adjoint(D.V)) / 2
    gap = upper - M.matrix
    gap = (gap + adjoint(gap)) / 2
    return AbsBound(bound_P, bound_Q, D.U, D.V, eigvalsh(gap))


def verify_decomposition(M: PsdBlockMatrix, D: Decomposition,
                         unitary_tol: float = UNITARY_TOL) -> float:
    """Relative reconstruction residual of ``D`` against ``M``.

    Raises :class:`UnitaryRecoveryFailure` when ``U`` or ``V`` is not unitary
    to ``unitary_tol``.
    """
    full = np.array(M.matrix)
    shapes = {full.shape, D.U.shape, D.V.shape, D.P.shape, D.Q.shape}
    if len(shapes) != 1:
        raise DimensionMismatch(f"inconsistent shapes {sorted(shapes)}")
    for name, W in (("U", D.U), ("V", D.V)):
        defect = unitarity_defect(W)
        if defect > unitary_tol:
            raise UnitaryRecoveryFailure(f"{name} is not unitary: ||{name}*{name} - I||_F = {defect:.3e}")
    return relative_residual(full, D.U, D.P, D.V, D.Q)
