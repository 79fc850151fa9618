"""Positivity criteria and checks of ``||M|| <= ||A + B||``.

The inequality ``||M|| <= ||A + B||`` (every symmetric norm, blocks of equal
size) fails in general; it is known to hold under each of these hypothesis
sets, checked here in this order:

``hermitian``
    ``X = X*``.
``pww``
    ``A``, ``B`` diagonal, ``X* A = A X*`` and ``X* X`` diagonal.  The
    spectrum of ``M`` is then the union of the roots of
    ``(λ_i - μ)(ν_i - μ) = d_i``.
``grouping``
    ``A``, ``B`` diagonal and ``X* A = A X*`` (or ``X B = B X``).
``normal``
    ``X`` normal, ``X* A = A X*`` and ``X B = B X``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .core import (
    COMMUTE_TOL,
    PSD_TOL,
    PsdBlockMatrix,
    adjoint,
    as_matrix,
    assemble,
    commutes,
    commutes_with_diagonal,
    eigh,
    hermitize,
    imag_part,
    is_diagonal,
    is_hermitian,
    is_normal,
    positivity,
    real_part,
)
from .errors import (
    BNotInvertible,
    BlocksNotSquareEqual,
    CommutationViolated,
    DimensionMismatch,
    LengthMismatch,
    NegativeD,
    NotPsd,
    NotSquare,
)
from .norms import DOMINANCE_TOL, DominanceReport, dominance

HYPOTHESES = (
    "x_hermitian",
    "a_diagonal",
    "b_diagonal",
    "xstarx_diagonal",
    "xstar_commutes_a",
    "x_commutes_b",
    "x_normal",
)
HYP_TOL = 1e-10
GROUP_TOL = 1e-9


@dataclass(frozen=True)
class InequalityReport:
    hypothesis_checks: dict[str, bool]
    dominance: DominanceReport
    theorem_applies: bool
    matched_path: str | None = None
    details: dict = field(default_factory=dict)

    @property
    def conclusion_holds(self) -> bool:
        return self.dominance.lhs_bounded

    def to_dict(self) -> dict:
        return {
            "hypothesis_checks": dict(self.hypothesis_checks),
            "dominance": self.dominance.to_dict(),
            "theorem_applies": self.theorem_applies,
            "conclusion_holds": self.conclusion_holds,
            "matched_path": self.matched_path,
            "details": self.details,
        }


# --- Schur complement and block determinant ----------------------------------


def schur_complement(A, X, B) -> np.ndarray:
    """``A - X B^{-1} X*``; requires ``B`` positive definite."""
    A, B = hermitize(A), hermitize(B)
    X = as_matrix(X)
    if X.shape != (A.shape[0], B.shape[0]):
        raise DimensionMismatch(f"X has shape {X.shape}, expected {(A.shape[0], B.shape[0])}")
    if not positivity(B).is_pd:
        raise BNotInvertible("B must be positive definite for the Schur complement")
    S = A - X @ np.linalg.solve(B, adjoint(X))
    return (S + adjoint(S)) / 2


def schur_pd_test(A, X, B, strict: bool = True, tol: float = PSD_TOL) -> bool:
    """Decide positivity of ``[[A, X], [X*, B]]`` through its Schur complement.

    With ``B`` positive definite, ``M > 0`` iff ``A - X B^{-1} X* > 0`` and
    ``M >= 0`` iff ``A - X B^{-1} X* >= 0``.  ``strict`` selects which.
    """
    verdict = positivity(schur_complement(A, X, B), tol)
    return verdict.is_pd if strict else verdict.is_psd


def block_det(A, B, C, D, tol: float = COMMUTE_TOL) -> complex:
    """``det([[A, B], [C, D]]) = det(AD - CB)`` when ``AC = CA``.

    No block needs to be invertible.
    """
    A, B, C, D = (as_matrix(Z) for Z in (A, B, C, D))
    shapes = {Z.shape for Z in (A, B, C, D)}
    if len(shapes) != 1 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"need four square blocks of one size, got {sorted(shapes)}")
    if not commutes(A, C, tol):
        raise CommutationViolated("block_det requires AC = CA")
    return complex(np.linalg.det(A @ D - C @ B))


# --- diagonal blocks with X*X diagonal ----------------------------------------


@dataclass(frozen=True)
class QuadraticPair:
    """Roots of ``(λ - μ)(ν - μ) - d = 0``, ``root_a >= root_b``."""

    lambda_i: float
    nu_i: float
    d_i: float
    root_a: float
    root_b: float


def _quadratic(lam: float, nu: float, d: float) -> QuadraticPair:
    s = lam + nu
    p = lam * nu - d
    r = np.sqrt((lam - nu) ** 2 + 4 * d)
    big = (s + r) / 2 if s >= 0 else (s - r) / 2
    small = p / big if big != 0 else 0.0
    a, b = (big, small) if big >= small else (small, big)
    return QuadraticPair(lam, nu, d, float(a), float(b))


def pww_eigenvalues(lam, nu, d) -> list[QuadraticPair]:
    """Per-index quadratic roots; pooled they form the spectrum of ``M``.

    Valid whenever ``A = diag(lam)``, ``B = diag(nu)``, ``X* X = diag(d)`` and
    ``X*`` commutes with ``A``.
    """
    lam, nu, d = (np.asarray(v, dtype=float).ravel() for v in (lam, nu, d))
    if not len(lam) == len(nu) == len(d):
        raise LengthMismatch(f"lengths {len(lam)}, {len(nu)}, {len(d)} differ")
    if np.any(d < 0):
        raise NegativeD(f"d must be nonnegative, got {d.tolist()}")
    return [_quadratic(*t) for t in zip(lam, nu, d)]


def pooled_roots(pairs: list[QuadraticPair]) -> np.ndarray:
    """All roots, descending."""
    roots = [r for p in pairs for r in (p.root_a, p.root_b)]
    return np.sort(np.array(roots))[::-1]


# --- inequality checks --------------------------------------------------------


def hypothesis_checks(M: PsdBlockMatrix, tol: float = HYP_TOL) -> dict[str, bool]:
    A, X, B = np.array(M.A), np.array(M.X), np.array(M.B)
    Xs = adjoint(X)
    return {
        "x_hermitian": is_hermitian(X, tol),
        "a_diagonal": is_diagonal(A, tol),
        "b_diagonal": is_diagonal(B, tol),
        "xstarx_diagonal": is_diagonal(Xs @ X, tol),
        "xstar_commutes_a": commutes(Xs, A, tol),
        "x_commutes_b": commutes(X, B, tol),
        "x_normal": is_normal(X, tol),
    }


def matched_path(checks: dict[str, bool]) -> str | None:
    diag = checks["a_diagonal"] and checks["b_diagonal"]
    if checks["x_hermitian"]:
        return "hermitian"
    if diag and checks["xstar_commutes_a"] and checks["xstarx_diagonal"]:
        return "pww"
    if diag and (checks["xstar_commutes_a"] or checks["x_commutes_b"]):
        return "grouping"
    if checks["x_normal"] and checks["xstar_commutes_a"] and checks["x_commutes_b"]:
        return "normal"
    return None


def _square_psd(M: PsdBlockMatrix, tol: float) -> PsdBlockMatrix:
    if M.n != M.m:
        raise BlocksNotSquareEqual(f"blocks have sizes {M.n} and {M.m}")
    return M.require_psd(tol)


def check_main_inequality(M: PsdBlockMatrix, tol: float = DOMINANCE_TOL,
                          hyp_tol: float = HYP_TOL) -> InequalityReport:
    """Test ``||M|| <= ||A + B||`` and record which known sufficient condition holds."""
    M = _square_psd(M, PSD_TOL)
    checks = hypothesis_checks(M, hyp_tol)
    path = matched_path(checks)
    report = dominance(M.matrix, M.A + M.B, tol)
    return InequalityReport(checks, report, path is not None, path)


def verify_commuting_normal_case(M: PsdBlockMatrix, tol: float = DOMINANCE_TOL,
                                 hyp_tol: float = HYP_TOL) -> InequalityReport:
    M = _square_psd(M, PSD_TOL)
    checks = hypothesis_checks(M, hyp_tol)
    applies = checks["x_normal"] and checks["xstar_commutes_a"] and checks["x_commutes_b"]
    report = dominance(M.matrix, M.A + M.B, tol)
    return InequalityReport(checks, report, applies, "normal" if applies else None)


def diagonal_groups(a, tol: float = GROUP_TOL) -> list[list[int]]:
    """Indices of ``a`` grouped by (approximately) equal value.

    Stable sort by value, original index breaking ties, so the grouping is
    deterministic.
    """
    a = np.asarray(a, dtype=float).ravel()
    order = sorted(range(len(a)), key=lambda i: (a[i], i))
    groups: list[list[int]] = []
    for i in order:
        if groups and abs(a[i] - a[groups[-1][0]]) <= tol * max(1.0, abs(a[i]), abs(a[groups[-1][0]])):
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def check_structured_inequality(A_diag, nu, X, tol: float = DOMINANCE_TOL,
                                hyp_tol: float = HYP_TOL) -> InequalityReport:
    """``||M|| <= ||A + B||`` for diagonal ``A``, ``B`` and ``X*`` commuting with ``A``.

    Permuting equal diagonal entries of ``A`` next to each other (on both
    block rows) splits ``M`` into a direct sum of PSD pieces
    ``[[a I, X_g], [X_g*, diag(ν_g)]]``.  Each piece satisfies the bound on its
    own, and Ky Fan dominance survives direct sums.
    """
    a = np.asarray(A_diag, dtype=float).ravel()
    nu = np.asarray(nu, dtype=float).ravel()
    X = as_matrix(X)
    n = len(a)
    if len(nu) != n:
        raise LengthMismatch(f"A_diag has length {n}, nu has length {len(nu)}")
    if X.shape != (n, n):
        raise NotSquare(f"X must be {n}x{n}, got {X.shape}")
    if not commutes_with_diagonal(adjoint(X), a, hyp_tol):
        raise CommutationViolated("X* does not commute with diag(A_diag)")
    M = assemble(np.diag(a), X, np.diag(nu))
    if not M.positivity().is_psd:
        raise NotPsd("assembled block matrix is not positive semi-definite")

    groups = diagonal_groups(a)
    perm = [i for g in groups for i in g]
    full_perm = perm + [n + i for i in perm]
    H = np.array(M.matrix)[np.ix_(full_perm, full_perm)]

    pieces = []
    for g in groups:
        idx = np.ix_(g, g)
        piece = assemble(np.diag(a[g]), X[idx], np.diag(nu[g]))
        sub = dominance(piece.matrix, np.diag(a[g] + nu[g]), tol)
        pieces.append({
            "indices": list(g),
            "psd": piece.positivity().is_psd,
            "verdict": sub.verdict.value,
            "eigenvalues": np.linalg.eigvalsh(np.array(piece.matrix)).tolist(),
        })

    pooled = np.sort([e for p in pieces for e in p["eigenvalues"]])
    spectrum = np.linalg.eigvalsh(H)
    scale = max(1.0, float(np.max(np.abs(spectrum))))
    checks = hypothesis_checks(M, hyp_tol)
    details = {
        "permutation": perm,
        "groups": [list(g) for g in groups],
        "pieces": pieces,
        "subblocks_psd": all(p["psd"] for p in pieces),
        "pooled_spectrum_matches": bool(np.allclose(pooled, spectrum, rtol=0, atol=1e-9 * scale)),
    }
    report = dominance(M.matrix, np.diag(a + nu), tol)
    return InequalityReport(checks, report, True, "grouping", details)


class OrderedDiagonalization(NamedTuple):
    U: np.ndarray
    V: np.ndarray
    D_o: np.ndarray
    G_o: np.ndarray


def ordered_diagonalization(A, B, tol: float = PSD_TOL) -> OrderedDiagonalization:
    """Unitaries with ``U A U* = D_o`` and ``V B V* = G_o``, both descending.

    Sharing one ordering is what makes ``||D_o + G_o||_k = ||A||_k + ||B||_k``
    for every ``k``.
    """
    A, B = hermitize(A), hermitize(B)
    if A.shape != B.shape:
        raise DimensionMismatch(f"A is {A.shape}, B is {B.shape}")
    out = []
    for name, H in (("A", A), ("B", B)):
        if not positivity(H, tol).is_psd:
            raise NotPsd(f"{name} is not positive semi-definite")
        w, Q = eigh(H)
        Q = Q[:, ::-1]
        out.append((adjoint(Q), np.diag(w[::-1]).astype(np.complex128)))
    (U, D_o), (V, G_o) = out
    return OrderedDiagonalization(U, V, D_o, G_o)


@dataclass(frozen=True)
class ZeroBlockVerdict:
    """Positivity of ``[[A, X], [X*, 0]]`` next to the definiteness of ``R(X)``, ``I(X)``."""

    is_psd: bool
    offdiag_norm: float
    definite_flags: dict[str, bool]
    positivity: object

    def to_dict(self) -> dict:
        return {
            "is_psd": self.is_psd,
            "offdiag_norm": self.offdiag_norm,
            "definite_flags": dict(self.definite_flags),
            "positivity": self.positivity.to_dict(),
        }


def zero_block_verdict(A, X, tol: float = PSD_TOL) -> ZeroBlockVerdict:
    """Classify ``[[A, X], [X*, 0]]``; only ``X = 0`` can give a PSD matrix."""
    A = hermitize(A)
    X = as_matrix(X)
    if X.shape[0] != A.shape[0]:
        raise DimensionMismatch(f"X has {X.shape[0]} rows, A is {A.shape[0]}x{A.shape[0]}")
    if not positivity(A, tol).is_psd:
        raise NotPsd("A is not positive semi-definite")
    M = assemble(A, X, np.zeros((X.shape[1], X.shape[1])))
    verdict = M.positivity(tol)
    flags = dict.fromkeys(("real_pos", "real_neg", "imag_pos", "imag_neg"), False)
    if X.shape[0] == X.shape[1]:
        R, I = real_part(X), imag_part(X)
        flags["real_pos"] = positivity(R, tol).is_pd
        flags["real_neg"] = positivity(-R, tol).is_pd
        flags["imag_pos"] = positivity(I, tol).is_pd
        flags["imag_neg"] = positivity(-I, tol).is_pd
    return ZeroBlockVerdict(verdict.is_psd, float(np.linalg.norm(X)), flags, verdict)
