"""Witness generators, worked examples and structured random ensembles."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .core import (
    PSD_TOL,
    PositivityVerdict,
    PsdBlockMatrix,
    adjoint,
    as_matrix,
    assemble,
    complex_normal,
    hermitize,
    imag_part,
    positivity,
    random_unitary,
    real_part,
    rng_for,
)
from .criteria import schur_pd_test
from .errors import (
    DimensionMismatch,
    LengthMismatch,
    LMaxExceeded,
    NotPd,
    NotPsd,
    PreconditionIXNotDefinite,
    PreconditionViolated,
    TMaxExceeded,
)
from .norms import DOMINANCE_TOL, Dominance, DominanceReport, dominance


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else rng_for(seed)


# --- witnesses ----------------------------------------------------------------


@dataclass(frozen=True)
class AmplifierWitness:
    l: int
    amplified: np.ndarray
    dominance: DominanceReport
    psd_verdict: PositivityVerdict
    via_real_part: bool = False

    def to_dict(self) -> dict:
        from .io import matrix_to_json

        return {
            "l": self.l,
            "amplified": matrix_to_json(self.amplified),
            "dominance": self.dominance.to_dict(),
            "psd_verdict": self.psd_verdict.to_dict(),
            "via_real_part": self.via_real_part,
        }


def amplify_offdiag(A, X, l_max: int = 1000, tol: float = DOMINANCE_TOL) -> AmplifierWitness:
    """Smallest integer ``l`` with ``||[[A, lX], [lX*, 0]]||_k > ||A||_k`` for all ``k``.

    ``I(X)`` must be definite.  If only ``R(X)`` is definite the search still
    runs: ``[[A, iX], [-iX*, 0]]`` is unitarily congruent to the original and
    has ``I(iX) = R(X)``, so the spectrum, and hence the witness, is the same.
    The returned matrix is never PSD.
    """
    A = hermitize(A)
    X = as_matrix(X)
    if X.shape != A.shape:
        raise DimensionMismatch(f"X must have the shape of A {A.shape}, got {X.shape}")
    if not positivity(A).is_psd:
        raise NotPsd("A is not positive semi-definite")

    def definite(H):
        return positivity(H).is_pd or positivity(-H).is_pd

    via_real = False
    if not definite(imag_part(X)):
        if not definite(real_part(X)):
            raise PreconditionIXNotDefinite("neither I(X) nor R(X) is definite")
        via_real = True

    zero = np.zeros_like(A)
    for l in range(1, l_max + 1):
        L = np.block([[A, l * X], [l * adjoint(X), zero]])
        report = dominance(L, A, tol)
        if report.verdict is Dominance.STRICTLY_DOMINATES:
            return AmplifierWitness(l, L, report, positivity(L), via_real)
    raise LMaxExceeded(f"no l <= {l_max} gives strict dominance")


@dataclass(frozen=True)
class ScalingWitness:
    t: int
    F_t: PsdBlockMatrix
    certificate: PositivityVerdict
    previous: PositivityVerdict | None = None

    def to_dict(self) -> dict:
        from .io import block_to_json

        return {
            "t": self.t,
            "F_t": block_to_json(self.F_t),
            "certificate": self.certificate.to_dict(),
            "previous": None if self.previous is None else self.previous.to_dict(),
        }


def find_scaling_t(A, X, B, t_max: int = 10_000, tol: float = PSD_TOL) -> ScalingWitness:
    """Smallest integer ``t >= 1`` making ``[[tA, X], [X*, tB]]`` positive definite."""
    A, B = hermitize(A), hermitize(B)
    X = as_matrix(X)
    for name, H in (("A", A), ("B", B)):
        if not positivity(H, tol).is_pd:
            raise NotPd(f"{name} is not positive definite")
    for t in range(1, t_max + 1):
        if schur_pd_test(t * A, X, t * B, strict=True, tol=tol):
            F = assemble(t * A, X, t * B)
            previous = None
            if t > 1:
                previous = assemble((t - 1) * A, X, (t - 1) * B).positivity(tol)
            return ScalingWitness(t, F, F.positivity(tol), previous)
    raise TMaxExceeded(f"no t <= {t_max} makes F_t positive definite")


class PlpResult(NamedTuple):
    N: np.ndarray
    report: DominanceReport


def build_plp(a, b, x, tol: float = DOMINANCE_TOL) -> PlpResult:
    """``N = [[diag(a), diag(x)], [diag(x̄), diag(b)]]`` with ``||N|| > ||A + B||``.

    Requires, per index, ``a_i >= 0``, ``b_i < 0``, ``a_i + b_i >= 0`` and
    ``a_i b_i - |x_i|^2 < 0``.  Then each 2x2 piece has one positive and one
    negative eigenvalue summing to ``a_i + b_i``, so ``N`` strictly dominates
    ``A + B`` in every Ky Fan norm.
    """
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    x = np.asarray(x, dtype=np.complex128).ravel()
    if not len(a) == len(b) == len(x):
        raise LengthMismatch(f"lengths {len(a)}, {len(b)}, {len(x)} differ")
    d = np.abs(x) ** 2
    for i in range(len(a)):
        conditions = (
            (a[i] >= 0, "a_i >= 0"),
            (b[i] < 0, "b_i < 0"),
            (a[i] + b[i] >= 0, "a_i + b_i >= 0"),
            (a[i] * b[i] - d[i] < 0, "a_i*b_i - |x_i|^2 < 0"),
        )
        for ok, label in conditions:
            if not ok:
                raise PreconditionViolated(f"index {i}: {label} fails")
    N = np.block([[np.diag(a), np.diag(x)], [np.diag(x.conj()), np.diag(b)]]).astype(np.complex128)
    return PlpResult(N, dominance(N, np.diag(a + b), tol))


# --- worked examples ----------------------------------------------------------


def example_Mx(x: float) -> PsdBlockMatrix:
    """``A = diag(x, 99/100)``, ``B = diag(99/100, 1/2)``, ``X = diag(i/2, -i/2)``."""
    A = np.diag([x, 0.99])
    B = np.diag([0.99, 0.5])
    X = np.diag([0.5j, -0.5j])
    return assemble(A, X, B)


EXAMPLE_C = [
    [Fraction(4, 3), 0, 1, -1],
    [0, 1, 0, Fraction(1, 5)],
    [1, 0, Fraction(3, 2), 0],
    [-1, Fraction(1, 5), 0, 2],
]


def example_C() -> PsdBlockMatrix:
    """PD matrix whose spectral norm exceeds ``||A + B||_s = 3``."""
    C = np.array([[float(v) for v in row] for row in EXAMPLE_C])
    return assemble(C[:2, :2], C[:2, 2:], C[2:, 2:])


def example_Ny(y: float) -> PsdBlockMatrix:
    """Eigenvalues ``{4, 1, y, 0}``; beats ``A + B`` in spectral and Frobenius norm for ``0 <= y < 1``."""
    A = np.diag([2.0, y])
    B = np.diag([1.0, 2.0])
    X = np.array([[0.0, 2.0], [0.0, 0.0]])
    return assemble(A, X, B)


EXAMPLES = {"Mx": example_Mx, "C": example_C, "Ny": example_Ny}


# --- random ensembles ---------------------------------------------------------


def random_hermitian_offdiag_psd(n: int, seed=None) -> PsdBlockMatrix:
    """PSD ``[[A, X], [X, B]]`` with ``X`` exactly Hermitian.

    ``B`` is a well conditioned Wishart matrix, ``X`` a random Hermitian
    matrix, and ``A = X B^{-1} X + P`` with ``P`` Wishart (sometimes rank
    deficient), so the Schur complement is ``P >= 0``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = _rng(seed)
    H = complex_normal(rng, (n, n))
    X = (H + adjoint(H)) / 2
    G = complex_normal(rng, (2 * n, n))
    B = adjoint(G) @ G / (2 * n)
    rank = int(rng.integers(1, n + 1))
    K = complex_normal(rng, (rank, n))
    A = X @ np.linalg.solve(B, X) + adjoint(K) @ K
    A = (A + adjoint(A)) / 2
    B = (B + adjoint(B)) / 2
    return PsdBlockMatrix(A, X, B).require_psd()


def random_commuting_normal_instance(n: int, seed=None) -> PsdBlockMatrix:
    """``A = W Da W*``, ``B = W Db W*``, ``X = W Dx W*`` with ``|Dx|^2 <= Da Db``.

    ``X`` is normal, ``X*`` commutes with ``A``, ``X`` commutes with ``B`` and
    each 2x2 piece ``[[a_i, x_i], [x̄_i, b_i]]`` is PSD, so ``M`` is PSD.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = _rng(seed)
    W = random_unitary(rng, n)
    da = rng.exponential(1.0, n)
    db = rng.exponential(1.0, n)
    mod = np.sqrt(da * db) * rng.uniform(0.0, 1.0, n)
    dx = mod * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, n))

    def conj(d):
        return (W * d) @ adjoint(W)

    A, B = conj(da), conj(db)
    A = (A + adjoint(A)) / 2
    B = (B + adjoint(B)) / 2
    return PsdBlockMatrix(A, conj(dx), B).require_psd()


@dataclass(frozen=True)
class PwwInstance:
    M: PsdBlockMatrix
    lam: np.ndarray
    nu: np.ndarray
    d: np.ndarray


def _grouped_values(rng: np.random.Generator, n: int) -> np.ndarray:
    """Nonnegative values with deliberate repeats (a few distinct levels)."""
    levels = rng.uniform(0.1, 3.0, int(rng.integers(1, n + 1)))
    return levels[rng.integers(0, len(levels), n)]


def random_pww_instance(n: int, seed=None, psd: bool = True) -> PwwInstance:
    """Diagonal ``A``, ``B`` and ``X = Π diag(x)`` with ``Π`` preserving ``A``'s level sets.

    Then ``X* X = diag(|x|^2)`` and ``X*`` commutes with ``A``.  With
    ``psd=True`` the moduli satisfy ``|x_i|^2 <= λ_i ν_i`` so ``M`` is PSD.
    """
    rng = _rng(seed)
    lam = _grouped_values(rng, n)
    nu = rng.uniform(0.0, 3.0, n)
    cap = np.sqrt(lam * nu) if psd else 2.0 * np.sqrt(lam * nu + 1.0)
    x = cap * rng.uniform(0.0, 1.0, n) * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, n))
    perm = np.arange(n)
    for level in np.unique(lam):
        idx = np.flatnonzero(lam == level)
        perm[idx] = rng.permutation(idx)
    Pi = np.eye(n)[:, perm]
    X = Pi @ np.diag(x)
    M = PsdBlockMatrix(np.diag(lam), X, np.diag(nu))
    return PwwInstance(M, lam, nu, np.abs(x) ** 2)


def random_grouped_instance(n: int, seed=None) -> PwwInstance:
    """Diagonal ``A`` with repeated entries and ``X`` block diagonal on ``A``'s level sets.

    ``X* X`` is generally not diagonal.  Each group's diagonal level is raised
    until its 2x2 block piece is PSD, and the distinct levels are kept apart.
    """
    rng = _rng(seed)
    sizes = []
    left = n
    while left:
        s = int(rng.integers(1, left + 1))
        sizes.append(s)
        left -= s
    nu = rng.uniform(0.2, 3.0, n)
    lam = np.zeros(n)
    X = np.zeros((n, n), dtype=np.complex128)
    start = 0
    floor = 0.0
    for s in sizes:
        g = slice(start, start + s)
        Xg = complex_normal(rng, (s, s))
        need = np.linalg.eigvalsh(Xg @ np.diag(1.0 / nu[g]) @ adjoint(Xg))[-1]
        level = max(need, floor) + rng.uniform(0.05, 1.0)
        lam[g] = level
        X[g, g] = Xg
        floor = level
        start += s
    perm = rng.permutation(n)
    lam, nu = lam[perm], nu[perm]
    X = X[np.ix_(perm, perm)]
    M = PsdBlockMatrix(np.diag(lam), X, np.diag(nu))
    return PwwInstance(M, lam, nu, np.real(np.diag(adjoint(X) @ X)))
