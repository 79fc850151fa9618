"""Singular values, Ky Fan norms and Fan dominance.

Two matrices satisfy ``||L|| <= ||R||`` for every unitarily invariant norm
exactly when every Ky Fan k-norm of ``L`` is at most that of ``R``.  Spectra of
different lengths are compared after zero padding, which is the same as
embedding the smaller matrix as ``A ⊕ 0``.
"""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass

import numpy as np

from .core import as_matrix
from .errors import InvalidP, SvdFailure

DOMINANCE_TOL = 1e-9


def singular_values(M) -> np.ndarray:
    """Descending, nonnegative singular values of ``M``."""
    M = as_matrix(M)
    try:
        s = np.linalg.svd(M, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise SvdFailure(str(exc)) from exc
    return np.clip(s, 0.0, None)


def padded(s: np.ndarray, length: int) -> np.ndarray:
    out = np.zeros(length)
    out[: len(s)] = s
    return out


def ky_fan_all(M, length: int | None = None) -> np.ndarray:
    """Vector of Ky Fan norms ``||M||_k`` for ``k = 1..length``."""
    s = singular_values(M)
    length = len(s) if length is None else length
    return np.cumsum(padded(s, max(length, len(s))))[:length]


def ky_fan(M, k: int) -> float:
    """Sum of the ``k`` largest singular values (zero padded past the size)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return float(ky_fan_all(M, k)[k - 1])


def spectral_norm(M) -> float:
    return float(singular_values(M)[0])


def frobenius_norm(M) -> float:
    return float(np.sqrt(np.sum(singular_values(M) ** 2)))


def schatten(M, p: float) -> float:
    """Schatten p-norm; ``p = inf`` gives the spectral norm."""
    if not p >= 1:
        raise InvalidP(f"Schatten norms need p >= 1, got {p}")
    s = singular_values(M)
    if math.isinf(p):
        return float(s[0])
    top = s[0]
    if top == 0.0:
        return 0.0
    # scale by the top value to avoid overflow for large p
    return float(top * np.sum((s / top) ** p) ** (1.0 / p))


class Dominance(str, enum.Enum):
    EQUAL = "equal"
    STRICTLY_DOMINATED_BY = "strictly_dominated_by"
    DOMINATED = "dominated"
    STRICTLY_DOMINATES = "strictly_dominates"
    DOMINATES = "dominates"
    INCOMPARABLE = "incomparable"


def dominance_verdict(margins: np.ndarray, tol: float) -> Dominance:
    """Classify margins ``rhs_k - lhs_k`` at absolute tolerance ``tol``."""
    if np.all(np.abs(margins) <= tol):
        return Dominance.EQUAL
    if np.all(margins > tol):
        return Dominance.STRICTLY_DOMINATED_BY
    if np.all(margins >= -tol):
        return Dominance.DOMINATED
    if np.all(margins < -tol):
        return Dominance.STRICTLY_DOMINATES
    if np.all(margins <= tol):
        return Dominance.DOMINATES
    return Dominance.INCOMPARABLE


#: verdicts under which ``||L|| <= ||R||`` holds for every symmetric norm
LHS_BOUNDED = frozenset({Dominance.EQUAL, Dominance.DOMINATED, Dominance.STRICTLY_DOMINATED_BY})
#: verdicts under which ``||L|| > ||R||`` holds for every symmetric norm
LHS_STRICTLY_LARGER = frozenset({Dominance.STRICTLY_DOMINATES})


@dataclass(frozen=True)
class DominanceReport:
    k_norms_lhs: np.ndarray
    k_norms_rhs: np.ndarray
    margins: np.ndarray
    verdict: Dominance
    tolerance: float

    @property
    def lhs_bounded(self) -> bool:
        """``||L|| <= ||R||`` in every symmetric norm (within tolerance)."""
        return self.verdict in LHS_BOUNDED

    def to_dict(self) -> dict:
        return {
            "k_norms_lhs": [float(v) for v in self.k_norms_lhs],
            "k_norms_rhs": [float(v) for v in self.k_norms_rhs],
            "margins": [float(v) for v in self.margins],
            "verdict": self.verdict.value,
            "tolerance": self.tolerance,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["k", "lhs", "rhs", "margin"])
        for k, (lhs, rhs, margin) in enumerate(
                zip(self.k_norms_lhs, self.k_norms_rhs, self.margins), start=1):
            writer.writerow([k, repr(float(lhs)), repr(float(rhs)), repr(float(margin))])
        return buf.getvalue()


def dominance(L, R, tol: float = DOMINANCE_TOL) -> DominanceReport:
    """Compare ``L`` against ``R`` in every Ky Fan norm.

    The tolerance is relative: margins are judged against
    ``tol * max(1, largest Ky Fan value on either side)``, and that absolute
    threshold is what the report stores, so the verdict can be recomputed
    from ``margins`` and ``tolerance`` alone.
    """
    sl, sr = singular_values(L), singular_values(R)
    length = max(len(sl), len(sr))
    lhs = np.cumsum(padded(sl, length))
    rhs = np.cumsum(padded(sr, length))
    margins = rhs - lhs
    threshold = tol * max(1.0, float(lhs[-1]), float(rhs[-1]))
    return DominanceReport(lhs, rhs, margins, dominance_verdict(margins, threshold), threshold)
