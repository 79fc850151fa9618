"""Seeded property sweeps over random ensembles.

Each trial draws from its own generator seeded with ``(seed, trial)``, so a
sweep gives the same summary whether it runs serially or on a thread pool.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable

import numpy as np

from .constructions import (
    random_commuting_normal_instance,
    random_hermitian_offdiag_psd,
    random_pww_instance,
)
from .core import (
    PsdBlockMatrix,
    adjoint,
    complex_normal,
    eigvalsh,
    imag_part,
    random_psd,
    random_unitary,
    real_part,
    split,
)
from .criteria import (
    block_det,
    check_main_inequality,
    pooled_roots,
    pww_eigenvalues,
    schur_pd_test,
    verify_commuting_normal_case,
    zero_block_verdict,
)
from .decompose import corollary_abs_bound
from .errors import UnknownSuite
from .norms import ky_fan_all

Trial = Callable[[np.random.Generator, int], tuple[bool, dict]]


def random_block(rng: np.random.Generator, n: int, m: int | None = None) -> PsdBlockMatrix:
    """Wishart block matrix; one trial in four is rank deficient."""
    m = n if m is None else m
    N = n + m
    rank = int(rng.integers(1, N)) if N > 1 and rng.uniform() < 0.25 else None
    return split(random_psd(N, rng, rank=rank), n)


def _remark1(rng, dim):
    m = int(rng.integers(1, dim + 1))
    M = random_block(rng, dim, m)
    N = M.n + M.m
    lhs = ky_fan_all(M.matrix, N)
    rhs = ky_fan_all(M.A, N) + ky_fan_all(M.B, N)
    worst = float(np.min(rhs - lhs))
    return worst >= -1e-9, {"n": M.n, "m": M.m, "worst_margin": worst}


def _midpoints(rng, dim):
    M = random_block(rng, dim)
    mid = (M.A + M.B) / 2
    R, I = real_part(M.X), imag_part(M.X)
    mins = [float(eigvalsh(mid + s * H)[0]) for H in (R, I) for s in (1, -1)]
    gap = float(corollary_abs_bound(M).gap_spectrum[0])
    worst = min(mins + [gap])
    return worst >= -1e-10, {"n": dim, "midpoint_mins": mins, "abs_gap_min": gap}


def _hermitian_x(rng, dim):
    M = random_hermitian_offdiag_psd(dim, rng)
    report = check_main_inequality(M)
    return report.conclusion_holds, {"n": dim, "verdict": report.dominance.verdict.value}


def _pww(rng, dim):
    inst = random_pww_instance(dim, rng)
    roots = pooled_roots(pww_eigenvalues(inst.lam, inst.nu, inst.d))
    eig = eigvalsh(inst.M.matrix)[::-1]
    roots_ok = bool(np.allclose(roots, eig, rtol=0, atol=1e-9))
    report = check_main_inequality(inst.M)
    ok = roots_ok and report.conclusion_holds
    return ok, {"n": dim, "roots_match": roots_ok, "verdict": report.dominance.verdict.value}


def _normal_x(rng, dim):
    M = random_commuting_normal_instance(dim, rng)
    report = verify_commuting_normal_case(M)
    ok = report.theorem_applies and report.conclusion_holds
    return ok, {"n": dim, "applies": report.theorem_applies,
                "verdict": report.dominance.verdict.value}


def _zero_block(rng, dim):
    rank = int(rng.integers(0, dim + 1))
    A = random_psd(dim, rng, rank=rank) if rank else np.zeros((dim, dim))
    scale = 10.0 ** rng.uniform(-2, 2)
    X = scale * complex_normal(rng, (dim, dim))
    v = zero_block_verdict(A, X)
    ok = not (v.is_psd and v.offdiag_norm > 1e-10)
    return ok, {"n": dim, "is_psd": v.is_psd, "offdiag_norm": v.offdiag_norm}


def _schur_agree(rng, dim):
    A = random_psd(dim, rng)
    G = complex_normal(rng, (2 * dim, dim))
    B = adjoint(G) @ G / (2 * dim)
    X = 10.0 ** rng.uniform(-1, 1) * complex_normal(rng, (dim, dim))
    schur = schur_pd_test(A, X, B, strict=True)
    direct = PsdBlockMatrix(A, X, (B + adjoint(B)) / 2).positivity().is_pd
    return schur == direct, {"n": dim, "schur": schur, "eigensolver": direct}


def commuting_pair(rng: np.random.Generator, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Two commuting matrices: diagonal, or polynomials in one matrix, or jointly diagonalizable."""
    kind = int(rng.integers(0, 3))
    if kind == 0:
        return np.diag(complex_normal(rng, n)), np.diag(complex_normal(rng, n))
    if kind == 1:
        G = complex_normal(rng, (n, n))
        c = complex_normal(rng, 6)
        I = np.eye(n)
        return c[0] * I + c[1] * G + c[2] * G @ G, c[3] * I + c[4] * G + c[5] * G @ G
    W = random_unitary(rng, n)
    return ((W * complex_normal(rng, n)) @ adjoint(W),
            (W * complex_normal(rng, n)) @ adjoint(W))


def _det_agree(rng, dim):
    A, C = commuting_pair(rng, dim)
    B = complex_normal(rng, (dim, dim))
    D = complex_normal(rng, (dim, dim))
    got = block_det(A, B, C, D)
    want = complex(np.linalg.det(np.block([[A, B], [C, D]])))
    err = abs(got - want)
    return err <= 1e-8 * max(1.0, abs(want)), {"n": dim, "abs_error": err}


SUITES: dict[str, Trial] = {
    "remark1": _remark1,
    "midpoints": _midpoints,
    "hermitian_x": _hermitian_x,
    "pww": _pww,
    "normal_x": _normal_x,
    "zero_block": _zero_block,
    "schur_agree": _schur_agree,
    "det_agree": _det_agree,
}


def run_trial(suite: str, seed: int, trial: int, dims: list[int]) -> tuple[bool, dict]:
    rng = np.random.default_rng([seed, trial])
    dim = int(dims[int(rng.integers(0, len(dims)))])
    return SUITES[suite](rng, dim)


def sweep(suite: str, trials: int, dims: list[int], seed: int = 0, workers: int = 1) -> dict:
    """Run ``trials`` seeded trials of ``suite`` and summarise the outcome."""
    if suite not in SUITES:
        raise UnknownSuite(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not dims:
        raise ValueError("dims must be nonempty")

    def one(t):
        return run_trial(suite, seed, t, dims)

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(one, range(trials)))
    else:
        results = [one(t) for t in range(trials)]

    failures = [t for t, (ok, _) in enumerate(results) if not ok]
    first = failures[0] if failures else None
    return {
        "suite": suite,
        "trials": trials,
        "dims": list(dims),
        "seed": seed,
        "passed": trials - len(failures),
        "failed": len(failures),
        "first_failing_trial": first,
        "first_failing_seed": None if first is None else [seed, first],
        "first_failure": None if first is None else results[first][1],
    }

