"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line (shown in the terminal summary) before it
asserts, so a failing criterion still reports what was measured.
"""

import math

import numpy as np

from blocknorms.constructions import (
    amplify_offdiag,
    build_plp,
    example_C,
    example_Mx,
    example_Ny,
    find_scaling_t,
    random_commuting_normal_instance,
    random_hermitian_offdiag_psd,
    random_pww_instance,
)
from blocknorms.core import adjoint, complex_normal, random_psd, unitarity_defect
from blocknorms.criteria import (
    block_det,
    check_main_inequality,
    ordered_diagonalization,
    pooled_roots,
    pww_eigenvalues,
    schur_pd_test,
    verify_commuting_normal_case,
    zero_block_verdict,
)
from blocknorms.decompose import corollary_abs_bound, lemma1_decompose
from blocknorms.norms import Dominance, dominance, ky_fan_all, spectral_norm
from blocknorms.sweep import commuting_pair, random_block

from conftest import ACCEPTANCE_LINES


NORMAL_HYPOTHESES = ("x_normal", "xstar_commutes_a", "x_commutes_b")


def record(num, ok, detail):
    ACCEPTANCE_LINES[num] = f"[{'PASS' if ok else 'FAIL'}] criterion {num:>2}: {detail}"
    return ok


def ensemble(seed, trials, dims=range(1, 7), square=False):
    for t in range(trials):
        rng = np.random.default_rng([seed, t])
        n = int(rng.choice(list(dims)))
        m = n if square else int(rng.choice(list(dims)))
        yield rng, random_block(rng, n, m)


def test_01_mx_eigenvalues():
    eig = np.sort(np.linalg.eigvalsh(example_Mx(0.3).matrix))[::-1]
    exact = np.array(sorted([(149 + math.sqrt(12401)) / 200, (149 - math.sqrt(12401)) / 200,
                             (129 + math.sqrt(14761)) / 200, (129 - math.sqrt(14761)) / 200],
                            reverse=True))
    approx = np.array([1.301, 1.25, 0.188, 0.0375])
    err_exact = float(np.max(np.abs(eig - exact)))
    err_approx = float(np.max(np.abs(eig - approx)))
    ok = err_exact <= 1e-10 and err_approx <= 1e-3
    record(1, ok, "M_3/10 eigenvalues " + ", ".join(f"{e:.5f}" for e in eig)
           + f", exact err {err_exact:.1e}, err vs rounded values {err_approx:.1e}")
    assert err_exact <= 1e-10
    assert err_approx <= 1e-3, f"errors vs rounded values {np.abs(eig - approx)}"


def test_02_mx_dominated():
    details, ok = [], True
    for x in (0.3, 0.4, 0.5):
        M = example_Mx(x)
        r = dominance(M.matrix, M.A + M.B)
        trace_gap = abs(np.trace(M.matrix).real - np.trace(M.A + M.B).real)
        ok &= r.verdict is Dominance.DOMINATED and trace_gap <= 1e-10 and abs(r.margins[-1]) <= 1e-10
        details.append(f"x={x}: {r.verdict.value}")
    assert record(2, ok, "; ".join(details))


def test_03_counterexample_c():
    C = example_C()
    pd = C.positivity().is_pd
    eig = np.sort(np.linalg.eigvalsh(C.matrix))[::-1]
    target = np.array([3.008, 1.7, 0.9, 0.089])
    eig_err = np.abs(eig - target)
    margin = spectral_norm(C.matrix) - 3
    parts = {
        "positive_definite": pd,
        "eigenvalues_within_5e-3": bool(np.all(eig_err <= 5e-3)),
        "spectral_margin_ge_0.005": margin >= 0.005,
    }
    ok = all(parts.values())
    detail = (f"PD={pd}, spectral margin {margin:.4f}, eigenvalues "
              + ", ".join(f"{e:.4f}" for e in eig)
              + f" (max err vs stated {eig_err.max():.3f})")
    record(3, ok, detail)
    assert parts["positive_definite"]
    assert parts["spectral_margin_ge_0.005"]
    assert parts["eigenvalues_within_5e-3"], f"eigenvalue errors {eig_err}"


def test_04_counterexample_ny():
    ok = True
    for y in (0.0, 0.5, 0.99):
        N = example_Ny(y)
        eig = np.sort(np.linalg.eigvalsh(N.matrix))
        ok &= bool(np.max(np.abs(eig - np.sort([4, 1, y, 0]))) <= 1e-10)
    for y in np.linspace(0, 1, 21)[:-1]:
        N = example_Ny(y)
        spec = spectral_norm(N.matrix) - spectral_norm(N.A + N.B)
        frob = np.linalg.norm(N.matrix) ** 2 - np.linalg.norm(N.A + N.B) ** 2
        ok &= spec > 0 and frob > 0
    N = example_Ny(1.0)
    frob1 = np.linalg.norm(N.matrix) ** 2 - np.linalg.norm(N.A + N.B) ** 2
    ok &= abs(frob1) <= 1e-10
    assert record(4, ok, f"spectrum {{4,1,y,0}}, both margins > 0 on [0,1), Frobenius margin at y=1 {frob1:.1e}")


def test_05_lemma1():
    worst = {"residual": 0.0, "unitary": 0.0, "spectrum": 0.0}
    rect = 0
    for _, M in ensemble(5, 500):
        rect += M.n != M.m
        D = lemma1_decompose(M)
        N = M.n + M.m
        first = np.linalg.eigvalsh(D.U @ D.P @ adjoint(D.U))[::-1]
        second = np.linalg.eigvalsh(D.V @ D.Q @ adjoint(D.V))[::-1]
        want_a = np.concatenate([np.linalg.eigvalsh(M.A)[::-1], np.zeros(M.m)])
        want_b = np.concatenate([np.linalg.eigvalsh(M.B)[::-1], np.zeros(M.n)])
        assert len(first) == N
        worst["residual"] = max(worst["residual"], D.residual)
        worst["unitary"] = max(worst["unitary"], unitarity_defect(D.U), unitarity_defect(D.V))
        worst["spectrum"] = max(worst["spectrum"], np.max(np.abs(first - np.sort(want_a)[::-1])),
                                np.max(np.abs(second - np.sort(want_b)[::-1])))
    ok = worst["residual"] <= 1e-10 and worst["unitary"] <= 1e-10 and worst["spectrum"] <= 1e-9
    assert record(5, ok and rect > 0, f"500 cases ({rect} with n != m), worst "
                  + ", ".join(f"{k} {v:.1e}" for k, v in worst.items()))


def test_06_corollaries():
    worst = math.inf
    for _, M in ensemble(6, 500, square=True):
        mid = (M.A + M.B) / 2
        R = (M.X + adjoint(M.X)) / 2
        I = (M.X - adjoint(M.X)) / 2j
        for H in (mid + R, mid - R, mid + I, mid - I):
            worst = min(worst, np.linalg.eigvalsh(H)[0])
        worst = min(worst, corollary_abs_bound(M).gap_spectrum[0])
    assert record(6, worst >= -1e-10, f"500 cases, least midpoint/gap eigenvalue {worst:.2e}")


def test_07_remark1():
    worst = math.inf
    for _, M in ensemble(6, 500, square=True):
        N = M.n + M.m
        margin = ky_fan_all(M.A, N) + ky_fan_all(M.B, N) + 1e-9 - ky_fan_all(M.matrix, N)
        worst = min(worst, float(margin.min()))
    assert record(7, worst >= 0, f"500 cases, least slack {worst:.2e}")


def test_08_hermitian_x():
    verdicts = [check_main_inequality(random_hermitian_offdiag_psd(1 + t % 6, [8, t])).dominance.verdict
                for t in range(500)]
    bad = sum(v is not Dominance.DOMINATED for v in verdicts)
    assert record(8, bad == 0, f"500 cases, {bad} not dominated")


def test_09_schur():
    disagree = 0
    for t in range(500):
        rng = np.random.default_rng([9, t])
        n, m = (int(v) for v in rng.integers(1, 7, 2))
        A = random_psd(n, rng)
        G = complex_normal(rng, (2 * m, m))
        B = adjoint(G) @ G / (2 * m)
        B = (B + adjoint(B)) / 2
        X = 10 ** rng.uniform(-1, 1) * complex_normal(rng, (n, m))
        full = np.block([[A, X], [adjoint(X), B]])
        eig = np.linalg.eigvalsh(full)
        direct = eig[0] > 1e-10 * max(1.0, np.abs(eig).max())
        disagree += schur_pd_test(A, X, B, strict=True) != direct
    assert record(9, disagree == 0, f"500 cases, {disagree} disagreements")


def test_10_block_det():
    worst = 0.0
    for t in range(500):
        rng = np.random.default_rng([10, t])
        n = int(rng.integers(1, 7))
        A, C = commuting_pair(rng, n)
        B, D = complex_normal(rng, (n, n)), complex_normal(rng, (n, n))
        want = np.linalg.det(np.block([[A, B], [C, D]]))
        worst = max(worst, abs(block_det(A, B, C, D) - want) / max(1.0, abs(want)))
    assert record(10, worst <= 1e-8, f"500 cases, worst relative error {worst:.1e}")


def test_11_pww():
    worst, bad, psd = 0.0, 0, 0
    for t in range(200):
        inst = random_pww_instance(1 + t % 6, [11, t], psd=bool(t % 4))
        roots = pooled_roots(pww_eigenvalues(inst.lam, inst.nu, inst.d))
        eig = np.sort(np.linalg.eigvalsh(inst.M.matrix))[::-1]
        worst = max(worst, float(np.max(np.abs(roots - eig))))
        if inst.M.positivity().is_psd:
            psd += 1
            bad += check_main_inequality(inst.M).dominance.verdict is not Dominance.DOMINATED
    ok = worst <= 1e-9 and bad == 0
    assert record(11, ok, f"200 cases ({psd} PSD), root error {worst:.1e}, {bad} not dominated")


def test_12_normal():
    bad = 0
    for t in range(200):
        r = verify_commuting_normal_case(random_commuting_normal_instance(1 + t % 6, [12, t]))
        needed = [r.hypothesis_checks[k] for k in NORMAL_HYPOTHESES]
        bad += not (all(needed) and r.theorem_applies and r.dominance.verdict is Dominance.DOMINATED)
    assert record(12, bad == 0, f"200 cases, {bad} failing")


def test_13_zero_block():
    found = 0
    for t in range(10_000):
        rng = np.random.default_rng([13, t])
        n = int(rng.integers(1, 6))
        rank = int(rng.integers(0, n + 1))
        A = random_psd(n, rng, rank=rank) if rank else np.zeros((n, n))
        X = 10 ** rng.uniform(-2, 2) * complex_normal(rng, (n, n))
        v = zero_block_verdict(A, X)
        found += v.is_psd and v.offdiag_norm > 1e-10
    w = amplify_offdiag(np.eye(2), 1j * np.eye(2))
    gaps = np.array(w.dominance.k_norms_lhs) - np.array(w.dominance.k_norms_rhs)
    ok = found == 0 and w.l == 1 and bool(np.all(gaps > 0)) and w.psd_verdict.verdict.value == "indefinite"
    assert record(13, ok, f"10000 attempts, {found} PSD with X != 0; l={w.l}, "
                  f"Ky Fan gaps {np.round(gaps, 4).tolist()}, {w.psd_verdict.verdict.value}")


def test_14_scaling():
    results = []
    for args, want in ((([[1.0]], [[2.0]], [[1.0]]), 3), ((np.eye(2), 1j * np.eye(2), np.eye(2)), 2)):
        w = find_scaling_t(*args)
        results.append(w.t == want and w.certificate.is_pd and w.previous is not None
                       and not w.previous.is_pd)
    assert record(14, all(results), "t = 3 and t = 2 with PD certificate, t-1 fails")


def test_15_plp():
    r = build_plp([2.0], [-1.0], [math.sqrt(3)])
    sv = np.linalg.svd(r.N, compute_uv=False)
    s = math.sqrt(21)
    err = float(np.max(np.abs(sv - [(s + 1) / 2, (s - 1) / 2])))
    gaps = np.array(r.report.k_norms_lhs) - np.array(r.report.k_norms_rhs)
    ok = err <= 1e-10 and bool(np.all(gaps > 0)) and r.report.verdict is Dominance.STRICTLY_DOMINATES
    assert record(15, ok, f"singular value error {err:.1e}, k=1,2 gaps {np.round(gaps, 4).tolist()}")


def test_16_ordered_diagonalization():
    worst = 0.0
    for t in range(200):
        rng = np.random.default_rng([16, t])
        n = int(rng.integers(1, 7))
        A, B = random_psd(n, rng), random_psd(n, rng)
        _, _, D_o, G_o = ordered_diagonalization(A, B)
        worst = max(worst, float(np.max(np.abs(ky_fan_all(D_o + G_o) - ky_fan_all(A) - ky_fan_all(B)))))
    assert record(16, worst <= 1e-9, f"200 pairs, worst Ky Fan error {worst:.1e}")
