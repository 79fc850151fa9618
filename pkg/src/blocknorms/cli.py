"""Command-line front end.

Exit codes: 0 the check passed, 1 it was computed and came out negative
(inequality fails, matrix not PSD, no witness within the search bound),
2 usage or input error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import constructions, criteria, decompose, io, norms
from .core import positivity
from .errors import (
    BlockMatrixError,
    NotPsd,
    NumericalFailure,
    SearchExhausted,
)
from .sweep import SUITES, sweep

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_NUMERICAL = 0, 1, 2, 3

COMMANDS = ("check", "decompose", "schur", "det", "amplify", "scale", "plp", "reproduce", "sweep")


class UsageError(Exception):
    pass


def parse_dims(text: str) -> list[int]:
    """``"1..6"``, ``"2,3,5"`` or ``"4"``."""
    try:
        if ".." in text:
            lo, hi = (int(v) for v in text.split("..", 1))
            dims = list(range(lo, hi + 1))
        else:
            dims = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"--dims: cannot parse {text!r}") from None
    if not dims or min(dims) < 1:
        raise UsageError(f"--dims: need a nonempty range of positive sizes, got {text!r}")
    return dims


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="blocknorms",
        description="Decompositions and symmetric-norm checks for PSD block matrices.",
    )
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--block", metavar="PATH", help="block-matrix JSON file")
    p.add_argument("--matrix", metavar="PATH", help="matrix JSON file")
    p.add_argument("--example", choices=sorted(constructions.EXAMPLES))
    p.add_argument("--x", type=float, default=0.3)
    p.add_argument("--y", type=float, default=0.5)
    p.add_argument("--suite", choices=sorted(SUITES))
    p.add_argument("--trials", type=int)
    p.add_argument("--dims", default="1..6")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--l-max", type=int, default=1000)
    p.add_argument("--t-max", type=int, default=10_000)
    p.add_argument("--tol", type=float)
    p.add_argument("--format", choices=("json", "csv", "text"))
    p.add_argument("--out", metavar="PATH")
    return p


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"{args.command} requires --{name.replace('_', '-')}")


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _kyfan_text(report: norms.DominanceReport) -> list[str]:
    lines = [f"{'k':>3} {'lhs':>12} {'rhs':>12} {'margin':>12}"]
    for k, (l, r, g) in enumerate(zip(report.k_norms_lhs, report.k_norms_rhs, report.margins), 1):
        lines.append(f"{k:>3} {_fmt(l):>12} {_fmt(r):>12} {_fmt(g):>12}")
    lines.append(f"verdict: {report.verdict.value}")
    return lines


class Result:
    """What a command produced: a JSON-able payload plus optional CSV and text renderings."""

    def __init__(self, payload, code=EXIT_OK, text=None, csv=None):
        self.payload = payload
        self.code = code
        self.text = text
        self.csv = csv

    def render(self, fmt: str) -> str:
        if fmt == "csv":
            if self.csv is None:
                raise UsageError("--format csv is not available for this command")
            return self.csv
        if fmt == "text" and self.text is not None:
            return "\n".join(self.text) + "\n"
        return json.dumps(self.payload, indent=2, sort_keys=True) + "\n"


def cmd_check(args) -> Result:
    _need(args, "block")
    M = io.load_block(args.block)
    tol = args.tol if args.tol is not None else norms.DOMINANCE_TOL
    try:
        report = criteria.check_main_inequality(M, tol)
    except NotPsd as exc:
        return Result({"error": "not_psd", "message": str(exc)}, EXIT_NEGATIVE, [f"not PSD: {exc}"])
    text = [f"theorem applies: {report.theorem_applies} ({report.matched_path})"]
    text += _kyfan_text(report.dominance)
    code = EXIT_OK if report.conclusion_holds else EXIT_NEGATIVE
    return Result(report.to_dict(), code, text, report.dominance.to_csv())


def cmd_decompose(args) -> Result:
    _need(args, "block")
    M = io.load_block(args.block)
    D = decompose.lemma1_decompose(M)
    res = decompose.verify_decomposition(M, D)
    ok = res <= 1e-10
    return Result(D.to_dict(), EXIT_OK if ok else EXIT_NUMERICAL,
                  [f"relative residual: {res:.3e}"])


def cmd_schur(args) -> Result:
    _need(args, "block")
    M = io.load_block(args.block)
    tol = args.tol if args.tol is not None else 1e-10
    strict = criteria.schur_pd_test(M.A, M.X, M.B, strict=True, tol=tol)
    loose = criteria.schur_pd_test(M.A, M.X, M.B, strict=False, tol=tol)
    payload = {"positive_definite": strict, "positive_semidefinite": loose}
    return Result(payload, EXIT_OK if strict else EXIT_NEGATIVE,
                  [f"M > 0: {strict}", f"M >= 0: {loose}"])


def cmd_det(args) -> Result:
    _need(args, "matrix")
    F = io.load_matrix(args.matrix)
    N = F.shape[0]
    if F.shape[1] != N or N % 2:
        raise UsageError("--matrix must be square with even size")
    h = N // 2
    det = criteria.block_det(F[:h, :h], F[:h, h:], F[h:, :h], F[h:, h:])
    payload = {"det": [det.real, det.imag]}
    return Result(payload, EXIT_OK, [f"det = {det.real:.12g} + {det.imag:.12g}i"])


def cmd_amplify(args) -> Result:
    _need(args, "block")
    M = io.load_block(args.block)
    w = constructions.amplify_offdiag(M.A, M.X, args.l_max)
    text = [f"l = {w.l}", f"positivity: {w.psd_verdict.verdict.value}"] + _kyfan_text(w.dominance)
    return Result(w.to_dict(), EXIT_OK, text, w.dominance.to_csv())


def cmd_scale(args) -> Result:
    _need(args, "block")
    M = io.load_block(args.block)
    w = constructions.find_scaling_t(M.A, M.X, M.B, args.t_max)
    return Result(w.to_dict(), EXIT_OK, [f"t = {w.t}", f"certificate: {w.certificate.verdict.value}"])


def cmd_plp(args) -> Result:
    _need(args, "block")
    M = io.load_block(args.block)
    diag = [np.diag(np.array(Z)) for Z in (M.A, M.X, M.B)]
    for name, Z, d in zip("AXB", (M.A, M.X, M.B), diag):
        if not np.allclose(Z, np.diag(d)):
            raise UsageError(f"plp: block {name} must be diagonal")
    N, report = constructions.build_plp(diag[0].real, diag[2].real, diag[1])
    payload = {"N": io.matrix_to_json(N), "dominance": report.to_dict(),
               "positivity": positivity(N).to_dict(),
               "negated_positivity": positivity(-N).to_dict()}
    code = EXIT_OK if report.verdict is norms.Dominance.STRICTLY_DOMINATES else EXIT_NEGATIVE
    return Result(payload, code, _kyfan_text(report), report.to_csv())


def _reproduce_Mx(x: float) -> Result:
    M = constructions.example_Mx(x)
    eig = np.linalg.eigvalsh(np.array(M.matrix))[::-1]
    verdict = positivity(M.matrix)
    report = norms.dominance(M.matrix, M.A + M.B)
    text = [f"M_x with x = {x:g}", "eigenvalues: " + ", ".join(_fmt(e) for e in eig),
            f"positivity: {verdict.verdict.value}"]
    text += ["||M_x||_k vs ||A+B||_k:"] + _kyfan_text(report)
    payload = {"example": "Mx", "x": x, "eigenvalues": eig.tolist(),
               "positivity": verdict.to_dict(), "dominance": report.to_dict()}
    ok = verdict.is_pd and report.lhs_bounded
    return Result(payload, EXIT_OK if ok else EXIT_NEGATIVE, text, report.to_csv())


def _reproduce_C() -> Result:
    M = constructions.example_C()
    eig = np.linalg.eigvalsh(np.array(M.matrix))[::-1]
    verdict = positivity(M.matrix)
    s_C, s_AB = norms.spectral_norm(M.matrix), norms.spectral_norm(M.A + M.B)
    text = ["example C", "eigenvalues: " + ", ".join(f"{e:.4g}" for e in eig),
            f"positivity: {verdict.verdict.value}",
            f"spectral norm: ||C||_s = {s_C:.4f} > ||A+B||_s = {s_AB:.4f}: {s_C > s_AB}"]
    payload = {"example": "C", "eigenvalues": eig.tolist(), "positivity": verdict.to_dict(),
               "spectral_C": s_C, "spectral_A_plus_B": s_AB}
    ok = verdict.is_pd and s_C > s_AB
    return Result(payload, EXIT_OK if ok else EXIT_NEGATIVE, text)


def _reproduce_Ny(y: float) -> Result:
    M = constructions.example_Ny(y)
    eig = np.linalg.eigvalsh(np.array(M.matrix))[::-1]
    s_N, s_AB = norms.spectral_norm(M.matrix), norms.spectral_norm(M.A + M.B)
    f_N, f_AB = norms.frobenius_norm(M.matrix) ** 2, norms.frobenius_norm(M.A + M.B) ** 2
    text = [f"N_y with y = {y:g}", "eigenvalues: " + ", ".join(_fmt(e) for e in eig),
            f"spectral: {s_N:.6g} vs {s_AB:.6g} (margin {s_N - s_AB:.6g})",
            f"squared Frobenius: {f_N:.6g} vs {f_AB:.6g} (margin {f_N - f_AB:.6g})"]
    payload = {"example": "Ny", "y": y, "eigenvalues": eig.tolist(),
               "spectral": [s_N, s_AB], "frobenius_squared": [f_N, f_AB]}
    ok = s_N - s_AB > 1e-10 and f_N - f_AB > 1e-10
    return Result(payload, EXIT_OK if ok else EXIT_NEGATIVE, text)


def cmd_reproduce(args) -> Result:
    _need(args, "example")
    if args.example == "Mx":
        return _reproduce_Mx(args.x)
    if args.example == "C":
        return _reproduce_C()
    return _reproduce_Ny(args.y)


def cmd_sweep(args) -> Result:
    _need(args, "suite", "trials")
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    summary = sweep(args.suite, args.trials, parse_dims(args.dims), args.seed)
    text = [f"{summary['suite']}: {summary['passed']}/{summary['trials']} passed"]
    if summary["failed"]:
        text.append(f"first failure at seed {summary['first_failing_seed']}: {summary['first_failure']}")
    return Result(summary, EXIT_OK if summary["failed"] == 0 else EXIT_NEGATIVE, text)


HANDLERS = {
    "check": cmd_check,
    "decompose": cmd_decompose,
    "schur": cmd_schur,
    "det": cmd_det,
    "amplify": cmd_amplify,
    "scale": cmd_scale,
    "plp": cmd_plp,
    "reproduce": cmd_reproduce,
    "sweep": cmd_sweep,
}

DEFAULT_FORMAT = {"reproduce": "text", "sweep": "text"}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    fmt = args.format or DEFAULT_FORMAT.get(args.command, "json")
    try:
        result = HANDLERS[args.command](args)
        out = result.render(fmt)
    except (UsageError, io.FormatError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except NotPsd as exc:
        print(f"not positive semi-definite: {exc}", file=stderr)
        return EXIT_NEGATIVE
    except SearchExhausted as exc:
        print(f"search exhausted: {exc}", file=stderr)
        return EXIT_NEGATIVE
    except (NumericalFailure, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=stderr)
        return EXIT_NUMERICAL
    except (BlockMatrixError, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        stdout.write(out)
    return result.code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
