"""Command-line front end.

Subcommands: ``decompose`` a matrix file, ``generate`` test matrices with
ground-truth sidecars, ``bench-accuracy`` and ``bench-time`` for the solver
comparison harness, and ``verify`` for re-checking decomposition outputs.
Exit codes: 0 ok, 1 input error, 2 non-convergence / failed verification.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from pathlib import Path
from statistics import median

import numpy as np

from . import genmat
from .driver import Config, Spectrum, decompose
from .generic_jacobi import randdiag_jacobi, zhou_brent
from .matcore import EPS, MatrixFormatError, frobenius_norm, offdiag, offschur, read_matrix, write_matrix

DEFAULT_RHO = 10.0 * EPS


def _spectrum_dict(spec: Spectrum) -> dict:
    return {
        "complex_pairs": [[lam, theta] for lam, theta in spec.complex_pairs],
        "reals": list(spec.reals),
        "sigma_groups": [list(g) for g in spec.sigma_groups],
        "warnings": list(spec.warnings),
    }


def _report_dict(result, n: int, rho: float) -> dict:
    return {
        "n": n,
        "rho": rho,
        "converged": result.converged,
        "offschur_ratio": result.residuals["offschur_ratio"],
        "ortho_residual": result.residuals["ortho_residual"],
        "reconstruction_residual": result.residuals["reconstruction_residual"],
        "steps": [
            {
                "step": rec.step,
                "cluster": list(rec.cluster) if rec.cluster is not None else None,
                "sweeps": rec.sweeps,
                "initial": rec.initial,
                "final": rec.final,
                "converged": rec.converged,
                "structure_gap": rec.structure_gap,
            }
            for rec in result.step_log
        ],
        "spectrum": _spectrum_dict(result.spectrum),
    }


def _write_text_report(path: Path, report: dict) -> None:
    lines = []
    for key in (
        "n",
        "rho",
        "converged",
        "offschur_ratio",
        "ortho_residual",
        "reconstruction_residual",
    ):
        lines.append(f"{key} = {report[key]}")
    for rec in report["steps"]:
        lines.append(
            f"step {rec['step']} cluster={rec['cluster']} sweeps={rec['sweeps']} "
            f"initial={rec['initial']:.3e} final={rec['final']:.3e} "
            f"converged={rec['converged']}"
        )
    for lam, theta in report["spectrum"]["complex_pairs"]:
        lines.append(f"eigenvalue pair: radius={lam!r} phase={theta!r}")
    for x in report["spectrum"]["reals"]:
        lines.append(f"real eigenvalue: {x!r}")
    path.write_text("\n".join(lines) + "\n")


def cmd_decompose(args) -> int:
    try:
        A = read_matrix(args.input)
    except (MatrixFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    result = decompose(A, Config(rho=args.rho))
    write_matrix(out / "S.txt", result.S)
    write_matrix(out / "Q.txt", result.Q)
    report = _report_dict(result, A.shape[0], args.rho)
    (out / "report.json").write_text(json.dumps(report, indent=2) + "\n")
    _write_text_report(out / "report.txt", report)
    return 0 if result.converged else 2


def cmd_generate(args) -> int:
    try:
        if args.cls == "fig1":
            A, truth = genmat.fig1_matrix(args.seed)
        else:
            A, truth = genmat.generate(
                genmat.EnsembleSpec(
                    n=args.n,
                    cls=args.cls,
                    alpha1=args.alpha1,
                    alpha2=args.alpha2,
                    seed=args.seed,
                )
            )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    out = Path(args.out)
    write_matrix(out, A)
    sidecar = {
        "spectrum": _spectrum_dict(truth.spectrum),
        "notes": truth.notes,
    }
    Path(str(out) + ".truth.json").write_text(json.dumps(sidecar, indent=2) + "\n")
    return 0


def _run_solver(solver: str, A: np.ndarray, rho: float, seed: int):
    """Return (offschur-style ratio, elapsed seconds) for one solve."""
    nrm = frobenius_norm(A)
    if solver == "alg2":
        t0 = time.perf_counter()
        result = decompose(A, Config(rho=rho))
        dt = time.perf_counter() - t0
        return result.residuals["offschur_ratio"], dt
    if solver == "zhou":
        W = A.copy()
        Q = np.eye(A.shape[0])
        t0 = time.perf_counter()
        zhou_brent(
            W,
            Q,
            list(range(A.shape[0])),
            rho,
            max_sweeps=60,
            break_on_stall=True,
        )
        dt = time.perf_counter() - t0
        return offschur(W) / nrm, dt
    if solver == "randdiag":
        Q = np.eye(A.shape[0])
        t0 = time.perf_counter()
        _, Ac, _ = randdiag_jacobi(A, Q, rho, seed=seed, max_sweeps=60)
        dt = time.perf_counter() - t0
        return offdiag(Ac) / nrm, dt
    raise ValueError(f"unknown solver {solver!r}")


def cmd_bench_accuracy(args) -> int:
    classes = args.classes.split(",")
    sizes = [int(s) for s in args.sizes.split(",")]
    solvers = args.solvers.split(",")
    rows = []
    for cls in classes:
        for n in sizes:
            for solver in solvers:
                ratios = []
                seconds = []
                for t in range(args.trials):
                    seed = args.seed + 1000 * t
                    A, _ = genmat.generate(
                        genmat.EnsembleSpec(n=n, cls=cls, seed=seed)
                    )
                    ratio, dt = _run_solver(solver, A, args.rho, seed)
                    ratios.append(max(ratio, 1e-300))
                    seconds.append(dt)
                geo = math.exp(sum(math.log(r) for r in ratios) / len(ratios))
                rows.append(
                    {
                        "class": cls,
                        "n": n,
                        "solver": solver,
                        "trials": args.trials,
                        "seed": args.seed,
                        "ratio": f"{geo:.6e}",
                        "seconds": f"{median(seconds):.6e}",
                    }
                )
    _write_csv(args.out, rows)
    return 0


def cmd_bench_time(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",")]
    solvers = args.solvers.split(",")
    rows = []
    for n in sizes:
        times = {}
        for solver in solvers:
            seconds = []
            for t in range(args.trials):
                seed = args.seed + 1000 * t
                A, _ = genmat.generate(
                    genmat.EnsembleSpec(
                        n=n,
                        cls="alpha",
                        alpha1=args.alpha1,
                        alpha2=args.alpha2,
                        seed=seed,
                    )
                )
                _, dt = _run_solver(solver, A, args.rho, seed)
                seconds.append(dt)
            times[solver] = median(seconds)
        base = times.get("alg2")
        for solver in solvers:
            rel = times[solver] / base if base else float("nan")
            rows.append(
                {
                    "alpha1": args.alpha1,
                    "alpha2": args.alpha2,
                    "n": n,
                    "solver": solver,
                    "trials": args.trials,
                    "seed": args.seed,
                    "seconds": f"{times[solver]:.6e}",
                    "relative_to_alg2": f"{rel:.6f}",
                }
            )
    _write_csv(args.out, rows)
    return 0


def _write_csv(path: str, rows: list) -> None:
    if not rows:
        return
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)


def cmd_verify(args) -> int:
    try:
        A = read_matrix(args.matrix)
        S = read_matrix(args.s)
        Q = read_matrix(args.q)
    except (MatrixFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    n = A.shape[0]
    if S.shape[0] != n or Q.shape[0] != n:
        print("error: dimension mismatch between inputs", file=sys.stderr)
        return 1
    nrm = frobenius_norm(A)
    checks = {
        "reconstruction_residual": (
            frobenius_norm(A - Q @ S @ Q.T) / nrm if nrm else 0.0,
            1e-11 * n,
        ),
        "ortho_residual": (
            frobenius_norm(Q.T @ Q - np.eye(n)),
            1e-12 * n,
        ),
        "offschur_ratio": (offschur(S) / nrm if nrm else 0.0, args.rho),
    }
    failed = [
        name for name, (value, tol) in checks.items() if not value <= tol
    ]
    for name, (value, tol) in checks.items():
        print(f"{name} = {value:.6e} (tolerance {tol:.6e})")
    if failed:
        print(f"verification failed: {', '.join(failed)}", file=sys.stderr)
        return 2
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="normal-schur",
        description="Real Schur decomposition of real normal matrices",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="decompose a matrix file")
    p.add_argument("input")
    p.add_argument("--out", default="schur_out")
    p.add_argument("--rho", type=float, default=DEFAULT_RHO)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("generate", help="generate a test matrix")
    p.add_argument("--class", dest="cls", default="exp2")
    p.add_argument("--n", type=int, default=32)
    p.add_argument("--alpha1", type=float, default=0.0)
    p.add_argument("--alpha2", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="matrix.txt")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("bench-accuracy", help="accuracy comparison benchmark")
    p.add_argument("--classes", default="exp1,exp2,exp3,exp4,exp5")
    p.add_argument("--sizes", default="64,128")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rho", type=float, default=DEFAULT_RHO)
    p.add_argument("--solvers", default="alg2,zhou,randdiag")
    p.add_argument("--out", default="accuracy.csv")
    p.set_defaults(func=cmd_bench_accuracy)

    p = sub.add_parser("bench-time", help="timing comparison benchmark")
    p.add_argument("--alpha1", type=float, default=0.0)
    p.add_argument("--alpha2", type=float, default=0.0)
    p.add_argument("--sizes", default="64,128,256")
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rho", type=float, default=DEFAULT_RHO)
    p.add_argument("--solvers", default="alg2,zhou")
    p.add_argument("--out", default="timing.csv")
    p.set_defaults(func=cmd_bench_time)

    p = sub.add_parser("verify", help="re-check decomposition outputs")
    p.add_argument("matrix")
    p.add_argument("--s", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--rho", type=float, default=DEFAULT_RHO)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
