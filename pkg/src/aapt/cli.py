"""Command-line front end: ``aapt {analyze,tomography,sweep,scaling,construct}``.

Exit codes: 0 success, 1 bad input (parse error, unphysical state, invalid
parameters), 2 unfaithful input state.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import formats
from . import states as st
from .faithfulness import analyze as analyze_tau
from .geometry import qubit_scaling
from .linalg import SINGULAR_TOL, SingularMatrix
from .sweep import SweepConfig, rows_to_csv, run_sweep
from .tomography import NoiseModel, aapt_batch, error_stats

EXIT_OK, EXIT_INPUT, EXIT_UNFAITHFUL = 0, 1, 2


class InputError(Exception):
    pass


def _json_safe(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None if math.isnan(x) else ("inf" if x > 0 else "-inf")
    if isinstance(x, dict):
        return {k: _json_safe(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_json_safe(v) for v in x]
    if isinstance(x, np.generic):
        return _json_safe(x.item())
    return x


def _emit(text: str, output: str | None, out) -> None:
    if output:
        Path(output).write_text(text)
    else:
        out.write(text)


def _load_state(path):
    try:
        return formats.parse_state(path)
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"cannot read state {path}: {exc}") from exc


def cmd_analyze(args, out) -> int:
    rho = _load_state(args.state)
    report = analyze_tau(st.tau_from_rho(rho), args.tol)
    _emit(json.dumps(_json_safe(report.to_row()), indent=2) + "\n", args.output, out)
    return EXIT_OK if report.faithful else EXIT_UNFAITHFUL


def cmd_tomography(args, out) -> int:
    rho = _load_state(args.state)
    try:
        channel = formats.parse_channel(args.channel)
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"cannot read channel {args.channel}: {exc}") from exc
    if args.runs < 1 or args.sigma < 0:
        raise InputError("--runs must be >= 1 and --sigma >= 0")
    tau_in = st.tau_from_rho(rho)
    noise = NoiseModel.gaussian(args.sigma, args.seed) if args.sigma > 0 else NoiseModel(seed=args.seed)
    try:
        runs = aapt_batch(tau_in, channel, noise, args.runs, args.tol)
    except SingularMatrix as exc:
        sys.stderr.write(f"state is not faithful: |det(tau_in)| = {exc.det:.3e} <= {exc.tol:.1e}\n")
        return EXIT_UNFAITHFUL
    summary = error_stats(channel.chi_tilde(), runs)
    doc = {
        "chi_tilde_true": channel.chi_tilde().tolist(),
        "result": runs[0].to_json(),
        "runs": [{"error_vs_truth": r.error_vs_truth, "error_ratio": r.error_ratio()} for r in runs],
        "summary": summary.as_dict(),
    }
    _emit(json.dumps(_json_safe(doc), indent=2) + "\n", args.output, out)
    return EXIT_OK


def cmd_sweep(args, out) -> int:
    try:
        config = SweepConfig.from_json(args.config)
    except (OSError, json.JSONDecodeError, TypeError, ValueError) as exc:
        raise InputError(f"cannot read sweep config {args.config}: {exc}") from exc
    if args.workers is not None:
        config = SweepConfig(**{**config.__dict__, "workers": args.workers})
    text = rows_to_csv(run_sweep(config))
    _emit(text, args.output or config.output, out)
    return EXIT_OK


def cmd_scaling(args, out) -> int:
    if args.max_n < 1:
        raise InputError("--max-n must be at least 1")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["N", "M", "kappa", "log10_det"])
    for n in range(1, args.max_n + 1):
        rep = qubit_scaling(n)
        writer.writerow([n, rep.m, repr(rep.kappa), repr(rep.log10_det_abs)])
    _emit(buf.getvalue(), args.output, out)
    return EXIT_OK


def cmd_construct(args, out) -> int:
    if args.kind == "tetra-optimal":
        doc = formats.spec_to_json(st.optimal_separable_spec(args.orientation))
    elif args.kind == "werner":
        if args.p is None:
            raise InputError("werner needs --p")
        doc = {"kind": "werner", "p": args.p, "bell": args.bell}
    elif args.kind == "x":
        if args.s is None:
            raise InputError("x needs --s S1 S2 S3")
        doc = {"kind": "x", "s": list(args.s)}
    else:  # pragma: no cover - argparse restricts choices
        raise InputError(f"unknown kind {args.kind}")
    _load_state(doc)
    _emit(formats.dump(doc), args.output, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="aapt", description="Ancilla-assisted process tomography toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="faithfulness report for a state file")
    p.add_argument("state")
    p.add_argument("--tol", type=float, default=SINGULAR_TOL)
    p.add_argument("--output")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("tomography", help="simulate AAPT of a channel with a given input state")
    p.add_argument("state")
    p.add_argument("channel")
    p.add_argument("--sigma", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--runs", type=int, default=1)
    p.add_argument("--tol", type=float, default=SINGULAR_TOL)
    p.add_argument("--output")
    p.set_defaults(func=cmd_tomography)

    p = sub.add_parser("sweep", help="Monte Carlo sweep driven by a JSON config, CSV out")
    p.add_argument("config")
    p.add_argument("--output")
    p.add_argument("--workers", type=int)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("scaling", help="best separable |det| and kappa for N system qubits, CSV out")
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--output")
    p.set_defaults(func=cmd_scaling)

    p = sub.add_parser("construct", help="write a state file")
    p.add_argument("--kind", choices=("tetra-optimal", "werner", "x"), required=True)
    p.add_argument("--p", type=float)
    p.add_argument("--bell", default="phi+", choices=st.BELL_KINDS)
    p.add_argument("--s", type=float, nargs=3)
    p.add_argument("--orientation", type=int, default=-1, choices=(-1, 1))
    p.add_argument("--output")
    p.set_defaults(func=cmd_construct)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
