"""Batch command-line interface and service launcher.

Exit codes: 0 ok, 1 validation failure, 2 computation failure, 3 I/O
failure.  All commands are deterministic: identical inputs produce
byte-identical outputs.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import socket
import sys
from pathlib import Path

from riskweave import pipeline
from riskweave.analysis import largest_shifts
from riskweave.judgments import JudgmentError, matrix_from_judgments
from riskweave.model import ModelError
from riskweave.priority import CR_THRESHOLD, consistency
from riskweave.store import LoadedModel, StoreError, load_model_file
from riskweave.supermatrix import Supermatrix, SupermatrixError

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_COMPUTATION = 2
EXIT_IO = 3


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _load(path: str) -> LoadedModel:
    return load_model_file(path)


def cmd_validate(args) -> int:
    try:
        model = _load(args.model)
    except OSError as exc:
        return _fail(EXIT_IO, f"cannot read {args.model}: {exc}")
    except (StoreError, ModelError, JudgmentError) as exc:
        return _fail(EXIT_VALIDATION, str(exc))

    rows = []
    for ctx in model.contexts:
        matrix = model.matrices.get(ctx.id)
        if matrix is None:
            continue
        rows.append(consistency(matrix))

    print(f"{'context':44s} {'n':>2s} {'lambda':>10s} {'CI':>9s} {'CR':>9s} flag")
    violations = 0
    for r in rows:
        flag = "ok" if r.acceptable else f"CR>{CR_THRESHOLD}"
        if not r.acceptable:
            violations += 1
        print(f"{r.context:44s} {r.n:2d} {r.lambda_max:10.6f} {r.ci:9.6f} {r.cr:9.6f} {flag}")
    print(f"{len(rows)} matrices, {violations} above the {CR_THRESHOLD} threshold")

    if args.strict and violations:
        return EXIT_VALIDATION
    return EXIT_OK


def _write_supermatrix_csv(path: Path, matrix: Supermatrix) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow([""] + list(matrix.index))
        for i, eid in enumerate(matrix.index):
            writer.writerow([eid] + [f"{float(v):.6g}" for v in matrix.entries[i]])


def _run_pipeline(args) -> tuple[LoadedModel, pipeline.PipelineResult] | int:
    try:
        model = _load(args.model)
    except OSError as exc:
        return _fail(EXIT_IO, f"cannot read {args.model}: {exc}")
    except (StoreError, ModelError, JudgmentError) as exc:
        return _fail(EXIT_VALIDATION, str(exc))
    try:
        result = pipeline.solve(model, weights_source=args.weights_source)
    except pipeline.IncompleteModelError as exc:
        for ctx, pairs in exc.gaps.items():
            print(f"missing in {ctx}: {', '.join(f'({a}, {b})' for a, b in pairs)}", file=sys.stderr)
        return _fail(EXIT_VALIDATION, str(exc))
    except SupermatrixError as exc:
        return _fail(EXIT_COMPUTATION, str(exc))
    except (StoreError, ValueError) as exc:
        return _fail(EXIT_VALIDATION, str(exc))
    return model, result


def cmd_solve(args) -> int:
    outcome = _run_pipeline(args)
    if isinstance(outcome, int):
        return outcome
    model, result = outcome

    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        with open(out / "rpn_table.csv", "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow(
                ["cause", "severity", "occurrence", "detection",
                 "rpn_classic", "rpn_weighted", "rank_classic", "rank_weighted"]
            )
            for r in result.records:
                writer.writerow(
                    [r.item.cause, r.item.severity, r.item.occurrence, r.item.detection,
                     r.rpn_classic, f"{r.rpn_weighted:.4f}", r.rank_classic, r.rank_weighted]
                )
        _write_supermatrix_csv(out / "supermatrix_unweighted.csv", result.unweighted)
        _write_supermatrix_csv(out / "supermatrix_weighted.csv", result.weighted)
        _write_supermatrix_csv(out / "supermatrix_limit.csv", result.limit_matrix)
        report = pipeline.results_payload(model, result)
        with open(out / "report.json", "w", encoding="utf-8") as f:
            json.dump(report, f, indent=2, sort_keys=True)
            f.write("\n")
    except OSError as exc:
        return _fail(EXIT_IO, f"cannot write outputs to {out}: {exc}")

    print(f"wrote rpn_table.csv, supermatrix_*.csv, report.json to {out}")
    return EXIT_OK


def cmd_compare(args) -> int:
    outcome = _run_pipeline(args)
    if isinstance(outcome, int):
        return outcome
    model, result = outcome
    report = result.report
    if report is None:
        return _fail(EXIT_VALIDATION, "model carries no FMEA items to compare")

    print(f"{'cause':42s} {'RPN':>6s} {'wRPN':>10s} {'rank':>4s} {'wrank':>5s} {'shift':>5s}")
    for row in report.rows:
        print(
            f"{row.cause:42s} {row.rpn_classic:6d} {row.rpn_weighted:10.4f} "
            f"{row.rank_classic:4d} {row.rank_weighted:5d} {row.rank_shift:+5d}"
        )
    print()
    print("shift sign: positive = more critical under the weighted ranking")
    print(f"tie groups (classic): {dict(report.tie_groups_classic) or 'none'}")
    print(f"tie groups (weighted): {dict(report.tie_groups_weighted) or 'none'}")
    print(f"weighted RPN exceeds classic on {report.weighted_exceeds_classic} of {len(report.rows)} causes")
    print(f"rank correlation (Spearman, tie-corrected): {report.rank_correlation:.6f}")
    top = largest_shifts(report, min(3, len(report.rows)))
    print("largest shifts: " + "; ".join(
        f"{r.cause} ({r.rank_classic} -> {r.rank_weighted})" for r in top
    ))
    return EXIT_OK


def cmd_serve(args) -> int:
    try:
        host, port_text = args.addr.rsplit(":", 1)
        port = int(port_text)
    except ValueError:
        return _fail(EXIT_VALIDATION, f"bad --addr {args.addr!r}, expected host:port")

    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind((host, port))
    except OSError as exc:
        return _fail(EXIT_IO, f"cannot bind {args.addr}: {exc}")
    finally:
        probe.close()

    import uvicorn

    from riskweave.service import create_app

    app = create_app(store_root=args.store, cors_allow_origin=args.cors_allow_origin)
    uvicorn.run(app, host=host, port=port, log_level="info")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="riskweave",
        description="Dependency-weighted FMEA risk ranking: validate, solve, compare, serve",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="consistency table for every matrix in a model")
    p.add_argument("model", help="model.json path")
    p.add_argument("--strict", action="store_true", help=f"fail when any CR exceeds {CR_THRESHOLD}")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("solve", help="run the pipeline and write CSV/JSON outputs")
    p.add_argument("model")
    p.add_argument("--weights-source", choices=["computed", "paper"], default="computed")
    p.add_argument("--out", default="out", help="output directory")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("compare", help="classic vs weighted ranking table")
    p.add_argument("model")
    p.add_argument("--weights-source", choices=["computed", "paper"], default="computed")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--addr", default=os.environ.get("RISKWEAVE_ADDR", "127.0.0.1:8642"))
    p.add_argument("--store", default=os.environ.get("RISKWEAVE_STORE", "riskweave-data"))
    p.add_argument("--cors-allow-origin", default=os.environ.get("RISKWEAVE_CORS_ALLOW_ORIGIN"))
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
