"""Command-line front end: ``revpriv check|generate|explain``.

Exit status for ``check``: 0 rationalizable, 1 not rationalizable,
2 usage or input error. The JSON report goes to stdout (or ``--output``);
a one-line human summary goes to stderr unless ``--quiet``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import additive, core, reports
from .errors import LevelCapExceeded, RevPrivError
from .levelk import DEFAULT_LEVEL_CAP, TargetOrder

EXIT_OK, EXIT_REFUTED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def level_cap() -> int:
    raw = os.environ.get("REVPRIV_LEVEL_CAP")
    if raw is None:
        return DEFAULT_LEVEL_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise UsageError(f"REVPRIV_LEVEL_CAP must be an integer, got {raw!r}") from None
    if cap < 1:
        raise UsageError("REVPRIV_LEVEL_CAP must be at least 1")
    return cap


def _format_for(path: Path, fmt: str | None) -> str:
    if fmt:
        return fmt
    return "csv" if path.suffix.lower() == ".csv" else "json"


def _read_problem(path: str, fmt: str | None) -> core.ChoiceProblem:
    p = Path(path)
    try:
        with p.open("rb") as fh:
            return core.load_problem(fh, _format_for(p, fmt))
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _target(args, p: core.ChoiceProblem) -> TargetOrder | None:
    if not args.target_order:
        return None
    target = TargetOrder.parse(args.target_order)
    try:
        target.check_total(p)
    except ValueError as exc:
        raise UsageError(f"--target-order: {exc}") from None
    return target


def _check_one(args, p: core.ChoiceProblem, cap: int) -> reports.Report:
    if args.model == "levelk" and args.k is None:
        raise UsageError("--model levelk requires --k")
    if args.model == "separable" and args.k not in (None, 1):
        raise UsageError("--model separable is level-k with k=1; drop --k or use --model levelk")
    if args.k is not None and args.k < 1:
        raise UsageError("--k must be at least 1")
    if args.k is not None and args.model not in ("levelk", "separable"):
        raise UsageError(f"--k does not apply to --model {args.model}")
    return reports.check(p, args.model, k=args.k, target=_target(args, p), cap=cap, timing=args.timing)


def cmd_check(args) -> int:
    cap = level_cap()
    if bool(args.input) == bool(args.input_dir):
        raise UsageError("give exactly one of --input or --input-dir")
    if args.input:
        report = _check_one(args, _read_problem(args.input, args.format), cap)
        _write(report.to_json(), args.output)
        if not args.quiet:
            print(report.summary(), file=sys.stderr)
        return EXIT_OK if report.rationalizable else EXIT_REFUTED

    files = sorted(
        f for f in Path(args.input_dir).iterdir() if f.suffix.lower() in (".json", ".csv")
    )
    batch = []
    all_ok = True
    for f in files:
        report = _check_one(args, _read_problem(str(f), args.format), cap)
        all_ok &= report.rationalizable
        batch.append({"input": f.name, "report": report.to_dict()})
        if not args.quiet:
            print(f"{f.name}: {report.summary()}", file=sys.stderr)
    _write(json.dumps(batch, indent=2, ensure_ascii=False) + "\n", args.output)
    return EXIT_OK if all_ok else EXIT_REFUTED


def cmd_generate(args) -> int:
    try:
        p, model = additive.generate_additive(args.alternatives, args.menus, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write(core.dump_problem(p, args.format or "json"), args.output)
    if args.truth:
        Path(args.truth).write_text(json.dumps(model.to_json(), indent=2) + "\n", encoding="utf-8")
    if not args.quiet:
        print(
            f"generated {len(p.observations)} observations over {len(p.alternatives)} alternatives "
            f"from an additive model (seed={args.seed})",
            file=sys.stderr,
        )
    return EXIT_OK


def cmd_explain(args) -> int:
    p = _read_problem(args.input, args.format)
    doc = reports.explain(p, target=_target(args, p), cap=level_cap())
    _write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n", args.output)
    if args.system_csv:
        Path(args.system_csv).write_text(additive.build_inequality_system(p).to_csv(), encoding="utf-8")
    if not args.quiet:
        for model, ok in doc["verdicts"].items():
            print(f"{model:>10}: {'rationalizable' if ok else 'NOT rationalizable'}", file=sys.stderr)
        for sec in doc["ry_relations"]:
            if sec["cycle"]:
                print(f"R^{sec['y']} cycle: {' > '.join(sec['cycle'])}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="revpriv",
        description="Rationalizability tests for choice data under privacy-aware preference models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(sp, with_input=True):
        if with_input:
            sp.add_argument("--input", help="dataset file (JSON or CSV)")
        sp.add_argument("--format", choices=("json", "csv"), help="dataset format (default: by file extension)")
        sp.add_argument("--output", help="write the JSON result here instead of stdout")
        sp.add_argument("--quiet", action="store_true", help="no human summary on stderr")

    c = sub.add_parser("check", help="test one dataset against one model")
    c.add_argument("--model", required=True, choices=reports.MODELS)
    c.add_argument("--k", type=int, help="level for --model levelk")
    c.add_argument("--target-order", help='target order over alternatives, best first, e.g. "a>b>c"')
    c.add_argument("--input-dir", help="check every .json/.csv file in a directory")
    c.add_argument("--timing", action="store_true", help="add elapsed time to diagnostics (breaks byte-identical output)")
    add_io(c)
    c.set_defaults(func=cmd_check)

    g = sub.add_parser("generate", help="sample a dataset from a random additive model")
    g.add_argument("--alternatives", type=int, default=4, metavar="N")
    g.add_argument("--menus", type=int, default=6, metavar="M")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--truth", help="also write the generating model as JSON")
    add_io(g, with_input=False)
    g.set_defaults(func=cmd_generate)

    e = sub.add_parser("explain", help="dump revealed relations, R^y graphs, the inequality system and verdicts")
    e.add_argument("--target-order", help="target order used for the separable verdict")
    e.add_argument("--system-csv", help="also write the inequality system as CSV")
    add_io(e)
    e.set_defaults(func=cmd_explain)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "explain" and not args.input:
        parser.error("explain requires --input")
    try:
        return args.func(args)
    except (UsageError, RevPrivError, ValueError) as exc:
        if isinstance(exc, LevelCapExceeded):
            exc = UsageError(f"{exc}; raise it with REVPRIV_LEVEL_CAP")
        print(f"revpriv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
