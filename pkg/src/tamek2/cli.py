"""Command-line entry point: ``tamek2 {fourrank,matrix,survey,verify,classnumber}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from tamek2.classnum import class_number_definite, narrow_class_number
from tamek2.errors import ConsistencyFailure, DomainError
from tamek2.hk_matrix import four_rank_k2
from tamek2.survey import compare_with_published, run_survey
from tamek2.verify import SUITES, run_suite
from tamek2.zsqrt2 import load_prime_rep_cache

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MISMATCH = 2
EXIT_CONSISTENCY = 3
EXIT_DOMAIN = 4

FORMATS = ("json", "csv", "text")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; route it to our code instead
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _positive_int(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


@dataclass(frozen=True)
class CliConfig:
    subcommand: str
    args: argparse.Namespace
    format: str


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tamek2", description="4-ranks of tame kernels of real quadratic fields.")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None, help="output serialization")
    sub = parser.add_subparsers(dest="subcommand", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("fourrank", parents=[common], help="4-rank report for Q(sqrt d)")
    p.add_argument("d", type=int)

    p = sub.add_parser("matrix", parents=[common], help="print the Hilbert-symbol matrix of d")
    p.add_argument("d", type=int)

    p = sub.add_parser("survey", parents=[common], help="4-rank census over X in [min, max)")
    p.add_argument("--min", dest="min_d", type=int, required=True)
    p.add_argument("--max", dest="max_d", type=int, required=True)
    p.add_argument("--jobs", type=_positive_int, default=os.cpu_count() or 1)
    p.add_argument("--out", type=Path, default=None, help="write per-d rows as CSV")
    p.add_argument("--golden", action="store_true", help="exit 2 unless the published census is matched")

    p = sub.add_parser("verify", parents=[common], help="run a property sweep")
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--limit", type=_positive_int, default=None)
    p.add_argument("--samples", type=_positive_int, default=None)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("classnumber", parents=[common], help="class number of discriminant D")
    p.add_argument("D", type=int)
    return parser


def parse_config(argv: list[str]) -> CliConfig:
    args = build_parser().parse_args(argv)
    fmt = args.format or ("text" if args.subcommand == "matrix" else "json")
    if args.subcommand == "survey" and (args.min_d < 2 or args.max_d <= args.min_d):
        raise UsageError(f"survey: need 2 <= --min < --max, got [{args.min_d}, {args.max_d})")
    if args.subcommand == "survey" and args.out is not None:
        parent = args.out.parent if str(args.out.parent) else Path(".")
        if not parent.is_dir() or not os.access(parent, os.W_OK):
            raise UsageError(f"survey: cannot write to {args.out}")
    return CliConfig(args.subcommand, args, fmt)


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _text_pairs(data: dict) -> str:
    return "\n".join(f"{k}: {json.dumps(v) if isinstance(v, (dict, list)) else v}" for k, v in data.items())


def _cmd_fourrank(cfg: CliConfig, err) -> tuple[str, int]:
    report = four_rank_k2(cfg.args.d)
    data = report.to_dict()
    if cfg.format == "json":
        return json.dumps(data), EXIT_OK
    if cfg.format == "csv":
        return _csv_text(list(data), [list(data.values())]), EXIT_OK
    return _text_pairs(data) + "\n\n" + report.matrix.format(), EXIT_OK


def _cmd_matrix(cfg: CliConfig, err) -> tuple[str, int]:
    m = four_rank_k2(cfg.args.d).matrix
    if cfg.format == "json":
        return json.dumps(m.to_dict()), EXIT_OK
    if cfg.format == "csv":
        rows = [[label, *row] for label, row in zip(m.row_labels, m.entries)]
        return _csv_text(["row", *m.col_labels], rows), EXIT_OK
    return m.format(), EXIT_OK


def _cmd_survey(cfg: CliConfig, err) -> tuple[str, int]:
    a = cfg.args
    try:
        load_prime_rep_cache(a.max_d // (17 * 41) + 2)
    except OSError as exc:
        print(f"warning: prime representation cache unavailable ({exc})", file=err)
    tally, _ = run_survey(a.min_d, a.max_d, jobs=a.jobs, out_path=a.out)
    report = compare_with_published(tally)
    code = EXIT_OK
    if a.golden:
        golden = report.get("golden")
        if golden is None:
            print("golden verdict requested but the range is not the published one", file=err)
            code = EXIT_MISMATCH
        elif not golden["match"]:
            print("census does not match the published counts", file=err)
            code = EXIT_MISMATCH
    data = {"tally": tally.to_dict(), "comparison": report}
    if cfg.format == "json":
        return json.dumps(data), code
    if cfg.format == "csv":
        rows = [[r, tally.counts[r]] for r in sorted(tally.counts)]
        return _csv_text(["four_rank", "count"], rows), code
    lines = [f"range: [{tally.min_d}, {tally.max_d})", f"total: {tally.total}"]
    lines += [f"rank {r}: {tally.counts[r]}" for r in sorted(tally.counts)]
    if "golden" in report:
        lines.append(f"golden match: {report['golden']['match']}")
    return "\n".join(lines), code


def _cmd_verify(cfg: CliConfig, err) -> tuple[str, int]:
    a = cfg.args
    summary = run_suite(a.suite, a.limit, a.samples, a.seed)
    code = EXIT_OK if summary["passed"] else EXIT_CONSISTENCY
    if cfg.format == "json":
        return json.dumps(summary), code
    keys = ["suite", "limit", "checked", "failures", "skipped", "passed"]
    if cfg.format == "csv":
        return _csv_text(keys, [[summary[k] for k in keys]]), code
    text = _text_pairs({k: summary[k] for k in keys})
    if summary["counterexamples"]:
        text += "\ncounterexamples:\n" + "\n".join(json.dumps(c) for c in summary["counterexamples"])
    return text, code


def _cmd_classnumber(cfg: CliConfig, err) -> tuple[str, int]:
    D = cfg.args.D
    if D > 0:
        s = narrow_class_number(D)
        data = {"D": D, "h_plus": s.h_plus, "cycle_sizes": list(s.cycle_sizes)}
    else:
        data = {"D": D, "h": class_number_definite(D), "cycle_sizes": None}
    if cfg.format == "json":
        return json.dumps(data), EXIT_OK
    if cfg.format == "csv":
        sizes = data["cycle_sizes"]
        row = [v if k != "cycle_sizes" else (" ".join(map(str, sizes)) if sizes else "") for k, v in data.items()]
        return _csv_text(list(data), [row]), EXIT_OK
    return _text_pairs(data), EXIT_OK


COMMANDS = {
    "fourrank": _cmd_fourrank,
    "matrix": _cmd_matrix,
    "survey": _cmd_survey,
    "verify": _cmd_verify,
    "classnumber": _cmd_classnumber,
}


def run_cli(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = parse_config(argv)
    except UsageError as exc:
        print(exc, file=stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    try:
        out, code = COMMANDS[cfg.subcommand](cfg, stderr)
    except ConsistencyFailure as exc:
        print(f"consistency failure: {exc}", file=stderr)
        if exc.counterexample:
            print(json.dumps(exc.counterexample, default=str), file=stderr)
        return EXIT_CONSISTENCY
    except DomainError as exc:
        print(f"domain error: {exc}", file=stderr)
        return EXIT_DOMAIN
    print(out, file=stdout)
    return code


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
