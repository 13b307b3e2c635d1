"""Command-line entry point: ``stargraph {enum,table1,series,verify,karabegov}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Any, Sequence

from . import __version__
from .enumerate import EnumSpec, GraphRecord, TABLE_ROWS, count_table, enumerate_graphs
from .golden import golden_counts
from .graph import Family, Stability, aut_order, graph_from_key
from .karabegov import Case, det_factorization_suite, low_order_obstruction_check
from .report import VerificationReport, frac_json
from .series import SeriesName, named_series
from .spectral import char_det
from .suites import SUITES, run_suite

SCHEMA_VERSION = "stargraph-output/1"
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
FORMATS = ("json", "csv", "latex", "text")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    points: int | None = None
    weight: int | None = None
    max_weight: int | None = None
    stability: str | None = None
    family: str | None = None
    max_ordinary: int | None = None
    which: str | None = None
    suite: str | None = None
    case: str | None = None
    order: int | None = None
    seed: int = 0
    trials: int | None = None
    max_vertices: int | None = None
    max_multiplicity: int | None = None
    fuzz: bool = False
    check: bool = False
    format: str = "json"
    timing: bool = False
    out: str | None = None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        known = {f for f in cls.__dataclass_fields__}
        return cls(**{k: v for k, v in vars(args).items() if k in known})

    def header(self) -> dict[str, Any]:
        d = asdict(self)
        d.pop("out")
        d.pop("timing")
        return d


# -- formatting ----------------------------------------------------------------

def _frac_text(x: Fraction) -> str:
    return str(x)


def _frac_latex(x: Fraction) -> str:
    if x.denominator == 1:
        return f"${x.numerator}$"
    sign = "-" if x < 0 else ""
    return f"${sign}\\frac{{{abs(x.numerator)}}}{{{x.denominator}}}$"


def _rows_csv(columns: list[str], rows: list[dict[str, Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_flat(r[c]) for c in columns])
    return buf.getvalue()


def _flat(v: Any) -> str:
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, list):
        return ";".join(map(str, v))
    return str(v)


def _rows_text(columns: list[str], rows: list[dict[str, Any]]) -> str:
    table = [columns] + [[_flat(r[c]) for c in columns] for r in rows]
    widths = [max(len(row[i]) for row in table) for i in range(len(columns))]
    return "".join("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() + "\n"
                   for row in table)


def _rows_latex(columns: list[str], rows: list[dict[str, Any]]) -> str:
    lines = ["\\begin{tabular}{|" + "|".join("l" if c == "key" else "r" for c in columns) + "|}",
             "\\hline", " & ".join(c.replace("_", "\\_") for c in columns) + " \\\\", "\\hline"]
    for r in rows:
        cells = []
        for c in columns:
            v = r[c]
            if isinstance(v, Fraction):
                cells.append(_frac_latex(v))
            elif c == "key":
                cells.append("\\texttt{" + str(v).replace("|", "\\textbar{}") + "}")
            else:
                cells.append(_flat(v))
        lines.append(" & ".join(cells) + " \\\\")
    lines += ["\\hline", "\\end{tabular}"]
    return "\n".join(lines) + "\n"


def _jsonify(v: Any) -> Any:
    if isinstance(v, Fraction):
        return frac_json(v)
    if isinstance(v, dict):
        return {k: _jsonify(x) for k, x in v.items()}
    if isinstance(v, list):
        return [_jsonify(x) for x in v]
    return v


def render(config: RunConfig, kind: str, columns: list[str], rows: list[dict[str, Any]],
           extra: dict[str, Any] | None = None) -> str:
    if config.format == "json":
        doc = {"schema": SCHEMA_VERSION, "version": __version__, "kind": kind,
               "config": config.header(), "rows": _jsonify(rows)}
        if extra:
            doc.update(_jsonify(extra))
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if config.format == "csv":
        return _rows_csv(columns, rows)
    if config.format == "latex":
        return _rows_latex(columns, rows)
    return _rows_text(columns, rows)


def render_report(config: RunConfig, report: VerificationReport) -> str:
    body = report.to_json(include_time=config.timing)
    if config.format == "json":
        doc = {"schema": SCHEMA_VERSION, "version": __version__, "kind": "report",
               "config": config.header(), "report": body}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    rows = [{"key": f.key, "expected": f.expected, "actual": f.actual} for f in report.failures]
    summary = {"suite": report.suite, "instances": report.instances, "passed": report.passed,
               "ok": report.ok}
    if config.format == "csv":
        return _rows_csv(list(summary), [summary]) + _rows_csv(["key", "expected", "actual"], rows)
    if config.format == "latex":
        return _rows_latex(list(summary), [summary])
    text = report.summary() + "\n"
    if rows:
        text += _rows_text(["key", "expected", "actual"], rows)
    return text


# -- commands --------------------------------------------------------------------

def _stability(config: RunConfig, default: str = "stable") -> Stability:
    st = Stability(config.stability or default)
    if st is Stability.SCON and config.max_ordinary is None:
        raise UsageError("--stability scon requires --max-ordinary")
    return st


def _record_row(key: str, coefficient: Fraction | None = None) -> dict[str, Any]:
    g = graph_from_key(key)
    if g.marked_count == 1:
        rec = asdict(GraphRecord.of(key))
    else:
        rec = {"key": key, "weight": g.weight, "edge_count": g.edge_count,
               "ordinary_count": g.ordinary_count, "aut": aut_order(g), "det": char_det(g),
               "families": []}
    if coefficient is not None:
        rec["coefficient"] = coefficient
    return rec


def cmd_enum(config: RunConfig) -> tuple[str, int]:
    if config.weight is None:
        raise UsageError("enum requires --weight")
    points = 1 if config.points is None else config.points
    try:
        spec = EnumSpec(points, config.weight, _stability(config), Family(config.family or "all"),
                        config.max_ordinary)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rows = [_record_row(k) for k in enumerate_graphs(spec)]
    cols = ["key", "weight", "edge_count", "ordinary_count", "aut", "det", "families"]
    return render(config, "graphs", cols, rows, {"count": len(rows)}), EXIT_OK


def cmd_table1(config: RunConfig) -> tuple[str, int]:
    kmax = 6 if config.max_weight is None else config.max_weight
    if kmax < 0:
        raise UsageError("--max-weight must be non-negative")
    table = count_table(kmax)
    rows = [{"family": f.value, **{str(k): c for k, c in enumerate(table[f])}} for f in TABLE_ROWS]
    cols = ["family"] + [str(k) for k in range(kmax + 1)]
    code, diff = EXIT_OK, []
    if config.check:
        golden = golden_counts()
        for f in TABLE_ROWS:
            for k, c in enumerate(table[f]):
                ref = golden[f.value]
                if k < len(ref) and ref[k] != c:
                    diff.append({"family": f.value, "weight": k, "expected": ref[k], "actual": c})
        if diff:
            code = EXIT_FAIL
            for d in diff:
                print(f"mismatch {d['family']} k={d['weight']}: expected {d['expected']}, got {d['actual']}",
                      file=sys.stderr)
    extra = {"check": {"performed": config.check, "mismatches": diff}}
    return render(config, "count-table", cols, rows, extra), code


def cmd_series(config: RunConfig) -> tuple[str, int]:
    if config.which is None:
        raise UsageError("series requires --which")
    kmax = 3 if config.max_weight is None else config.max_weight
    name = SeriesName(config.which)
    default = "ss" if name is SeriesName.BERGMAN_LOG else "stable"
    stability = _stability(config, default)
    try:
        s = named_series(name, kmax, stability, config.max_ordinary)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    lo = config.weight
    rows = [_record_row(k, c) for k, c in s.items() if lo is None or graph_from_key(k).weight == lo]
    cols = ["key", "weight", "coefficient", "aut", "det", "families"]
    return render(config, "series", cols, rows, {"count": len(rows)}), EXIT_OK


def cmd_verify(config: RunConfig) -> tuple[str, int]:
    if config.suite is None:
        raise UsageError("verify requires --suite")
    extra = {k: v for k, v in (("max_vertices", config.max_vertices),
                               ("max_multiplicity", config.max_multiplicity)) if v is not None}
    if extra and config.suite != "coefficient-theorem":
        raise UsageError("--max-vertices and --max-multiplicity only apply to coefficient-theorem")
    report = run_suite(config.suite, config.max_weight, config.trials, config.seed, config.max_ordinary,
                       **extra)
    return render_report(config, report), EXIT_OK if report.ok else EXIT_FAIL


def cmd_karabegov(config: RunConfig) -> tuple[str, int]:
    if config.fuzz:
        report = det_factorization_suite(trials=200 if config.trials is None else config.trials,
                                         seed=config.seed)
    else:
        if config.case is None or config.order is None:
            raise UsageError("karabegov requires --case and --order (or --fuzz)")
        report = low_order_obstruction_check(Case(config.case), config.order)
    return render_report(config, report), EXIT_OK if report.ok else EXIT_FAIL


COMMANDS = {"enum": cmd_enum, "table1": cmd_table1, "series": cmd_series,
            "verify": cmd_verify, "karabegov": cmd_karabegov}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="json")
    common.add_argument("--out", help="write output to this path instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--timing", action="store_true", help="include wall times in reports")

    p = argparse.ArgumentParser(prog="stargraph", description="Exact graph series for Kähler star products.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enum", parents=[common], help="list graphs of one weight")
    e.add_argument("--points", type=int, choices=(0, 1, 2, 3), default=1)
    e.add_argument("--weight", type=int, required=True)
    e.add_argument("--class", dest="family", choices=[f.value for f in Family], default="all")
    e.add_argument("--stability", choices=[s.value for s in Stability], default="stable")
    e.add_argument("--max-ordinary", type=int)

    t = sub.add_parser("table1", parents=[common], help="counts of stable one-pointed graphs")
    t.add_argument("--max-weight", type=int, default=6)
    t.add_argument("--check", action="store_true", help="compare with the stored counts")

    s = sub.add_parser("series", parents=[common], help="print a named series")
    s.add_argument("--which", choices=[n.value for n in SeriesName], required=True)
    s.add_argument("--max-weight", type=int, default=3)
    s.add_argument("--weight", type=int, help="only print this weight layer")
    s.add_argument("--stability", choices=[x.value for x in Stability])
    s.add_argument("--max-ordinary", type=int)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("--suite", choices=SUITES, required=True)
    v.add_argument("--max-weight", type=int)
    v.add_argument("--max-ordinary", type=int)
    v.add_argument("--trials", "--random-trials", dest="trials", type=int)
    v.add_argument("--max-vertices", type=int, help="random digraph size cap (coefficient-theorem)")
    v.add_argument("--max-multiplicity", type=int, help="random digraph multiplicity cap (coefficient-theorem)")

    k = sub.add_parser("karabegov", parents=[common], help="legged-graph obstruction fixtures")
    k.add_argument("--case", choices=[c.value for c in Case])
    k.add_argument("--order", type=int, choices=(0, 1, 2))
    k.add_argument("--fuzz", action="store_true", help="run the block determinant fuzz suite")
    k.add_argument("--trials", type=int)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    config = RunConfig.from_args(args)
    try:
        text, code = COMMANDS[config.command](config)
    except UsageError as exc:
        print(f"stargraph {config.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if config.out:
        with open(config.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
