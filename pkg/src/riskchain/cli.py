"""Command-line entry point.

Exit status: 0 on success, 1 on domain errors, 2 on usage or configuration
errors.  Settings resolve as explicit flag, then ``./riskchain.json`` (or
``--config``), then bundled defaults.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from ._resources import load_json
from .allocation import plan_team
from .charts import ChartSpec, render_chart
from .diagnostics import (
    ClassificationRules,
    FormatRules,
    classify_error,
    default_class_rules,
    default_format_rules,
    error_histogram,
    histogram_to_json,
    parse_diagnostics,
)
from .errors import ConfigError, RiskChainError
from .metrics import (
    LOC_MODES,
    LevelThresholds,
    MetricsConfig,
    MetricsReport,
    ProgramLevel,
    TokenCounts,
    TokenProfile,
    aggregate_authors,
    analyze,
    default_profile,
)
from .riskmodel import RiskFactorCatalog, RiskLevel, assess, default_catalog, parse_observed
from .skillsets import parse_skills_profile

log = logging.getLogger("riskchain")

CONFIG_NAME = "riskchain.json"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="riskchain", description="Code metrics, error taxonomy, risk scoring and team allocation.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help=f"JSON config file (default: ./{CONFIG_NAME} when present)")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("metrics", help="LOC, operator/operand totals and program volume")
    p.add_argument("paths", nargs="+", help="source files or directories")
    p.add_argument("--profile", help="token profile JSON")
    p.add_argument("--loc-mode", choices=LOC_MODES)
    p.add_argument("--log-base", type=float)
    p.add_argument("--v-low", type=float, help="upper volume bound of the Low tier")
    p.add_argument("--v-high", type=float, help="upper volume bound of the Medium tier")
    p.add_argument("--author", help="author label attached to every unit")
    p.add_argument("--json", dest="json_out", help="write JSON here instead of stdout")

    p = sub.add_parser("diagnose", help="parse a compiler log and classify its errors")
    p.add_argument("log")
    p.add_argument("--format-rules")
    p.add_argument("--class-rules")
    p.add_argument("--author", help="author label (default: log file stem)")
    p.add_argument("--json", dest="json_out")

    p = sub.add_parser("risk", help="risk percentage and bucket for observed factors")
    p.add_argument("--factors", required=True, help="observed factors, JSON list or CSV")
    p.add_argument("--catalog")
    p.add_argument("--major-threshold", help="lowest level counted as major effect (default High)")
    p.add_argument("--json", dest="json_out")

    p = sub.add_parser("team", help="pair VSPs with HSPs and report team risk")
    p.add_argument("--skills", required=True, help="skills profile JSON")
    p.add_argument("--chain", action="store_true", help="also optimize the chain order")
    p.add_argument("--min-expert", type=int)
    p.add_argument("--min-moderate", type=int)
    p.add_argument("--json", dest="json_out")

    p = sub.add_parser("report", help="render a chart from earlier JSON outputs")
    p.add_argument("--from", dest="sources", nargs="+", required=True, metavar="JSON")
    p.add_argument("--chart", choices=("errors", "risk"), required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--style", choices=("svg", "ascii"), default="svg")
    p.add_argument("--title")
    p.add_argument("--json", dest="json_out", help="also write the aggregated data")
    return parser


def _load_config(path) -> tuple[dict, Path]:
    if path:
        return load_json(path), Path(path).resolve().parent
    local = Path.cwd() / CONFIG_NAME
    if local.is_file():
        return load_json(local), Path.cwd()
    return {}, Path.cwd()


class _Settings:
    def __init__(self, args, config, base):
        self.args, self.config, self.base = args, config, base

    def get(self, attr, key=None, default=None):
        value = getattr(self.args, attr, None)
        if value is not None:
            return value
        return self.config.get(key or attr, default)

    def path(self, attr, key=None):
        value = getattr(self.args, attr, None)
        if value is not None:
            return Path(value)
        value = self.config.get(key or attr)
        return None if value is None else self.base / value


def _emit(doc, out):
    text = json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _read_input(path) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc


def _source_files(paths):
    files = []
    for raw in paths:
        p = Path(raw)
        if p.is_dir():
            files.extend(sorted(f for f in p.rglob("*") if f.is_file()))
        elif p.is_file():
            files.append(p)
        else:
            raise ConfigError(f"no such file or directory: {raw}")
    return sorted(set(files), key=lambda f: f.as_posix())


def cmd_metrics(args, settings) -> int:
    profile_path = settings.path("profile")
    profile = TokenProfile.load(profile_path) if profile_path else default_profile()
    thresholds = LevelThresholds(
        float(settings.get("v_low", default=100.0)), float(settings.get("v_high", default=1000.0))
    )
    config = MetricsConfig(
        profile=profile,
        loc_mode=settings.get("loc_mode", default="all_lines"),
        log_base=float(settings.get("log_base", default=2)),
        thresholds=thresholds,
    )
    records = [analyze(f.as_posix(), _read_input(f), config).to_record() for f in _source_files(args.paths)]
    doc = {
        "kind": "metrics",
        "author": args.author,
        "profile": profile.name,
        "loc_mode": config.loc_mode,
        "log_base": config.log_base,
        "records": records,
    }
    _emit(doc, args.json_out)
    return 0


def cmd_diagnose(args, settings) -> int:
    fr = settings.path("format_rules")
    cr = settings.path("class_rules")
    format_rules = FormatRules.load(fr) if fr else default_format_rules()
    class_rules = ClassificationRules.load(cr) if cr else default_class_rules()
    raw = _read_input(args.log)
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError:
        text = raw.decode("latin-1")
    author = args.author or Path(args.log).stem
    diagnostics, unparsed = parse_diagnostics(text, format_rules, author=author)
    entries = []
    for d in diagnostics:
        entry = d.to_dict()
        entry["class"] = classify_error(d, class_rules).value
        entries.append(entry)
    doc = {
        "kind": "diagnose",
        "log": Path(args.log).as_posix(),
        "author": author,
        "diagnostics": entries,
        "unparsed_lines": unparsed,
        "histogram": histogram_to_json(error_histogram(diagnostics, class_rules)),
    }
    _emit(doc, args.json_out)
    return 0


def cmd_risk(args, settings) -> int:
    cat_path = settings.path("catalog")
    catalog = RiskFactorCatalog.load(cat_path) if cat_path else default_catalog()
    threshold = RiskLevel.parse(settings.get("major_threshold", default="High"))
    observed = parse_observed(_read_input(args.factors).decode("utf-8"))
    result = assess(observed, catalog, threshold)
    _emit(result.to_dict(), args.json_out)
    return 0


def cmd_team(args, settings) -> int:
    developers = parse_skills_profile(load_json(args.skills))
    plan = plan_team(
        developers,
        chain=args.chain,
        min_expert=int(settings.get("min_expert", default=1)),
        min_moderate=int(settings.get("min_moderate", default=2)),
    )
    if plan.unclassified:
        log.warning("unclassified developers left out: %s", ", ".join(plan.unclassified))
    doc = {"kind": "team", **plan.to_dict()}
    _emit(doc, args.json_out)
    return 0


def _report_from_metrics(doc):
    author = doc.get("author") or "unknown"
    for rec in doc["records"]:
        counts = TokenCounts(rec["total_operators"], rec["total_operands"],
                             rec["distinct_operators"], rec["distinct_operands"])
        yield author, MetricsReport(rec["unit_id"], rec["loc"], counts, rec["volume"], ProgramLevel[rec["level"]])


def cmd_report(args, settings) -> int:
    docs = [load_json(p) for p in args.sources]
    if args.chart == "errors":
        reports, histograms = [], []
        for doc in docs:
            kind = doc.get("kind") if isinstance(doc, dict) else None
            if kind == "metrics":
                reports.extend(_report_from_metrics(doc))
            elif kind == "diagnose":
                histograms.append(doc["histogram"])
            else:
                raise ConfigError(f"errors chart takes metrics or diagnose JSON, got kind {kind!r}")
        summaries = aggregate_authors(reports, histograms)
        if not summaries:
            raise ConfigError("no authors found in the given inputs")
        for s in summaries.values():
            if s.missing_source:
                log.warning("author %s has diagnostics but no source metrics", s.author)
        classes = ("Known", "Predictable", "Unpredictable")
        rows = [s.to_dict() for s in summaries.values()]
        spec = ChartSpec(
            title=args.title or "Programmers vs Errors",
            categories=[r["author"] for r in rows],
            series=[(c, [r["errors"][c] for r in rows]) for c in classes],
            style=args.style,
            y_label="errors",
        )
        data = {"kind": "report", "chart": "errors", "authors": rows}
    else:
        categories, values = [], []
        for doc in docs:
            kind = doc.get("kind") if isinstance(doc, dict) else None
            if kind != "team":
                raise ConfigError(f"risk chart takes team JSON, got kind {kind!r}")
            for p in doc["pairs"]:
                categories.append(f"{p['vsp_id'] or '-'}+{p['hsp_id'] or '-'}")
                values.append(float(RiskLevel[p["risk"]]))
            categories.append("overall")
            values.append(float(RiskLevel[doc["overall_risk"]]))
        spec = ChartSpec(
            title=args.title or "People vs Risk",
            categories=categories,
            series=[("risk rank (0=VeryLow, 4=VeryHigh)", values)],
            style=args.style,
            y_label="risk rank",
            y_max=float(RiskLevel.VeryHigh),
        )
        data = {"kind": "report", "chart": "risk", "categories": categories, "risk_ranks": values}
    Path(args.out).write_text(render_chart(spec), encoding="utf-8")
    if args.json_out:
        _emit(data, args.json_out)
    return 0


COMMANDS = {
    "metrics": cmd_metrics,
    "diagnose": cmd_diagnose,
    "risk": cmd_risk,
    "team": cmd_team,
    "report": cmd_report,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 2
    if not args.command:
        parser.print_help(sys.stderr)
        return 2
    try:
        config, base = _load_config(args.config)
        if not isinstance(config, dict):
            raise ConfigError("config file must hold a JSON object")
        return COMMANDS[args.command](args, _Settings(args, config, base))
    except ConfigError as exc:
        print(f"riskchain: config error: {exc}", file=sys.stderr)
        return 2
    except RiskChainError as exc:
        print(f"riskchain: error: {exc}", file=sys.stderr)
        return 1


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(levelname)s: %(message)s")
    sys.exit(run(argv))
