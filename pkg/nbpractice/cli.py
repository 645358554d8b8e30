"""
nbpractice command-line interface
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from nbpractice import __version__
from nbpractice.core.config import MatchScope, MdDenominator, Settings, TestProfile, load_settings
from nbpractice.core.exceptions import ConfigError, NoInputs, NoScores, NotebookError
from nbpractice.core.log import configure_logging
from nbpractice.core.registry import REGISTRY
from nbpractice.schemas.findings import FailSeverity
from nbpractice.services.corpus_service import CorpusService
from nbpractice.services.extract_service import extract_script
from nbpractice.services.notebook_service import parse_notebook
from nbpractice.services.report_service import (
    EXIT_CONFIG,
    EXIT_INPUT_ERRORS,
    EXIT_OK,
    build_report,
    exit_code,
    load_scores,
    render_findings,
    render_markdown_summary,
    report_to_json,
    write_histograms,
)
from nbpractice.services.stats_service import aggregate, subset_compare

logger = logging.getLogger(__name__)


def _common_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--config", type=Path, help="TOML config file (falls back to $NBPRACTICE_CONFIG)")
    parent.add_argument("--jobs", type=int, help="Notebooks analysed in parallel")
    parent.add_argument("--allow-any-kernel", action="store_const", const=True,
                        help="Run code-level checks on non-Python kernels too")
    parent.add_argument("--strict-bp5", action="store_const", const=True,
                        help="Unexecuted cells break top-to-bottom execution")
    parent.add_argument("--test-profile", choices=[p.value for p in TestProfile])
    parent.add_argument("--test-match-scope", choices=[s.value for s in MatchScope])
    parent.add_argument("--md-denominator", choices=[d.value for d in MdDenominator])
    parent.add_argument("--fail-severity", choices=[s.value for s in FailSeverity])
    parent.add_argument("--bridge-command", help="External linter command, {input} marks the script path")
    parent.add_argument("--log-level", help="DEBUG, INFO, WARNING, ERROR")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nbpractice",
        description="Check notebooks against collaboration best practices and summarise corpora",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = _common_options()
    sub = parser.add_subparsers(dest="command", required=True)

    lint = sub.add_parser("lint", parents=[common], help="Per-notebook findings")
    lint.add_argument("paths", nargs="+", type=Path)
    lint.add_argument("--json", action="store_true", help="Print the JSON run report")
    lint.add_argument("--timings", action="store_const", const=True, dest="include_timing")

    stats = sub.add_parser("stats", parents=[common], help="Corpus summary")
    stats.add_argument("paths", nargs="+", type=Path)
    output = stats.add_mutually_exclusive_group()
    output.add_argument("--json", action="store_true", help="Print the JSON run report (default)")
    output.add_argument("--markdown", action="store_true", help="Print the summary table")
    stats.add_argument("--csv-hist", type=Path, metavar="DIR", help="Write one CSV per histogram")
    stats.add_argument("--scores", type=Path, metavar="CSV", help="path,score file for subset comparison")
    stats.add_argument("--percentiles", help="Comma-separated, e.g. 0.75,0.90")
    stats.add_argument("--timings", action="store_const", const=True, dest="include_timing")

    extract = sub.add_parser("extract", parents=[common], help="Print the script the lint checks see")
    extract.add_argument("file", type=Path)
    extract.add_argument("--map-out", type=Path, help="Write the source map here instead of stderr")

    check_list = sub.add_parser("check-list", parents=[common], help="Print the best-practice catalog")
    check_list.add_argument("--json", action="store_true")

    serve = sub.add_parser("serve", parents=[common], help="Run the HTTP service")
    serve.add_argument("--host", dest="api_host")
    serve.add_argument("--port", type=int, dest="api_port")
    return parser


SETTING_ARGS = [
    "jobs", "allow_any_kernel", "strict_bp5", "test_profile", "test_match_scope", "md_denominator",
    "fail_severity", "bridge_command", "log_level", "include_timing", "percentiles", "api_host", "api_port",
]


def settings_from_args(args: argparse.Namespace) -> Settings:
    """Flags override the config file; flags left out are not overrides"""
    overrides: Dict[str, Any] = {name: getattr(args, name, None) for name in SETTING_ARGS}
    return load_settings(args.config, **overrides)


def cmd_lint(args: argparse.Namespace, settings: Settings) -> int:
    run = CorpusService(settings).run(args.paths)
    report = build_report(settings, run)
    sys.stdout.write(report_to_json(report) if args.json else render_findings(report))
    return exit_code(report, settings)


def cmd_stats(args: argparse.Namespace, settings: Settings) -> int:
    run = CorpusService(settings).run(args.paths)
    md_only = settings.md_denominator == MdDenominator.MD_ONLY
    if args.scores:
        summaries = subset_compare(run.metrics, load_scores(args.scores), settings.percentiles,
                                   config_version=settings.digest(), md_only=md_only)
    else:
        summaries = [aggregate(run.metrics, "ALL", config_version=settings.digest(), md_only=md_only)]
    report = build_report(settings, run, summaries)

    if args.csv_hist:
        write_histograms(summaries, args.csv_hist)
    sys.stdout.write(render_markdown_summary(summaries) if args.markdown else report_to_json(report))
    return EXIT_INPUT_ERRORS if report.failed else EXIT_OK


def cmd_extract(args: argparse.Namespace, settings: Settings) -> int:
    try:
        nb = parse_notebook(args.file.read_bytes(), args.file.as_posix())
    except OSError as e:
        print(f"Cannot read {args.file}: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except NotebookError as e:
        print(f"error {e.__class__.__name__}: {e}", file=sys.stderr)
        return EXIT_INPUT_ERRORS
    script = extract_script(nb, settings.strip_rules)
    sys.stdout.write("\n".join(script.text_lines) + ("\n" if script.text_lines else ""))

    source_map = json.dumps(script.model_dump(mode="json", exclude={"text_lines"}), indent=2, sort_keys=True)
    if args.map_out:
        args.map_out.write_text(source_map + "\n", encoding="utf-8")
    else:
        print(source_map, file=sys.stderr)
    return EXIT_OK


def cmd_check_list(args: argparse.Namespace, settings: Settings) -> int:
    if args.json:
        print(json.dumps([entry.model_dump(mode="json") for entry in REGISTRY], indent=2))
        return EXIT_OK
    for entry in REGISTRY:
        mark = "*" if entry.operationalized else " "
        print(f"{mark} {entry.bp_id:<5} {entry.title} [{entry.theme.value}] "
              f"support={entry.support_count} ({', '.join(entry.source_ids)})")
    return EXIT_OK


def cmd_serve(args: argparse.Namespace, settings: Settings) -> int:
    from nbpractice.main import serve

    serve(settings)
    return EXIT_OK


COMMANDS = {
    "lint": cmd_lint,
    "stats": cmd_stats,
    "extract": cmd_extract,
    "check-list": cmd_check_list,
    "serve": cmd_serve,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = settings_from_args(args)
    except ConfigError as e:
        print(f"Configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    configure_logging(settings)

    try:
        return COMMANDS[args.command](args, settings)
    except ConfigError as e:
        print(f"Configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (NoInputs, NoScores) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
