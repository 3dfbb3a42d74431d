import argparse
import logging
import sys

from core.errors import EncodingError, TranslationError
from core.evaluation import MODES, parse_corpus, parse_grades, run_corpus, score_grades
from core.pipeline import load_dictionaries, translate_document, validate_dictionaries
from core.trace import Trace
from utils.config import Config
from utils.logging_setup import setup_logging
from utils.tsv import read_text

logger = logging.getLogger("main")


def _add_global_options(parser: argparse.ArgumentParser, suppress: bool = False) -> None:
    """--config, --dict and --log-level, accepted before or after the subcommand."""

    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument(
        "--config",
        type=str,
        default=default("config.json"),
        help="Path to configuration file"
    )

    parser.add_argument(
        "--dict",
        type=str,
        dest="dict_dir",
        default=default(None),
        help="Dictionary directory (overrides config)"
    )

    parser.add_argument(
        "--log-level",
        type=str,
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        default=default(None),
        help="Logging level (overrides config)"
    )


def parse_arguments(argv=None):
    """Parse command line arguments."""
    parser = argparse.ArgumentParser(description="levelmt: multi-level Japanese to English transfer")
    _add_global_options(parser)

    # Suppressed defaults keep a value given before the subcommand
    shared = argparse.ArgumentParser(add_help=False)
    _add_global_options(shared, suppress=True)

    commands = parser.add_subparsers(dest="command", required=True)

    translate = commands.add_parser("translate", parents=[shared], help="Translate a document")
    translate.add_argument("file", nargs="?", default=None, help="Input file (default: stdin)")
    translate.add_argument("--trace", action="store_true", help="Print the stage trace to stderr")
    translate.add_argument("--no-rewrite", action="store_false", dest="rewrite",
                           help="Translate te-chains literally without rewriting")

    evaluate = commands.add_parser("eval", parents=[shared], help="Run a corpus regression")
    evaluate.add_argument("--corpus", type=str, default="data/corpus.tsv", help="Corpus file")
    evaluate.add_argument("--mode", choices=MODES, default=None, help="Label for the report")
    evaluate.add_argument("--allow-fail", action="store_true", help="Exit 0 even when cases fail")
    evaluate.add_argument("--report", type=str, default=None, metavar="DIR",
                          help="Write JSON and HTML reports to DIR")
    evaluate.add_argument("--json", action="store_true", help="Print the report as JSON")
    evaluate.add_argument("--no-rewrite", action="store_false", dest="rewrite",
                          help="Disable the rewriter")

    grade = commands.add_parser("grade", parents=[shared], help="Score human grade records")
    grade.add_argument("--records", type=str, required=True, help="Grade file")
    grade.add_argument("--corpus", type=str, default=None,
                       help="Corpus whose case ids every record must name")
    grade.add_argument("--report", type=str, default=None, metavar="DIR",
                       help="Write an HTML report to DIR")

    commands.add_parser("validate", parents=[shared], help="Check the dictionary files")

    serve = commands.add_parser("serve", parents=[shared], help="Run the HTTP translate service")
    serve.add_argument("--host", type=str, default=None)
    serve.add_argument("--port", type=int, default=None)

    return parser.parse_args(argv)


def cmd_translate(args, config: Config) -> int:
    dicts = load_dictionaries(config.get("dictionaries", "dir"))
    if args.file:
        text = read_text(args.file)
    else:
        try:
            text = sys.stdin.read()
        except UnicodeDecodeError as e:
            raise EncodingError("<stdin>", e.start) from e

    english, trace = translate_document(
        dicts, text,
        rewrite=args.rewrite,
        trace=Trace(),
        habitual_category=config.get("analysis", "habitual_category"),
        default_pronoun=config.get("analysis", "default_pronoun"),
    )
    if args.trace:
        for line in trace.lines():
            print(line, file=sys.stderr)
    if english:
        print(english)
    for event in trace.errors:
        print(f"error: {event['source']}: {event['message']}", file=sys.stderr)
    return 1 if trace.errors else 0


def cmd_eval(args, config: Config) -> int:
    dicts = load_dictionaries(config.get("dictionaries", "dir"))
    corpus = parse_corpus(read_text(args.corpus))
    report = run_corpus(
        dicts, corpus,
        mode=args.mode or config.get("evaluation", "mode"),
        excluded_tags=config.get("evaluation", "excluded_tags"),
        workers=config.get("evaluation", "workers"),
        rewrite=args.rewrite,
        habitual_category=config.get("analysis", "habitual_category"),
        default_pronoun=config.get("analysis", "default_pronoun"),
    )

    if args.json:
        print(report.to_json())
    else:
        for result in report.results:
            status = "EXCL" if result.excluded else ("PASS" if result.passed else "FAIL")
            print(f"{status} {result.id}: {result.output}")
            if not result.passed and not result.excluded:
                print(f"     expected: {result.expected}")
        levels = " ".join(f"{level}={count}" for level, count in report.level_counts.items())
        print(f"{report.mode}: {report.passes}/{report.total} passed ({float(report.pass_rate):.0%}); {levels}")

    if args.report:
        from reports.report_generator import ReportGenerator
        paths = ReportGenerator(config, args.report).generate_eval_report(report)
        print(f"Report written to {paths['html']}", file=sys.stderr)

    if report.failures and not args.allow_fail:
        return 1
    return 0


def cmd_grade(args, config: Config) -> int:
    low = config.get("grading", "min_grade")
    high = config.get("grading", "max_grade")
    records = parse_grades(read_text(args.records), low, high)
    sentence_ids = None
    if args.corpus:
        sentence_ids = [case.id for case in parse_corpus(read_text(args.corpus)).cases]
    summary = score_grades(records, sentence_ids, config.get("grading", "pass_threshold"), low, high)

    for sentence in summary.sentences:
        status = "pass" if sentence.passed else "fail"
        print(f"{sentence.sentence_id}\t{float(sentence.mean):.2f}\t{status}")
    print(f"{summary.passes}/{len(summary.sentences)} passed ({float(summary.pass_rate):.0%})")

    if args.report:
        from reports.report_generator import ReportGenerator
        path = ReportGenerator(config, args.report).generate_grade_report(summary)
        print(f"Report written to {path}", file=sys.stderr)
    return 0


def cmd_validate(args, config: Config) -> int:
    errors = validate_dictionaries(config.get("dictionaries", "dir"))
    for error in errors:
        print(error, file=sys.stderr)
    if errors:
        print(f"{len(errors)} error(s)", file=sys.stderr)
        return 1
    print("ok")
    return 0


def cmd_serve(args, config: Config) -> int:
    from web_dashboard.app import create_app, run_app

    dicts = load_dictionaries(config.get("dictionaries", "dir"))
    flask_app = create_app(dicts, config)
    host = args.host or config.get("web_dashboard", "host")
    port = args.port or config.get("web_dashboard", "port")
    run_app(flask_app, host=host, port=port, debug=False, threaded=True)
    return 0


COMMANDS = {
    "translate": cmd_translate,
    "eval": cmd_eval,
    "grade": cmd_grade,
    "validate": cmd_validate,
    "serve": cmd_serve,
}


def main(argv=None) -> int:
    """Main entry point."""
    args = parse_arguments(argv)

    # Load configuration; flags override it for this run only
    config = Config(args.config)
    if args.dict_dir:
        config.set("dictionaries", "dir", args.dict_dir)

    problems = config.validate()
    if problems:
        print(f"error: invalid configuration: {problems[0]}", file=sys.stderr)
        return 1

    setup_logging(config, args.log_level)

    try:
        return COMMANDS[args.command](args, config)
    except TranslationError as e:
        logger.debug("Command %s failed", args.command, exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e.filename or ''}: {e.strerror}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
