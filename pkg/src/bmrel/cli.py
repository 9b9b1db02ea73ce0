"""Command-line entry point: ``bmrel <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from collections.abc import Callable, Sequence
from dataclasses import asdict, dataclass, field
from pathlib import Path

from bmrel import __version__
from bmrel.config import JobConfig
from bmrel.errors import BMError, BudgetExceededError, DisjointnessError, ParseError
from bmrel.groups.abelian import abelianization, classify_by_abelianization
from bmrel.groups.homomorphism import (
    SHIPPED_CERTIFICATES,
    certificate_failures,
    load_certificate,
    resolve_presentation,
    shipped_certificate,
)
from bmrel.groups.presentation import normal_form
from bmrel.groups.presets import PRESET_NAMES, preset_presentation
from bmrel.groups.words import format_word, parse_word
from bmrel.psi import (
    DEFAULT_MAX_BETA,
    RelationLevel,
    build_level,
    kimberley_count,
    recurrence_counts,
)
from bmrel.search import RelationSearch, SearchMode, known_count
from bmrel.squares import all_squares
from bmrel.store import (
    file_digest,
    format_header,
    level_path,
    read_level,
    serialize_relation,
    verify_level_file,
    write_level,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


@dataclass
class RunReport:
    """Machine-readable summary of one CLI run, written with ``--report``."""

    command: list[str]
    elapsed: float = 0.0
    exit_code: int = EXIT_OK
    counts: dict[str, int] = field(default_factory=dict)
    digests: dict[str, str] = field(default_factory=dict)
    messages: list[str] = field(default_factory=list)

    def add_output(self, path: Path, label: str, count: int) -> None:
        self.counts[label] = count
        self.digests[str(path)] = file_digest(path)

    def write(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(asdict(self), indent=2) + "\n", encoding="utf-8")


Handler = Callable[[argparse.Namespace, JobConfig, RunReport], int]


def _label(alpha: int, beta: int) -> str:
    return f"R({alpha},{beta})"


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def cmd_gs(args: argparse.Namespace, config: JobConfig, report: RunReport) -> int:
    squares = all_squares(args.alpha, args.beta)
    for s in squares:
        print(s)
    report.counts[f"GS({args.alpha},{args.beta})"] = len(squares)
    return EXIT_OK


def cmd_enum(args: argparse.Namespace, config: JobConfig, report: RunReport) -> int:
    alpha, beta = args.alpha, args.beta
    search = RelationSearch(alpha, beta, config.jobs, config.max_solutions)
    label = _label(alpha, beta)

    if config.count_only:
        total = search.count()
        expected = known_count(alpha, beta)
        if expected is not None and expected != total:
            logger.warning("%s = %d differs from the published %d", label, total, expected)
        report.counts[label] = total
        print(f"{label} = {total}")
        return EXIT_OK

    estimate = known_count(alpha, beta)
    if estimate is not None:
        config.check_memory(estimate, alpha * beta)
    relations = list(search.relations())
    report.counts[label] = len(relations)
    if config.output_path is None:
        print(format_header(alpha, beta, len(relations)))
        for r in relations:
            print(serialize_relation(r))
        return EXIT_OK

    write_level(config.output_path, alpha, beta, relations)
    report.add_output(config.output_path, label, len(relations))
    print(f"{label} = {len(relations)}")
    if config.verify:
        return _verify_file(config.output_path, report)
    return EXIT_OK


def _load_start_level(args: argparse.Namespace, config: JobConfig) -> RelationLevel:
    start = args.from_beta
    if args.input is None:
        search = RelationSearch(1, start, config.jobs)
        return RelationLevel.of(start, search.relations())
    level = read_level(args.input)
    if (level.alpha, level.beta) != (1, start):
        raise ParseError(
            f"{args.input} holds ({level.alpha},{level.beta}) relations, expected (1,{start})"
        )
    if len(level) != kimberley_count(start):
        raise ParseError(
            f"{args.input} is not a complete level: {len(level)} of {kimberley_count(start)}"
        )
    return RelationLevel.of(start, level.relations)


def cmd_psi(args: argparse.Namespace, config: JobConfig, report: RunReport) -> int:
    start, stop = args.from_beta, args.to_beta
    if stop < start:
        raise ValueError(f"--to must be >= --from, got {start}..{stop}")

    if config.count_only:
        first = len(read_level(args.input)) if args.input is not None else None
        counts = recurrence_counts(start, stop, first)
        print(f"{_label(1, start)} = {counts[start]}")
        for b in range(start, stop):
            print(f"(3+2·{b})·{counts[b]} = {counts[b + 1]}")
            print(f"{_label(1, b + 1)} = {counts[b + 1]}")
        report.counts.update({_label(1, b): n for b, n in counts.items()})
        return EXIT_OK

    level = _load_start_level(args, config)
    print(f"{_label(1, start)} = {len(level)}")
    report.counts[_label(1, start)] = len(level)
    out_dir = args.out_dir
    if out_dir is not None:
        path = level_path(out_dir, start)
        write_level(path, 1, start, level.relations)
        report.add_output(path, _label(1, start), len(level))

    for b in range(start, stop):
        config.check_memory(kimberley_count(b + 1), b + 1)
        nxt = build_level(level, jobs=config.jobs, max_beta=args.max_beta)
        print(f"(3+2·{b})·{len(level)} = {len(nxt)}")
        report.counts[_label(1, b + 1)] = len(nxt)
        if out_dir is not None:
            path = level_path(out_dir, b + 1)
            write_level(path, 1, b + 1, nxt.relations)
            report.add_output(path, _label(1, b + 1), len(nxt))
            if config.verify and _verify_file(path, report) != EXIT_OK:
                return EXIT_FAILED
        level = nxt
    return EXIT_OK


def _verify_file(path: Path, report: RunReport) -> int:
    problems = verify_level_file(path)
    if problems:
        print(f"FAILED: {problems[0]}")
        for p in problems:
            logger.error("%s: %s", path, p)
        report.messages.extend(problems)
        return EXIT_FAILED
    level = read_level(path)
    report.add_output(path, _label(level.alpha, level.beta), len(level))
    print(f"VERIFIED {path} ({_label(level.alpha, level.beta)} = {len(level)})")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, config: JobConfig, report: RunReport) -> int:
    return _verify_file(args.path, report)


def cmd_nf(args: argparse.Namespace, config: JobConfig, report: RunReport) -> int:
    presentation = preset_presentation(args.preset)
    print(format_word(normal_form(presentation, parse_word(args.word))))
    return EXIT_OK


def cmd_abelianize(args: argparse.Namespace, config: JobConfig, report: RunReport) -> int:
    if args.preset is not None:
        presentation = preset_presentation(args.preset)
    else:
        presentation = resolve_presentation(str(args.file))
    print(abelianization(presentation))
    return EXIT_OK


def cmd_check_iso(args: argparse.Namespace, config: JobConfig, report: RunReport) -> int:
    if args.preset is not None:
        cert = shipped_certificate(args.preset)
    else:
        cert = load_certificate(args.path)
    failures = certificate_failures(cert)
    if failures:
        print(f"FAILED: {failures[0]}")
        report.messages.extend(failures)
        return EXIT_FAILED
    print("VERIFIED")
    return EXIT_OK


def cmd_classify(args: argparse.Namespace, config: JobConfig, report: RunReport) -> int:
    if args.input is not None:
        level = read_level(args.input)
        if (level.alpha, level.beta) != (args.alpha, args.beta):
            raise ParseError(
                f"{args.input} holds ({level.alpha},{level.beta}) relations, "
                f"expected ({args.alpha},{args.beta})"
            )
        relations = list(level.relations)
    else:
        relations = list(RelationSearch(args.alpha, args.beta, config.jobs).relations())
    result = classify_by_abelianization(relations, jobs=config.jobs)
    for invariants, members in result.classes:
        print(f"{invariants}: {len(members)}")
    print(f"classes = {result.class_count}, relations = {result.total}")
    report.counts["classes"] = result.class_count
    report.counts[_label(result.alpha, result.beta)] = result.total
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bmrel", description="Enumerate and study (alpha,beta)-BM relations and groups."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--jobs", type=_positive, help="worker processes (default $BMREL_JOBS)")
    parser.add_argument("--memory-cap", type=_positive, help="byte budget for materialized levels")
    parser.add_argument("--report", type=Path, help="write a JSON run report here")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gs", help="list GS(alpha,beta) in canonical order")
    p.add_argument("alpha", type=_positive)
    p.add_argument("beta", type=_positive)
    p.set_defaults(handler=cmd_gs)

    p = sub.add_parser("enum", help="enumerate or count R(alpha,beta)")
    p.add_argument("alpha", type=_positive)
    p.add_argument("beta", type=_positive)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--out", type=Path, help="write the level file here")
    p.add_argument("--max-solutions", type=_positive)
    p.add_argument("--verify", action="store_true", help="re-check the written file")
    p.set_defaults(handler=cmd_enum)

    p = sub.add_parser("psi", help="build R(1,beta) levels with psi")
    p.add_argument("--from", dest="from_beta", type=_positive, required=True)
    p.add_argument("--to", dest="to_beta", type=_positive, required=True)
    p.add_argument("--input", type=Path, help="complete starting level (default: enumerate it)")
    p.add_argument("--out-dir", type=Path)
    p.add_argument("--count-only", action="store_true")
    p.add_argument(
        "--max-beta", type=_positive, default=DEFAULT_MAX_BETA,
        help="largest level that may be materialized",
    )
    p.add_argument("--verify", action="store_true", help="re-check each written file")
    p.set_defaults(handler=cmd_psi)

    p = sub.add_parser("verify", help="check a level file")
    p.add_argument("path", type=Path)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("nf", help="normal form of a word in a preset group")
    p.add_argument("--preset", required=True, choices=PRESET_NAMES)
    p.add_argument("--word", required=True, help='letters such as "a1 A2 b1"')
    p.set_defaults(handler=cmd_nf)

    p = sub.add_parser("abelianize", help="abelian invariants of a BM group")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--preset", choices=PRESET_NAMES)
    source.add_argument("--file", type=Path, help="level file with one relation")
    p.set_defaults(handler=cmd_abelianize)

    p = sub.add_parser("check-iso", help="verify an isomorphism certificate")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("path", nargs="?", type=Path)
    source.add_argument("--preset", choices=SHIPPED_CERTIFICATES)
    p.set_defaults(handler=cmd_check_iso)

    p = sub.add_parser("classify", help="partition R(alpha,beta) by an invariant")
    p.add_argument("alpha", type=_positive)
    p.add_argument("beta", type=_positive)
    p.add_argument("--invariant", choices=("abelianization",), default="abelianization")
    p.add_argument("--input", type=Path, help="classify this level file instead of enumerating")
    p.set_defaults(handler=cmd_classify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
        stream=sys.stderr,
    )
    report = RunReport(command=["bmrel", *argv])
    start = time.perf_counter()
    try:
        config = JobConfig.from_env(
            jobs=args.jobs,
            memory_cap=args.memory_cap,
            output_path=getattr(args, "out", None),
            mode=SearchMode.COUNT_ONLY if getattr(args, "count_only", False) else None,
            verify=getattr(args, "verify", False),
            max_solutions=getattr(args, "max_solutions", None),
        )
        handler: Handler = args.handler
        code = handler(args, config, report)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        report.messages.append(str(exc))
        code = EXIT_BUDGET
    except DisjointnessError as exc:
        print(f"FAILED: {exc}")
        report.messages.append(str(exc))
        code = EXIT_FAILED
    except (BMError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        report.messages.append(str(exc))
        code = EXIT_USAGE

    report.exit_code = code
    report.elapsed = round(time.perf_counter() - start, 3)
    if args.report is not None:
        report.write(args.report)
    return code


if __name__ == "__main__":
    sys.exit(main())
