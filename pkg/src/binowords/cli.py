"""Command-line surface: generate words, tabulate complexities, list
equivalence classes, export graphs, classify morphisms, factorize and
decode image factors, run verification suites, and drive batch runs
from a config file.

Exit codes: 0 success, 1 verification or data failure, 2 usage error,
3 factor-set stabilization failure.  All outputs are deterministic;
an optional header line carrying the wall-clock time is opt-in via
--timestamp and is the only non-reproducible byte source.
"""

import argparse
import configparser
import json
import os
import sys
import tempfile
from dataclasses import dataclass, field
from datetime import datetime, timezone

from . import __version__
from .binomials import signature
from .complexity import complexity_table
from .core import Word
from .errors import (
    BinowordsError,
    DecodeError,
    GeneratorSpecError,
    MorphismError,
    StabilizationError,
)
from .generators import configured_prefix_cap, from_spec
from .morphisms import Morphism
from .rauzy import build_graph
from .tmstructure import phi_factorizations, tm_decode
from .verify import run_suite, suite_names

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2
EXIT_STABILIZATION = 3


def _timestamp_header() -> str:
    now = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
    return f"# written {now}\n"


def _write_output(text: str, path: str | None, timestamp: bool) -> None:
    """Print to stdout, or atomically replace the target file."""
    if timestamp:
        text = _timestamp_header() + text
    if path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=".binowords-", dir=directory)
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


# Subcommand bodies.

def cmd_generate(args) -> int:
    gen = from_spec(args.spec)
    print(gen.prefix(args.length))
    return EXIT_OK


def _profile_kind(args):
    if args.factor:
        return "factor", "factor"
    if args.abelian:
        return "abelian", "abelian"
    return ("binomial", args.binomial), f"binomial({args.binomial})"


def cmd_complexity(args) -> int:
    gen = from_spec(args.spec)
    kind, label = _profile_kind(args)
    profile = complexity_table(gen, [kind], args.n_max)[label]
    text = profile.to_json() if args.format == "json" else profile.to_csv()
    _write_output(text, args.output, args.timestamp)
    return EXIT_OK


def cmd_classes(args) -> int:
    gen = from_spec(args.spec)
    from .generators import factor_bytes

    raw, _ = factor_bytes(gen, args.length)
    symbols = gen.alphabet.symbols
    groups: dict = {}
    for data in raw:
        word = Word(gen.alphabet, data)
        groups.setdefault(signature(word, args.k), []).append(
            "".join(symbols[b] for b in data)
        )
    rows = sorted(
        (min(members), len(members)) for members in groups.values()
    )
    if args.format == "json":
        payload = {
            "generator": gen.spec_id,
            "length": args.length,
            "k": args.k,
            "classes": [
                {"representative": rep, "size": size} for rep, size in rows
            ],
        }
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        lines = ["representative,size"]
        lines.extend(f"{rep},{size}" for rep, size in rows)
        text = "\n".join(lines) + "\n"
    _write_output(text, args.output, args.timestamp)
    return EXIT_OK


def cmd_rauzy(args) -> int:
    gen = from_spec(args.spec)
    graph = build_graph(gen, args.order)
    text = graph.to_json() if args.json else graph.to_dot()
    _write_output(text, args.output, args.timestamp)
    return EXIT_OK


def cmd_morphism(args) -> int:
    f = Morphism.load(args.file)
    cls = f.classify()
    flag = lambda b: "yes" if b else "no"
    lines = ["rules:"]
    lines.extend(f"  {line}" for line in f.rules_text().splitlines())
    lines.append(f"rank: {cls.rank}")
    lines.append(f"parikh-collinear: {flag(cls.is_parikh_collinear)}")
    lines.append(f"parikh-constant: {flag(cls.is_parikh_constant)}")
    lines.append(f"totally-erasing: {flag(cls.is_totally_erasing)}")
    lines.append(f"prolongable-on: {cls.is_prolongable_on or '-'}")
    print("\n".join(lines))
    return EXIT_OK


def cmd_factorize(args) -> int:
    splits = phi_factorizations(args.word, args.j)
    print(f"factorizations: {len(splits)}")
    for f in splits:
        print(f"p={f.p or '-'} ancestor={f.ancestor or '-'} "
              f"s={f.s or '-'}")
    return EXIT_OK


def cmd_decode(args) -> int:
    if args.all:
        solutions = tm_decode(args.prefix, args.k, all_solutions=True)
    else:
        solutions = [tm_decode(args.prefix, args.k)]
    for head, letters in solutions:
        print(f"u={head or '-'} y={letters}")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite not in suite_names():
        known = ", ".join(suite_names())
        print(f"error: unknown suite {args.suite!r}; known suites: {known}",
              file=sys.stderr)
        return EXIT_USAGE
    report = run_suite(args.suite, full=args.full)
    sys.stdout.write(report.to_text())
    return EXIT_OK if report.ok else EXIT_VERIFICATION


# Batch configs.

_BATCH_FORMATS = {"csv", "json", "dot"}
_TASK_TYPES = {"complexity", "rauzy", "verify", "decode"}


@dataclass(frozen=True)
class ExperimentConfig:
    """One parsed batch file: a generator, tasks, and output routing."""

    generator: str
    tasks: tuple
    output: str = "."
    formats: frozenset = field(default_factory=lambda: frozenset({"csv"}))


def parse_batch_config(text: str) -> ExperimentConfig:
    cp = configparser.ConfigParser()
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise GeneratorSpecError(f"bad batch config: {exc}") from exc
    if "batch" not in cp:
        raise GeneratorSpecError("batch config needs a [batch] section")
    head = cp["batch"]
    if "generator" not in head:
        raise GeneratorSpecError("[batch] must name a generator")
    formats = frozenset(
        tok.strip()
        for tok in head.get("formats", "csv").split(",")
        if tok.strip()
    )
    bad = formats - _BATCH_FORMATS
    if bad:
        raise GeneratorSpecError(f"unknown batch formats: {sorted(bad)}")
    tasks = []
    for name in cp.sections():
        if name == "batch":
            continue
        section = cp[name]
        kind = section.get("type")
        if kind not in _TASK_TYPES:
            raise GeneratorSpecError(
                f"task [{name}] has unknown type {kind!r}"
            )
        tasks.append((name, kind, dict(section)))
    return ExperimentConfig(
        generator=head["generator"],
        tasks=tuple(tasks),
        output=head.get("output", "."),
        formats=formats,
    )


def _int_field(task_name: str, options: dict, key: str) -> int:
    if key not in options:
        raise GeneratorSpecError(f"task [{task_name}] needs {key!r}")
    try:
        return int(options[key])
    except ValueError as exc:
        raise GeneratorSpecError(
            f"task [{task_name}]: {key} must be an integer"
        ) from exc


def _order_range(task_name: str, options: dict) -> range:
    raw = options.get("n")
    if raw is None:
        raise GeneratorSpecError(f"task [{task_name}] needs 'n'")
    lo, sep, hi = raw.partition("..")
    try:
        if sep:
            return range(int(lo), int(hi) + 1)
        return range(int(raw), int(raw) + 1)
    except ValueError as exc:
        raise GeneratorSpecError(
            f"task [{task_name}]: bad order range {raw!r}"
        ) from exc


def _run_batch_task(name, kind, options, config, timestamp) -> bool:
    """Run one task; returns False when it found a failure."""
    spec = options.get("generator", config.generator)
    out = lambda ext: os.path.join(config.output, f"{name}.{ext}")
    if kind == "complexity":
        gen = from_spec(spec)
        profile_kind = options.get("kind", "factor")
        if profile_kind == "binomial":
            table_kind = ("binomial", _int_field(name, options, "k"))
            label = f"binomial({table_kind[1]})"
        elif profile_kind in ("factor", "abelian"):
            table_kind, label = profile_kind, profile_kind
        else:
            raise GeneratorSpecError(
                f"task [{name}]: unknown kind {profile_kind!r}"
            )
        n_max = _int_field(name, options, "n_max")
        if n_max > configured_prefix_cap():
            raise GeneratorSpecError(
                f"task [{name}]: n_max exceeds the prefix cap"
            )
        profile = complexity_table(gen, [table_kind], n_max)[label]
        if "csv" in config.formats:
            _write_output(profile.to_csv(), out("csv"), timestamp)
        if "json" in config.formats:
            _write_output(profile.to_json(), out("json"), timestamp)
        return True
    if kind == "rauzy":
        gen = from_spec(spec)
        for order in _order_range(name, options):
            graph = build_graph(gen, order)
            suffix = f"-{order}" if ".." in options.get("n", "") else ""
            if "dot" in config.formats:
                _write_output(graph.to_dot(),
                              os.path.join(config.output,
                                           f"{name}{suffix}.dot"),
                              timestamp)
            if "json" in config.formats:
                _write_output(graph.to_json(),
                              os.path.join(config.output,
                                           f"{name}{suffix}.json"),
                              timestamp)
        return True
    if kind == "verify":
        suite = options.get("suite")
        if suite not in suite_names():
            raise GeneratorSpecError(
                f"task [{name}]: unknown suite {suite!r}"
            )
        report = run_suite(suite, full=options.get("scale") == "full")
        _write_output(report.to_text(), out("txt"), timestamp)
        return report.ok
    # decode
    gen = from_spec(spec)
    k = _int_field(name, options, "k")
    length = _int_field(name, options, "prefix")
    head, letters = tm_decode(gen.prefix(length), k)
    text = f"u={head or '-'} y={letters}\n"
    _write_output(text, out("txt"), timestamp)
    return True


def cmd_batch(args) -> int:
    with open(args.config, encoding="utf-8") as handle:
        config = parse_batch_config(handle.read())
    os.makedirs(config.output, exist_ok=True)
    all_ok = True
    for name, kind, options in config.tasks:
        all_ok &= _run_batch_task(name, kind, options, config,
                                  args.timestamp)
    return EXIT_OK if all_ok else EXIT_VERIFICATION


# Parser wiring.

def _add_output_flags(sub) -> None:
    sub.add_argument("-o", "--output", metavar="FILE", default=None,
                     help="write to FILE atomically instead of stdout")
    sub.add_argument("--timestamp", action="store_true",
                     help="prepend a wall-clock header line")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="binowords",
        description="Binomial coefficients of words, k-binomial "
                    "complexity, and abelian Rauzy graphs.",
    )
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("generate", help="print a prefix of a word")
    p.add_argument("spec", help="generator spec, e.g. tm or sturmian:1,2")
    p.add_argument("length", type=int)
    p.set_defaults(func=cmd_generate)

    p = subs.add_parser("complexity", help="tabulate a complexity profile")
    p.add_argument("spec")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--factor", action="store_true")
    group.add_argument("--abelian", action="store_true")
    group.add_argument("--binomial", type=int, metavar="K")
    p.add_argument("--n-max", type=int, required=True, dest="n_max")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    _add_output_flags(p)
    p.set_defaults(func=cmd_complexity)

    p = subs.add_parser(
        "classes",
        help="list k-binomial class representatives among length-n factors",
    )
    p.add_argument("spec")
    p.add_argument("length", type=int)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    _add_output_flags(p)
    p.set_defaults(func=cmd_classes)

    p = subs.add_parser("rauzy", help="export an abelian Rauzy graph")
    p.add_argument("spec")
    p.add_argument("order", type=int)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--dot", action="store_true", default=True)
    group.add_argument("--json", action="store_true")
    _add_output_flags(p)
    p.set_defaults(func=cmd_rauzy)

    p = subs.add_parser("morphism", help="classify a morphism file")
    p.add_argument("file")
    p.set_defaults(func=cmd_morphism)

    p = subs.add_parser("factorize",
                        help="block factorizations of a binary word")
    p.add_argument("word")
    p.add_argument("--j", type=int, default=1)
    p.set_defaults(func=cmd_factorize)

    p = subs.add_parser("decode",
                        help="recover the preimage from an image prefix")
    p.add_argument("prefix")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--all", action="store_true",
                   help="print every consistent split")
    p.set_defaults(func=cmd_decode)

    p = subs.add_parser("verify", help="run a named verification suite")
    p.add_argument("suite")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--quick", action="store_true", default=True)
    group.add_argument("--full", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = subs.add_parser("batch", help="run tasks from a config file")
    p.add_argument("config")
    p.add_argument("--timestamp", action="store_true",
                   help="prepend wall-clock headers to outputs")
    p.set_defaults(func=cmd_batch)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GeneratorSpecError, MorphismError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except StabilizationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STABILIZATION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DecodeError, BinowordsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION


if __name__ == "__main__":
    sys.exit(main())
