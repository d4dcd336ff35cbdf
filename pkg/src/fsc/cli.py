"""The ``fsc`` command: compile rule files, apply them, export DOT, self-test."""

import argparse
import sys

from . import artifact
from .alphabet import EPSILON, OTHER, OTHER_NEQ
from .apply import transduce_stream
from .errors import AmbiguousOutput, ArtifactError, FscError
from .network import _renumber_bfs
from .regex import load_program

EXIT_OK, EXIT_COMPILE, EXIT_AMBIGUOUS, EXIT_IO = 0, 1, 2, 3


def _fail(code, message):
    print(f"fsc: {message}", file=sys.stderr)
    return code


def run_compile(args):
    try:
        with open(args.rules, encoding="utf-8") as fh:
            source = fh.read()
    except OSError as exc:
        return _fail(EXIT_IO, f"cannot read {args.rules}: {exc.strerror}")
    try:
        _, net = load_program(source)
    except FscError as exc:
        line = getattr(exc, "line", None)
        where = f"{args.rules}:{line}:{exc.column}" if line else args.rules
        return _fail(EXIT_COMPILE, f"{where}: {type(exc).__name__}: {exc}")
    try:
        artifact.save(args.output, net, source)
    except OSError as exc:
        return _fail(EXIT_IO, f"cannot write {args.output}: {exc.strerror}")
    print(f"{args.output}: {net.num_states} states, {net.num_arcs} arcs, "
          f"{len(net.sigma)} symbols", file=sys.stderr)
    return EXIT_OK


def _load(path):
    try:
        return artifact.load(path)[0], None
    except OSError as exc:
        return None, _fail(EXIT_IO, f"cannot read {path}: {exc.strerror}")
    except ArtifactError as exc:
        return None, _fail(EXIT_IO, f"{path}: {exc}")


def parse_render(items):
    """``SYM=text`` pairs; the text understands \\n, \\t and \\\\."""
    render = {}
    for item in items or ():
        sym, sep, text = item.partition("=")
        if not sep or not sym:
            raise ValueError(f"--render expects SYM=text, got {item!r}")
        render[sym] = text.encode("latin-1", "backslashreplace").decode("unicode_escape")
    return render


def run_apply(args):
    net, code = _load(args.artifact)
    if net is None:
        return code
    try:
        render = parse_render(args.render)
    except ValueError as exc:
        return _fail(EXIT_COMPILE, str(exc))
    try:
        stats = transduce_stream(net, sys.stdin, sys.stdout, render=render,
                                 all_outputs=args.all, up=args.up, limit=args.limit)
    except AmbiguousOutput as exc:
        sys.stdout.flush()
        return _fail(EXIT_AMBIGUOUS, f"{exc}; use --all to list every output")
    if args.stats:
        print(f"{stats.chunks} lines, {stats.symbols_in} symbols in, "
              f"{stats.symbols_out} symbols out", file=sys.stderr)
    return EXIT_OK


def _dot_name(net, sid):
    if sid == EPSILON:
        return "0"
    if sid in (OTHER, OTHER_NEQ):
        return "?"
    return net.table.name(sid)


def _dot_quote(text):
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def to_dot(net):
    """DOT digraph: double circles for finals, parallel arcs merged into one."""
    net = _renumber_bfs(net, net.is_minimized)
    lines = ["digraph fsc {", "  rankdir=LR;", "  node [shape=circle];",
             "  start [shape=point];", "  start -> 0;"]
    for q in range(net.num_states):
        shape = "doublecircle" if q in net.finals else "circle"
        lines.append(f"  {q} [shape={shape}];")
    for q, arcs in enumerate(net.arcs):
        merged = {}
        for u, l, t in arcs:
            up, low = _dot_name(net, u), _dot_name(net, l)
            label = up if (u, l) == (u, u) else f"{up}:{low}"
            merged.setdefault(t, []).append(label)
        for t in sorted(merged):
            lines.append(f"  {q} -> {t} [label={_dot_quote(','.join(sorted(merged[t])))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def run_dot(args):
    net, code = _load(args.artifact)
    if net is None:
        return code
    text = to_dot(net)
    if args.output in (None, "-"):
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        return _fail(EXIT_IO, f"cannot write {args.output}: {exc.strerror}")
    return EXIT_OK


def run_selftest(args):
    from .selftest import format_table, run_checks, select

    if not select(args.filter):
        return _fail(EXIT_COMPILE, f"no check matches {args.filter!r}")
    results = run_checks(args.filter, mutate=args.mutate)
    print(format_table(results))
    return EXIT_OK if all(r.passed for r in results) else 1


def build_parser():
    parser = argparse.ArgumentParser(prog="fsc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", help="compile a rule file into an artifact")
    p.add_argument("rules")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=run_compile)

    p = sub.add_parser("apply", help="apply an artifact to standard input, line by line")
    p.add_argument("artifact")
    p.add_argument("--up", action="store_true", help="match input on the lower side")
    p.add_argument("--all", action="store_true",
                   help="print every output, one per line, prefixed by a tab")
    p.add_argument("--render", action="append", metavar="SYM=text",
                   help="print symbol SYM as text (repeatable)")
    p.add_argument("--limit", type=int, default=1000, help="maximum outputs per line")
    p.add_argument("--stats", action="store_true", help="print counts to stderr")
    p.set_defaults(func=run_apply)

    p = sub.add_parser("dot", help="export an artifact as a Graphviz digraph")
    p.add_argument("artifact")
    p.add_argument("-o", "--output")
    p.set_defaults(func=run_dot)

    p = sub.add_parser("selftest", help="run the acceptance checks")
    p.add_argument("--filter",
                   help="check number, name or group (worked, recipes, oracle, algebra, markup)")
    p.add_argument("--mutate", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=run_selftest)
    return parser


def main(argv=None):
    for stream in (sys.stdin, sys.stdout, sys.stderr):
        if hasattr(stream, "reconfigure"):
            stream.reconfigure(encoding="utf-8")
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
