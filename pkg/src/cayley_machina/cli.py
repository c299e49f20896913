"""Command-line interface.

Exit codes: 0 success, 1 input or parse error, 2 closure exhausted under
``--expect-finite``, 3 sweep mismatch or coincidence under ``--assert-free``.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import plotting, report
from .catalog import MAX_CATALOG_ORDER, load, sweep
from .closure import Budget, closure, closure_generators, free_check
from .errors import CayleyMachinaError
from .green import criteria, green
from .semigroup import direct_product, is_named_spec, named

EXIT_OK, EXIT_INPUT, EXIT_EXHAUSTED, EXIT_MISMATCH = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def resolve_source(source: str):
    """A family spec (``rightzero:3``), a product of specs joined by ``*``,
    or a table file path."""
    parts = source.split("*")
    if all(is_named_spec(p) for p in parts):
        s = named(parts[0])
        for p in parts[1:]:
            s = direct_product(s, named(p))
        return s
    path = Path(source)
    if not path.exists():
        raise CayleyMachinaError(f"no such file or family spec: {source}")
    return load(path)


def _emit(doc, fmt, text_fn):
    sys.stdout.write(report.dumps(doc) if fmt == "structured" else text_fn(doc))


def cmd_analyze(args) -> int:
    s = resolve_source(args.source)
    g = green(s)
    doc = report.analysis_doc(s, g, criteria(s, g))
    doc["source"] = args.source
    _emit(doc, args.format, report.analysis_text)
    return EXIT_OK


def _budget(args) -> Budget:
    return Budget(args.budget_elements, args.budget_states, args.budget_millis)


def cmd_closure(args) -> int:
    s = resolve_source(args.source)
    r = closure(closure_generators(s, args.dual), _budget(args))
    doc = report.closure_doc(r, args.dual, args.source)
    _emit(doc, args.format, report.closure_text)
    if args.out:
        out = Path(args.out)
        out.write_text(report.dumps(doc))
        plotting.closure_figure(doc, out.with_suffix(".png"))
    if args.expect_finite and not r.finite:
        return EXIT_EXHAUSTED
    return EXIT_OK


def cmd_free_check(args) -> int:
    s = resolve_source(args.source)
    r = free_check(closure_generators(s, args.dual), args.length, _budget(args))
    doc = report.free_check_doc(r, args.dual, args.source)
    _emit(doc, args.format, report.free_check_text)
    if args.assert_free and not r.is_free_up_to_L:
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_sweep(args) -> int:
    if not 1 <= args.order <= MAX_CATALOG_ORDER:
        print(f"error: unsupported order {args.order} (supported 1..{MAX_CATALOG_ORDER})", file=sys.stderr)
        return EXIT_INPUT
    r = sweep(args.order, _budget(args), exhaust_elements=args.exhaust_elements,
              cert_length=args.cert_length, workers=args.workers)
    doc = report.sweep_doc(r)
    _emit(doc, args.format, report.sweep_text)
    if args.out:
        out = Path(args.out)
        out.write_text(report.dumps(doc))
        out.with_suffix(".tsv").write_text(report.sweep_tsv(r))
        plotting.sweep_figure(doc, out.with_suffix(".png"))
    return EXIT_MISMATCH if r.mismatches else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cayley-machina", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, budgets=True):
        sp.add_argument("--format", choices=("text", "structured"), default="text")
        if budgets:
            d = Budget()
            sp.add_argument("--budget-elements", type=int, default=d.max_elements)
            sp.add_argument("--budget-states", type=int, default=d.max_machine_states)
            sp.add_argument("--budget-millis", type=int, default=d.max_millis)

    a = sub.add_parser("analyze", help="Green's structure and finiteness criteria")
    a.add_argument("source")
    common(a, budgets=False)
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("closure", help="enumerate C(S), or C*(S) with --dual")
    c.add_argument("source")
    c.add_argument("--dual", action="store_true")
    c.add_argument("--expect-finite", action="store_true")
    c.add_argument("--out", help="write the structured report here and a growth figure next to it")
    common(c)
    c.set_defaults(func=cmd_closure)

    f = sub.add_parser("free-check", help="count distinct products of generators per length")
    f.add_argument("source")
    f.add_argument("--dual", action="store_true")
    f.add_argument("--length", type=int, default=5)
    f.add_argument("--assert-free", action="store_true")
    common(f)
    f.set_defaults(func=cmd_free_check)

    w = sub.add_parser("sweep", help="criteria versus closures over all classes of one order")
    w.add_argument("--order", type=int, required=True)
    w.add_argument("--exhaust-elements", type=int, default=10_000)
    w.add_argument("--cert-length", type=int, default=8)
    w.add_argument("--workers", type=int, default=None)
    w.add_argument("--out", help="write structured report here, plus .tsv and .png siblings")
    common(w)
    w.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CayleyMachinaError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
