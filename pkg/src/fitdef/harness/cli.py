"""Command line interface: ``fitdef info|eval|define|verify|suite``.

Exit codes: 0 success, 1 a check failed (or a formula is false), 2 usage,
input or group construction error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ..errors import FitdefError
from ..group import center
from ..logic import build_phi_defining, build_psi_defining, definable_set, evaluate, parse, render
from ..radicals import fitting, soluble_radical
from ..series import derived_length, nilpotency_class
from .checks import CHECK_IDS, ERROR, FAIL
from .config import Config, ConfigError
from .corpus import default_corpus, entry_from_text, load_corpus
from .report import run_check, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _group(text):
    entry = entry_from_text(text)
    return entry, entry.group


def _element(G, text):
    """An element given by a nonnegative index, otherwise by label."""
    if text.isdigit():
        g = int(text)
        if g >= G.order:
            raise UsageError(f"element index {g} out of range 0..{G.order - 1}")
        return g
    labels = [G.label(i) for i in G.elements]
    if text not in labels:
        raise UsageError(f"no element labelled {text!r}")
    return labels.index(text)


def _fmt(G, members):
    return " ".join(G.label(g) for g in sorted(members))


def cmd_info(args, out):
    _, G = _group(args.group)
    F, R = fitting(G), soluble_radical(G)
    lines = [
        f"name: {G.name}",
        f"order: {G.order}",
        f"abelian: {str(G.is_abelian_group).lower()}",
        f"center order: {center(G).order}",
        f"classes: {len(G.conjugacy_classes)}",
        f"class sizes: {' '.join(str(len(c)) for c in G.conjugacy_classes)}",
        f"fitting order: {F.subgroup.order}",
        f"fitting class: {F.invariant}",
        f"radical order: {R.subgroup.order}",
        f"radical derived length: {R.invariant}",
    ]
    if F.subgroup.order == G.order:
        lines.append(f"group nilpotency class: {nilpotency_class(G, F.subgroup)}")
    if R.subgroup.order == G.order:
        lines.append(f"group derived length: {derived_length(G, R.subgroup)}")
    if args.verbose:
        lines.append(f"fitting: {_fmt(G, F.subgroup.members)}")
        lines.append(f"radical: {_fmt(G, R.subgroup.members)}")
    print("\n".join(lines), file=out)
    return EXIT_OK


def cmd_eval(args, out):
    _, G = _group(args.group)
    params = tuple(_element(G, p) for p in args.params)
    assignment = {}
    for item in args.assign:
        name, _, value = item.partition("=")
        if not name.startswith("x") or not name[1:].isdigit() or not value:
            raise UsageError(f"--assign expects xk=element, got {item!r}")
        assignment[int(name[1:])] = _element(G, value)
    f = parse(args.formula, free_vars=assignment)
    result = evaluate(G, f, params, assignment, strategy=args.strategy)
    print(f"formula: {render(f)}", file=out)
    print(f"truth: {str(result.truth).lower()}", file=out)
    if result.witness:
        shown = ", ".join(f"x{k} = {G.label(v)}" for k, v in sorted(result.witness.items()))
        print(f"witness: {shown}", file=out)
    print(f"tuples examined: {result.tuples_examined}", file=out)
    return EXIT_OK if result.truth else EXIT_FAIL


def cmd_define(args, out):
    _, G = _group(args.group)
    f = build_phi_defining(args.phi) if args.phi is not None else build_psi_defining(args.psi)
    members = definable_set(G, f, strategy=args.strategy)
    print(f"formula: {render(f)}", file=out)
    print(f"size: {len(members)}", file=out)
    print(f"indices: {' '.join(map(str, sorted(members)))}", file=out)
    print(f"labels: {_fmt(G, members)}", file=out)
    return EXIT_OK


def _status_code(statuses):
    if FAIL in statuses:
        return EXIT_FAIL
    if ERROR in statuses:
        return EXIT_USAGE
    return EXIT_OK


def _config(args):
    config = Config.from_file(args.config) if getattr(args, "config", None) else Config()
    overrides = {}
    if getattr(args, "jobs", None):
        overrides["jobs"] = args.jobs
    if getattr(args, "timings", False):
        overrides["timings"] = True
    if getattr(args, "seed", None) is not None:
        overrides["seed"] = args.seed
    return Config(**{**config.to_dict(), **overrides})


def cmd_verify(args, out):
    entry = entry_from_text(args.group)
    report = run_check(entry, args.check, _config(args))
    print(json.dumps(report.to_dict(), indent=2, sort_keys=True), file=out)
    return _status_code({report.status})


def cmd_suite(args, out):
    config = _config(args)
    corpus = load_corpus(args.corpus) if args.corpus else default_corpus()
    result = run_suite(corpus, config)
    text = result.to_json()
    target = args.out or config.report_path
    if target:
        Path(target).write_text(text)
    else:
        out.write(text)
    s = result.summary
    print(
        f"{s['groups']} groups, {s['checks']} checks: {s['pass']} pass, {s['fail']} fail, "
        f"{s['skipped']} skipped, {s['error']} error",
        file=sys.stderr,
    )
    return result.exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fitdef", description="Fitting subgroup and soluble radical toolkit")
    sub = parser.add_subparsers(dest="command", required=True)
    group_help = "group file (.table, .perm, .family) or family spec such as symmetric:4"

    p = sub.add_parser("info", help="order, center, classes, Fitting subgroup and radical")
    p.add_argument("group", help=group_help)
    p.add_argument("-v", "--verbose", action="store_true", help="list subgroup members")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("eval", help="evaluate a formula")
    p.add_argument("group", help=group_help)
    p.add_argument("formula")
    p.add_argument("params", nargs="*", help="values of p0, p1, ... (index or label)")
    p.add_argument("--assign", action="append", default=[], metavar="xk=v", help="value of a free variable")
    p.add_argument("--strategy", default="auto", choices=("auto", "coset", "naive"))
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("define", help="set defined by the Fitting or radical formula")
    p.add_argument("group", help=group_help)
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--phi", type=int, metavar="N")
    which.add_argument("--psi", type=int, metavar="N")
    p.add_argument("--strategy", default="auto", choices=("auto", "coset", "naive"))
    p.set_defaults(func=cmd_define)

    p = sub.add_parser("verify", help="run one check on one group")
    p.add_argument("check", choices=CHECK_IDS)
    p.add_argument("group", help=group_help)
    p.add_argument("--config")
    p.add_argument("--seed", type=int)
    p.add_argument("--timings", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("suite", help="run every check on a corpus")
    p.add_argument("--corpus", help="directory of group files (default: built-in corpus)")
    p.add_argument("--config")
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.add_argument("--jobs", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--timings", action="store_true")
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        if getattr(args, "phi", None) is not None and args.phi < 1 or getattr(args, "psi", None) is not None and args.psi < 1:
            raise UsageError("--phi / --psi need N >= 1")
        return args.func(args, out)
    except (UsageError, ConfigError, OSError, FitdefError, ValueError) as exc:
        print(f"fitdef: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run():
    sys.exit(main())
