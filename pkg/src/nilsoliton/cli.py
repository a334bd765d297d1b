"""``nilsoliton`` command-line entry point.

Exit codes: 0 success, 2 unreadable input, 3 mathematically unusable input or a
degenerating flow, 4 a computed value disagrees with its reference.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import catalog, suite
from .classify import TypeClassError
from .flow import FlowDegenerated, FlowError
from .io import ParseError, algebra_file_of, dumps, load_algebra
from .lie import LieAlgebraError
from .metric import MetricError
from .report import (RicciMismatch, Source, classify_report, flow_report, ricci_report,
                     soliton_report)
from .scalar import backend_from_env

EXIT_OK, EXIT_PARSE, EXIT_MATH, EXIT_MISMATCH = 0, 2, 3, 4


def load_source(source: str, field=None) -> Source:
    """``source`` is a path to an algebra file or a catalog name."""
    field = field or backend_from_env()
    if os.path.exists(source):
        af = load_algebra(source)
        name = af.name or os.path.basename(source)
        basis = af.basis_names
    elif source in catalog.BUILDERS:
        entry = catalog.get(source)
        af = algebra_file_of(entry.alg, entry.metric, entry.basis_names, entry.name)
        name, basis = entry.name, entry.basis_names
    else:
        raise ParseError([(source, "no such file or catalog entry")])
    alg, metric = af.build(field)
    return Source(name, alg, metric, tuple(basis))


def _plain(obj) -> str:
    """Human rendering of an encoded scalar."""
    if obj is None:
        return "-"
    if isinstance(obj, dict):
        return obj.get("exact", obj.get("decimal"))
    return str(obj)


def _matrix_lines(label, rows, names):
    cells = [[_plain(x) for x in row] for row in rows]
    width = max(len(c) for row in cells for c in row)
    nw = max(len(n) for n in names)
    out = [f"{label}:"]
    out.append(" " * (nw + 3) + " ".join(n.rjust(width) for n in names))
    for n, row in zip(names, cells):
        out.append(f"  {n.ljust(nw)} " + " ".join(c.rjust(width) for c in row))
    return out


def _kv(pairs):
    w = max(len(k) for k, _ in pairs)
    return [f"{k.ljust(w)}  {v}" for k, v in pairs]


def render_classify(rep: dict) -> str:
    d = rep["decomposition"]
    flags = rep["flags"]
    lines = _kv([
        ("algebra", rep["algebra"]),
        ("signature", f"({rep['signature'][0]}, {rep['signature'][1]})"),
        ("blocks U/Z/V/E", f"{d['U']}/{d['Z']}/{d['V']}/{d['E']}"),
        ("H-type", flags["H"]),
        ("pseudoH-type", "undefined" if flags["pseudoH"] is None else flags["pseudoH"]),
        ("pH-type", flags["pH"]),
    ])
    for kind, w in rep["witnesses"].items():
        lines.append(f"witness[{kind}]  {w['identity']} fails at z = "
                     f"({', '.join(_plain(x) for x in w['z'])})")
    if "ph_adapted" in rep:
        pa = rep["ph_adapted"]
        lines.append("adapted pH frame  " + ("m_i = " + str(pa["m_counts"]) if pa["ok"]
                                            else f"{pa['error']}: {pa['message']}"))
    lines += [f"note  {n}" for n in rep["notes"]]
    return "\n".join(lines) + "\n"


def render_ricci(rep: dict) -> str:
    lines = [f"algebra  {rep['algebra']}   method  {rep['method']}"]
    lines += _matrix_lines("Ric operator", rep["ric_op"], rep["basis"])
    lines.append(f"scalar curvature  {_plain(rep['scalar'])}")
    if "agree" in rep:
        lines.append("fast and oracle agree" if rep["agree"] else "fast and oracle DISAGREE")
    return "\n".join(lines) + "\n"


def render_soliton(rep: dict) -> str:
    pairs = [("algebra", rep["algebra"]), ("dim Der", rep["derivation_dim"]),
             ("feasible", rep["feasible"])]
    if rep["feasible"]:
        pairs += [("c", _plain(rep["c"])), ("class", rep["class"]),
                  ("trivial", rep["trivial"])]
    lines = _kv(pairs)
    if rep["feasible"] and not rep["trivial"]:
        lines += _matrix_lines("D", rep["D"], rep["basis"])
    cert = rep["certificate"]
    if cert:
        lines.append("certificate:")
        lines += [f"  {c['text']}" for c in cert["constraints"]]
    lines += [f"warning  {w}" for w in rep["warnings"]]
    return "\n".join(lines) + "\n"


def render_flow(rep: dict) -> str:
    lines = _kv([("algebra", rep["algebra"]), ("t_end", _plain(rep["t_end"])),
                 ("steps", rep["steps"]), ("max residual", _plain(rep["max_residual"])),
                 ("final c", _plain(rep["final_c"]))])
    lines += _matrix_lines("g(t_end)", rep["final_metric"], rep["basis"])
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nilsoliton",
                                description="Ricci curvature and nilsoliton tests for "
                                            "2-step nilpotent metric Lie algebras.")
    p.add_argument("--json", action="store_true", help="emit a JSON report")
    sub = p.add_subparsers(dest="command", required=True)

    def with_source(name, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("source", help="algebra JSON file or catalog entry name")
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        return sp

    with_source("classify", "H / pseudoH / pH type flags")
    sp = with_source("ricci", "Ricci operator")
    sp.add_argument("--method", choices=("fast", "oracle", "both"), default="fast")
    with_source("soliton", "nilsoliton feasibility")
    sp = with_source("flow", "integrate the Ricci flow (float arithmetic)")
    sp.add_argument("--t-end", type=float, default=1.0)
    sp.add_argument("--steps", type=int, default=1000)
    sp.add_argument("--csv", metavar="PATH", help="write the trajectory as CSV ('-' for stdout)")
    sp.add_argument("--sample-every", type=int, default=1)

    sp = sub.add_parser("catalog", help="list or emit built-in examples")
    sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    csub = sp.add_subparsers(dest="action", required=True)
    csub.add_parser("list")
    em = csub.add_parser("emit")
    em.add_argument("name")

    sp = sub.add_parser("paper-suite", help="reproduce the published examples end to end")
    sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    return p


def _run(args, out) -> int:
    if args.command == "catalog":
        if args.action == "list":
            if args.json:
                out.write(dumps({"entries": [{"name": n, "description": catalog.get(n).description}
                                             for n in catalog.names()]}))
            else:
                entries = [catalog.get(n) for n in catalog.names()]
                w = max(len(e.name) for e in entries)
                out.write("".join(f"{e.name.ljust(w)}  {e.description}\n" for e in entries))
            return EXIT_OK
        try:
            entry = catalog.get(args.name)
        except catalog.CatalogError as exc:
            raise ParseError([(args.name, str(exc))]) from None
        out.write(algebra_file_of(entry.alg, entry.metric, entry.basis_names, entry.name).dumps())
        return EXIT_OK

    if args.command == "paper-suite":
        table = suite.rows()
        out.write(dumps(suite.as_dict(table)) if args.json else suite.render(table))
        return EXIT_MISMATCH if any(not r.ok for r in table) else EXIT_OK

    src = load_source(args.source)
    if args.command == "classify":
        rep, render = classify_report(src), render_classify
    elif args.command == "ricci":
        rep, render = ricci_report(src, args.method), render_ricci
    elif args.command == "soliton":
        rep, render = soliton_report(src), render_soliton
    else:
        if args.steps < 1:
            raise FlowError("--steps must be positive")
        rep, traj = flow_report(src, args.t_end, args.steps, args.sample_every)
        render = render_flow
        if args.csv == "-":
            out.write(traj.to_csv())
            return EXIT_OK
        if args.csv:
            with open(args.csv, "w", encoding="utf-8", newline="") as fh:
                fh.write(traj.to_csv())
    out.write(dumps(rep) if args.json else render(rep))
    return EXIT_OK


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return _run(args, out)
    except ParseError as exc:
        for loc, msg in exc.diagnostics:
            err.write(f"error: {loc}: {msg}\n")
        return EXIT_PARSE
    except RicciMismatch as exc:
        err.write(f"error: {exc}\n")
        if args.json:
            out.write(dumps(exc.report))
        return EXIT_MISMATCH
    except FlowDegenerated as exc:
        err.write(f"error: {exc}\n")
        return EXIT_MATH
    except (LieAlgebraError, MetricError, TypeClassError, FlowError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_MATH


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
