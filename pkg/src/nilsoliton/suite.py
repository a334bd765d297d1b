"""End-to-end reproduction table for the published nilsoliton claims.

Each row pairs a published value with what the pipeline computes on the
corresponding catalog entry. A row whose published value disagrees with the
computation is reported as a mismatch rather than being adjusted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as F

from . import catalog
from . import linalg as la
from .classify import DimensionBoundViolated, TypeClassError, adapt_ph_basis, classify
from .curvature import ricci_fast, ricci_oracle
from .metric import decompose
from .soliton import derivation_space, solve_nilsoliton

HALF = F(1, 2)


@dataclass(frozen=True)
class Row:
    group: str
    entry: str
    quantity: str
    published: str
    computed: str
    ok: bool


def _same(a, b) -> bool:
    return [list(r) for r in a] == [list(r) for r in b]


def _fmt(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, (set, frozenset, tuple, list)):
        return "{" + ", ".join(str(v) for v in sorted(x)) + "}"
    return str(x)


def _solve(entry):
    ric = ricci_oracle(entry.alg, entry.metric)
    return ric, solve_nilsoliton(ric.ric_op, derivation_space(entry.alg), entry.alg)


def _c_row(group, name, published_c):
    entry = catalog.get(name)
    _, res = _solve(entry)
    return Row(group, name, "c", _fmt(published_c), _fmt(res.c) if res.feasible else "infeasible",
               res.feasible and res.c == published_c)


def _d_row(group, name, published_diag):
    entry = catalog.get(name)
    _, res = _solve(entry)
    got = None if res.D is None else [res.D[i][i] for i in range(len(res.D))]
    diagonal = res.D is not None and _same(res.D, la.diag(got))
    return Row(group, name, "D (diagonal)", _fmt(published_diag), _fmt(got),
               diagonal and got == list(published_diag))


def _cert_row(group, name, published):
    entry = catalog.get(name)
    _, res = _solve(entry)
    got = None if res.feasible or res.certificate is None else set(res.certificate.pair)
    return Row(group, name, "certificate c-values", _fmt(published),
               "feasible" if res.feasible else _fmt(got), got == set(published))


def _infeasible_row(group, name):
    entry = catalog.get(name)
    _, res = _solve(entry)
    return Row(group, name, "soliton", "infeasible", "infeasible" if not res.feasible else
               f"feasible, c = {res.c}", not res.feasible)


def _ric_row(group, name, published):
    entry = catalog.get(name)
    ric, _ = _solve(entry)
    fast = ricci_fast(decompose(entry.alg, entry.metric))
    same = _same(ric.ric_op, fast.ric_op)
    return Row(group, name, "Ric operator", "display", "match" if _same(ric.ric_op, published)
               and same else "differs", same and _same(ric.ric_op, published))


def _flag_row(group, name, flag):
    entry = catalog.get(name)
    rep = classify(decompose(entry.alg, entry.metric))
    got = rep.flags()[flag]
    return Row(group, name, f"{flag}-type", "True", str(got), got is True)


def _bound_row(group, name):
    entry = catalog.get(name)
    try:
        adapt_ph_basis(decompose(entry.alg, entry.metric))
        got, ok = "accepted", False
    except DimensionBoundViolated:
        got, ok = "rejected (dim Z + 1 > dim E)", True
    except TypeClassError as exc:
        got, ok = f"rejected otherwise: {exc}", False
    return Row(group, name, "adapted pH frame", "rejected", got, ok)


def _unbuildable_row(group, label, builder):
    try:
        builder()
        return Row(group, label, "constructible", "yes", "yes", True)
    except catalog.CatalogError as exc:
        return Row(group, label, "constructible", "yes", "no: " + str(exc).split(": ", 1)[-1].split(" (")[0], False)


def rows() -> list[Row]:
    out = []
    for p in (1, 2, 3):
        m, n = 1, 2 * p
        out.append(_c_row("pseudoH", f"H({p},1)", m + F(n, 4)))
        out.append(_d_row("pseudoH", f"H({p},1)", [-(m + F(n, 2))] + [-(F(m, 2) + F(n, 4))] * n))
    for n in (2, 4):
        out.append(_c_row("pH timelike center", f"pHL(1,{n})", 1 + F(n, 4)))
        out.append(_d_row("pH timelike center", f"pHL(1,{n})", [-1 - F(n, 2)] + [-HALF - F(n, 4)] * n))
    for m in (2, 3):
        out.append(_cert_row("pH m>=2", f"pHL({m},4)", {-(m - 2) + 1, -(m - 2) - 1}))
    out.append(_c_row("pH positive center", "pH+(1,2)", HALF))
    for name in ("pH+(1,4)", "pH+(2,4)", "pH+(3,4)", "pH+(1,6)"):
        out.append(_infeasible_row("pH positive center", name))
    for name in ("pH+bound(2,2)", "pH+bound(3,2)", "pH+bound(4,4)"):
        out.append(_bound_row("pH positive center", name))
    out.append(_ric_row("degenerate center", "pHdeg(0,0)", la.zeros(3, 3)))
    for m, k in ((1, 1), (2, 1)):
        name = f"pHdeg({m},{k})"
        out.append(_infeasible_row("degenerate center", name))
        out.append(_cert_row("degenerate center", name, {-F(m, 2), -F(m - 1, 2)}))
    out.append(_unbuildable_row("degenerate center", "pHdeg(2,2)",
                                lambda: catalog.ph_degenerate_family(2, 2)))
    for name in catalog.names():
        if name.startswith("quatH7"):
            entry = catalog.get(name)
            s = entry.metric.matrix[2][2] * entry.metric.matrix[5][5] * entry.metric.matrix[6][6]
            out.append(_ric_row("quaternionic", name, la.scale(la.diag([0, 0, 1, 0, 0, -1, -1]), HALF * s)))
            out.append(_cert_row("quaternionic", name, {-F(3, 2) * s, -HALF * s}))
            out.append(_flag_row("quaternionic", name, "pH"))
    return out


def render(table: list[Row]) -> str:
    headers = ("group", "entry", "quantity", "published", "computed", "status")
    body = [(r.group, r.entry, r.quantity, r.published, r.computed, "ok" if r.ok else "MISMATCH")
            for r in table]
    widths = [max(len(h), *(len(b[i]) for b in body)) for i, h in enumerate(headers)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(c.ljust(w) for c, w in zip(b, widths)).rstrip() for b in body]
    bad = sum(not r.ok for r in table)
    lines.append(f"{len(table) - bad}/{len(table)} rows reproduced, {bad} mismatches")
    return "\n".join(lines) + "\n"


def as_dict(table: list[Row]) -> dict:
    return {"command": "paper-suite",
            "rows": [r.__dict__ for r in table],
            "mismatches": sum(not r.ok for r in table)}
