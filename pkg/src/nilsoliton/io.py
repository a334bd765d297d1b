"""JSON algebra files and machine-readable reports.

Algebra file layout::

    {"name": "H3", "dim": 3,
     "basis": ["z", "e1", "e2"],                 # optional
     "brackets": [{"i": 2, "j": 3, "k": 1, "coeff": "1"}],
     "metric": [["1", "0", "0"], [null, "1", "0"], [null, null, "1"]]}

Indices are 1-based. Only the upper triangle of the metric is required; entries
below the diagonal may be ``null`` or omitted, and if present they must agree with
their mirror image.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .lie import LieAlgebra
from .metric import MetricTensor
from .scalar import EXACT, Field, format_scalar, parse_scalar


class ParseError(ValueError):
    """Malformed input; ``diagnostics`` lists every problem found as ``(location, message)``."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(f"{loc}: {msg}" for loc, msg in self.diagnostics))


@dataclass(frozen=True)
class AlgebraFile:
    name: str
    dim: int
    brackets: tuple  # (i, j, k, coeff), 0-based, i < j
    metric: tuple    # full symmetric matrix of Fractions
    basis: tuple = ()

    def build(self, field: Field = EXACT) -> tuple[LieAlgebra, MetricTensor]:
        """Structure constants and metric over ``field``; raises the library errors unchanged."""
        alg = LieAlgebra.from_brackets(self.dim, self.brackets, self.name, field)
        metric = MetricTensor.from_rows([list(r) for r in self.metric], field)
        return alg, metric

    @property
    def basis_names(self) -> tuple:
        return self.basis or tuple(f"x{i + 1}" for i in range(self.dim))

    def to_dict(self) -> dict:
        out = {"name": self.name, "dim": self.dim}
        if self.basis:
            out["basis"] = list(self.basis)
        out["brackets"] = [{"i": i + 1, "j": j + 1, "k": k + 1, "coeff": format_scalar(c)}
                           for i, j, k, c in self.brackets]
        out["metric"] = [[format_scalar(x) for x in row] for row in self.metric]
        return out

    def dumps(self) -> str:
        return dumps(self.to_dict())


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def loads_algebra(text: str) -> AlgebraFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError([(f"line {exc.lineno} column {exc.colno}", exc.msg)]) from None
    return algebra_from_dict(data)


def load_algebra(path) -> AlgebraFile:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError([(str(path), exc.strerror or str(exc))]) from None
    return loads_algebra(text)


def _rational(value, loc, diags):
    try:
        return parse_scalar(value)
    except ValueError as exc:
        diags.append((loc, str(exc)))
        return None


def algebra_from_dict(data) -> AlgebraFile:
    diags: list[tuple[str, str]] = []
    if not isinstance(data, dict):
        raise ParseError([("$", "top level must be an object")])
    unknown = sorted(set(data) - {"name", "dim", "basis", "brackets", "metric"})
    for key in unknown:
        diags.append((key, "unknown field"))

    name = data.get("name", "")
    if not isinstance(name, str):
        diags.append(("name", "must be a string"))
        name = ""
    dim = data.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise ParseError(diags + [("dim", "must be a positive integer")])

    basis = data.get("basis", [])
    if not (isinstance(basis, list) and all(isinstance(b, str) for b in basis)):
        diags.append(("basis", "must be a list of strings"))
        basis = []
    elif basis and len(basis) != dim:
        diags.append(("basis", f"expected {dim} names, got {len(basis)}"))

    brackets = []
    raw = data.get("brackets", [])
    if not isinstance(raw, list):
        diags.append(("brackets", "must be a list"))
        raw = []
    for n, entry in enumerate(raw):
        loc = f"brackets[{n}]"
        if not isinstance(entry, dict):
            diags.append((loc, "must be an object with i, j, k, coeff"))
            continue
        idx = []
        for key in ("i", "j", "k"):
            v = entry.get(key)
            if isinstance(v, bool) or not isinstance(v, int):
                diags.append((f"{loc}.{key}", "must be an integer"))
            elif not 1 <= v <= dim:
                diags.append((f"{loc}.{key}", f"index {v} out of range 1..{dim}"))
            else:
                idx.append(v - 1)
        extra = sorted(set(entry) - {"i", "j", "k", "coeff"})
        for key in extra:
            diags.append((f"{loc}.{key}", "unknown field"))
        if "coeff" not in entry:
            diags.append((f"{loc}.coeff", "missing"))
            continue
        coeff = _rational(entry["coeff"], f"{loc}.coeff", diags)
        if len(idx) != 3 or coeff is None:
            continue
        i, j, k = idx
        if i == j:
            diags.append((loc, "i and j must differ"))
        elif i > j:
            diags.append((loc, "indices must satisfy i < j"))
        else:
            brackets.append((i, j, k, coeff))

    metric = _parse_metric(data.get("metric"), dim, diags)
    if diags:
        raise ParseError(diags)
    return AlgebraFile(name, dim, tuple(brackets), metric, tuple(basis))


def _parse_metric(raw, dim, diags):
    if not isinstance(raw, list) or len(raw) != dim:
        diags.append(("metric", f"must be a list of {dim} rows"))
        return ()
    g = [[None] * dim for _ in range(dim)]
    lower = {}
    for r, row in enumerate(raw):
        if not isinstance(row, list) or len(row) not in (dim, dim - r):
            diags.append((f"metric[{r}]", f"row must have {dim} entries (or {dim - r} upper-triangle entries)"))
            continue
        offset = dim - len(row)
        for c, value in enumerate(row, start=offset):
            loc = f"metric[{r}][{c}]"
            if c < r:
                if value is not None:
                    x = _rational(value, loc, diags)
                    if x is not None:
                        lower[(r, c)] = x
                continue
            if value is None:
                diags.append((loc, "upper-triangle entry is required"))
                continue
            x = _rational(value, loc, diags)
            if x is not None:
                g[r][c] = g[c][r] = x
    for (r, c), x in sorted(lower.items()):
        if g[c][r] is not None and g[c][r] != x:
            diags.append((f"metric[{r}][{c}]", f"{x} disagrees with metric[{c}][{r}] = {g[c][r]}"))
    if any(x is None for row in g for x in row):
        return ()
    return tuple(tuple(row) for row in g)


def algebra_file_of(alg: LieAlgebra, metric: MetricTensor, basis=(), name=None) -> AlgebraFile:
    return AlgebraFile(alg.name if name is None else name, alg.dim, tuple(alg.brackets),
                       tuple(tuple(Fraction(x) for x in row) for row in metric.matrix),
                       tuple(basis))


# --- report values -------------------------------------------------------

DECIMAL_DIGITS = 12


def encode_scalar(x):
    """``{"exact": "p/q", "decimal": "..."}`` for rationals, ``{"decimal": ...}`` for floats."""
    if x is None:
        return None
    if isinstance(x, bool):
        return x
    if isinstance(x, (int, Fraction)):
        return {"exact": str(Fraction(x)), "decimal": f"{float(x):.{DECIMAL_DIGITS}g}"}
    return {"decimal": f"{float(x) + 0.0:.{DECIMAL_DIGITS}g}"}


def decode_scalar(obj):
    if obj is None or isinstance(obj, bool):
        return obj
    if "exact" in obj:
        return Fraction(obj["exact"])
    return float(obj["decimal"])


def encode_matrix(rows):
    if rows is None:
        return None
    return [[encode_scalar(x) for x in row] for row in rows]


def decode_matrix(obj):
    if obj is None:
        return None
    return [[decode_scalar(x) for x in row] for row in obj]


def encode_vector(v):
    return [encode_scalar(x) for x in v]

