"""Derivation algebras and algebraic Ricci soliton (nilsoliton) feasibility."""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import NamedTuple

import numpy as np
from scipy.linalg import expm

from . import linalg as la
from .lie import LieAlgebra
from .scalar import EXACT, FLOAT, Field, field_of

FLOAT_FEASIBILITY_TOL = 1e-9


@dataclass(frozen=True)
class DerivationBasis:
    matrices: tuple
    n: int

    @property
    def dim(self) -> int:
        return len(self.matrices)

    def __len__(self):
        return len(self.matrices)

    def __iter__(self):
        return iter(self.matrices)


class DerivationCheck(NamedTuple):
    ok: bool
    witness: tuple[int, int] | None
    defect: list | None

    def __bool__(self):
        return self.ok


def _constraint_rows(alg: LieAlgebra):
    """Sparse rows of D -> (D[x_i,x_j] - [Dx_i,x_j] - [x_i,Dx_j])_k; D[a][b] is column a*n+b.

    Rows are keyed by (i, j, k) so callers can attribute a constraint to a bracket.
    """
    n = alg.dim
    c = alg.tensor
    keyed = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                row: dict[int, object] = {}

                def bump(col, val):
                    row[col] = row.get(col, 0) + val

                for l in range(n):
                    if c[i][j][l]:
                        bump(k * n + l, c[i][j][l])
                for a in range(n):
                    if c[a][j][k]:
                        bump(a * n + i, -c[a][j][k])
                    if c[i][a][k]:
                        bump(a * n + j, -c[i][a][k])
                row = {col: v for col, v in row.items() if v}
                if row:
                    keyed.append(((i, j, k), row))
    return keyed


def derivation_space(alg: LieAlgebra) -> DerivationBasis:
    n = alg.dim
    rows = [row for _, row in _constraint_rows(alg)]
    if rows:
        kernel = la.nullspace(rows, alg.field, n * n)
    else:
        kernel = la.identity(n * n, alg.field)
    mats = tuple(tuple(tuple(vec[a * n:(a + 1) * n]) for a in range(n)) for vec in kernel)
    return DerivationBasis(mats, n)


def derivation_defect(alg: LieAlgebra, D, i: int, j: int, field: Field | None = None):
    """D[x_i, x_j] - [D x_i, x_j] - [x_i, D x_j]."""
    n = alg.dim
    col = lambda b: [D[a][b] for a in range(n)]
    lhs = la.matvec(D, alg.basis_bracket(i, j))
    e_i, e_j = la.unit(n, i), la.unit(n, j)
    rhs = la.vadd(alg.bracket(col(i), e_j), alg.bracket(e_i, col(j)))
    return la.vsub(lhs, rhs)


def is_derivation(alg: LieAlgebra, D) -> DerivationCheck:
    field = field_of(D)
    n = alg.dim
    for i in range(n):
        for j in range(i + 1, n):
            d = derivation_defect(alg, D, i, j)
            if not all(field.is_zero(x) for x in d):
                return DerivationCheck(False, (i, j), d)
    return DerivationCheck(True, None, None)


@dataclass(frozen=True)
class Constraint:
    """One bracket relation's demand on c.

    ``value`` is the forced c; ``None`` means the relation fails for every c
    (``residual`` is then the nonzero c-independent defect).
    """

    bracket: tuple[int, int, int]
    coeff: object
    value: object = None
    residual: object = None

    def describe(self, names=None) -> str:
        i, j, k = self.bracket
        nm = (lambda t: names[t]) if names else (lambda t: f"x{t + 1}")
        head = f"[{nm(i)},{nm(j)}] -> {nm(k)} (coeff {self.coeff})"
        if self.value is None:
            return f"{head}: 0 = {self.residual} for every c"
        return f"{head}: c = {self.value}"


@dataclass(frozen=True)
class Certificate:
    first: Constraint
    second: Constraint
    values: tuple

    @property
    def pair(self) -> tuple:
        return (self.first.value, self.second.value)


def soliton_constraints(alg: LieAlgebra, ric_op, field: Field = EXACT) -> list[Constraint]:
    """Affine conditions on c from requiring Ric - c Id to be a derivation.

    For the bracket component [x_i, x_j]_k the condition reads
    defect(Ric)_k + c * c_ijk = 0, because defect(Id) = -[x_i, x_j].
    """
    out = []
    n = alg.dim
    c = alg.tensor
    for i in range(n):
        for j in range(i + 1, n):
            d = derivation_defect(alg, ric_op, i, j)
            for k in range(n):
                coeff = c[i][j][k]
                if not field.is_zero(coeff):
                    out.append(Constraint((i, j, k), coeff, -d[k] / coeff))
                elif not field.is_zero(d[k]):
                    out.append(Constraint((i, j, k), coeff, None, d[k]))
    return out


def extract_certificate(alg: LieAlgebra, ric_op, field: Field = EXACT) -> Certificate | None:
    """First pair of bracket relations that cannot hold for a common c."""
    cons = soliton_constraints(alg, ric_op, field)
    for con in cons:
        if con.value is None:
            return Certificate(con, con, ())
    values = []
    for con in cons:
        if not any(field.eq(con.value, v) for v in values):
            values.append(con.value)
    if len(values) < 2:
        return None
    first = cons[0]
    second = next(con for con in cons if not field.eq(con.value, first.value))
    return Certificate(first, second, tuple(values))


def classify_soliton(c, field: Field = EXACT) -> str:
    s = field.sign(c)
    return {1: "shrinking", 0: "steady", -1: "expanding"}[s]


@dataclass(frozen=True)
class SolitonResult:
    feasible: bool
    c: object = None
    D: list | None = None
    residual: object = 0
    trivial: bool = False
    kind: str | None = None
    certificate: Certificate | None = None
    coefficients: tuple = ()
    warnings: tuple = dc_field(default=())

    @property
    def nontrivial(self) -> bool:
        return self.feasible and not self.trivial


def solve_nilsoliton(ric_op, der_basis: DerivationBasis, alg: LieAlgebra | None = None,
                     field: Field | None = None) -> SolitonResult:
    """Solve Ric = c Id + sum_k a_k D_k for (c, a_1..a_d).

    With ``alg`` given, an infeasible result carries the conflicting bracket
    relations as a certificate.
    """
    if field is None:
        field = field_of(ric_op)
    n = len(ric_op)
    ident = la.identity(n, field)
    cols = [ident] + [[[field.convert(x) for x in row] for row in D] for D in der_basis]
    if field.exact:
        a = [[mat[r][s] for mat in cols] for r in range(n) for s in range(n)]
        b = [ric_op[r][s] for r in range(n) for s in range(n)]
        sol = la.solve(a, b, field)
        if sol is None:
            cert = extract_certificate(alg, ric_op, field) if alg is not None else None
            return SolitonResult(False, certificate=cert)
        c = sol[0]
        residual = field.zero
        warnings = ()
    else:
        A = np.array([[float(mat[r][s]) for mat in cols] for r in range(n) for s in range(n)])
        b = np.array([float(ric_op[r][s]) for r in range(n) for s in range(n)])
        sol, *_ = np.linalg.lstsq(A, b, rcond=None)
        residual = float(np.linalg.norm(A @ sol - b))
        warnings = ("float backend: exact arithmetic is authoritative",)
        if residual > FLOAT_FEASIBILITY_TOL:
            cert = extract_certificate(alg, ric_op, field) if alg is not None else None
            return SolitonResult(False, residual=residual, certificate=cert, warnings=warnings)
        sol = [float(x) for x in sol]
        c = sol[0]
    D = la.sub(ric_op, la.scale(ident, c))
    trivial = la.is_zero_matrix(D, field)
    return SolitonResult(True, c, D, residual, trivial, classify_soliton(c, field), None,
                         tuple(sol[1:]), warnings)


def _is_diagonal(D, field):
    n = len(D)
    return all(field.is_zero(D[i][j]) for i in range(n) for j in range(n) if i != j)


def _nilpotent_exp(D, t, field):
    n = len(D)
    A = la.scale(D, field.convert(t) / 2)
    term = la.identity(n, field)
    total = la.identity(n, field)
    for k in range(1, n + 1):
        term = la.scale(la.matmul(term, A), field.one / k)
        if la.is_zero_matrix(term, field):
            return total
        total = la.add(total, term)
    return None


def soliton_generator(D, t):
    """exp(t D / 2), the identity-tangent data of the soliton's diffeomorphism flow.

    Nilpotent D with rational t stays exact; diagonal D uses math.exp; anything else
    goes through scipy's scaling-and-squaring expm.
    """
    field = field_of(D, t)
    if field.exact and not isinstance(t, float):
        res = _nilpotent_exp(D, t, field)
        if res is not None:
            return res
    fl = FLOAT
    n = len(D)
    if _is_diagonal(D, fl):
        out = la.zeros(n, n, fl)
        for i in range(n):
            out[i][i] = math.exp(float(t) * float(D[i][i]) / 2)
        return out
    arr = expm(np.array([[float(x) for x in row] for row in D]) * float(t) / 2)
    return arr.tolist()
