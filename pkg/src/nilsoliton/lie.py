"""Finite-dimensional Lie algebras given by sparse structure constants."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import NamedTuple

from . import linalg as la
from .scalar import EXACT, Field


class LieAlgebraError(ValueError):
    pass


class DimensionMismatch(LieAlgebraError):
    pass


@dataclass(frozen=True)
class Subspace:
    """A subspace of k^n stored by its reduced row-echelon basis."""

    ambient: int
    basis: tuple[tuple, ...]
    field: Field = dc_field(default=EXACT, compare=False, repr=False)

    @classmethod
    def span(cls, vectors, ambient: int, field: Field = EXACT) -> "Subspace":
        vectors = [list(v) for v in vectors]
        if not vectors:
            return cls(ambient, (), field)
        rows, _ = la.rref(vectors, field, ambient)
        return cls(ambient, tuple(tuple(r) for r in rows), field)

    @classmethod
    def zero(cls, ambient: int, field: Field = EXACT) -> "Subspace":
        return cls(ambient, (), field)

    @classmethod
    def whole(cls, ambient: int, field: Field = EXACT) -> "Subspace":
        return cls.span(la.identity(ambient, field), ambient, field)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vectors(self) -> list[list]:
        return [list(b) for b in self.basis]

    def contains(self, v) -> bool:
        if all(self.field.is_zero(x) for x in v):
            return True
        return la.rank(self.vectors() + [list(v)], self.field) == self.dim

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(b) for b in self.basis)

    def __len__(self):
        return self.dim


class TwoStepReport(NamedTuple):
    ok: bool
    witness: tuple[int, int, int] | None
    reason: str

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class LieAlgebra:
    """Structure constants ``[x_i, x_j] = sum_k c[i][j][k] x_k`` (0-based, stored with i < j)."""

    dim: int
    brackets: tuple[tuple[int, int, int, object], ...]
    name: str = ""
    field: Field = dc_field(default=EXACT, compare=False, repr=False)

    @classmethod
    def from_brackets(cls, dim: int, entries, name: str = "", field: Field = EXACT,
                      check_jacobi: bool = True) -> "LieAlgebra":
        """Build from ``(i, j, k, coeff)`` entries; ``i > j`` is flipped with a sign change."""
        if dim < 1:
            raise LieAlgebraError("dimension must be positive")
        acc: dict[tuple[int, int, int], object] = {}
        for i, j, k, v in entries:
            if not all(0 <= t < dim for t in (i, j, k)):
                raise DimensionMismatch(f"bracket index out of range: {(i, j, k)} for dim {dim}")
            if i == j:
                raise LieAlgebraError(f"[x_{i}, x_{i}] must vanish")
            v = field.convert(v)
            if i > j:
                i, j, v = j, i, -v
            acc[(i, j, k)] = acc.get((i, j, k), field.zero) + v
        stored = tuple(sorted((i, j, k, v) for (i, j, k), v in acc.items() if not field.is_zero(v)))
        alg = cls(dim, stored, name, field)
        if check_jacobi:
            bad = alg.jacobi_defect()
            if bad is not None:
                raise LieAlgebraError(f"Jacobi identity fails on basis triple {bad}")
        return alg

    @cached_property
    def tensor(self):
        n = self.dim
        zero = self.field.zero
        c = [[[zero] * n for _ in range(n)] for _ in range(n)]
        for i, j, k, v in self.brackets:
            c[i][j][k] = v
            c[j][i][k] = -v
        return c

    def basis_bracket(self, i: int, j: int) -> list:
        return list(self.tensor[i][j])

    def bracket(self, x, y) -> list:
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatch(f"expected vectors of length {self.dim}")
        out = [self.field.zero] * self.dim
        for i, j, k, v in self.brackets:
            coeff = x[i] * y[j] - x[j] * y[i]
            if coeff:
                out[k] += v * coeff
        return out

    def ad(self, x):
        """Matrix of y -> [x, y]."""
        cols = [self.bracket(x, la.unit(self.dim, j, self.field)) for j in range(self.dim)]
        return la.columns_to_matrix(cols)

    def scaled(self, s) -> "LieAlgebra":
        s = self.field.convert(s)
        return LieAlgebra(self.dim, tuple((i, j, k, v * s) for i, j, k, v in self.brackets),
                          self.name, self.field)

    def is_abelian(self) -> bool:
        return not self.brackets

    def jacobi_defect(self):
        n = self.dim
        c = self.tensor
        for a in range(n):
            for b in range(a + 1, n):
                for d in range(b + 1, n):
                    # [a,[b,d]] + [b,[d,a]] + [d,[a,b]]
                    total = [self.field.zero] * n
                    for (p, q, r) in ((a, b, d), (b, d, a), (d, a, b)):
                        inner = c[q][r]
                        for m, w in enumerate(inner):
                            if w:
                                for k in range(n):
                                    total[k] += w * c[p][m][k]
                    if not all(self.field.is_zero(t) for t in total):
                        return (a, b, d)
        return None


def center(alg: LieAlgebra) -> Subspace:
    """Kernel of x -> ad_x, stacked over all basis directions."""
    n = alg.dim
    c = alg.tensor
    rows = []
    for j in range(n):
        for k in range(n):
            row = [c[i][j][k] for i in range(n)]
            if any(row):
                rows.append(row)
    if not rows:
        return Subspace.whole(n, alg.field)
    return Subspace.span(la.nullspace(rows, alg.field, n), n, alg.field)


def derived_subalgebra(alg: LieAlgebra) -> Subspace:
    n = alg.dim
    vecs = [alg.basis_bracket(i, j) for i in range(n) for j in range(i + 1, n)]
    vecs = [v for v in vecs if any(v)]
    return Subspace.span(vecs, n, alg.field)


def verify_two_step(alg: LieAlgebra) -> TwoStepReport:
    """True iff [[n,n],n] = 0 and [n,n] != 0.

    The witness ``(a, b, d)`` of a failure means ``[x_a, [x_b, x_d]] != 0``.
    """
    if alg.is_abelian():
        return TwoStepReport(False, None, "abelian: derived algebra is zero")
    n = alg.dim
    c = alg.tensor
    for a in range(n):
        for b in range(n):
            for d in range(b + 1, n):
                inner = c[b][d]
                if not any(inner):
                    continue
                if any(not alg.field.is_zero(t) for t in alg.bracket(la.unit(n, a, alg.field), inner)):
                    return TwoStepReport(False, (a, b, d), "[[n,n],n] != 0")
    return TwoStepReport(True, None, "2-step nilpotent")
