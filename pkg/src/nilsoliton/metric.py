"""Pseudo-Riemannian metrics on a 2-step algebra and the adapted splitting U + Z + V + E."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property

from . import linalg as la
from .lie import LieAlgebra, Subspace, center, verify_two_step
from .scalar import EXACT, Field


class MetricError(ValueError):
    pass


class DegenerateMetric(MetricError):
    pass


class AmbiguousDegeneracy(MetricError):
    """Float backend could not decide whether a pivot vanishes."""


class NotTwoStep(MetricError):
    pass


@dataclass(frozen=True)
class MetricTensor:
    g: tuple[tuple, ...]
    field: Field = dc_field(default=EXACT, compare=False, repr=False)

    @classmethod
    def from_rows(cls, rows, field: Field = EXACT, check: bool = True) -> "MetricTensor":
        m = tuple(tuple(field.convert(x) for x in row) for row in rows)
        if any(len(row) != len(m) for row in m):
            raise MetricError("metric must be square")
        met = cls(m, field)
        if check:
            if not la.is_symmetric(met.matrix, field):
                raise MetricError("metric is not symmetric")
            if field.is_zero(met.determinant):
                raise DegenerateMetric("metric is degenerate (zero determinant)")
        return met

    @classmethod
    def diagonal(cls, values, field: Field = EXACT) -> "MetricTensor":
        return cls.from_rows(la.diag(values, field), field)

    @property
    def dim(self) -> int:
        return len(self.g)

    @property
    def matrix(self) -> list[list]:
        return [list(r) for r in self.g]

    @cached_property
    def determinant(self):
        return la.det(self.matrix, self.field)

    @cached_property
    def inverse(self) -> list[list]:
        return la.inverse(self.matrix, self.field)

    def ip(self, x, y):
        return la.bilinear(self.matrix, x, y)

    def scaled(self, lam) -> "MetricTensor":
        lam = self.field.convert(lam)
        return MetricTensor(tuple(tuple(lam * x for x in r) for r in self.g), self.field)

    def is_positive_definite(self) -> bool:
        return signature(self) == (self.dim, 0)


def signature(g) -> tuple[int, int]:
    """(#positive, #negative) by symmetric Gaussian congruence; no eigenvalues."""
    if isinstance(g, MetricTensor):
        field, m = g.field, g.matrix
    else:
        from .scalar import field_of
        field, m = field_of(g), [list(r) for r in g]
    plus = minus = 0
    while m:
        n = len(m)
        piv = next((i for i in range(n) if not field.is_zero(m[i][i])), None)
        if piv is None:
            pair = next(((i, j) for i in range(n) for j in range(i + 1, n)
                         if not field.is_zero(m[i][j])), None)
            if pair is None:
                raise DegenerateMetric("degenerate form: residual block is zero")
            i, j = pair
            # x_i -> x_i + x_j makes the (i, i) entry 2 m[i][j]
            for r in range(n):
                m[r][i] += m[r][j]
            for c in range(n):
                m[i][c] += m[j][c]
            piv = i
        d = m[piv][piv]
        if d > 0:
            plus += 1
        else:
            minus += 1
        rest = [r for r in range(n) if r != piv]
        m = [[m[r][c] - m[r][piv] * m[piv][c] / d for c in rest] for r in rest]
    return plus, minus


def orthogonalize(metric: MetricTensor, vectors):
    """Signed Gram-Schmidt without normalization.

    Lowest-index vector of nonzero norm goes first; if every remaining vector is
    null, the first non-orthogonal pair (a, b) is replaced by a + b.
    """
    field = metric.field
    ip = metric.ip
    pending = [list(v) for v in vectors]
    out: list[list] = []
    while pending:
        idx = next((k for k, v in enumerate(pending) if not field.is_zero(ip(v, v))), None)
        if idx is None:
            pair = next(((a, b) for a in range(len(pending)) for b in range(a + 1, len(pending))
                         if not field.is_zero(ip(pending[a], pending[b]))), None)
            if pair is None:
                if field.exact:
                    raise DegenerateMetric("orthogonalization hit a null subspace")
                raise AmbiguousDegeneracy(
                    "pivot below tolerance; rerun with the exact backend (NILSOLITON_BACKEND=exact)")
            a, b = pair
            pending[a] = la.vadd(pending[a], pending[b])
            idx = a
        w = pending.pop(idx)
        nw = ip(w, w)
        out.append(w)
        pending = [la.vsub(v, la.vscale(w, ip(v, w) / nw)) for v in pending]
        pending = [v for v in pending if not all(field.is_zero(x) for x in v)]
    return out


def _normalize(metric: MetricTensor, v):
    """Scale v to norm +-1 when the root stays in the field; return (vector, squared norm)."""
    field = metric.field
    nv = metric.ip(v, v)
    root = field.sqrt(abs(nv))
    if root is None:
        return v, nv
    if not field.exact and root <= field.tol:
        raise AmbiguousDegeneracy("vector norm below tolerance; use the exact backend")
    return la.vscale(v, field.one / root), field.convert(field.sign(nv))


@dataclass(frozen=True, eq=False)
class AdaptedDecomposition:
    """Ordered frame ``u_1..u_p | z_1..z_m | v_1..v_p | e_1..e_n`` in original coordinates.

    ``z_norms``/``e_norms`` are the squared norms of the frame vectors: +-1 whenever the
    normalizing square root is rational (always on the float backend), otherwise the raw
    orthogonal norms. Every curvature formula divides by these, so both cases are exact.
    """

    alg: LieAlgebra
    metric: MetricTensor
    U: tuple[tuple, ...]
    Z: tuple[tuple, ...]
    V: tuple[tuple, ...]
    E: tuple[tuple, ...]
    z_norms: tuple
    e_norms: tuple

    @property
    def field(self) -> Field:
        return self.metric.field

    @property
    def p(self) -> int:
        return len(self.U)

    @property
    def m(self) -> int:
        return len(self.Z)

    @property
    def n(self) -> int:
        return len(self.E)

    @property
    def dims(self) -> tuple[int, int, int, int]:
        return (self.p, self.m, self.p, self.n)

    @property
    def eps(self) -> tuple[int, ...]:
        return tuple(self.field.sign(x) for x in self.z_norms)

    @property
    def eps_bar(self) -> tuple[int, ...]:
        return tuple(self.field.sign(x) for x in self.e_norms)

    @property
    def normalized(self) -> bool:
        return all(abs(x) == 1 for x in self.z_norms + self.e_norms)

    @property
    def frame(self) -> list[list]:
        return [list(v) for v in self.U + self.Z + self.V + self.E]

    @cached_property
    def B(self) -> list[list]:
        """Basis-change matrix: columns are the frame vectors."""
        return la.columns_to_matrix(self.frame)

    @cached_property
    def B_inv(self) -> list[list]:
        return la.inverse(self.B, self.field)

    @cached_property
    def iota_adapted(self) -> list[list]:
        p, m, n = self.p, self.m, self.n
        f = self.field
        size = 2 * p + m + n
        out = la.zeros(size, size, f)
        for i in range(p):
            out[i][p + m + i] = f.one
            out[p + m + i][i] = f.one
        for a, s in enumerate(self.eps):
            out[p + a][p + a] = f.convert(s)
        for a, s in enumerate(self.eps_bar):
            out[2 * p + m + a][2 * p + m + a] = f.convert(s)
        return out

    @cached_property
    def iota(self) -> list[list]:
        """The involution in original coordinates."""
        return la.matmul(self.B, la.matmul(self.iota_adapted, self.B_inv))

    def apply_iota(self, x):
        return la.matvec(self.iota, x)

    def to_adapted(self, op):
        """Operator matrix expressed in the adapted frame."""
        return la.matmul(self.B_inv, la.matmul(op, self.B))

    def form_to_adapted(self, form):
        return la.matmul(la.transpose(self.B), la.matmul(form, self.B))

    def gram_adapted(self):
        return self.form_to_adapted(self.metric.matrix)

    def canonical_gram(self):
        """Expected Gram matrix of the frame: U-V identity pairing, then the Z and E norms."""
        p, m, n = self.p, self.m, self.n
        f = self.field
        size = 2 * p + m + n
        out = la.zeros(size, size, f)
        for i in range(p):
            out[i][p + m + i] = f.one
            out[p + m + i][i] = f.one
        for a, s in enumerate(self.z_norms):
            out[p + a][p + a] = s
        for a, s in enumerate(self.e_norms):
            out[2 * p + m + a][2 * p + m + a] = s
        return out

    @property
    def center_vectors(self) -> list[list]:
        return [list(v) for v in self.U + self.Z]

    @property
    def v_vectors(self) -> list[list]:
        """Basis of the complement V + E."""
        return [list(v) for v in self.V + self.E]


def decompose(alg: LieAlgebra, metric: MetricTensor) -> AdaptedDecomposition:
    if alg.dim != metric.dim:
        raise MetricError(f"algebra has dim {alg.dim} but metric has dim {metric.dim}")
    two = verify_two_step(alg)
    if not two:
        raise NotTwoStep(f"algebra is not 2-step nilpotent ({two.reason})")
    field = metric.field
    ip = metric.ip
    n_total = alg.dim
    cen = center(alg)
    if field is not alg.field:
        cen = Subspace.span(cen.vectors(), n_total, field)
    cvecs = [[field.convert(x) for x in v] for v in cen.vectors()]

    gram_c = [[ip(a, b) for b in cvecs] for a in cvecs]
    kernel = la.nullspace(gram_c, field, len(cvecs))
    u_raw = [[sum(w[i] * cvecs[i][t] for i in range(len(cvecs))) for t in range(n_total)]
             for w in kernel]
    U = Subspace.span(u_raw, n_total, field).vectors() if u_raw else []

    # complement of U inside the center, lowest index first
    chosen = list(U)
    z_raw = []
    for v in cvecs:
        if la.rank(chosen + [v], field) > len(chosen):
            chosen.append(v)
            z_raw.append(v)
    Z = orthogonalize(metric, z_raw)

    V = []
    if U:
        rows = [la.matvec(metric.matrix, u) for u in U] + [la.matvec(metric.matrix, z) for z in Z]
        for i in range(len(U)):
            rhs = [field.one if t == i else field.zero for t in range(len(U))] + [field.zero] * len(Z)
            sol = la.solve(rows, rhs, field)
            if sol is None:
                raise DegenerateMetric("cannot pair the degenerate part of the center")
            V.append(sol)
        half = field.convert(1) / 2
        V = [la.vsub(V[j], [sum(half * ip(V[j], V[i]) * U[i][t] for i in range(len(U)))
                            for t in range(n_total)])
             for j in range(len(V))]

    spanned = U + Z + V
    if spanned:
        constraint = [la.matvec(metric.matrix, s) for s in spanned]
        e_raw = la.nullspace(constraint, field, n_total)
    else:
        e_raw = la.identity(n_total, field)
    E = orthogonalize(metric, e_raw)

    Zn = [_normalize(metric, z) for z in Z]
    En = [_normalize(metric, e) for e in E]
    dec = AdaptedDecomposition(
        alg=alg,
        metric=metric,
        U=tuple(tuple(u) for u in U),
        Z=tuple(tuple(z) for z, _ in Zn),
        V=tuple(tuple(v) for v in V),
        E=tuple(tuple(e) for e, _ in En),
        z_norms=tuple(s for _, s in Zn),
        e_norms=tuple(s for _, s in En),
    )
    if len(dec.frame) != n_total:
        raise DegenerateMetric("adapted frame does not span the algebra")
    return dec


def J_operator(alg: LieAlgebra, metric: MetricTensor, y):
    """Matrix of x -> J_y x, defined by <J_y x, w> = <y, [x, w]>."""
    n = alg.dim
    c = alg.tensor
    gy = la.matvec(metric.matrix, y)
    m = [[sum(gy[l] * c[i][k][l] for l in range(n)) for i in range(n)] for k in range(n)]
    return la.matmul(metric.inverse, m)


def j_operator(dec: AdaptedDecomposition, z):
    """j(z) = iota o J_{iota z}."""
    J = J_operator(dec.alg, dec.metric, dec.apply_iota(z))
    return la.matmul(dec.iota, J)
