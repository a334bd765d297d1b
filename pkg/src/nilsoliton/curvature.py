"""Ricci curvature of left-invariant metrics.

Two independent routes:

* :func:`ricci_fast` evaluates the closed-form block formulas for 2-step
  nilpotent algebras on the adapted frame.
* :func:`ricci_oracle` builds the Levi-Civita connection from the Koszul formula
  and traces the curvature tensor directly. It works for any Lie algebra.

Sign convention: ``R(x, y) = [nabla_x, nabla_y] - nabla_[x,y]`` and
``rho(y, z) = tr(x -> R(x, y) z)``, so the Riemannian Heisenberg algebra has
``rho(z, z) = +1/2``.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg as la
from .lie import LieAlgebra
from .metric import AdaptedDecomposition, J_operator, MetricTensor
from .scalar import Field


@dataclass(frozen=True)
class RicciData:
    rho: list
    ric_op: list
    field: Field

    @property
    def scalar(self):
        return scalar_curvature(self.ric_op)


def ricci_operator(rho, metric: MetricTensor):
    """Ric with rho(x, y) = <Ric x, y>, i.e. g^{-1} rho."""
    return la.matmul(metric.inverse, rho)


def scalar_curvature(ric_op):
    return la.trace(ric_op)


def levi_civita(alg: LieAlgebra, metric: MetricTensor):
    """Gamma[i][j][k] with nabla_{x_i} x_j = sum_k Gamma[i][j][k] x_k."""
    n = alg.dim
    c = alg.tensor
    g = metric.matrix
    ginv = metric.inverse
    field = metric.field
    half = field.convert(1) / 2
    # cg[a][b][t] = <[x_a, x_b], x_t>
    cg = [[[sum(c[a][b][l] * g[l][t] for l in range(n) if c[a][b][l]) for t in range(n)]
           for b in range(n)] for a in range(n)]
    gamma = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            w = [half * (cg[i][j][t] - cg[j][t][i] + cg[t][i][j]) for t in range(n)]
            gamma[i][j] = la.matvec(ginv, w)
    return gamma


def ricci_oracle(alg: LieAlgebra, metric: MetricTensor) -> RicciData:
    n = alg.dim
    c = alg.tensor
    field = metric.field
    gam = levi_civita(alg, metric)
    tr = [sum(gam[i][l][i] for i in range(n)) for l in range(n)]
    rho = la.zeros(n, n, field)
    for j in range(n):
        for k in range(n):
            s = field.zero
            gjk = gam[j][k]
            for l in range(n):
                s += gjk[l] * tr[l]
            for i in range(n):
                gik = gam[i][k]
                gj = gam[j]
                cij = c[i][j]
                for l in range(n):
                    if gik[l]:
                        s -= gik[l] * gj[l][i]
                    if cij[l]:
                        s -= cij[l] * gam[l][k][i]
            rho[j][k] = s
    return RicciData(rho, ricci_operator(rho, metric), field)


def ricci_fast(dec: AdaptedDecomposition) -> RicciData:
    """Block formulas on the adapted frame, transported back to original coordinates.

    Sums weighted by eps_a over an orthonormal frame are written as sums divided by
    <e_a, e_a>, which agrees for orthonormal frames and stays exact otherwise.
    """
    alg, metric, field = dec.alg, dec.metric, dec.field
    ip = metric.ip
    iota = dec.iota
    p, m, n = dec.p, dec.m, dec.n
    quarter = field.convert(1) / 4
    half = field.convert(1) / 2

    def j_of_iota(y):
        # j(iota y) = iota J_y
        return la.matmul(iota, J_operator(alg, metric, y))

    Zs = [list(z) for z in dec.Z]
    Vs = [list(v) for v in dec.V]
    Es = [list(e) for e in dec.E]
    j_iz = [j_of_iota(z) for z in Zs]
    j_iv = [j_of_iota(v) for v in Vs]
    j_z = [la.scale(jm, field.convert(s)) for jm, s in zip(j_iz, dec.eps)]
    je_iz = [[la.matvec(jm, e) for e in Es] for jm in j_iz]
    je_iv = [[la.matvec(jm, e) for e in Es] for jm in j_iv]

    def e_sum(left, right):
        return quarter * sum(ip(a, b) / w for a, b, w in zip(left, right, dec.e_norms))

    def z_sum(x, y):
        return -half * sum(ip(la.matvec(jm, x), la.matvec(jm, y)) / w
                           for jm, w in zip(j_z, dec.z_norms))

    size = 2 * p + m + n
    z0, v0, e0 = p, p + m, 2 * p + m
    r = la.zeros(size, size, field)
    for a in range(m):
        for b in range(m):
            r[z0 + a][z0 + b] = e_sum(je_iz[a], je_iz[b])
    for a in range(p):
        for b in range(m):
            r[v0 + a][z0 + b] = r[z0 + b][v0 + a] = e_sum(je_iv[a], je_iz[b])
    for a in range(p):
        for b in range(p):
            r[v0 + a][v0 + b] = z_sum(Vs[a], Vs[b]) + e_sum(je_iv[a], je_iv[b])
    x_frame = Vs + Es
    for a, x in enumerate(x_frame):
        for b, e in enumerate(Es):
            val = z_sum(x, e)
            r[v0 + a][e0 + b] = val
            r[e0 + b][v0 + a] = val

    binv = dec.B_inv
    rho = la.matmul(la.transpose(binv), la.matmul(r, binv))
    return RicciData(rho, ricci_operator(rho, metric), field)


def ricci_fast_adapted(dec: AdaptedDecomposition):
    """(rho, Ric) expressed in the adapted frame."""
    data = ricci_fast(dec)
    return dec.form_to_adapted(data.rho), dec.to_adapted(data.ric_op)


def ricci_tensor_array(c, g):
    """Koszul-route Ricci tensor on numpy arrays (float flow right-hand side).

    ``c[i, j, k]`` are structure constants, ``g`` the metric matrix.
    """
    import numpy as np

    ginv = np.linalg.inv(g)
    cg = np.einsum("abl,lt->abt", c, g)
    w = 0.5 * (cg - cg.transpose(2, 0, 1) + cg.transpose(1, 2, 0))
    gam = np.einsum("kt,ijt->ijk", ginv, w)
    tr = np.einsum("ili->l", gam)
    rho = (np.einsum("jkl,l->jk", gam, tr)
           - np.einsum("ikl,jli->jk", gam, gam)
           - np.einsum("ijl,lki->jk", c, gam))
    return rho
