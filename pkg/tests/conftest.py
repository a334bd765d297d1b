import random
from fractions import Fraction

import pytest

from nilsoliton import linalg as la
from nilsoliton.lie import LieAlgebra
from nilsoliton.metric import MetricTensor


def _random_unimodular(rng, n):
    """Integer matrix with determinant 1: product of random elementary shears."""
    P = la.identity(n)
    for _ in range(2 * n):
        i, j = rng.sample(range(n), 2)
        s = Fraction(rng.choice([-2, -1, 1, 2]))
        P = [row[:] for row in P]
        for c in range(n):
            P[i][c] += s * P[j][c]
    return P


def _transform(dim, entries, P):
    """Brackets in the basis b_i = sum_k P[i][k] x_k."""
    c = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
    for i, j, k, v in entries:
        c[i][j][k] += v
        c[j][i][k] -= v
    Pinv = la.inverse(P)
    out = []
    for a in range(dim):
        for b in range(a + 1, dim):
            vec = [Fraction(0)] * dim
            for k in range(dim):
                if not P[a][k]:
                    continue
                for l in range(dim):
                    if P[b][l]:
                        w = P[a][k] * P[b][l]
                        for m in range(dim):
                            if c[k][l][m]:
                                vec[m] += w * c[k][l][m]
            coords = la.matvec(la.transpose(Pinv), vec)
            out += [(a, b, m, x) for m, x in enumerate(coords) if x]
    return out


def random_two_step(rng: random.Random, max_dim: int = 7, degenerate: bool = False,
                    mix: bool = True):
    """Random rational 2-step nilpotent algebra with a random nondegenerate metric.

    With ``degenerate`` the metric is built so that the center contains a null
    vector; ``mix`` hides the block structure behind a unimodular basis change.
    """
    while True:
        m = rng.randint(1, 3)
        k = rng.randint(2, max_dim - m)
        dim = m + k
        entries = []
        for a in range(k):
            for b in range(a + 1, k):
                for z in range(m):
                    if rng.random() < 0.5:
                        entries.append((m + a, m + b, z, Fraction(rng.randint(-2, 2))))
        entries = [e for e in entries if e[3]]
        if not entries:
            continue
        g = [[Fraction(0)] * dim for _ in range(dim)]
        for i in range(dim):
            for j in range(i, dim):
                v = Fraction(rng.randint(-3, 3), rng.choice([1, 1, 2, 3]))
                g[i][j] = g[j][i] = v
        if degenerate:
            # x_0 is central; make it null and orthogonal to the rest of the center
            for z in range(m):
                g[0][z] = g[z][0] = Fraction(0)
        if la.det(g) == 0:
            continue
        if mix:
            P = _random_unimodular(rng, dim)
            entries = _transform(dim, entries, P)
            g = la.matmul(la.matmul(P, g), la.transpose(P))
        alg = LieAlgebra.from_brackets(dim, entries, "random")
        return alg, MetricTensor.from_rows(g)


@pytest.fixture
def rng():
    return random.Random(20261016)
