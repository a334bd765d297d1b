"""Exact, pre-adapted algebras and metrics from the Lorentzian nilsoliton examples.

Most entries are produced from a Clifford-type action: skew matrices ``j_a`` on the
complement (orthonormal for the iota-twisted pairing) determine the bracket through
``<iota zeta_a, [x, w]> = <j(zeta_a) x, iota w>``. Every entry is run through the
type classifier before it is returned, so a bad translation fails loudly.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import linalg as la
from .lie import LieAlgebra
from .metric import MetricTensor, decompose


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    alg: LieAlgebra
    metric: MetricTensor
    basis_names: tuple
    expected: dict = dc_field(default_factory=dict, compare=False)
    description: str = ""


F = Fraction
HALF = F(1, 2)


def _mat(n, images):
    """Matrix from column images {col: {row: value}}."""
    out = la.zeros(n, n)
    for col, img in images.items():
        for row, val in img.items():
            out[row][col] = F(val)
    return out


def complex_structure(n):
    """Block-diagonal rotation x_{2i} -> x_{2i+1} -> -x_{2i} on R^n, n even."""
    return _mat(n, {**{2 * i: {2 * i + 1: 1} for i in range(n // 2)},
                    **{2 * i + 1: {2 * i: -1} for i in range(n // 2)}})


def quaternion_structures(n):
    """Left multiplication by i, j, k on H^(n/4), blocks ordered (1, i, j, k)."""
    if n % 4:
        raise CatalogError(f"quaternionic structures need 4 | n, got {n}")
    Li = {0: {1: 1}, 1: {0: -1}, 2: {3: 1}, 3: {2: -1}}
    Lj = {0: {2: 1}, 1: {3: -1}, 2: {0: -1}, 3: {1: 1}}
    Lk = {0: {3: 1}, 1: {2: 1}, 2: {1: -1}, 3: {0: -1}}
    out = []
    for table in (Li, Lj, Lk):
        images = {}
        for b in range(n // 4):
            for col, img in table.items():
                images[4 * b + col] = {4 * b + r: v for r, v in img.items()}
        out.append(_mat(n, images))
    return out


def clifford_structures(count, n):
    """``count`` anticommuting orthogonal complex structures on R^n, or an error."""
    if count == 0:
        return []
    if n % 2:
        raise CatalogError(f"no complex structure on R^{n}")
    if count == 1:
        return [complex_structure(n)]
    if count <= 3 and n % 4 == 0:
        return quaternion_structures(n)[:count]
    raise CatalogError(f"{count} anticommuting complex structures on R^{n} are not available "
                       f"(Radon-Hurwitz bound or unsupported construction)")


def from_clifford(name, z_signs, e_signs, j_mats, degenerate=False, description="",
                  expected=None):
    """Build an entry from j-actions.

    Nondegenerate: basis (z_1..z_m, e_1..e_n), j_mats act on the e-block.
    Degenerate: basis (u, z_1..z_m, v, e_1..e_n), the first matrix is j(u) and all act
    on (v, e_1..e_n); <u, v> = 1.
    """
    m, n = len(z_signs), len(e_signs)
    if degenerate:
        p = 1
        centre = [0] + [1 + a for a in range(m)]
        comp = [1 + m] + [2 + m + a for a in range(n)]
        dim = 2 + m + n
        if len(j_mats) != m + 1:
            raise CatalogError("need j(u) plus one matrix per z")
    else:
        p = 0
        centre = list(range(m))
        comp = [m + a for a in range(n)]
        dim = m + n
        if len(j_mats) != m:
            raise CatalogError("need one matrix per z")
    entries = []
    for i, jm in zip(centre, j_mats):
        size = len(jm)
        for r in range(size):
            for s in range(r + 1, size):
                coeff = jm[s][r]
                if coeff:
                    entries.append((comp[r], comp[s], i, coeff))
    g = la.zeros(dim, dim)
    if degenerate:
        g[0][1 + m] = g[1 + m][0] = F(1)
    for a, s in enumerate(z_signs):
        g[p + a][p + a] = F(s)
    e_index = comp[len(comp) - n:]
    for a, s in enumerate(e_signs):
        g[e_index[a]][e_index[a]] = F(s)
    names = ((["u"] if degenerate else []) + [f"z{a + 1}" for a in range(m)]
             + (["v"] if degenerate else []) + [f"e{a + 1}" for a in range(n)])
    if m == 1 and not degenerate:
        names[0] = "z"
    alg = LieAlgebra.from_brackets(dim, entries, name)
    entry = CatalogEntry(name, alg, MetricTensor.from_rows(g), tuple(names), expected or {},
                         description)
    return entry


def _verified(entry: CatalogEntry, want_ph=True, want_pseudo_h=None):
    from .classify import classify

    report = classify(decompose(entry.alg, entry.metric))
    if want_ph and not report.is_ph:
        raise CatalogError(f"{entry.name}: construction is not of pH-type ({report.witnesses.get('pH')})")
    if want_pseudo_h and not report.is_pseudo_h:
        raise CatalogError(f"{entry.name}: construction is not of pseudoH-type")
    return entry


def heisenberg(k: int, center_sign: int, timelike_e: bool = False) -> CatalogEntry:
    """Heisenberg algebra of dimension 2k+1, basis (z, e_1..e_2k), [e_{2i-1}, e_{2i}] = z.

    center_sign 0 gives the null center <z, z> = 0 with <z, e_1> = 1 (k = 1 only);
    ``timelike_e`` makes e_1 timelike.
    """
    if k < 1:
        raise CatalogError("k must be at least 1")
    if center_sign not in (-1, 0, 1):
        raise CatalogError("center_sign must be -1, 0 or +1")
    dim = 2 * k + 1
    entries = [(2 * i + 1, 2 * i + 2, 0, 1) for i in range(k)]
    names = ("z",) + tuple(f"e{a + 1}" for a in range(2 * k))
    if center_sign == 0:
        if k != 1 or timelike_e:
            raise CatalogError("null-center Heisenberg metric is only provided for k = 1")
        g = [[0, 1, 0], [1, 0, 0], [0, 0, 1]]
        name = "H3_null"
        names = ("z", "v", "e")
        exp = {"flags": {"H": False, "pseudoH": None, "pH": True},
               "ric_op": la.zeros(3, 3), "feasible": True, "c": F(0), "trivial": True,
               "source": "flat degenerate-center H3"}
    else:
        signs = [center_sign] + [1] * (2 * k)
        if timelike_e:
            signs[1] = -1
        g = la.diag(signs)
        tag = {1: "+", -1: "-"}[center_sign]
        name = f"H{dim}{tag}" + ("_e1timelike" if timelike_e else "")
        exp = _heisenberg_expected(k, center_sign, timelike_e)
    alg = LieAlgebra.from_brackets(dim, entries, f"heisenberg({k})")
    return CatalogEntry(name, alg, MetricTensor.from_rows(g), names, exp,
                        f"Heisenberg algebra of dimension {dim}")


def _heisenberg_expected(k, s, timelike_e):
    # J_z e_a = +-(s / eps_partner) e_partner, so <J_z e_a, J_z e_a> = eps_partner;
    # rho(z,z) = (1/4) sum_a eps_partner/eps_a, rho(e,e) = -(1/2) eps_partner / s
    n = 2 * k
    esigns = [1] * n
    if timelike_e:
        esigns[0] = -1
    rho_zz = F(1, 4) * sum(F(esigns[a + 1 if a % 2 == 0 else a - 1], esigns[a]) for a in range(n))
    ric_z = rho_zz / s
    ric_e = []
    for a in range(n):
        partner = a + 1 if a % 2 == 0 else a - 1
        # J_z e_a = +-(s / eps_partner) e_partner, so <J e_a, J e_a> = eps_partner
        rho_ee = -HALF * F(esigns[partner]) / s
        ric_e.append(rho_ee / esigns[a])
    ric = la.diag([ric_z] + ric_e)
    # D = Ric - c Id with D_z = 2 D_e: ric_z - c = 2 (ric_e - c) (all ric_e equal here)
    c = 2 * ric_e[0] - ric_z
    D = la.sub(ric, la.scale(la.identity(n + 1), c))
    riemannian = s > 0 and not timelike_e
    return {
        "flags": {"H": riemannian, "pseudoH": not riemannian, "pH": True},
        "ric_op": ric, "feasible": True, "c": c, "D": D, "trivial": False,
        "source": "closed form for Heisenberg metrics with z orthogonal to E",
    }


def generalized_heisenberg_h_p1(p: int) -> CatalogEntry:
    """H(p,1): dimension 2p+1, <z,z> = -1, J_z the standard complex structure on E."""
    if p < 1:
        raise CatalogError("p must be at least 1")
    base = heisenberg(p, -1)
    m, n = 1, 2 * p
    c = m + F(n, 4)
    ric = la.diag([-F(n, 4)] + [F(m, 2)] * n)
    D = la.diag([-(m + F(n, 2))] + [-(F(m, 2) + F(n, 4))] * n)
    exp = {"flags": {"H": False, "pseudoH": True, "pH": True}, "ric_op": ric,
           "feasible": True, "c": c, "D": D, "trivial": False,
           "source": "pseudoH Ricci operator diag(-n/4, m/2) and c = m + n/4"}
    return _verified(CatalogEntry(f"H({p},1)", base.alg, base.metric, base.basis_names, exp,
                                  f"generalized Heisenberg H({p},1), negative-definite center"),
                     want_pseudo_h=True)


def ph_positive_center(m: int, n: int) -> CatalogEntry:
    """Lorentzian pH algebra with positive-definite center, timelike e_1, j(z_a) e_1 = e_{a+1}."""
    mats = clifford_structures(m, n)
    entry = from_clifford(f"pH+({m},{n})", [1] * m, [-1] + [1] * (n - 1), mats,
                          description=f"pH-type, positive-definite center, m={m}, n={n}")
    ric = la.diag(_positive_center_ric(m, n))
    exp = {"flags": {"H": False, "pH": True}, "ric_op": ric,
           "feasible": (m, n) == (1, 2),
           "source": "closed form rho(z,z)=(n-4)/4, rho(e_i,e_i)=-(m-2m(i))/2, Ric = g^-1 rho"}
    if (m, n) == (1, 2):
        exp.update(c=F(3, 2), trivial=False)
    entry = CatalogEntry(entry.name, entry.alg, entry.metric, entry.basis_names, exp,
                         entry.description)
    return _verified(entry)


def _positive_center_ric(m, n):
    counts = [0] + [1] * m + [0] * (n - 1 - m)
    rho_e = [-F(m - 2 * mi, 2) for mi in counts]
    esign = [-1] + [1] * (n - 1)
    return [F(n - 4, 4)] * m + [r / s for r, s in zip(rho_e, esign)]


def ph_lorentz_center(m: int, n: int = 4) -> CatalogEntry:
    """pH algebra with center signature (m-1, 1) (z_1 timelike) and positive-definite E."""
    mats = clifford_structures(m, n)
    entry = from_clifford(f"pHL({m},{n})", [-1] + [1] * (m - 1), [1] * n, mats,
                          description=f"pH-type, Lorentzian center, m={m}, n={n}")
    if m == 1:
        ric = la.diag([-F(n, 4)] + [HALF] * n)
        exp = {"feasible": True, "c": 1 + F(n, 4),
               "D": la.diag([-1 - F(n, 2)] + [-HALF - F(n, 4)] * n), "trivial": False}
    else:
        ric = la.diag([-F(n, 4)] + [F(n, 4)] * (m - 1) + [-F(m - 2, 2)] * n)
        exp = {"feasible": False,
               "certificate": {-(m - 2) + F(n, 4), -(m - 2) - F(n, 4)}}
    exp.update(flags={"H": False, "pH": True}, ric_op=ric,
               source="closed form: Ric = n/4 <z, iota z'> on Z, -(m-2)/2 on E")
    entry = CatalogEntry(entry.name, entry.alg, entry.metric, entry.basis_names, exp,
                         entry.description)
    return _verified(entry)


def ph_mixed_center(p: int, q: int, n: int) -> CatalogEntry:
    """pH algebra whose center has q negative and p positive directions, E positive-definite."""
    m = p + q
    mats = clifford_structures(m, n)
    entry = from_clifford(f"pHmix({p},{q},{n})", [-1] * q + [1] * p, [1] * n, mats,
                          description=f"pH-type, center signature ({p},{q}), n={n}")
    # rho(e,e') = -(1/2) sum_a eps_a <e,e'> = -(p-q)/2 <e,e'>
    ric = la.diag([-F(n, 4)] * q + [F(n, 4)] * p + [-F(p - q, 2)] * n)
    exp = {"flags": {"H": False, "pH": True}, "ric_op": ric,
           "nontrivial": q == 0 or p == 0,
           "source": "closed form: -(n/4) on negative z, +(n/4) on positive z, -(p-q)/2 on E"}
    entry = CatalogEntry(entry.name, entry.alg, entry.metric, entry.basis_names, exp,
                         entry.description)
    return _verified(entry)


# by hand from the diagonal entries: c = -(Ric(z) - Ric(e_a) - Ric(e_b)) on [e_a, e_b] -> z
_DEGENERATE_CERTIFICATES = {
    (1, 1): {-HALF, -F(3, 2)},
    (2, 1): {-F(1), -F(2)},
}


def ph_degenerate_family(m: int, k: int) -> CatalogEntry:
    """Basis (u, z_1..z_m, v, e_1..e_n), n = 2k+1, with j(u) v = e_1, j(z_i) v = e_{i+1}."""
    if m < 0 or k < 0:
        raise CatalogError("m and k must be nonnegative")
    n = 2 * k + 1
    try:
        mats = clifford_structures(m + 1, n + 1)
    except CatalogError as exc:
        raise CatalogError(f"ph_degenerate_family({m},{k}) is not realizable: {exc}") from exc
    entry = from_clifford(f"pHdeg({m},{k})", [1] * m, [1] * n, mats, degenerate=True,
                          description=f"pH-type, degenerate center, m={m}, n={n}")
    dim = 2 + m + n
    ric = la.zeros(dim, dim)
    if n >= 2:
        ric[0][1 + m] = F(n - 2 * m - 1, 4)
        for a in range(m):
            # one of the n + 1 terms in sum_r <[z_a, .]> pairs with u and drops out
            ric[1 + a][1 + a] = F(n - 1, 4)
        # e_a (a >= 2) loses one unit from sum_alpha <j(z_alpha) e_a, j(z_alpha) e_a>
        # exactly when j(z_{a-1}) e_a = -v, i.e. for a <= m + 1
        for a in range(n):
            hit = 1 if 1 <= a <= m else 0
            ric[2 + m + a][2 + m + a] = -F(m - hit, 2)
    exp = {"flags": {"H": False, "pseudoH": None, "pH": True}, "ric_op": ric,
           "feasible": m == 0,
           "source": "closed form from the block formulas; rho(v,v) = (n-2m-1)/4 gives Ric v = (n-2m-1)/4 u"}
    if n == 1:
        exp.update(c=F(0), trivial=True)
    elif m == 0:
        # Ric = (n-1)/4 (v -> u) is nilpotent and is itself a derivation
        exp.update(c=F(0), trivial=False)
    else:
        # [v, e_1] -> u forces c = -m/2; the first [e_a, e_b] -> z_alpha row disagrees
        exp["certificate_contains"] = {-F(m, 2)}
        if (m, k) in _DEGENERATE_CERTIFICATES:
            exp["certificate"] = _DEGENERATE_CERTIFICATES[(m, k)]
    entry = CatalogEntry(entry.name, entry.alg, entry.metric, entry.basis_names, exp,
                         entry.description)
    return _verified(entry)


def ph_bound_violator(m: int, n: int) -> CatalogEntry:
    """Lorentzian, positive-definite center of dim m, dim E = n < m + 1.

    As many anticommuting structures as exist act on E; the remaining center
    directions are abelian factors. Such inputs cannot be of pH-type.
    """
    if m + 1 <= n:
        raise CatalogError("ph_bound_violator needs m + 1 > n")
    avail = 3 if n % 4 == 0 else (1 if n % 2 == 0 else 0)
    mats = clifford_structures(min(m, avail), n) if avail else []
    mats = mats + [la.zeros(n, n)] * (m - len(mats))
    entry = from_clifford(f"pH+bound({m},{n})", [1] * m, [-1] + [1] * (n - 1), mats,
                          description=f"Lorentzian, positive center, m={m} > n-1={n - 1}")
    exp = {"flags": {"H": False, "pH": False}, "adapt": "DimensionBoundViolated",
           "source": "dimension bound m + 1 <= n for positive-center Lorentzian pH algebras"}
    return CatalogEntry(entry.name, entry.alg, entry.metric, entry.basis_names, exp,
                        entry.description)


def quaternionic_heisenberg7(eps: int = 1, eps1: int = 1, eps2: int = 1) -> CatalogEntry:
    """Basis (u1, u2, z, v1, v2, e1, e2) with six brackets and <u_i, v_j> = delta_ij."""
    for s in (eps, eps1, eps2):
        if s not in (1, -1):
            raise CatalogError("signs must be +1 or -1")
    u1, u2, z, v1, v2, e1, e2 = range(7)
    entries = [
        (e1, e2, z, 1), (v1, v2, z, 1),
        (e1, v1, u1, 1), (e2, v1, u2, 1),
        (e1, v2, u2, 1), (e2, v2, u1, -1),
    ]
    g = la.zeros(7, 7)
    g[u1][v1] = g[v1][u1] = F(1)
    g[u2][v2] = g[v2][u2] = F(1)
    g[z][z] = F(eps)
    g[e1][e1] = F(eps1)
    g[e2][e2] = F(eps2)
    s = eps * eps1 * eps2
    ric = la.scale(la.diag([0, 0, 1, 0, 0, -1, -1]), HALF * s)
    exp = {"flags": {"H": False, "pseudoH": None, "pH": True}, "ric_op": ric, "feasible": False,
           "certificate": {-F(3, 2) * s, -HALF * s},
           "source": "displayed Ricci operator of the 7-dimensional quaternionic example"}
    name = "quatH7(" + ",".join("+" if x > 0 else "-" for x in (eps, eps1, eps2)) + ")"
    alg = LieAlgebra.from_brackets(7, entries, "quaternionic heisenberg 7")
    return CatalogEntry(name, alg, MetricTensor.from_rows(g),
                        ("u1", "u2", "z", "v1", "v2", "e1", "e2"), exp,
                        "7-dimensional quaternionic Heisenberg algebra with degenerate center")


def abelian(n: int = 3) -> CatalogEntry:
    alg = LieAlgebra.from_brackets(n, [], f"abelian R^{n}")
    return CatalogEntry(f"R{n}", alg, MetricTensor.from_rows(la.identity(n)),
                        tuple(f"x{i + 1}" for i in range(n)),
                        {"ric_op": la.zeros(n, n), "feasible": True, "trivial": True},
                        "abelian algebra (not 2-step)")


def filiform4() -> CatalogEntry:
    alg = LieAlgebra.from_brackets(4, [(0, 1, 2, 1), (0, 2, 3, 1)], "filiform 4")
    return CatalogEntry("filiform4", alg, MetricTensor.from_rows(la.identity(4)),
                        ("x1", "x2", "x3", "x4"), {}, "3-step filiform algebra")


BUILDERS = {
    "H3+": lambda: heisenberg(1, 1),
    "H3-": lambda: heisenberg(1, -1),
    "H3+_e1timelike": lambda: heisenberg(1, 1, timelike_e=True),
    "H3_null": lambda: heisenberg(1, 0),
    "H5+": lambda: heisenberg(2, 1),
    "H(1,1)": lambda: generalized_heisenberg_h_p1(1),
    "H(2,1)": lambda: generalized_heisenberg_h_p1(2),
    "H(3,1)": lambda: generalized_heisenberg_h_p1(3),
    "pH+(1,2)": lambda: ph_positive_center(1, 2),
    "pH+(1,4)": lambda: ph_positive_center(1, 4),
    "pH+(2,4)": lambda: ph_positive_center(2, 4),
    "pH+(3,4)": lambda: ph_positive_center(3, 4),
    "pH+(1,6)": lambda: ph_positive_center(1, 6),
    "pHL(1,2)": lambda: ph_lorentz_center(1, 2),
    "pHL(1,4)": lambda: ph_lorentz_center(1, 4),
    "pHL(2,4)": lambda: ph_lorentz_center(2, 4),
    "pHL(3,4)": lambda: ph_lorentz_center(3, 4),
    "pHmix(1,2,4)": lambda: ph_mixed_center(1, 2, 4),
    "pH+bound(2,2)": lambda: ph_bound_violator(2, 2),
    "pH+bound(3,2)": lambda: ph_bound_violator(3, 2),
    "pH+bound(4,4)": lambda: ph_bound_violator(4, 4),
    "pHdeg(0,0)": lambda: ph_degenerate_family(0, 0),
    "pHdeg(0,1)": lambda: ph_degenerate_family(0, 1),
    "pHdeg(1,1)": lambda: ph_degenerate_family(1, 1),
    "pHdeg(2,1)": lambda: ph_degenerate_family(2, 1),
    **{f"quatH7({a},{b},{c})": (lambda a=a, b=b, c=c: quaternionic_heisenberg7(
        *(1 if t == "+" else -1 for t in (a, b, c))))
       for a in "+-" for b in "+-" for c in "+-"},
}

def names() -> list[str]:
    return list(BUILDERS)


def get(name: str) -> CatalogEntry:
    try:
        builder = BUILDERS[name]
    except KeyError:
        raise CatalogError(f"unknown catalog entry {name!r}") from None
    return builder()


def all_entries() -> list[CatalogEntry]:
    return [get(n) for n in BUILDERS]
