"""H-type, pseudoH-type and pH-type tests on the adapted frame."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import linalg as la
from .metric import AdaptedDecomposition, J_operator, j_operator, signature


class TypeClassError(ValueError):
    pass


class UndefinedType(TypeClassError):
    """pseudoH-type has no definition when the center is degenerate."""


class NotPhType(TypeClassError):
    pass


class DimensionBoundViolated(TypeClassError):
    """dim Z + 1 > dim E for a Lorentzian pH algebra with positive-definite center."""

    def __init__(self, message, alpha=None, vector=None):
        super().__init__(message)
        self.alpha = alpha
        self.vector = vector


@dataclass(frozen=True)
class Witness:
    """A failed identity: ``z`` (and ``z2`` for polarized checks) acting on ``x``."""

    identity: str
    z: tuple
    x: tuple
    defect: tuple
    z2: tuple | None = None


@dataclass(frozen=True)
class TypeReport:
    is_h: bool
    is_pseudo_h: bool | None
    is_ph: bool
    nondegenerate_center: bool
    witnesses: dict = dc_field(default_factory=dict)
    notes: tuple = ()

    def flags(self) -> dict:
        return {"H": self.is_h, "pseudoH": self.is_pseudo_h, "pH": self.is_ph}


def _nonzero(field, v) -> bool:
    return not all(field.is_zero(x) for x in v)


def _square_check(dec, ops, zs, xs, coeff, label):
    """First (z, x) with op_z^2 x != coeff(z, z) x, then the anticommutator on pairs."""
    field = dec.field
    for a, (za, Ja) in enumerate(zip(zs, ops)):
        for b in range(a, len(zs)):
            zb, Jb = zs[b], ops[b]
            for x in xs:
                lhs = la.vadd(la.matvec(Ja, la.matvec(Jb, x)), la.matvec(Jb, la.matvec(Ja, x)))
                defect = la.vsub(lhs, la.vscale(x, 2 * coeff(za, zb)))
                if _nonzero(field, defect):
                    return Witness(label, tuple(za), tuple(x), tuple(defect),
                                   None if a == b else tuple(zb))
    return None


def h_type_witness(dec: AdaptedDecomposition):
    """None if J_z^2 = -<z,z> Id on V+E (with anticommutators), else the first failure."""
    ip = dec.metric.ip
    zs = dec.center_vectors
    ops = [J_operator(dec.alg, dec.metric, z) for z in zs]
    return _square_check(dec, ops, zs, dec.v_vectors, lambda a, b: -ip(a, b), "J_z^2 = -<z,z>I")


def pseudo_h_witness(dec: AdaptedDecomposition):
    if dec.p:
        raise UndefinedType("pseudoH-type is not defined for a degenerate center")
    ip = dec.metric.ip
    zs = dec.center_vectors
    ops = [J_operator(dec.alg, dec.metric, z) for z in zs]
    return _square_check(dec, ops, zs, dec.v_vectors, lambda a, b: ip(a, b), "J_z^2 = <z,z>I")


def ph_witness(dec: AdaptedDecomposition):
    ip = dec.metric.ip
    zs = dec.center_vectors
    ops = [j_operator(dec, z) for z in zs]
    return _square_check(dec, ops, zs, dec.v_vectors,
                         lambda a, b: -ip(a, dec.apply_iota(b)), "j(z)^2 = -<z,iota z>I")


def is_pseudo_h_type(dec: AdaptedDecomposition) -> bool:
    return pseudo_h_witness(dec) is None


def classify(dec: AdaptedDecomposition) -> TypeReport:
    """Check each defining identity on a basis of the center plus all anticommutators.

    The identities are quadratic in z, so basis squares and polarized pairs certify
    them for every z in the center.
    """
    witnesses = {}
    notes = []
    riemannian = signature(dec.metric) == (dec.metric.dim, 0)
    if riemannian:
        w = h_type_witness(dec)
        if w is not None:
            witnesses["H"] = w
        is_h = w is None
    else:
        is_h = False
        notes.append("H-type requires a positive-definite metric")
    if dec.p:
        is_pseudo_h = None
        notes.append("pseudoH-type is undefined for a degenerate center")
    else:
        w = pseudo_h_witness(dec)
        if w is not None:
            witnesses["pseudoH"] = w
        is_pseudo_h = w is None
    w = ph_witness(dec)
    if w is not None:
        witnesses["pH"] = w
    return TypeReport(is_h, is_pseudo_h, w is None, dec.p == 0, witnesses, tuple(notes))


@dataclass(frozen=True)
class PolarizedReport:
    kind: str
    ok: bool
    counterexample: tuple | None = None


def verify_polarized_identities(dec: AdaptedDecomposition, kind: str) -> PolarizedReport:
    """Check the bilinear consequences of a type condition on basis pairs.

    ``kind`` is ``"H"``, ``"pseudoH"`` (on Z and E) or ``"pH"`` (on the whole
    center and V + E, with the iota-twisted pairing).
    """
    field = dec.field
    ip = dec.metric.ip
    iota = dec.apply_iota
    if kind in ("H", "pseudoH"):
        if dec.p:
            raise UndefinedType(f"{kind} identities need a nondegenerate center")
        sign = -1 if kind == "H" else 1
        zs = [list(z) for z in dec.Z]
        es = [list(e) for e in dec.E]
        ops = [J_operator(dec.alg, dec.metric, z) for z in zs]
        pair = lambda x, y: ip(x, y)
        scale = lambda z1, z2: -sign * ip(z1, z2)
        anti = lambda z1, z2: 2 * sign * ip(z1, z2)
    elif kind == "pH":
        zs = dec.center_vectors
        es = dec.v_vectors
        ops = [j_operator(dec, z) for z in zs]
        pair = lambda x, y: ip(x, iota(y))
        scale = lambda z1, z2: ip(z1, iota(z2))
        anti = lambda z1, z2: -2 * ip(z1, iota(z2))
    else:
        raise ValueError(f"unknown identity family {kind!r}")

    for a, z in enumerate(zs):
        A = ops[a]
        for e in es:
            for f in es:
                # <T_z e, T_z f> = s(z,z) <e,f>
                lhs = pair(la.matvec(A, e), la.matvec(A, f))
                rhs = scale(z, z) * pair(e, f)
                if not field.eq(lhs, rhs):
                    return PolarizedReport(kind, False, ("square", tuple(z), tuple(e), tuple(f), lhs - rhs))
        for b, z2 in enumerate(zs):
            Bm = ops[b]
            for e in es:
                # <T_z e, T_z' e> = s(z,z') <e,e>
                lhs = pair(la.matvec(A, e), la.matvec(Bm, e))
                rhs = scale(z, z2) * pair(e, e)
                if not field.eq(lhs, rhs):
                    return PolarizedReport(kind, False, ("mixed", tuple(z), tuple(z2), tuple(e), lhs - rhs))
                out = la.vadd(la.matvec(A, la.matvec(Bm, e)), la.matvec(Bm, la.matvec(A, e)))
                defect = la.vsub(out, la.vscale(e, anti(z, z2)))
                if _nonzero(field, defect):
                    return PolarizedReport(kind, False, ("anticommutator", tuple(z), tuple(z2), tuple(e), tuple(defect)))
    return PolarizedReport(kind, True)


def skew_adjoint_defect(dec: AdaptedDecomposition):
    """First failure of <J_z x, y> + <x, J_z y> = 0 or <j(z)x, iota y> + <iota x, j(z)y> = 0."""
    ip = dec.metric.ip
    field = dec.field
    n = dec.alg.dim
    basis = [la.unit(n, i, field) for i in range(n)]
    for z in dec.center_vectors:
        J = J_operator(dec.alg, dec.metric, z)
        j = j_operator(dec, z)
        for x in basis:
            for y in basis:
                d1 = ip(la.matvec(J, x), y) + ip(x, la.matvec(J, y))
                if not field.is_zero(d1):
                    return ("J", tuple(z), tuple(x), tuple(y), d1)
                d2 = ip(la.matvec(j, x), dec.apply_iota(y)) + ip(dec.apply_iota(x), la.matvec(j, y))
                if not field.is_zero(d2):
                    return ("j", tuple(z), tuple(x), tuple(y), d2)
    return None


@dataclass(frozen=True)
class PhAdaptedBasis:
    """Frame z_1..z_m, e_1..e_n with <e_1,e_1> = -1 and j(z_a) e_1 = e_{a+1}, j(z_a) e_{a+1} = -e_1."""

    z: tuple
    e: tuple
    e_norms: tuple
    m_counts: tuple

    @property
    def frame(self):
        return [list(v) for v in self.z + self.e]


def adapt_ph_basis(dec: AdaptedDecomposition) -> PhAdaptedBasis:
    field = dec.field
    ip = dec.metric.ip
    if dec.p:
        raise NotPhType("adapted pH frame needs a nondegenerate center")
    if signature(dec.metric)[1] != 1:
        raise NotPhType("adapted pH frame needs a Lorentzian metric")
    if any(s < 0 for s in dec.eps):
        raise NotPhType("adapted pH frame needs a positive-definite center")
    if not all(x == 1 for x in dec.z_norms):
        raise NotPhType("center frame is not orthonormal over this field; use the float backend")
    timelike = [k for k, s in enumerate(dec.eps_bar) if s < 0]
    e1 = list(dec.E[timelike[0]])
    if dec.e_norms[timelike[0]] != -1:
        raise NotPhType("timelike vector cannot be normalized over this field; use the float backend")
    m, n = dec.m, dec.n

    # F_a = j(z_a) e_1, orthonormalized against e_1 and the earlier F's
    chosen = [e1]
    images = []
    for a, z in enumerate(dec.Z):
        F = la.matvec(j_operator(dec, list(z)), e1)
        residual = list(F)
        for w in chosen:
            residual = la.vsub(residual, la.vscale(w, ip(residual, w) / ip(w, w)))
        if all(field.is_zero(x) for x in residual):
            msg = (f"j(z_{a + 1}) e_1 lies in the span of e_1 and j(z_b) e_1, b < {a + 1}; "
                   f"the pH identities then force j(z_{a + 1}) e_1 = 0, a contradiction")
            if m + 1 > n:
                raise DimensionBoundViolated(
                    f"dim Z + 1 = {m + 1} > dim E = {n}: {msg}", alpha=a + 1, vector=tuple(F))
            raise NotPhType(msg)
        images.append(F)
        chosen.append(residual)
    if m + 1 > n:
        raise DimensionBoundViolated(f"dim Z + 1 = {m + 1} > dim E = {n}")
    w = ph_witness(dec)
    if w is not None:
        raise NotPhType(f"not of pH-type: {w.identity} fails")
    for a, (F, z) in enumerate(zip(images, dec.Z)):
        if not field.eq(ip(F, F), field.one):
            raise NotPhType(f"j(z_{a + 1}) e_1 is not a unit vector")
        back = la.matvec(j_operator(dec, list(z)), F)
        if not all(field.is_zero(x) for x in la.vadd(back, e1)):
            raise NotPhType(f"j(z_{a + 1}) j(z_{a + 1}) e_1 != -e_1")

    # complete e_1, F_1..F_m to a frame of E
    rest = []
    span = [e1] + images
    for e in dec.E:
        if la.rank(span + [list(e)], field) > len(span):
            span.append(list(e))
            rest.append(list(e))
    from .metric import _normalize, orthogonalize

    completion = []
    for v in rest:
        for w in [e1] + images:
            v = la.vsub(v, la.vscale(w, ip(v, w) / ip(w, w)))
        completion.append(v)
    completion = orthogonalize(dec.metric, completion)
    normed = [_normalize(dec.metric, v) for v in completion]
    e_frame = [e1] + images + [v for v, _ in normed]
    e_norms = [field.convert(-1)] + [field.one] * m + [s for _, s in normed]

    counts = [0] * n
    for a, z in enumerate(dec.Z):
        jz = j_operator(dec, list(z))
        img = la.matvec(jz, e1)
        for i, e in enumerate(e_frame):
            if all(field.is_zero(x) for x in la.vsub(img, e)) and \
                    all(field.is_zero(x) for x in la.vadd(la.matvec(jz, e), e1)):
                counts[i] += 1
    return PhAdaptedBasis(tuple(tuple(z) for z in dec.Z), tuple(tuple(e) for e in e_frame),
                          tuple(e_norms), tuple(counts))
