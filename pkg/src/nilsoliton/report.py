"""Report documents for the command-line front end.

Every number is emitted through :func:`encode_scalar`, so exact results keep their
rational string next to a decimal rendering.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg as la
from .classify import TypeClassError, adapt_ph_basis, classify
from .curvature import ricci_fast, ricci_oracle
from .flow import FlowDegenerated, flow_integrate
from .io import encode_matrix, encode_scalar, encode_vector
from .lie import LieAlgebra, verify_two_step
from .metric import MetricTensor, NotTwoStep, decompose, signature
from .soliton import SolitonResult, derivation_space, solve_nilsoliton


@dataclass(frozen=True)
class Source:
    name: str
    alg: LieAlgebra
    metric: MetricTensor
    basis_names: tuple


class RicciMismatch(RuntimeError):
    def __init__(self, message, report):
        super().__init__(message)
        self.report = report


def _header(command: str, src: Source) -> dict:
    return {
        "command": command,
        "algebra": src.name,
        "dim": src.alg.dim,
        "basis": list(src.basis_names),
        "backend": src.metric.field.name,
    }


def _witness(w):
    if w is None:
        return None
    return {"identity": w.identity, "z": encode_vector(w.z), "x": encode_vector(w.x),
            "defect": encode_vector(w.defect),
            "z2": encode_vector(w.z2) if w.z2 is not None else None}


def classify_report(src: Source) -> dict:
    dec = decompose(src.alg, src.metric)
    rep = classify(dec)
    pos, neg = signature(src.metric)
    out = _header("classify", src)
    out.update({
        "two_step": True,
        "signature": [pos, neg],
        "decomposition": {"U": dec.p, "Z": dec.m, "V": dec.p, "E": dec.n,
                          "eps": list(dec.eps), "eps_bar": list(dec.eps_bar)},
        "flags": rep.flags(),
        "nondegenerate_center": rep.nondegenerate_center,
        "witnesses": {k: _witness(w) for k, w in sorted(rep.witnesses.items())},
        "notes": list(rep.notes),
    })
    if dec.p == 0 and neg == 1 and dec.m and all(s > 0 for s in dec.eps):
        try:
            basis = adapt_ph_basis(dec)
            out["ph_adapted"] = {"ok": True, "m_counts": list(basis.m_counts)}
        except TypeClassError as exc:
            out["ph_adapted"] = {"ok": False, "error": type(exc).__name__, "message": str(exc)}
    return out


def ricci_report(src: Source, method: str = "fast") -> dict:
    if method not in ("fast", "oracle", "both"):
        raise ValueError(f"unknown method {method!r}")
    out = _header("ricci", src)
    out["method"] = method
    if method in ("fast", "both"):
        fast = ricci_fast(decompose(src.alg, src.metric))
    if method in ("oracle", "both"):
        oracle = ricci_oracle(src.alg, src.metric)
    data = fast if method != "oracle" else oracle
    out.update({"rho": encode_matrix(data.rho), "ric_op": encode_matrix(data.ric_op),
                "scalar": encode_scalar(data.scalar)})
    if method == "both":
        field = src.metric.field
        agree = (all(field.is_zero(x) for row in la.sub(fast.rho, oracle.rho) for x in row)
                 and all(field.is_zero(x) for row in la.sub(fast.ric_op, oracle.ric_op) for x in row))
        out["agree"] = agree
        if not agree:
            out["oracle_rho"] = encode_matrix(oracle.rho)
            raise RicciMismatch("fast and oracle Ricci tensors differ", out)
    return out


def _certificate(res: SolitonResult, names):
    cert = res.certificate
    if cert is None:
        return None
    cons = [cert.first] if cert.first is cert.second else [cert.first, cert.second]
    return {
        "constraints": [{"bracket": [names[t] for t in con.bracket],
                         "coeff": encode_scalar(con.coeff),
                         "c": encode_scalar(con.value),
                         "residual": encode_scalar(con.residual),
                         "text": con.describe(names)} for con in cons],
        "distinct_values": [encode_scalar(v) for v in cert.values],
    }


def soliton_report(src: Source) -> dict:
    two = verify_two_step(src.alg)
    if not two:
        raise NotTwoStep(f"algebra is not 2-step nilpotent ({two.reason})")
    ric = ricci_oracle(src.alg, src.metric)
    der = derivation_space(src.alg)
    res = solve_nilsoliton(ric.ric_op, der, src.alg, src.metric.field)
    out = _header("soliton", src)
    out.update({
        "feasible": res.feasible,
        "nontrivial": res.nontrivial,
        "trivial": res.trivial,
        "c": encode_scalar(res.c),
        "class": res.kind,
        "D": encode_matrix(res.D),
        "derivation_dim": len(der),
        "ric_op": encode_matrix(ric.ric_op),
        "residual": encode_scalar(res.residual),
        "certificate": _certificate(res, src.basis_names),
        "warnings": list(res.warnings),
    })
    return out


def flow_report(src: Source, t_end: float, steps: int, sample_every: int = 1):
    """Return (report, trajectory); a degenerating flow raises FlowDegenerated."""
    step = t_end / steps
    traj = flow_integrate(src.alg, src.metric, t_end, step, sample_every=sample_every)
    out = _header("flow", src)
    out["backend"] = "float"
    out.update({
        "t_end": encode_scalar(float(t_end)),
        "steps": steps,
        "step": encode_scalar(step),
        "samples": len(traj.samples),
        "final_metric": encode_matrix(traj.final.tolist()),
        "max_residual": encode_scalar(max(s.residual for s in traj.samples)),
        "final_c": encode_scalar(traj.samples[-1].c),
    })
    return out, traj


__all__ = ["Source", "RicciMismatch", "classify_report", "ricci_report", "soliton_report",
           "flow_report", "FlowDegenerated"]
