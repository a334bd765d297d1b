"""Ricci flow on left-invariant metrics of a fixed Lie algebra.

Left-invariance reduces dg/dt = -2 rho[g] to an ODE on the dim(dim+1)/2 metric
coefficients, integrated here with classical RK4.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .curvature import ricci_tensor_array
from .lie import LieAlgebra
from .soliton import DerivationBasis, derivation_space

DEGENERATION_RATIO = 1e-8
# a single step moving g by more than this fraction of its norm means the
# solution is blowing up faster than the fixed step can follow
MAX_RELATIVE_STEP = 0.5


class FlowError(ValueError):
    pass


class FlowDegenerated(FlowError):
    def __init__(self, message, trajectory, last_t):
        super().__init__(message)
        self.trajectory = trajectory
        self.last_t = last_t


@dataclass(frozen=True)
class FlowSample:
    t: float
    g: np.ndarray
    residual: float = float("nan")
    c: float = float("nan")


@dataclass
class FlowTrajectory:
    samples: list[FlowSample] = field(default_factory=list)
    step: float = 0.0
    method: str = "rk4"

    @property
    def times(self) -> list[float]:
        return [s.t for s in self.samples]

    @property
    def final(self) -> np.ndarray:
        return self.samples[-1].g

    def to_csv(self) -> str:
        if not self.samples:
            return ""
        n = self.samples[0].g.shape[0]
        header = ["t"] + [f"g{i + 1}{j + 1}" for i in range(n) for j in range(i, n)] + ["residual"]
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for s in self.samples:
            upper = [repr(float(s.g[i, j])) for i in range(n) for j in range(i, n)]
            writer.writerow([repr(float(s.t))] + upper + [repr(float(s.residual))])
        return buf.getvalue()


def structure_array(alg: LieAlgebra) -> np.ndarray:
    return np.array([[[float(x) for x in row] for row in plane] for plane in alg.tensor],
                    dtype=float).reshape(alg.dim, alg.dim, alg.dim)


def _rk4_step(c, g, h):
    f = lambda m: -2.0 * ricci_tensor_array(c, m)
    k1 = f(g)
    k2 = f(g + 0.5 * h * k1)
    k3 = f(g + 0.5 * h * k2)
    k4 = f(g + h * k3)
    out = g + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
    # the right-hand side is symmetric; re-symmetrizing only removes roundoff
    return 0.5 * (out + out.T)


def projection_residual(ric_op: np.ndarray, der_mats: np.ndarray) -> tuple[float, float]:
    """Least-squares distance from Ric to span{Id} + Der; returns (residual, fitted c)."""
    n = ric_op.shape[0]
    cols = [np.eye(n).ravel()] + [d.ravel() for d in der_mats]
    A = np.stack(cols, axis=1)
    sol, *_ = np.linalg.lstsq(A, ric_op.ravel(), rcond=None)
    return float(np.linalg.norm(A @ sol - ric_op.ravel())), float(sol[0])


def _der_array(alg, der_basis):
    if der_basis is None:
        der_basis = derivation_space(alg)
    return np.array([[[float(x) for x in row] for row in D] for D in der_basis],
                    dtype=float).reshape(len(der_basis), alg.dim, alg.dim)


def flow_integrate(alg: LieAlgebra, g0, t_end: float, step: float, *,
                   sample_every: int = 1, der_basis: DerivationBasis | None = None,
                   residuals: bool = True) -> FlowTrajectory:
    """Integrate dg/dt = -2 rho[g] from g0 to t_end with fixed RK4 steps.

    Raises :class:`FlowDegenerated` (carrying the partial trajectory) once
    |det g| < 1e-8 |det g0|.
    """
    if step <= 0:
        raise FlowError("step must be positive")
    if t_end < 0:
        raise FlowError("t_end must be nonnegative")
    g = np.array([[float(x) for x in row] for row in (g0.matrix if hasattr(g0, "matrix") else g0)])
    if not np.allclose(g, g.T, atol=0, rtol=0):
        raise FlowError("initial metric is not symmetric")
    det0 = abs(np.linalg.det(g))
    if det0 == 0:
        raise FlowError("initial metric is degenerate")
    c = structure_array(alg)
    ders = _der_array(alg, der_basis) if residuals else None
    traj = FlowTrajectory(step=step)

    def record(t, m):
        if residuals:
            rho = ricci_tensor_array(c, m)
            res, cval = projection_residual(np.linalg.solve(m, rho), ders)
        else:
            res = cval = float("nan")
        traj.samples.append(FlowSample(t, m.copy(), res, cval))

    nsteps = int(np.ceil(t_end / step - 1e-9))
    record(0.0, g)
    t = 0.0
    for k in range(1, nsteps + 1):
        h = min(step, t_end - t) if k == nsteps else step
        g_prev, g = g, _rk4_step(c, g, h)
        t_prev, t = t, (t_end if k == nsteps else k * step)
        if (not np.all(np.isfinite(g))
                or abs(np.linalg.det(g)) < DEGENERATION_RATIO * det0
                or np.linalg.norm(g - g_prev) > MAX_RELATIVE_STEP * np.linalg.norm(g_prev)):
            raise FlowDegenerated(
                f"metric degenerates near t = {t:.6g} (last valid t = {t_prev:.6g})",
                traj, t_prev)
        if k % sample_every == 0 or k == nsteps:
            record(t, g)
    return traj


def soliton_persistence(traj: FlowTrajectory, alg: LieAlgebra,
                        der_basis: DerivationBasis | None = None) -> float:
    """Largest distance of Ric(g(t)) from c Id + Der over the sampled metrics."""
    c = structure_array(alg)
    ders = _der_array(alg, der_basis)
    worst = 0.0
    for s in traj.samples:
        ric = np.linalg.solve(s.g, ricci_tensor_array(c, s.g))
        worst = max(worst, projection_residual(ric, ders)[0])
    return worst


def convergence_order(alg: LieAlgebra, g0, t_end: float, steps) -> list[float]:
    """Observed orders log2(|y_h - y_{h/2}| / |y_{h/2} - y_{h/4}|) along a halving ladder."""
    finals = [flow_integrate(alg, g0, t_end, h, sample_every=10 ** 9, residuals=False).final
              for h in steps]
    diffs = [np.linalg.norm(a - b) for a, b in zip(finals, finals[1:])]
    return [float(np.log2(d0 / d1)) for d0, d1 in zip(diffs, diffs[1:])]
