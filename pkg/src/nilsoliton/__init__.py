"""Ricci curvature and nilsoliton feasibility for pseudo-Riemannian 2-step nilpotent Lie algebras."""

from .classify import TypeReport, adapt_ph_basis, classify
from .curvature import RicciData, ricci_fast, ricci_oracle
from .flow import FlowTrajectory, flow_integrate, soliton_persistence
from .lie import LieAlgebra, center, derived_subalgebra, verify_two_step
from .metric import AdaptedDecomposition, MetricTensor, decompose, j_operator, J_operator
from .scalar import EXACT, FLOAT
from .soliton import SolitonResult, derivation_space, is_derivation, solve_nilsoliton

__all__ = [
    "AdaptedDecomposition", "EXACT", "FLOAT", "FlowTrajectory", "J_operator", "LieAlgebra",
    "MetricTensor", "RicciData", "SolitonResult", "TypeReport", "adapt_ph_basis", "center",
    "classify", "decompose", "derivation_space", "derived_subalgebra", "flow_integrate",
    "is_derivation", "j_operator", "ricci_fast", "ricci_oracle", "soliton_persistence",
    "solve_nilsoliton", "verify_two_step",
]
