"""Noncommutative common causes on a causal Ising-type lattice algebra."""

from __future__ import annotations

from .common_cause import (
    CommonCauseCandidate,
    Partition,
    PartitionError,
    cc_criterion,
    common_cause_projection,
    commuting_jcc_obstruction,
    joint_cc_check,
    search_common_causes,
)
from .dynamics import SPECIAL, DynamicsParams, beta, beta_generator
from .element import ONE, AlgebraElement, commutator
from .geometry import DoubleCone, MinimalCone
from .monomial import BACKEND, monomial, mul_monomials
from .scenario import ScenarioSpec, UnitVector3, ch_value, chsh_value, correlation_table

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement", "BACKEND", "CommonCauseCandidate", "DoubleCone", "DynamicsParams",
    "MinimalCone", "ONE", "Partition", "PartitionError", "SPECIAL", "ScenarioSpec", "UnitVector3",
    "beta", "beta_generator", "cc_criterion", "ch_value", "chsh_value", "common_cause_projection",
    "commutator", "commuting_jcc_obstruction", "correlation_table", "joint_cc_check", "monomial",
    "mul_monomials", "search_common_causes",
]
