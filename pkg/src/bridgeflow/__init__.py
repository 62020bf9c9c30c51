"""Quantum max-flow and min-cut of the bridge graph.

Closed-form solver, castling transforms, and randomized finite-field rank
oracles for the tensor network with two parallel paths joined by a bridge.
"""

from __future__ import annotations

from .arithmetic import (
    Decomposition,
    DomainError,
    Pair,
    Region,
    classify_region,
    decompose,
    reconstruct,
    z_seq,
)
from .castling import (
    BridgeInstance,
    CastlingTrace,
    DefectIdentity,
    castle_to_Y,
    depth,
    instance_down,
    instance_up,
    pair_down,
    pair_up,
)
from .oracle import OracleCapError, OracleReport, exhaustive_max_rank, flow_matrix, rank_ff, sample_rank, w2_witness_rank
from .solver import FlowResult, Status, qmaxflow, qmaxflow_symmetric, qmincut, reduce_open_instance

__version__ = "0.1.0"

__all__ = [
    "BridgeInstance", "CastlingTrace", "Decomposition", "DefectIdentity", "DomainError", "FlowResult",
    "OracleCapError", "OracleReport", "Pair", "Region", "Status",
    "castle_to_Y", "classify_region", "decompose", "depth", "exhaustive_max_rank", "flow_matrix",
    "instance_down", "instance_up", "pair_down", "pair_up", "qmaxflow", "qmaxflow_symmetric", "qmincut",
    "rank_ff", "reconstruct", "reduce_open_instance", "sample_rank", "w2_witness_rank", "z_seq",
]
