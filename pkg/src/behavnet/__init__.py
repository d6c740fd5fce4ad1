"""Exact behavioral analysis of linear dynamical networks."""

from .behavior import (
    IOPartition,
    KernelRep,
    SignalSpace,
    io_partition,
    is_behavior_equal,
    is_unconstrained,
    mcmillan_degree,
    minimal_kernel,
    output_cardinality,
)
from .graphs import DiGraph, Hypergraph, dual, hypergraph_of, signal_graph, svar_digraph, system_graph, to_dot
from .network import (
    ComponentPartition,
    IncidenceMatrix,
    Network,
    incidence,
    interconnect,
    is_regular,
    is_regular_feedback,
    merge,
    regularizing_partition,
)
from .polyalg import MINUS_INF, S, Poly, PolyMatrix, UnimodularCert
from .sim import Trajectory, residual, simulate
from .svar import SvarModel, from_network, to_network, validate

__version__ = "0.1.0"
