"""Signal graphs, system graphs and SVAR directed graphs.

A signal graph has one vertex per signal block and one (hyper)edge per
component; the system graph is its dual.  Edges form a multiset: two
components constraining the same blocks give two edges with equal members,
told apart by their labels.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

from .network import IncidenceMatrix, Network, incidence

if TYPE_CHECKING:
    from .svar import SvarModel


@dataclass(frozen=True)
class HyperEdge:
    label: str
    members: frozenset[int]


@dataclass(frozen=True)
class Hypergraph:
    vertices: tuple[str, ...]
    edges: tuple[HyperEdge, ...]

    def __post_init__(self):
        n = len(self.vertices)
        for e in self.edges:
            if any(not 0 <= v < n for v in e.members):
                raise ValueError(f"edge {e.label!r} references a vertex outside 0..{n - 1}")

    def member_sets(self) -> list[frozenset[int]]:
        return [e.members for e in self.edges]

    def incidence_rows(self) -> list[list[int]]:
        return [[1 if v in e.members else 0 for v in range(len(self.vertices))] for e in self.edges]


@dataclass(frozen=True)
class DiGraph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if any(a == b for a, b in self.edges):
            raise ValueError("self-loops are not allowed")

    def labelled_edges(self) -> list[tuple[str, str]]:
        return [(self.vertices[a], self.vertices[b]) for a, b in self.edges]


def hypergraph_of(
    s: IncidenceMatrix | Sequence[Sequence[int]],
    vertex_labels: Sequence[str] | None = None,
    edge_labels: Sequence[str] | None = None,
) -> Hypergraph:
    """One vertex per column, one edge per row holding the columns set to 1."""
    if isinstance(s, IncidenceMatrix):
        vertex_labels = vertex_labels if vertex_labels is not None else (s.signals or None)
        edge_labels = edge_labels if edge_labels is not None else (s.components or None)
        rows = s.to_lists()
        n_cols = s.shape[1]
    else:
        rows = [list(r) for r in s]
        n_cols = len(rows[0]) if rows else len(vertex_labels or ())
    if any(len(r) != n_cols for r in rows):
        raise ValueError("ragged incidence matrix")
    if any(x not in (0, 1) for r in rows for x in r):
        raise ValueError("incidence entries must be 0 or 1")
    vertex_labels = list(vertex_labels) if vertex_labels is not None else [str(j + 1) for j in range(n_cols)]
    edge_labels = list(edge_labels) if edge_labels is not None else [str(i + 1) for i in range(len(rows))]
    if len(vertex_labels) != n_cols or len(edge_labels) != len(rows):
        raise ValueError(
            f"{len(vertex_labels)} vertex / {len(edge_labels)} edge labels for a "
            f"{len(rows)}x{n_cols} incidence matrix"
        )
    edges = tuple(
        HyperEdge(label, frozenset(j for j, x in enumerate(r) if x))
        for label, r in zip(edge_labels, rows)
    )
    return Hypergraph(tuple(vertex_labels), edges)


def dual(h: Hypergraph) -> Hypergraph:
    """Transpose the incidence structure: edges become vertices and vice versa."""
    edges = tuple(
        HyperEdge(label, frozenset(i for i, e in enumerate(h.edges) if v in e.members))
        for v, label in enumerate(h.vertices)
    )
    return Hypergraph(tuple(e.label for e in h.edges), edges)


def signal_graph(net: Network) -> Hypergraph:
    return hypergraph_of(incidence(net))


def system_graph(net: Network) -> Hypergraph:
    return dual(signal_graph(net))


def svar_digraph(model: "SvarModel") -> DiGraph:
    """Directed graph read from the adjacency pattern of ``[[X, -Q], [0, 0]]``.

    Vertices are the outputs followed by the inputs; ``i -> j`` whenever
    signal ``i`` appears in the equation of output ``j``.
    """
    from .svar import SvarModel

    if not isinstance(model, SvarModel):
        raise TypeError("svar_digraph needs a validated SvarModel")
    pattern = model.sparsity()
    n_out = model.n_outputs
    vertices = tuple(model.output_names) + tuple(model.input_names)
    edges = tuple(
        (i, j)
        for j in range(n_out)
        for i in range(len(vertices))
        if i != j and pattern[j][i]
    )
    return DiGraph(vertices, tuple(sorted(edges)))


def _quote(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: Hypergraph | DiGraph, name: str = "G") -> str:
    """GraphViz text, deterministic for a given graph.

    Hyperedges with two members become plain undirected edges; edges with
    one or three and more members get a small square net node wired to each
    member.  Empty edges only leave a comment.
    """
    lines = []
    if isinstance(g, DiGraph):
        lines.append(f"digraph {_quote(name)} {{")
        for i, v in enumerate(g.vertices):
            lines.append(f"  v{i} [label={_quote(v)}];")
        for a, b in g.edges:
            lines.append(f"  v{a} -> v{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    lines.append(f"graph {_quote(name)} {{")
    for i, v in enumerate(g.vertices):
        lines.append(f"  v{i} [label={_quote(v)}];")
    for k, e in enumerate(g.edges):
        members = sorted(e.members)
        if not members:
            lines.append(f"  // {_quote(e.label)} constrains no signal")
        elif len(members) == 2:
            a, b = members
            lines.append(f"  v{a} -- v{b} [label={_quote(e.label)}];")
        else:
            lines.append(f"  e{k} [shape=square, width=0.15, label=\"\", xlabel={_quote(e.label)}];")
            for v in members:
                lines.append(f"  e{k} -- v{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(g: Hypergraph | DiGraph) -> str:
    if isinstance(g, DiGraph):
        edges = [{"from": g.vertices[a], "to": g.vertices[b]} for a, b in g.edges]
    else:
        edges = [{"label": e.label, "members": [g.vertices[v] for v in sorted(e.members)]} for e in g.edges]
    return json.dumps({"vertices": list(g.vertices), "edges": edges}, indent=2) + "\n"
