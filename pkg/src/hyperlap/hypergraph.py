"""Hypergraph data model: incidence structure, weights, degrees, validation.

A hypergraph is a vertex set plus a list of hyperedges, each hyperedge being
a subset of at least two vertices with a strictly positive weight.  All types
here are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class HypergraphError(ValueError):
    """Base class for hypergraph construction errors."""


class SingletonHyperedgeError(HypergraphError):
    """A hyperedge has fewer than two distinct vertices."""


class OutOfRangeVertexError(HypergraphError):
    """A hyperedge refers to a vertex index outside [0, n_vertices)."""


class NonPositiveWeightError(HypergraphError):
    """A hyperedge weight is zero, negative, or not finite."""


class IsolatedVertexError(HypergraphError):
    """Some vertex belongs to no hyperedge.

    Zero vertex degree is rejected at construction time because the inverse
    degree scalings used by the normalized Laplacians are undefined there.
    """


class KTooLargeError(ValueError):
    """A requested neighbor count or embedding dimension exceeds what
    n_vertices allows."""


@dataclass(frozen=True)
class Hypergraph:
    """Immutable hypergraph over vertices 0..n_vertices-1.

    Hyperedges are stored as sorted tuples of distinct vertex indices
    (duplicates within an edge collapse: incidence is binary).  Identical
    vertex sets may appear as separate hyperedges.
    """

    n_vertices: int
    hyperedges: tuple[tuple[int, ...], ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        n = int(self.n_vertices)
        if n < 1:
            raise HypergraphError(f"n_vertices must be >= 1, got {n}")
        edges = tuple(tuple(sorted({int(v) for v in e})) for e in self.hyperedges)
        weights = tuple(float(w) for w in self.weights)
        if len(edges) != len(weights):
            raise HypergraphError(
                f"{len(edges)} hyperedges but {len(weights)} weights"
            )
        covered = np.zeros(n, dtype=bool)
        for i, edge in enumerate(edges):
            if len(edge) < 2:
                raise SingletonHyperedgeError(
                    f"hyperedge {i} has {len(edge)} distinct vertices, need >= 2"
                )
            if edge[0] < 0 or edge[-1] >= n:
                raise OutOfRangeVertexError(
                    f"hyperedge {i} contains a vertex outside [0, {n})"
                )
            covered[list(edge)] = True
        for i, w in enumerate(weights):
            if not (w > 0.0 and np.isfinite(w)):
                raise NonPositiveWeightError(f"weight {i} is {w}, need finite > 0")
        if not covered.all():
            missing = int(np.flatnonzero(~covered)[0])
            raise IsolatedVertexError(f"vertex {missing} belongs to no hyperedge")
        object.__setattr__(self, "n_vertices", n)
        object.__setattr__(self, "hyperedges", edges)
        object.__setattr__(self, "weights", weights)

    @property
    def n_edges(self) -> int:
        return len(self.hyperedges)

    def incidence(self, vertex: int, edge: int) -> int:
        """Binary incidence: 1 if `vertex` belongs to hyperedge `edge`, else 0."""
        return 1 if vertex in self.hyperedges[edge] else 0


@dataclass(frozen=True)
class DegreeVectors:
    """Vertex degrees (weighted edge counts) and hyperedge degrees (cardinalities)."""

    vertex_degrees: np.ndarray
    hyperedge_degrees: np.ndarray

    def __post_init__(self):
        self.vertex_degrees.flags.writeable = False
        self.hyperedge_degrees.flags.writeable = False


def build_hypergraph(
    n_vertices: int,
    hyperedges: Sequence[Iterable[int]],
    weights: Sequence[float] | None = None,
) -> Hypergraph:
    """Construct a validated Hypergraph.

    Omitted weights default to 1.0 per hyperedge.  Raises a HypergraphError
    subclass on singleton edges, out-of-range indices, non-positive weights,
    or isolated vertices.
    """
    edges = tuple(tuple(e) for e in hyperedges)
    if weights is None:
        weights = tuple(1.0 for _ in edges)
    return Hypergraph(n_vertices=n_vertices, hyperedges=edges, weights=tuple(weights))


def degrees(g: Hypergraph) -> DegreeVectors:
    """Vertex degrees d(v) = sum_e w(e) h(v,e) and edge degrees d(e) = |e|."""
    dv = np.zeros(g.n_vertices)
    de = np.zeros(g.n_edges)
    for i, edge in enumerate(g.hyperedges):
        dv[list(edge)] += g.weights[i]
        de[i] = len(edge)
    return DegreeVectors(vertex_degrees=dv, hyperedge_degrees=de)


def incidence_dense(g: Hypergraph) -> np.ndarray:
    """Dense 0/1 incidence matrix, shape (n_vertices, n_edges)."""
    h = np.zeros((g.n_vertices, g.n_edges))
    for i, edge in enumerate(g.hyperedges):
        h[list(edge), i] = 1.0
    return h


def connected_components(g: Hypergraph) -> int:
    """Number of connected components (vertices linked by shared hyperedges).

    Union-find with path compression; independent of any spectral computation.
    """
    parent = list(range(g.n_vertices))

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for edge in g.hyperedges:
        anchor = find(edge[0])
        for v in edge[1:]:
            parent[find(v)] = anchor
    return len({find(v) for v in range(g.n_vertices)})


def hypergraph_to_json(g: Hypergraph) -> str:
    """Serialize to the canonical JSON document (sorted vertex lists)."""
    doc = {
        "n_vertices": g.n_vertices,
        "hyperedges": [list(e) for e in g.hyperedges],
        "weights": list(g.weights),
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def hypergraph_from_json(text: str) -> Hypergraph:
    """Parse the JSON document produced by hypergraph_to_json (validates)."""
    try:
        doc = json.loads(text)
        n = doc["n_vertices"]
        edges = doc["hyperedges"]
        weights = doc["weights"]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise HypergraphError(f"malformed hypergraph document: {exc}") from exc
    return build_hypergraph(n, edges, weights)
