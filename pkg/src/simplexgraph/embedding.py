"""Point-cloud forms of graphs.

Vertices sit on the corners of a centered regular simplex in ``R^n``
(column ``i`` is ``e_i - 1/n``). Each edge adds sample points on the segment
between its endpoints.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph_model import Digraph, EndpointRangeError, Graph, Hypergraph


@dataclass(frozen=True)
class PointCloud:
    """``d x (|V| + k)`` cloud, vertex columns first."""

    vertex_points: np.ndarray
    edge_points: np.ndarray

    @property
    def d(self) -> int:
        return self.vertex_points.shape[0]

    @property
    def full(self) -> np.ndarray:
        return np.hstack([self.vertex_points, self.edge_points])

    @property
    def n_vertices(self) -> int:
        return self.vertex_points.shape[1]

    @property
    def n_edge_points(self) -> int:
        return self.edge_points.shape[1]

    def to_csv(self) -> str:
        full = self.full
        rows = [f"{full.shape[0]},{full.shape[1]}"]
        rows += [",".join(repr(float(x)) for x in row) for row in full]
        return "\n".join(rows) + "\n"


def simplex_points(n: int) -> np.ndarray:
    """Centered standard simplex: the identity minus its column mean."""
    if n < 1:
        raise ValueError("simplex needs at least one vertex")
    sv = np.eye(n)
    return sv - sv.mean(axis=1, keepdims=True)


def _check_range(sv: np.ndarray, idx: np.ndarray) -> None:
    if idx.size and (idx.min() < 0 or idx.max() >= sv.shape[1]):
        raise EndpointRangeError(f"edge endpoint out of range for n={sv.shape[1]}")


def edge_points(sv: np.ndarray, edges) -> np.ndarray:
    """Midpoint of each edge's endpoint columns, in the given edge order."""
    e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    _check_range(sv, e)
    return (sv[:, e[:, 0]] + sv[:, e[:, 1]]) / 2.0


def embed(g: Graph) -> PointCloud:
    sv = simplex_points(g.n)
    return PointCloud(sv, edge_points(sv, g.edges))


def arc_points(sv: np.ndarray, arcs) -> np.ndarray:
    """Two samples per arc ``u -> v``: the midpoint, then the 3/4-point toward ``v``.

    All midpoints come first (arc order), followed by all 3/4-points.
    """
    a = np.asarray(arcs, dtype=np.int64).reshape(-1, 2)
    _check_range(sv, a)
    tail, head = sv[:, a[:, 0]], sv[:, a[:, 1]]
    mid = (tail + head) / 2.0
    return np.hstack([mid, (mid + head) / 2.0])


def embed_digraph(g: Digraph) -> PointCloud:
    sv = simplex_points(g.n)
    return PointCloud(sv, arc_points(sv, g.arcs))


def embed_hypergraph(h: Hypergraph) -> PointCloud:
    sv = simplex_points(h.n)
    cols = np.empty((h.n, h.m))
    for j, members in enumerate(h.hyperedges):
        idx = np.asarray(members, dtype=np.int64)
        _check_range(sv, idx)
        cols[:, j] = sv[:, idx].mean(axis=1)
    return PointCloud(sv, cols)


def embed_any(g: Graph | Digraph | Hypergraph) -> PointCloud:
    if isinstance(g, Digraph):
        return embed_digraph(g)
    if isinstance(g, Hypergraph):
        return embed_hypergraph(g)
    return embed(g)
