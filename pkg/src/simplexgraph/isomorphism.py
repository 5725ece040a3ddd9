"""Exact isomorphism, automorphism and subgraph decisions on point-cloud forms.

The transform set for two simplex embeddings is finite: every valid ``M`` is
a permutation of simplex corners, and once the vertex bijection ``pi`` is
fixed the edge-column order follows from it. So the search runs over ``pi``
alone. A candidate is kept only while the midpoint of every already-mapped
edge lands on an edge point of the target cloud, and a complete candidate is
certified by the full residual ``||P_pi S1 - S2 P||_F^2 <= tol``.

:func:`oracle_is_isomorphic` is deliberately independent of all of this: it
backtracks on adjacency matrices and never touches geometry.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .embedding import embed, simplex_points
from .graph_model import (
    Graph,
    MappingError,
    VertexMapping,
    apply_vertex_permutation,
    as_mapping,
    as_permutation,
)
from .registration import (
    ZERO_TOL,
    Correspondence,
    orthogonal_from_vertex_permutation,
    solve_procrustes,
    sq_distance_matrix,
)


class InconsistencyError(RuntimeError):
    """Geometric and combinatorial verdicts disagree (a bug or a bad tolerance)."""


@dataclass(frozen=True)
class IsoResult:
    decision: bool
    witness: VertexMapping | None = None
    residual: float = float("nan")
    reason: str = ""

    def __post_init__(self):
        if self.decision != (self.witness is not None):
            raise ValueError("a witness is present exactly when the decision is true")

    def __bool__(self) -> bool:
        return self.decision


def _edge_index(g: Graph) -> np.ndarray:
    idx = np.full((g.n, g.n), -1, dtype=np.int64)
    for i, (u, v) in enumerate(g.edges):
        idx[u, v] = idx[v, u] = i
    return idx


def _back_lists(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    """CSR lists: for each vertex, its neighbours with smaller index."""
    back: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in g.edges:
        back[v].append(u)
    ptr = np.zeros(g.n + 1, dtype=np.int64)
    ptr[1:] = np.cumsum([len(b) for b in back])
    idx = np.array([u for b in back for u in sorted(b)], dtype=np.int64)
    return ptr, idx


def induced_edge_permutation(
    pi: VertexMapping | Sequence[int], e1, e2
) -> Correspondence | None:
    """Edge correspondence forced by ``pi``, or ``None`` if ``pi`` drops an edge.

    Edge ``e1[i]`` goes to the position of ``(pi[u], pi[v])`` in ``e2``. The
    result follows the registration convention: ``perm[j]`` is the index in
    ``e1`` of the edge landing on ``e2[j]``.
    """
    pi = as_mapping(pi)
    e1 = [tuple(e) for e in e1]
    pos = {tuple(e): j for j, e in enumerate(e2)}
    if len(e1) != len(pos):
        return None
    perm = [0] * len(e1)
    for i, (u, v) in enumerate(e1):
        a, b = pi[u], pi[v]
        j = pos.get((a, b) if a < b else (b, a))
        if j is None:
            return None
        perm[j] = i
    return Correspondence(np.asarray(perm, dtype=np.intp))


def _full_perm(pi: VertexMapping, edge_corr: np.ndarray, n: int) -> np.ndarray:
    inv = np.empty(n, dtype=np.intp)
    inv[list(pi)] = np.arange(n)
    return np.concatenate([inv, n + np.asarray(edge_corr, dtype=np.intp)])


def geometric_residual(
    g1: Graph, g2: Graph, pi: VertexMapping | Sequence[int], edge_corr: Correspondence | None = None
) -> float:
    """``||P_pi S1 - S2 P||_F^2`` with ``P`` vertex-to-vertex by ``pi``.

    Edge columns follow ``edge_corr`` if given, else the induced
    correspondence, else (``pi`` not edge-preserving) the cheapest
    edge-to-edge assignment.
    """
    n = g1.n
    pi = as_permutation(pi, n)
    if g2.n != n or g2.m != g1.m:
        raise MappingError("graphs differ in size")
    s1, s2 = embed(g1), embed(g2)
    m = orthogonal_from_vertex_permutation(pi, n).m
    if edge_corr is None:
        edge_corr = induced_edge_permutation(pi, g1.edges, g2.edges)
    if edge_corr is None:
        cost = sq_distance_matrix(m @ s1.edge_points, s2.edge_points)
        perm, _ = kernels.lap(cost)
    else:
        perm = edge_corr.perm
    full = _full_perm(pi, perm, n)
    return float(np.sum((m @ s1.full[:, full] - s2.full) ** 2))


def _batch_residuals(g1: Graph, g2: Graph, perms: np.ndarray, chunk: int = 2048) -> np.ndarray:
    """Residuals for many candidate bijections at once; ``inf`` where a
    candidate is not edge-preserving (callers fall back to the scalar path)."""
    n = g1.n
    s1, s2 = embed(g1).full, embed(g2).full
    e1 = g1.edge_array()
    idx2 = _edge_index(g2)
    out = np.empty(len(perms))
    for start in range(0, len(perms), chunk):
        p = perms[start:start + chunk]
        inv = np.argsort(p, axis=1)
        # row pi(i) of P_pi @ S1 is row i of S1
        ms1 = s1[inv]
        sigma = np.empty((len(p), s1.shape[1]), dtype=np.intp)
        sigma[:, :n] = p
        if len(e1):
            sigma[:, n:] = n + idx2[p[:, e1[:, 0]], p[:, e1[:, 1]]]
        bad = (sigma[:, n:] < n).any(axis=1)
        target = s2[:, sigma].transpose(1, 0, 2)
        r = np.sum((ms1 - target) ** 2, axis=(1, 2))
        r[bad] = np.inf
        out[start:start + chunk] = r
    return out


def _candidates(g1: Graph, g2: Graph, tol: float, limit: int, skip_identity: bool = False):
    sv = simplex_points(g1.n)
    ep2 = embed(g2).edge_points
    ptr, idx = _back_lists(g1)
    return kernels.iso_search(
        sv, ep2, g1.degrees(), g2.degrees(), ptr, idx, tol, limit, skip_identity
    )


def is_isomorphic(g1: Graph, g2: Graph, tol: float = ZERO_TOL) -> IsoResult:
    if g1.n != g2.n or g1.m != g2.m:
        return IsoResult(False, reason="size mismatch")
    if g1.n == 0 or g1.m == 0:
        return IsoResult(True, VertexMapping.identity(g1.n), 0.0, "edgeless")
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return IsoResult(False, reason="degree sequence mismatch")
    found = _candidates(g1, g2, tol, limit=1)
    if found:
        pi = VertexMapping(found[0])
        r = geometric_residual(g1, g2, pi)
        if r <= tol:
            return IsoResult(True, pi, r)
        # every mapped midpoint landed on a target edge point yet the full
        # residual is off: fall back to checking all candidates in order
        for cand in _candidates(g1, g2, tol, limit=0)[1:]:
            r = geometric_residual(g1, g2, cand)
            if r <= tol:
                return IsoResult(True, VertexMapping(cand), r)
    return IsoResult(False, reason="no zero-residual registration")


def oracle_is_isomorphic(g1: Graph, g2: Graph) -> IsoResult:
    """Adjacency-matrix backtracking: ``A1 == P^T A2 P`` for some ``P``."""
    if g1.n != g2.n or g1.m != g2.m:
        return IsoResult(False, reason="size mismatch")
    n = g1.n
    a1 = g1.adjacency().tolist()
    a2 = g2.adjacency().tolist()
    pi = [0] * n
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        row1 = a1[i]
        for w in range(n):
            if used[w]:
                continue
            row2 = a2[w]
            if all(row1[j] == row2[pi[j]] for j in range(i)):
                pi[i] = w
                used[w] = True
                if extend(i + 1):
                    return True
                used[w] = False
        return False

    if not extend(0):
        return IsoResult(False, reason="no adjacency-preserving bijection")
    p = np.zeros((n, n), dtype=np.int64)
    p[pi, np.arange(n)] = 1
    assert np.array_equal(np.asarray(a1), p.T @ np.asarray(a2) @ p)
    return IsoResult(True, VertexMapping(tuple(pi)), 0.0)


def automorphisms(g: Graph, tol: float = ZERO_TOL) -> list[VertexMapping]:
    """Every bijection ``pi`` with ``P_pi S P^T = S`` for its induced ``P``."""
    if g.n == 0:
        return [VertexMapping(())]
    found = _candidates(g, g, tol, limit=0)
    if not found:
        return []
    perms = np.asarray(found, dtype=np.intp)
    res = _batch_residuals(g, g, perms)
    out = []
    for p, r in zip(found, res):
        if not np.isfinite(r):
            r = geometric_residual(g, g, p)
        if r <= tol:
            out.append(VertexMapping(p))
    return out


def count_automorphisms(g: Graph, tol: float = ZERO_TOL) -> int:
    return len(automorphisms(g, tol))


def has_nontrivial_automorphism(g: Graph, tol: float = ZERO_TOL) -> bool:
    if g.n < 2:
        return False
    found = _candidates(g, g, tol, limit=1, skip_identity=True)
    if found and geometric_residual(g, g, found[0]) <= tol:
        return True
    return count_automorphisms(g, tol) > 1 if found else False


def subgraph_certificate(g1: Graph, g2: Graph, inj: VertexMapping | Sequence[int]) -> float:
    """Registration residual of ``g2`` onto the part of ``g1`` picked by ``inj``.

    Selects the image vertices and image-edge midpoints of ``S1``, moves the
    selected vertices' centroid to the origin, embeds ``S2`` in the first
    ``|V2|`` coordinates of ``R^|V1|``, and solves Procrustes with the
    correspondence fixed by ``inj``.
    """
    inj = as_mapping(inj)
    n1, n2 = g1.n, g2.n
    if len(inj) != n2 or any(x >= n1 for x in inj):
        raise MappingError("injection does not fit the host graph")
    s1 = embed(g1).full
    idx1 = _edge_index(g1)
    cols = list(inj)
    for u, v in g2.edges:
        j = idx1[inj[u], inj[v]]
        if j < 0:
            return float("inf")
        cols.append(n1 + int(j))
    x = s1[:, cols]
    x = x - x[:, :n2].mean(axis=1, keepdims=True)
    y = np.zeros_like(x)
    if n2:
        y[:n2] = embed(g2).full
    m = solve_procrustes(x, y).m
    return float(np.sum((m @ x - y) ** 2))


def is_subgraph_isomorphic(g1: Graph, g2: Graph, tol: float = ZERO_TOL) -> IsoResult:
    """Does ``g1`` contain a (not necessarily induced) copy of ``g2``?"""
    if g2.n > g1.n or g2.m > g1.m:
        return IsoResult(False, reason="pattern larger than host")
    if g2.n == 0:
        return IsoResult(True, VertexMapping(()), 0.0)
    ptr, idx = _back_lists(g2)
    found = kernels.subgraph_search(g1.adjacency(), g1.degrees(), g2.degrees(), ptr, idx, 1)
    if not found:
        return IsoResult(False, reason="no edge-preserving injection")
    inj = VertexMapping(found[0])
    r = subgraph_certificate(g1, g2, inj)
    if r > tol:
        raise InconsistencyError(
            f"injection {inj.map} preserves edges but certificate residual is {r:.3e}"
        )
    return IsoResult(True, inj, r)


def verify_isomorphism(g1: Graph, g2: Graph, pi: VertexMapping | Sequence[int], tol: float = ZERO_TOL) -> bool:
    if g1.n != g2.n:
        raise MappingError("vertex counts differ")
    pi = as_permutation(pi, g1.n)
    combinatorial = apply_vertex_permutation(g1, pi) == g2
    if g1.m != g2.m:
        return False
    geometric = geometric_residual(g1, g2, pi) <= tol
    if combinatorial != geometric:
        raise InconsistencyError(
            f"mapping {pi.map}: combinatorial={combinatorial} geometric={geometric}"
        )
    return combinatorial
