"""Rigid registration of point clouds.

Three solvers, each for a different unknown:

* :func:`solve_procrustes` -- best orthogonal ``M`` for fixed correspondences
* :func:`solve_assignment` -- best correspondence for a fixed transform
* :func:`register` -- both unknown; ICP-style alternation with seeded restarts

Clouds are ``d x k`` arrays with one point per column. A correspondence
``perm`` pairs column ``perm[j]`` of ``x`` with column ``j`` of ``y``, so the
residual is ``||M @ x[:, perm] - y||_F^2``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .graph_model import VertexMapping, as_permutation

#: squared-Frobenius residual at or below which two clouds count as matched
ZERO_TOL = 1e-9


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class OrthogonalTransform:
    m: np.ndarray

    @property
    def d(self) -> int:
        return self.m.shape[0]

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.m))

    def orthogonality_error(self) -> float:
        return float(np.linalg.norm(self.m.T @ self.m - np.eye(self.d)))

    def is_valid(self, tol: float = 1e-9) -> bool:
        return self.orthogonality_error() < tol and abs(abs(self.det) - 1.0) < tol

    def __matmul__(self, other):
        return self.m @ other


@dataclass(frozen=True)
class Correspondence:
    perm: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.perm, dtype=np.intp)
        if sorted(p.tolist()) != list(range(len(p))):
            raise ValueError(f"{p.tolist()} is not a permutation")
        object.__setattr__(self, "perm", p)

    def __len__(self) -> int:
        return len(self.perm)

    def matrix(self) -> np.ndarray:
        """Permutation matrix ``P`` with ``||M x - y P||`` equal to the residual."""
        k = len(self.perm)
        p = np.zeros((k, k))
        p[np.arange(k), self.perm] = 1.0
        return p

    @classmethod
    def identity(cls, k: int) -> "Correspondence":
        return cls(np.arange(k))


@dataclass(frozen=True)
class RegistrationResult:
    transform: OrthogonalTransform
    correspondence: Correspondence
    residual: float
    restart: int = 0
    history: tuple[float, ...] = field(default=(), compare=False)

    def recompute_residual(self, x: np.ndarray, y: np.ndarray) -> float:
        return residual(self.transform.m, x, y, self.correspondence.perm)


def _check_pair(x, y) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.ndim != 2 or x.shape != y.shape:
        raise DimensionError(f"point sets must have equal 2-D shapes, got {x.shape} and {y.shape}")
    return x, y


def residual(m: np.ndarray, x: np.ndarray, y: np.ndarray, perm=None) -> float:
    mx = m @ x
    if perm is not None:
        mx = mx[:, perm]
    return float(np.sum((mx - y) ** 2))


def solve_procrustes(x, y, allow_reflections: bool = True) -> OrthogonalTransform:
    """Orthogonal ``M`` minimising ``||M x - y||_F^2``.

    Uses the SVD ``y x^T = U S V^T`` and returns ``U V^T``. Where ``y x^T``
    is rank deficient the solution is not unique; on the shared null
    directions we pick the map closest to the identity. With
    ``allow_reflections=False`` the result is forced into SO(d) by flipping
    the direction of the smallest singular value.
    """
    x, y = _check_pair(x, y)
    if x.shape[1] < 1:
        raise DimensionError("need at least one point")
    u, s, vt = np.linalg.svd(y @ x.T)
    rank = int(np.sum(s > 1e-10 * max(s[0], 1.0)))
    if rank < len(s):
        un, vn = u[:, rank:], vt[rank:].T
        a, _, bt = np.linalg.svd(un.T @ vn)
        u[:, rank:] = un @ a
        vt[rank:] = (vn @ bt.T).T
    m = u @ vt
    if not allow_reflections and np.linalg.det(m) < 0:
        u[:, -1] = -u[:, -1]
        m = u @ vt
    return OrthogonalTransform(m)


def sq_distance_matrix(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """``C[i, j] = ||x[:, i] - y[:, j]||^2``."""
    return np.sum((x[:, :, None] - y[:, None, :]) ** 2, axis=0)


def solve_assignment(x_transformed, y) -> Correspondence:
    """Exact min-cost correspondence (Hungarian method, no greedy matching)."""
    x, y = _check_pair(x_transformed, y)
    perm, _ = kernels.lap(sq_distance_matrix(x, y))
    return Correspondence(perm)


def _assign_blocks(mx: np.ndarray, y: np.ndarray, blocks: Sequence[int]) -> np.ndarray:
    perm = np.empty(mx.shape[1], dtype=np.intp)
    start = 0
    for size in blocks:
        sl = slice(start, start + size)
        p, _ = kernels.lap(sq_distance_matrix(mx[:, sl], y[:, sl]))
        perm[sl] = p + start
        start += size
    return perm


def random_orthogonal(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed orthogonal matrix (QR of a Gaussian, sign-fixed)."""
    q, r = np.linalg.qr(rng.standard_normal((d, d)))
    return q * np.sign(np.diag(r))


def initial_transforms(d: int, restarts: int, seed: int) -> list[np.ndarray]:
    """Identity first, then ``restarts - 1`` seeded random orthogonal matrices."""
    rng = np.random.default_rng(seed)
    return [np.eye(d)] + [random_orthogonal(d, rng) for _ in range(restarts - 1)]


def register_once(
    x,
    y,
    m0: np.ndarray,
    max_iters: int = 200,
    tol: float = 1e-12,
    allow_reflections: bool = True,
    blocks: Sequence[int] | None = None,
    stop_below: float | None = None,
) -> RegistrationResult:
    """One alternation run from ``m0``; ``history`` holds the residual after
    each assignment step."""
    x, y = _check_pair(x, y)
    blocks = [x.shape[1]] if blocks is None else list(blocks)
    if sum(blocks) != x.shape[1]:
        raise DimensionError("block sizes must sum to the number of points")
    m = np.asarray(m0, dtype=np.float64)
    perm = _assign_blocks(m @ x, y, blocks)
    best = residual(m, x, y, perm)
    best_m, best_perm = m, perm
    history = [best]
    for _ in range(max_iters):
        if stop_below is not None and best <= stop_below:
            break
        m = solve_procrustes(x[:, best_perm], y, allow_reflections).m
        perm = _assign_blocks(m @ x, y, blocks)
        r = residual(m, x, y, perm)
        history.append(r)
        if r < best:
            improvement = best - r
            best, best_m, best_perm = r, m, perm
            if improvement < tol:
                break
        else:
            break
    return RegistrationResult(
        OrthogonalTransform(best_m), Correspondence(best_perm), best, 0, tuple(history)
    )


def register(
    x,
    y,
    restarts: int = 32,
    max_iters: int = 200,
    tol: float = 1e-12,
    seed: int = 0,
    allow_reflections: bool = True,
    blocks: Sequence[int] | None = None,
    stop_below: float | None = None,
) -> RegistrationResult:
    """Joint transform + correspondence search.

    Restart 0 starts from the identity, the others from seeded random
    orthogonal matrices. Returns the lowest-residual run (earliest restart
    on ties). A residual at or below ``ZERO_TOL`` certifies a match; a
    larger one proves nothing, since the search is not complete.
    """
    x, y = _check_pair(x, y)
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    best = None
    for i, m0 in enumerate(initial_transforms(x.shape[0], restarts, seed)):
        res = register_once(x, y, m0, max_iters, tol, allow_reflections, blocks, stop_below)
        if best is None or res.residual < best.residual:
            best = RegistrationResult(
                res.transform, res.correspondence, res.residual, i, res.history
            )
        if stop_below is not None and best.residual <= stop_below:
            break
    return best


def orthogonal_from_vertex_permutation(pi: VertexMapping | Sequence[int], n: int) -> OrthogonalTransform:
    """Permutation matrix sending simplex vertex ``i`` to vertex ``pi[i]``."""
    pi = as_permutation(pi, n)
    m = np.zeros((n, n))
    m[list(pi), np.arange(n)] = 1.0
    return OrthogonalTransform(m)


def reflection_matrix(a: int, b: int, n: int) -> np.ndarray:
    """Reflection across the hyperplane through every simplex vertex except
    ``a`` and ``b`` and through their midpoint; it swaps ``a`` and ``b``."""
    v = np.zeros(n)
    v[a], v[b] = 1.0, -1.0
    return np.eye(n) - np.outer(v, v)


def reflection_decomposition(pi: VertexMapping | Sequence[int], n: int) -> list[tuple[int, int]]:
    """Transpositions ``t_1..t_k`` with ``P_pi = R(t_1) @ ... @ R(t_k)``."""
    pi = as_permutation(pi, n)
    seen = [False] * n
    out: list[tuple[int, int]] = []
    for start in range(n):
        if seen[start]:
            continue
        cycle = [start]
        seen[start] = True
        nxt = pi[start]
        while nxt != start:
            cycle.append(nxt)
            seen[nxt] = True
            nxt = pi[nxt]
        # (c0 c1 ... cl) = (c0 cl) o ... o (c0 c1)
        out.extend((cycle[0], c) for c in reversed(cycle[1:]))
    return out
