"""Graph-pair generators and the geometric-vs-oracle agreement check."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from .graph_model import Graph, all_graphs, apply_vertex_permutation, serialize_graph
from .isomorphism import is_isomorphic, oracle_is_isomorphic
from .registration import ZERO_TOL


@dataclass
class SweepReport:
    pairs: int = 0
    isomorphic: int = 0
    mismatches: list[tuple[Graph, Graph, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def exhaustive_pairs(n: int) -> Iterator[tuple[Graph, Graph]]:
    """Every unordered pair (with repetition) of labeled graphs on ``n`` vertices."""
    graphs = list(all_graphs(n))
    for i, g in enumerate(graphs):
        for h in graphs[i:]:
            yield g, h


def random_graph(n: int, rng: np.random.Generator, p: float | None = None) -> Graph:
    p = rng.uniform(0.15, 0.85) if p is None else p
    iu = np.triu_indices(n, 1)
    keep = rng.random(len(iu[0])) < p
    return Graph(n, tuple(zip(iu[0][keep].tolist(), iu[1][keep].tolist())))


def double_edge_swap(g: Graph, rng: np.random.Generator, tries: int = 20) -> Graph:
    """Swap ``(a,b),(c,d) -> (a,d),(c,b)``: keeps every degree, usually not the class."""
    edges = set(g.edges)
    el = list(g.edges)
    for _ in range(tries):
        if len(el) < 2:
            break
        i, j = rng.choice(len(el), size=2, replace=False)
        (a, b), (c, d) = el[i], el[j]
        if rng.random() < 0.5:
            c, d = d, c
        new1, new2 = tuple(sorted((a, d))), tuple(sorted((c, b)))
        if len({a, b, c, d}) < 4 or new1 in edges or new2 in edges:
            continue
        edges -= {el[i], el[j]}
        edges |= {new1, new2}
        return Graph(g.n, tuple(edges))
    return g


def random_pairs(n: int, count: int, rng: np.random.Generator) -> Iterator[tuple[Graph, Graph]]:
    """Seeded mix of relabeled copies, degree-preserving perturbations, and
    independent graphs with the same edge count."""
    for k in range(count):
        g = random_graph(n, rng)
        h = apply_vertex_permutation(g, rng.permutation(n))
        kind = k % 3
        if kind == 1:
            h = double_edge_swap(h, rng)
        elif kind == 2:
            iu = np.triu_indices(n, 1)
            pick = rng.choice(len(iu[0]), size=g.m, replace=False)
            h = Graph(n, tuple(zip(iu[0][pick].tolist(), iu[1][pick].tolist())))
        yield g, h


def check_pair(g1: Graph, g2: Graph, tol: float = ZERO_TOL) -> tuple[bool, str | None]:
    """Return ``(oracle decision, mismatch description or None)``."""
    got = is_isomorphic(g1, g2, tol)
    want = oracle_is_isomorphic(g1, g2)
    if got.decision != want.decision:
        return want.decision, f"geometric={got.decision} oracle={want.decision}"
    if got.decision and apply_vertex_permutation(g1, got.witness) != g2:
        return want.decision, f"witness {got.witness.map} is not an isomorphism"
    return want.decision, None


def run_sweep(pairs: Iterable[tuple[Graph, Graph]], tol: float = ZERO_TOL) -> SweepReport:
    rep = SweepReport()
    for g1, g2 in pairs:
        rep.pairs += 1
        iso, problem = check_pair(g1, g2, tol)
        rep.isomorphic += iso
        if problem:
            rep.mismatches.append((g1, g2, problem))
    return rep


def describe_mismatch(g1: Graph, g2: Graph, problem: str) -> str:
    a = serialize_graph(g1).strip().replace("\n", "; ")
    b = serialize_graph(g2).strip().replace("\n", "; ")
    return f"{problem} :: [{a}] vs [{b}]"
