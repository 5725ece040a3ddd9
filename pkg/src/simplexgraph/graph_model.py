"""Graph containers and the edge-list text format.

Vertices are the integers ``0..n-1``. Edges are kept in a canonical order
(each pair as ``(u, v)`` with ``u < v``, list sorted) so that edge columns
of an embedding have a fixed position.

Text format::

    n m          simple graph header
    u v          one line per edge, m lines

    n m d        digraph header, m lines "u v" (arc u -> v)
    n m h        hypergraph header, m lines "k v1 ... vk"
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class GraphFormatError(ValueError):
    """Base class for edge-list parse failures."""


class MalformedHeaderError(GraphFormatError):
    pass


class MalformedLineError(GraphFormatError):
    pass


class EndpointRangeError(GraphFormatError):
    pass


class SelfLoopError(GraphFormatError):
    pass


class DuplicateEdgeError(GraphFormatError):
    pass


class MappingError(ValueError):
    """A vertex mapping is not a valid bijection/injection for its use."""


def _check_endpoints(n: int, verts: Iterable[int]) -> None:
    for v in verts:
        if not 0 <= v < n:
            raise EndpointRangeError(f"vertex {v} out of range for n={n}")


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with a canonical sorted edge list."""

    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        canon = []
        for u, v in self.edges:
            u, v = int(u), int(v)
            _check_endpoints(self.n, (u, v))
            if u == v:
                raise SelfLoopError(f"self-loop at vertex {u}")
            canon.append((u, v) if u < v else (v, u))
        canon.sort()
        for a, b in zip(canon, canon[1:]):
            if a == b:
                raise DuplicateEdgeError(f"duplicate edge {a}")
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.uint8)
        for u, v in self.edges:
            a[u, v] = a[v, u] = 1
        return a

    def edge_array(self) -> np.ndarray:
        """Edges as an ``(m, 2)`` int64 array, in canonical order."""
        return np.array(self.edges, dtype=np.int64).reshape(-1, 2)

    def complement(self) -> "Graph":
        present = set(self.edges)
        return Graph(
            self.n,
            tuple(
                (u, v)
                for u in range(self.n)
                for v in range(u + 1, self.n)
                if (u, v) not in present
            ),
        )

    @classmethod
    def from_bitmask(cls, n: int, mask: int) -> "Graph":
        """Graph whose edges are the set bits of ``mask`` over pairs in lex order."""
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        return cls(n, tuple(p for i, p in enumerate(pairs) if mask >> i & 1))


@dataclass(frozen=True)
class Digraph:
    n: int
    arcs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        arcs = []
        for u, v in self.arcs:
            u, v = int(u), int(v)
            _check_endpoints(self.n, (u, v))
            if u == v:
                raise SelfLoopError(f"self-loop at vertex {u}")
            arcs.append((u, v))
        arcs.sort()
        for a, b in zip(arcs, arcs[1:]):
            if a == b:
                raise DuplicateEdgeError(f"duplicate arc {a}")
        object.__setattr__(self, "arcs", tuple(arcs))

    @property
    def m(self) -> int:
        return len(self.arcs)


@dataclass(frozen=True)
class Hypergraph:
    n: int
    hyperedges: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        out = []
        for he in self.hyperedges:
            members = tuple(sorted({int(v) for v in he}))
            _check_endpoints(self.n, members)
            if len(members) < 2:
                raise MalformedLineError(f"hyperedge {tuple(he)} has fewer than 2 vertices")
            out.append(members)
        out.sort()
        for a, b in zip(out, out[1:]):
            if a == b:
                raise DuplicateEdgeError(f"duplicate hyperedge {a}")
        object.__setattr__(self, "hyperedges", tuple(out))

    @property
    def m(self) -> int:
        return len(self.hyperedges)


@dataclass(frozen=True)
class VertexMapping:
    """``map[i]`` is the image of vertex ``i``.

    Always injective. Used as a bijection for isomorphisms and automorphisms
    and as an injection for subgraph witnesses.
    """

    map: tuple[int, ...]

    def __post_init__(self):
        m = tuple(int(x) for x in self.map)
        if any(x < 0 for x in m) or len(set(m)) != len(m):
            raise MappingError(f"mapping {m} is not injective")
        object.__setattr__(self, "map", m)

    def __len__(self) -> int:
        return len(self.map)

    def __getitem__(self, i: int) -> int:
        return self.map[i]

    def __iter__(self):
        return iter(self.map)

    def is_bijection(self, n: int | None = None) -> bool:
        n = len(self.map) if n is None else n
        return len(self.map) == n and sorted(self.map) == list(range(n))

    def inverse(self) -> "VertexMapping":
        if not self.is_bijection():
            raise MappingError("only bijections can be inverted")
        inv = [0] * len(self.map)
        for i, x in enumerate(self.map):
            inv[x] = i
        return VertexMapping(tuple(inv))

    def compose(self, first: "VertexMapping") -> "VertexMapping":
        """Return ``self o first`` (apply ``first``, then ``self``)."""
        return VertexMapping(tuple(self.map[x] for x in first.map))

    @classmethod
    def identity(cls, n: int) -> "VertexMapping":
        return cls(tuple(range(n)))


def as_mapping(pi: VertexMapping | Sequence[int]) -> VertexMapping:
    return pi if isinstance(pi, VertexMapping) else VertexMapping(tuple(pi))


def as_permutation(pi: VertexMapping | Sequence[int], n: int) -> VertexMapping:
    """Coerce ``pi`` to a mapping and require it to be a bijection on ``0..n-1``."""
    try:
        pi = as_mapping(pi)
    except MappingError:
        raise MappingError(f"{tuple(pi)} is not a permutation of 0..{n - 1}") from None
    if not pi.is_bijection(n):
        raise MappingError(f"{pi.map} is not a permutation of 0..{n - 1}")
    return pi


def apply_vertex_permutation(g: Graph, pi: VertexMapping | Sequence[int]) -> Graph:
    """Relabel ``g`` so that vertex ``i`` becomes ``pi[i]``."""
    pi = as_permutation(pi, g.n)
    return Graph(g.n, tuple((pi[u], pi[v]) for u, v in g.edges))


# --------------------------------------------------------------------------
# text I/O
# --------------------------------------------------------------------------

def _ints(line: str, lineno: int) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise MalformedLineError(f"line {lineno}: non-integer token in {line!r}") from None


def _split(text: str) -> tuple[list[str], list[tuple[int, str]]]:
    rows = [(i + 1, ln) for i, ln in enumerate(text.splitlines()) if ln.strip()]
    if not rows:
        raise MalformedHeaderError("empty input")
    header = rows[0][1].split()
    return header, rows[1:]


def _header(header: list[str]) -> tuple[int, int, str]:
    if len(header) not in (2, 3):
        raise MalformedHeaderError(f"header must be 'n m' or 'n m <flag>', got {' '.join(header)!r}")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise MalformedHeaderError(f"non-integer header {' '.join(header)!r}") from None
    if n < 0 or m < 0:
        raise MalformedHeaderError("negative vertex or edge count")
    flag = header[2] if len(header) == 3 else ""
    if flag not in ("", "d", "h"):
        raise MalformedHeaderError(f"unknown header flag {flag!r}")
    return n, m, flag


def _read(text: str):
    header, body = _split(text)
    n, m, flag = _header(header)
    if len(body) != m:
        raise MalformedHeaderError(f"header declares {m} edges but {len(body)} edge lines follow")
    rows = []
    for lineno, line in body:
        vals = _ints(line, lineno)
        if flag == "h":
            if not vals or vals[0] != len(vals) - 1:
                raise MalformedLineError(f"line {lineno}: expected 'k v1 ... vk'")
            vals = vals[1:]
        elif len(vals) != 2:
            raise MalformedLineError(f"line {lineno}: expected two endpoints")
        _check_endpoints(n, vals)
        rows.append(tuple(vals))
    return n, flag, rows


def parse_any(text: str) -> Graph | Digraph | Hypergraph:
    """Parse any of the three edge-list variants, dispatching on the header flag."""
    n, flag, rows = _read(text)
    if flag == "d":
        return Digraph(n, tuple(rows))
    if flag == "h":
        return Hypergraph(n, tuple(rows))
    return Graph(n, tuple(rows))


def parse_graph(text: str) -> Graph:
    g = parse_any(text)
    if not isinstance(g, Graph):
        raise MalformedHeaderError("expected a simple graph header 'n m'")
    return g


def serialize_graph(g: Graph | Digraph | Hypergraph) -> str:
    if isinstance(g, Graph):
        lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]
    elif isinstance(g, Digraph):
        lines = [f"{g.n} {g.m} d"] + [f"{u} {v}" for u, v in g.arcs]
    else:
        lines = [f"{g.n} {g.m} h"] + [
            " ".join(map(str, (len(he),) + he)) for he in g.hyperedges
        ]
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph | Digraph | Hypergraph:
    with open(path, encoding="utf-8") as fh:
        return parse_any(fh.read())


def all_graphs(n: int) -> Iterable[Graph]:
    """Every labeled simple graph on ``n`` vertices, by edge bitmask."""
    npairs = n * (n - 1) // 2
    for mask in range(1 << npairs):
        yield Graph.from_bitmask(n, mask)
