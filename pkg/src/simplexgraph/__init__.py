"""Graph isomorphism, automorphism, subgraph isomorphism and a graph distance,
cast as rigid point-set registration over a simplex embedding."""
from .embedding import PointCloud, embed, embed_digraph, embed_hypergraph, simplex_points
from .graph_model import (
    Digraph,
    Graph,
    Hypergraph,
    VertexMapping,
    apply_vertex_permutation,
    parse_graph,
    serialize_graph,
)
from .isomorphism import (
    IsoResult,
    count_automorphisms,
    has_nontrivial_automorphism,
    is_isomorphic,
    is_subgraph_isomorphic,
    oracle_is_isomorphic,
    verify_isomorphism,
)
from .metrics import GgdResult, ggd, telomorph_distance
from .registration import (
    ZERO_TOL,
    register,
    solve_assignment,
    solve_procrustes,
)

__version__ = "0.1.0"
