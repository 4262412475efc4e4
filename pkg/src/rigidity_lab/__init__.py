"""Spectral toolkit for d-dimensional graph rigidity.

Builds frameworks and their stiffness matrices, certifies lower bounds on
the d-dimensional algebraic connectivity via vertex partitions, constructs
k-regular rigidity-expander families by edge subdivision, and sharpens
bounds by eigenvalue ascent over embeddings.
"""

__version__ = "0.1.0"

from rigidity_lab.graphs import (
    Graph,
    VertexPartition,
    make_complete,
    make_star,
    make_gen_path,
    make_gen_cycle,
    subdivide,
    iterated_subdivision,
    induced_subgraph,
    bipartite_subgraph,
    random_regular_bipartite,
    add_disjoint_matchings,
    balanced_partition,
)
from rigidity_lab.framework import (
    Embedding,
    direction,
    rigidity_matrix,
    stiffness,
    lower_stiffness,
    limit_lower_stiffness,
    simplex_embedding,
    generic_embedding,
    star_embedding,
    is_d_rigid,
)
from rigidity_lab.spectra import (
    INFINITE,
    Spectrum,
    sym_eigenvalues,
    graph_laplacian,
    normalized_laplacian,
    algebraic_connectivity,
    stiffness_gap,
)
from rigidity_lab.bounds import (
    BoundReport,
    partition_bound,
    partition_bound_2d,
    limit_matrix_bound,
    kn_bound,
    subdivision_bound,
    iterated_subdivision_bound,
    star_spectrum_closed_form,
    gen_cycle_connectivity,
    path_connectivity,
    path_bounds,
)
from rigidity_lab.expanders import (
    ExpanderBlueprint,
    build_block_H,
    build_expander,
    build_k_regular,
    certify,
)
from rigidity_lab.ascent import (
    AscentConfig,
    AscentResult,
    gap_gradient,
    finite_difference_gap_gradient,
    maximize_gap,
)
