"""Distance-k graphs: counts, bounds, extremal families and exhaustive search."""

from ._version import __version__
from .bounds import (
    BoundReport,
    DisconnectedGraphError,
    edge_decomposition_check,
    evaluate_bounds,
    interior_refined_bound,
    mantel_k_bound,
    star_bound,
    unaffiliated_bound,
    unaffiliated_midpoint_bound,
)
from .enumeration import (
    CheckpointError,
    EnvelopeError,
    connected_graphs,
    free_trees,
    load_checkpoint,
    read_graph6_stream,
    save_checkpoint,
    write_graph6,
)
from .families import (
    BroomSpec,
    best_broom,
    broom_specs,
    complete,
    cycle,
    double_broom,
    double_broom_count,
    glued_cliques,
    optimal_broom_width,
    path,
    star,
    t_broom,
    t_broom_distance_count,
)
from .graph import (
    UNREACHABLE,
    DistanceMatrix,
    Graph,
    all_pairs_distances,
    canonical_form,
    clique_number,
    diameter,
    distance_k_graph,
    is_isomorphic,
    is_triangle_free,
    k_degree,
    k_distance_count,
    k_isomorphic,
)
from .search import (
    ConjectureReport,
    SearchReport,
    SearchTask,
    compose_disconnected_max,
    max_k_distances,
    verify_k2_bound,
    verify_proved_bounds,
    verify_spanning_tree_lemma,
    verify_star_proposition,
    verify_tree_theorem,
    verify_triangle_free_conjecture,
)
from .structure import (
    LemmaVerdict,
    NoKDistanceError,
    Path,
    RootedTree,
    bfs_tree_containing,
    geodesic,
    interior_vertices,
    longest_tree_path,
    min_unaffiliated,
    spanning_tree_lemma_check,
    split_at_nearest,
    unaffiliated_vertices,
    v_path,
)
