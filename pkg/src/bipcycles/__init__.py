"""Even cycles in dense subgraphs of random bipartite graphs G(n, n, p)."""

from .cycle_pipeline import (
    CycleCatalog,
    PipelineConfig,
    close_cycle,
    find_all_even_cycles,
)
from .degeneracy import prune_to_min_degree
from .expansion import (
    check_expansion_exact,
    check_expansion_sampled,
    eval_density_union_bound,
    small_set_density_check,
)
from .graph_core import (
    BipartiteGraph,
    CycleRecord,
    PathRecord,
    Side,
    Vertex,
    L,
    R,
    validate_cycle,
    validate_path,
)
from .harness import brute_force_cycle_oracle, run_experiment
from .posa import ExpansionWitness, find_long_path
from .random_model import ModelParams, chernoff_tail, sample_gnnp

__version__ = "0.1.0"

__all__ = [
    "BipartiteGraph",
    "CycleCatalog",
    "CycleRecord",
    "ExpansionWitness",
    "L",
    "ModelParams",
    "PathRecord",
    "PipelineConfig",
    "R",
    "Side",
    "Vertex",
    "brute_force_cycle_oracle",
    "check_expansion_exact",
    "check_expansion_sampled",
    "chernoff_tail",
    "close_cycle",
    "eval_density_union_bound",
    "find_all_even_cycles",
    "find_long_path",
    "prune_to_min_degree",
    "run_experiment",
    "sample_gnnp",
    "small_set_density_check",
    "validate_cycle",
    "validate_path",
]
