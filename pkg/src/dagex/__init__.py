"""dagex: extender / shallowing analysis toolkit for directed acyclic graphs."""

from .dag import (
    Dag,
    DegreeStats,
    codepth,
    degree_stats,
    graph_depth,
    induced_subgraph,
    is_acyclic,
    topological_relabel,
)
from .depthfn import (
    DepthParams,
    delta_prime,
    delta_s,
    enumerate_depth_functions,
    extract_depth_set,
    is_depth_function,
    is_eps_rho_depth_function,
)
from .errors import BudgetError, DagexError, EmptyResultError, GraphError, ParseError
from .extender import (
    ExtenderParams,
    ExtenderVerdict,
    decide_extender_bruteforce,
    decreasing_label_mass,
    min_codepth_attack,
    window_entropy_profile,
)
from .laws import (
    FiniteLaw,
    binary_entropy,
    exceedance_probability,
    kl_divergence,
    mixture,
    pinsker_gap,
    shannon_entropy,
)
from .randgraph import (
    CleanupConfig,
    GndConfig,
    IotaParams,
    backward_mass,
    cleanup_to_hn,
    generate_gnd,
    iota_pmf,
    sample_jn,
    sample_jn_prime,
)
from .shallow import build_separator, pigeonhole_scale, verify_shallowing

__all__ = [name for name in dir() if not name.startswith("_")]
