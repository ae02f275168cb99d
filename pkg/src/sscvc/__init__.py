"""Simulator and checkers for self-stabilizing clique partition and connected vertex cover."""

from .cmcp import DEFAULT_VARIANT, VARIANTS
from .cvc import LocalProgram, compose_layers
from .engine import (
    DAEMON_KINDS,
    DaemonKind,
    RunResult,
    Trace,
    count_rounds,
    enabled_actions,
    execute_step,
    replay,
    run,
)
from .graph import (
    Graph,
    bfs_distances,
    complete_graph,
    generate_random_connected,
    parse_graph,
    path_graph,
    star_graph,
)
from .state import NodeState, randomize_configuration, zeroed_configuration
from .verifiers import (
    brute_force_optimal_cvc,
    centralized_reference_cmcp,
    check_cmcp_solution,
    check_correct_clique,
    check_cvc_solution,
    is_legitimate_cmcp,
)

__version__ = "0.1.0"
