"""Path planning among movable obstacles: exact grid search, oracle, and hybrid-state planner."""

from .grid import (
    ActionStep,
    GridMap,
    Instance,
    InstanceError,
    MapParseError,
    ReplayError,
    WorldState,
    actions_from_string,
    actions_to_string,
    dump_instance,
    generate_instance,
    load_instance,
    parse_map,
    read_map,
    replay,
    state_key,
    successors,
)
from .oracle import OracleConfig, OracleLimitExceeded, oracle_pareto, oracle_rc
from .search import (
    FrontierSet,
    Limits,
    PamoSearch,
    SearchResult,
    backward_dijkstra,
    dominates,
    heuristic,
    solve_mo,
    solve_rc,
)

__version__ = "0.1.0"
