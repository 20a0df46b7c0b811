"""Progression and regression search with pluggable heuristics and pruning."""
from .engine import (
    PRUNERS,
    STRATEGIES,
    Outcome,
    SearchConfig,
    Stats,
    Verdict,
    bfs_solve,
    gbfs_solve,
    solve,
)
from .heuristics import INF, KINDS, heuristic_value, make_heuristic
from .spec import DIRECTIONS, SearchSpec, make_search_spec

__all__ = [
    "DIRECTIONS",
    "INF",
    "KINDS",
    "PRUNERS",
    "STRATEGIES",
    "Outcome",
    "SearchConfig",
    "SearchSpec",
    "Stats",
    "Verdict",
    "bfs_solve",
    "gbfs_solve",
    "heuristic_value",
    "make_heuristic",
    "make_search_spec",
    "solve",
]
