"""Grounded STRIPS toolkit built around the progression/regression duality."""
from .core import (
    Action,
    AtomTable,
    Plan,
    StateSet,
    Task,
    applicable,
    apply,
    consistent,
    normalize_task,
    regress,
    relevant,
    satisfies_goal,
    useful,
    validate_plan,
)
from .dual import dual_action, dual_plan_to_primal, dual_task

__version__ = "0.1.0"

__all__ = [
    "Action",
    "AtomTable",
    "Plan",
    "StateSet",
    "Task",
    "applicable",
    "apply",
    "consistent",
    "dual_action",
    "dual_plan_to_primal",
    "dual_task",
    "normalize_task",
    "regress",
    "relevant",
    "satisfies_goal",
    "useful",
    "validate_plan",
]
