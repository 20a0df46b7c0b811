"""The duality mapping on actions, tasks and plans.

The dual of an action swaps its precondition and delete list. The dual of a
task keeps the atoms, uses the complement of the goal as initial state and
the complement of the initial state as goal, and dualizes every action.
Regression on a task is progression on its dual with states complemented,
so the two are solvable together.
"""
from __future__ import annotations

from dataclasses import replace
from typing import Sequence

from .core import Action, Plan, Task
from .errors import NotNormalizedError, StructuralError


def dual_action(a: Action) -> Action:
    return Action(a.name, a.delete, a.add, a.pre)


def dual_task(task: Task) -> Task:
    """Return the dual task; the input must already be normalized.

    Normalization is required rather than applied silently so that
    ``dual_task(dual_task(p)) == p`` holds exactly.
    """
    if not task.normalized:
        raise NotNormalizedError("dual_task needs a normalized task; call normalize_task first")
    return replace(
        task,
        init=task.goal.complement(),
        goal=task.init.complement(),
        actions=tuple(dual_action(a) for a in task.actions),
        dualized=not task.dualized,
    )


def dual_plan_to_primal(plan: Plan | Sequence[str], dual: Task | None = None) -> Plan:
    """Map a progression plan of the dual task to a plan of the primal.

    Dual actions share the primal action names, so this is a reversal.
    When ``dual`` is given every name is checked against it.
    """
    steps = plan.steps if isinstance(plan, Plan) else tuple(plan)
    if dual is not None:
        for name in steps:
            if not dual.has_action(name):
                raise StructuralError(f"unknown action {name!r}")
    return Plan(tuple(reversed(steps)))
