"""The three search entry points, instantiated for progression and regression."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..core import Action, StateSet, Task, apply, regress
from ..errors import NotNormalizedError, SearchConfigError

DIRECTIONS = ("forward", "backward")


@dataclass(frozen=True)
class SearchSpec:
    direction: str
    task: Task
    start: Callable[[], StateSet]
    is_target: Callable[[StateSet], bool]
    succ: Callable[[StateSet], list[tuple[Action, StateSet]]]


def make_search_spec(task: Task, direction: str) -> SearchSpec:
    """Build start/is_target/succ for ``direction``.

    Forward search starts at the initial state, stops on a goal state and
    expands applicable actions. Backward search starts at the goal, stops on
    a sub-goal contained in the initial state and regresses over consistent
    actions. Successors follow the task's action order.
    """
    if not task.normalized:
        raise NotNormalizedError("search needs a normalized task")
    actions = task.actions
    if direction == "forward":
        goal = task.goal

        def succ(t: StateSet):
            return [(a, apply(t, a)) for a in actions if a.pre <= t]

        return SearchSpec(direction, task, lambda: task.init, lambda t: goal <= t, succ)
    if direction == "backward":
        init = task.init

        def succ(t: StateSet):
            return [(a, regress(t, a)) for a in actions if a.delete.isdisjoint(t)]

        return SearchSpec(direction, task, lambda: task.goal, lambda t: t <= init, succ)
    raise SearchConfigError(f"unknown direction {direction!r}")
