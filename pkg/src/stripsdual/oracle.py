"""Exhaustive ground truth for small tasks, and a seeded task generator.

Everything here works on plain ``frozenset`` objects of atom indices and
re-implements the transition rule on its own, so it remains an
independent check on the bit-vector engine in :mod:`stripsdual.core`.
"""
from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass

from .core import StateSet, Task, normalize_task
from .errors import StructuralError, UniverseTooLarge

MAX_REACHABLE_ATOMS = 20
MAX_FULL_GRAPH_ATOMS = 16


def _fs(s: StateSet) -> frozenset:
    return frozenset(s)


def _to_state(fs, width: int) -> StateSet:
    return StateSet.from_indices(fs, width)


def _actions(task: Task):
    # normalized semantics; raw tasks are read with delete-then-add
    out = []
    for a in task.actions:
        pre, add, dele = _fs(a.pre), _fs(a.add), _fs(a.delete)
        if not task.normalized:
            dele = dele - add
            add = add - pre
        out.append((a.name, pre, add, dele))
    return out


def _guard(task: Task, limit: int) -> None:
    if task.width > limit:
        raise UniverseTooLarge(f"{task.width} atoms exceeds the oracle limit of {limit}")


@dataclass(frozen=True)
class TransitionSystem:
    states: tuple[frozenset, ...]
    transitions: tuple[tuple[frozenset, str, frozenset], ...]
    goal_states: frozenset
    init: frozenset


def transition_system(task: Task) -> TransitionSystem:
    """Materialize every state of 2^X with every transition between them."""
    _guard(task, MAX_REACHABLE_ATOMS)
    acts = _actions(task)
    goal = _fs(task.goal)
    states = tuple(
        frozenset(c)
        for k in range(task.width + 1)
        for c in itertools.combinations(range(task.width), k)
    )
    transitions = tuple(
        (s, name, (s | add) - dele)
        for s in states
        for name, pre, add, dele in acts
        if pre <= s
    )
    return TransitionSystem(
        states, transitions, frozenset(s for s in states if goal <= s), _fs(task.init)
    )


def _reachable_fs(task: Task) -> set:
    _guard(task, MAX_REACHABLE_ATOMS)
    acts = _actions(task)
    start = _fs(task.init)
    seen = {start}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for _, pre, add, dele in acts:
            if pre <= s:
                t = (s | add) - dele
                if t not in seen:
                    seen.add(t)
                    queue.append(t)
    return seen


def enumerate_reachable(task: Task) -> set[StateSet]:
    return {_to_state(s, task.width) for s in _reachable_fs(task)}


def solvable_bruteforce(task: Task) -> bool:
    goal = _fs(task.goal)
    return any(goal <= s for s in _reachable_fs(task))


def shortest_plan_length(task: Task) -> int | None:
    """Length of a shortest path from the initial state to a goal state."""
    _guard(task, MAX_REACHABLE_ATOMS)
    acts = _actions(task)
    goal = _fs(task.goal)
    start = _fs(task.init)
    dist = {start: 0}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        if goal <= s:
            return dist[s]
        for _, pre, add, dele in acts:
            if pre <= s:
                t = (s | add) - dele
                if t not in dist:
                    dist[t] = dist[s] + 1
                    queue.append(t)
    return None


def _goal_reaching_fs(task: Task) -> set:
    _guard(task, MAX_FULL_GRAPH_ATOMS)
    ts = transition_system(task)
    preds: dict = {}
    for s, _, t in ts.transitions:
        preds.setdefault(t, []).append(s)
    found = set(ts.goal_states)
    queue = deque(found)
    while queue:
        t = queue.popleft()
        for s in preds.get(t, ()):
            if s not in found:
                found.add(s)
                queue.append(s)
    return found


def goal_reaching_states(task: Task) -> set[StateSet]:
    """All states of 2^X from which some goal state is reachable."""
    return {_to_state(s, task.width) for s in _goal_reaching_fs(task)}


def solvable_from(task: Task, s: StateSet) -> bool:
    return _fs(s) in _goal_reaching_fs(task)


@dataclass(frozen=True)
class RandomTaskConfig:
    n_atoms: int = 6
    n_actions: int = 6
    max_card: int = 3
    p_init: float = 0.4
    p_goal: float = 0.3
    seed: int = 0

    def __post_init__(self):
        if self.n_atoms < 0 or self.n_actions < 0 or self.max_card < 0:
            raise StructuralError("random task sizes must be non-negative")
        if not (0 <= self.p_init <= 1 and 0 <= self.p_goal <= 1):
            raise StructuralError("probabilities must lie in [0, 1]")


def random_task(config: RandomTaskConfig, *, raw: bool = False) -> Task:
    """Draw a task deterministically from ``config``.

    The result is normalized unless ``raw`` is set. When the goal is not
    empty one action is forced to add a goal atom, which keeps the share
    of solvable instances from collapsing.
    """
    rng = random.Random(config.seed)
    n = config.n_atoms
    atoms = [f"p{i}" for i in range(n)]
    init = [x for x in atoms if rng.random() < config.p_init]
    goal = [x for x in atoms if rng.random() < config.p_goal]
    card = min(config.max_card, n)

    def draw():
        return rng.sample(atoms, rng.randint(0, card))

    actions = []
    for j in range(config.n_actions):
        actions.append([f"a{j}", draw(), draw(), draw()])
    if goal and actions:
        rng.choice(actions)[2].append(rng.choice(goal))
    task = Task.build(atoms, init, goal, [tuple(a) for a in actions])
    return task if raw else normalize_task(task)
