"""Goal-count and delete-relaxation heuristics.

Delete-relaxation kinds are defined for forward search only. Running them
on the dual task gives the precondition-relaxation estimate for
regression on the primal, so no separate code path exists for that.
"""
from __future__ import annotations

import math
from typing import Callable

from ..core import StateSet, Task
from ..errors import SearchConfigError, StructuralError

INF = math.inf

KINDS = ("none", "goal-count", "hadd", "hmax", "relaxed-plan")
RELAXED_KINDS = ("hadd", "hmax", "relaxed-plan")


def _indices(bits: int) -> tuple[int, ...]:
    out, i = [], 0
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return tuple(out)


class RelaxedCosts:
    """Bellman fixpoint of unit-cost atom costs over delete-free actions."""

    def __init__(self, task: Task):
        self.width = task.width
        self.goal = _indices(task.goal.bits)
        self.actions = [(_indices(a.pre.bits), _indices(a.add.bits)) for a in task.actions]

    def costs(self, bits: int, combine) -> tuple[list, list]:
        cost = [INF] * self.width
        supporter = [-1] * self.width
        for i in _indices(bits):
            cost[i] = 0
        changed = True
        while changed:
            changed = False
            for j, (pre, add) in enumerate(self.actions):
                c = combine(cost[i] for i in pre) if pre else 0
                if c == INF:
                    continue
                c += 1
                for p in add:
                    if c < cost[p]:
                        cost[p] = c
                        supporter[p] = j
                        changed = True
        return cost, supporter

    def hadd(self, bits: int):
        cost, _ = self.costs(bits, sum)
        return sum(cost[g] for g in self.goal) if self.goal else 0

    def hmax(self, bits: int):
        cost, _ = self.costs(bits, max)
        return max((cost[g] for g in self.goal), default=0)

    def relaxed_plan(self, bits: int):
        cost, supporter = self.costs(bits, sum)
        if any(cost[g] == INF for g in self.goal):
            return INF
        chosen = set()
        agenda = [g for g in self.goal if cost[g] > 0]
        marked = set(agenda)
        while agenda:
            p = agenda.pop()
            j = supporter[p]
            if j in chosen:
                continue
            chosen.add(j)
            for q in self.actions[j][0]:
                if cost[q] > 0 and q not in marked:
                    marked.add(q)
                    agenda.append(q)
        return len(chosen)


def make_heuristic(kind: str, task: Task, direction: str) -> Callable[[int], float]:
    """Return a function from node bits to an estimate (``INF`` for dead ends)."""
    if kind not in KINDS or kind == "none":
        raise SearchConfigError(f"unknown heuristic {kind!r}")
    if direction not in ("forward", "backward"):
        raise SearchConfigError(f"unknown direction {direction!r}")
    if kind == "goal-count":
        if direction == "forward":
            goal = task.goal.bits
            return lambda bits: bin(goal & ~bits).count("1")
        init = task.init.bits
        return lambda bits: bin(bits & ~init).count("1")
    if direction != "forward":
        raise SearchConfigError(
            f"{kind} is forward-only; dualize the task to relax preconditions instead"
        )
    rc = RelaxedCosts(task)
    return {"hadd": rc.hadd, "hmax": rc.hmax, "relaxed-plan": rc.relaxed_plan}[kind]


def heuristic_value(kind: str, task: Task, node: StateSet, direction: str = "forward"):
    if node.width != task.width:
        raise StructuralError("node width does not match the task")
    return make_heuristic(kind, task, direction)(node.bits)
