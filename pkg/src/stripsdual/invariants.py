"""Unary and binary invariant synthesis.

Forward invariants (:class:`MutexSet`) hold in every state reachable from
the initial state. Backward invariants (:class:`BackwardClauseSet`) hold in
every state from which the goal is reachable; they are computed as forward
invariants of the dual task and read back through complementation.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .core import StateSet, Task
from .dual import dual_task
from .errors import NotNormalizedError


@dataclass(frozen=True)
class MutexSet:
    always_false: StateSet
    always_true: StateSet
    pairs: frozenset[tuple[int, int]]


@dataclass(frozen=True)
class BackwardClauseSet:
    clauses: frozenset[tuple[int, int]]
    unary: StateSet


def _relaxed_reachable(task: Task) -> int:
    reached = task.init.bits
    changed = True
    while changed:
        changed = False
        for a in task.actions:
            if not a.pre.bits & ~reached and a.add.bits & ~reached:
                reached |= a.add.bits
                changed = True
    return reached


@lru_cache(maxsize=512)
def mutex_fixpoint(task: Task) -> MutexSet:
    """Compute unary facts, then shrink the candidate mutex pairs to a fixpoint.

    A pair survives only if no action with a consistent precondition can
    make both atoms true together: by adding both, or by adding one while
    the other persists.
    """
    if not task.normalized:
        raise NotNormalizedError("mutex_fixpoint needs a normalized task")
    n = task.width
    full = (1 << n) - 1
    false_bits = full & ~_relaxed_reachable(task)
    deleted = 0
    for a in task.actions:
        deleted |= a.delete.bits
    true_bits = task.init.bits & ~deleted

    init = task.init.bits
    pairs = set()
    for p in range(n):
        if false_bits >> p & 1:
            continue
        for q in range(p + 1, n):
            if false_bits >> q & 1:
                continue
            if init >> p & 1 and init >> q & 1:
                continue
            pairs.add((p, q))

    def consistent(bits: int) -> bool:
        if bits & false_bits:
            return False
        members = [i for i in range(n) if bits >> i & 1]
        for x in range(len(members)):
            for y in range(x + 1, len(members)):
                if (members[x], members[y]) in pairs:
                    return False
        return True

    actions = [(a.pre.bits, a.add.bits, a.delete.bits) for a in task.actions]
    changed = True
    while changed:
        changed = False
        live = [(pre, add, dele) for pre, add, dele in actions if consistent(pre)]
        for p, q in sorted(pairs):
            for pre, add, dele in live:
                if _achieves(p, q, pre, add, dele, consistent) or _achieves(
                    q, p, pre, add, dele, consistent
                ):
                    pairs.discard((p, q))
                    changed = True
                    break
    return MutexSet(StateSet(false_bits, n), StateSet(true_bits, n), frozenset(pairs))


def _achieves(p, q, pre, add, dele, consistent) -> bool:
    if not add >> p & 1:
        return False
    if add >> q & 1:
        return True
    return not dele >> q & 1 and consistent(pre | 1 << q)


def backward_invariants(task: Task) -> BackwardClauseSet:
    """Positive clauses satisfied by every state that can still reach the goal.

    A dual mutex ``{p, q}`` means no regression sub-goal avoids both atoms,
    so every goal-reaching state contains one of them. A dual atom that is
    never true means every goal-reaching state contains it.
    """
    if not task.normalized:
        raise NotNormalizedError("backward_invariants needs a normalized task")
    m = mutex_fixpoint(dual_task(task))
    return BackwardClauseSet(m.pairs, m.always_false)


def violates_backward(s: StateSet, c: BackwardClauseSet) -> bool:
    if not c.unary <= s:
        return True
    bits = s.bits
    return any(not (bits >> p & 1 or bits >> q & 1) for p, q in c.clauses)


def violates_forward(t: StateSet, m: MutexSet) -> bool:
    if not m.always_false.isdisjoint(t):
        return True
    bits = t.bits
    return any(bits >> p & 1 and bits >> q & 1 for p, q in m.pairs)
