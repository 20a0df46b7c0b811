"""Breadth-first and greedy best-first search over a :class:`SearchSpec`."""
from __future__ import annotations

import heapq
import itertools
import time
from collections import Counter, deque
from dataclasses import dataclass, field
from enum import Enum

from ..core import Plan, StateSet, validate_plan
from ..errors import SearchConfigError
from ..invariants import backward_invariants, mutex_fixpoint, violates_backward, violates_forward
from .heuristics import INF, KINDS, make_heuristic
from .spec import SearchSpec

PRUNERS = ("useful", "relevant", "invariants")
STRATEGIES = ("bfs", "gbfs")


class Verdict(str, Enum):
    SOLVED = "plan-found"
    UNSOLVABLE = "unsolvable"
    LIMIT = "limit-hit"


@dataclass(frozen=True)
class SearchConfig:
    strategy: str = "bfs"
    heuristic: str = "none"
    pruners: frozenset = frozenset()
    node_limit: int | None = None
    time_limit: float | None = None
    record_layers: bool = False

    def __post_init__(self):
        object.__setattr__(self, "pruners", frozenset(self.pruners))
        if self.strategy not in STRATEGIES:
            raise SearchConfigError(f"unknown strategy {self.strategy!r}")
        if self.heuristic not in KINDS:
            raise SearchConfigError(f"unknown heuristic {self.heuristic!r}")
        unknown = self.pruners - set(PRUNERS)
        if unknown:
            raise SearchConfigError(f"unknown pruner(s) {', '.join(sorted(unknown))}")
        if self.strategy == "gbfs" and self.heuristic == "none":
            raise SearchConfigError("gbfs needs a heuristic")

    def check_direction(self, direction: str) -> None:
        if direction == "forward" and "relevant" in self.pruners:
            raise SearchConfigError("the relevant pruner applies to backward search only")
        if direction == "backward" and "useful" in self.pruners:
            raise SearchConfigError("the useful pruner applies to forward search only")


@dataclass
class Stats:
    expanded: int = 0
    generated: int = 0
    pruned: Counter = field(default_factory=Counter)
    peak_open: int = 0
    wall_time: float = 0.0

    def lines(self) -> list[str]:
        out = [
            f"expanded={self.expanded}",
            f"generated={self.generated}",
            f"peak_open={self.peak_open}",
        ]
        for reason in ("useful", "relevant", "invariants", "dead-end"):
            out.append(f"pruned_{reason.replace('-', '_')}={self.pruned.get(reason, 0)}")
        out.append(f"wall_time={self.wall_time:.6f}")
        return out


@dataclass
class Outcome:
    verdict: Verdict
    plan: Plan | None = None
    stats: Stats = field(default_factory=Stats)
    layers: list[list[StateSet]] | None = None

    @property
    def solved(self) -> bool:
        return self.verdict is Verdict.SOLVED


class _Limits:
    def __init__(self, config: SearchConfig):
        self.node_limit = config.node_limit
        self.deadline = None if config.time_limit is None else time.monotonic() + config.time_limit

    def hit(self, expanded: int) -> bool:
        if self.node_limit is not None and expanded >= self.node_limit:
            return True
        return self.deadline is not None and time.monotonic() > self.deadline


def _pruner(spec: SearchSpec, config: SearchConfig):
    """Return ``reason_for(parent, action, child)``: a pruning reason or None."""
    config.check_direction(spec.direction)
    task = spec.task
    use_useful = "useful" in config.pruners
    use_relevant = "relevant" in config.pruners
    violates = None
    if "invariants" in config.pruners:
        if spec.direction == "forward":
            clauses = backward_invariants(task)
            violates = lambda s: violates_backward(s, clauses)  # noqa: E731
        else:
            mutexes = mutex_fixpoint(task)
            violates = lambda t: violates_forward(t, mutexes)  # noqa: E731

    def reason_for(parent, action, child):
        if use_useful and action.add <= parent:
            return "useful"
        if use_relevant and action.add.isdisjoint(parent):
            return "relevant"
        if violates is not None and violates(child):
            return "invariants"
        return None

    return reason_for, violates


def _extract(parents: dict, node: StateSet, direction: str) -> Plan:
    steps = []
    while parents[node] is not None:
        node, name = parents[node]
        steps.append(name)
    # walking back from node yields regression order for backward search
    if direction == "forward":
        steps.reverse()
    return Plan(tuple(steps))


def _finish(spec, outcome: Outcome, started: float) -> Outcome:
    outcome.stats.wall_time = time.perf_counter() - started
    if outcome.plan is not None:
        validate_plan(spec.task, outcome.plan)
    return outcome


def bfs_solve(spec: SearchSpec, config: SearchConfig = SearchConfig()) -> Outcome:
    """Breadth-first search; returns a plan with the fewest steps.

    ``stats.expanded`` counts nodes taken off the queue and target-tested,
    including the target node itself.
    """
    started = time.perf_counter()
    reason_for, violates = _pruner(spec, config)
    limits = _Limits(config)
    stats = Stats()
    layers = [] if config.record_layers else None
    start = spec.start()
    if violates is not None and violates(start):
        stats.pruned["invariants"] += 1
        return _finish(spec, Outcome(Verdict.UNSOLVABLE, stats=stats, layers=layers), started)
    parents = {start: None}
    depth = {start: 0}
    queue = deque([start])
    stats.peak_open = 1
    while queue:
        if limits.hit(stats.expanded):
            return _finish(spec, Outcome(Verdict.LIMIT, stats=stats, layers=layers), started)
        t = queue.popleft()
        stats.expanded += 1
        if layers is not None:
            d = depth[t]
            if d == len(layers):
                layers.append([])
            layers[d].append(t)
        if spec.is_target(t):
            plan = _extract(parents, t, spec.direction)
            return _finish(spec, Outcome(Verdict.SOLVED, plan, stats, layers), started)
        for action, child in spec.succ(t):
            reason = reason_for(t, action, child)
            if reason is not None:
                stats.pruned[reason] += 1
                continue
            stats.generated += 1
            if child in parents:
                continue
            parents[child] = (t, action.name)
            depth[child] = depth[t] + 1
            queue.append(child)
        stats.peak_open = max(stats.peak_open, len(queue))
    return _finish(spec, Outcome(Verdict.UNSOLVABLE, stats=stats, layers=layers), started)


def gbfs_solve(spec: SearchSpec, config: SearchConfig) -> Outcome:
    """Greedy best-first search; FIFO among equal heuristic values.

    Nodes with an infinite estimate are dropped, which keeps the search
    complete because such nodes cannot reach a target.
    """
    if config.heuristic == "none":
        raise SearchConfigError("gbfs needs a heuristic")
    started = time.perf_counter()
    reason_for, violates = _pruner(spec, config)
    h = make_heuristic(config.heuristic, spec.task, spec.direction)
    limits = _Limits(config)
    stats = Stats()
    layers = [] if config.record_layers else None
    start = spec.start()
    if violates is not None and violates(start):
        stats.pruned["invariants"] += 1
        return _finish(spec, Outcome(Verdict.UNSOLVABLE, stats=stats, layers=layers), started)
    h0 = h(start.bits)
    if h0 == INF and not spec.is_target(start):
        stats.pruned["dead-end"] += 1
        return _finish(spec, Outcome(Verdict.UNSOLVABLE, stats=stats, layers=layers), started)
    counter = itertools.count()
    parents = {start: None}
    heap = [(h0, next(counter), start)]
    stats.peak_open = 1
    while heap:
        if limits.hit(stats.expanded):
            return _finish(spec, Outcome(Verdict.LIMIT, stats=stats, layers=layers), started)
        _, _, t = heapq.heappop(heap)
        stats.expanded += 1
        if layers is not None:
            layers.append([t])
        if spec.is_target(t):
            plan = _extract(parents, t, spec.direction)
            return _finish(spec, Outcome(Verdict.SOLVED, plan, stats, layers), started)
        for action, child in spec.succ(t):
            reason = reason_for(t, action, child)
            if reason is not None:
                stats.pruned[reason] += 1
                continue
            stats.generated += 1
            if child in parents:
                continue
            hc = h(child.bits)
            if hc == INF:
                stats.pruned["dead-end"] += 1
                parents[child] = (t, action.name)
                continue
            parents[child] = (t, action.name)
            heapq.heappush(heap, (hc, next(counter), child))
        stats.peak_open = max(stats.peak_open, len(heap))
    return _finish(spec, Outcome(Verdict.UNSOLVABLE, stats=stats, layers=layers), started)


def solve(spec: SearchSpec, config: SearchConfig) -> Outcome:
    if config.strategy == "bfs":
        return bfs_solve(spec, config)
    return gbfs_solve(spec, config)
