"""Property battery run against the exhaustive oracle on seeded random tasks.

Each suite returns a :class:`SuiteResult`; failing tasks are kept so the CLI
can write them out as counterexamples.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import oracle
from .core import StateSet, Task, apply, normalize_action, regress, validate_plan
from .dual import dual_plan_to_primal, dual_task
from .errors import PlanError
from .invariants import backward_invariants, mutex_fixpoint, violates_backward
from .oracle import RandomTaskConfig, random_task
from .pddl import GroundOptions, ground, parse_domain, parse_problem, read_gtf, write_gtf, write_pddl
from .pddl.writer import demangle_task
from .search import SearchConfig, Verdict, bfs_solve, gbfs_solve, make_search_spec

RELAXED = ("hadd", "hmax", "relaxed-plan")


@dataclass
class SuiteResult:
    name: str
    total: int = 0
    failures: list = field(default_factory=list)
    verb: str = "agree"

    @property
    def passed(self) -> int:
        return self.total - len({seed for seed, _, _ in self.failures})

    @property
    def ok(self) -> bool:
        return not self.failures

    def line(self) -> str:
        return f"{self.name}: {self.passed}/{self.total} {self.verb}"


def task_seed(seed: int, i: int) -> int:
    return seed * 1_000_003 + i


def random_tasks(count, atoms, actions, seed, *, vary=False, raw=False, max_card=3):
    """Yield ``(seed, task)`` pairs; with ``vary`` sizes are drawn up to the bounds."""
    for i in range(count):
        s = task_seed(seed, i)
        n, m = atoms, actions
        if vary:
            n, m = s % (atoms + 1), (s // (atoms + 1)) % (actions + 1)
        yield s, random_task(
            RandomTaskConfig(n_atoms=n, n_actions=m, max_card=max_card, seed=s), raw=raw
        )


def _run(name, tasks, check: Callable[[Task], Iterable[str]], verb="agree") -> SuiteResult:
    result = SuiteResult(name, verb=verb)
    for seed, task in tasks:
        result.total += 1
        for msg in check(task):
            result.failures.append((seed, task, msg))
    return result


def _subsets(items):
    items = tuple(items)
    return [frozenset(c) for k in range(len(items) + 1) for c in itertools.combinations(items, k)]


def _all_states(width):
    return [StateSet(b, width) for b in range(1 << width)]


# duality -------------------------------------------------------------------

def check_duality(task):
    primal, dual = oracle.solvable_bruteforce(task), oracle.solvable_bruteforce(dual_task(task))
    if primal != dual:
        yield f"primal solvable={primal} but dual solvable={dual}"


def check_equations(task):
    d = dual_task(task)
    back, fwd = make_search_spec(task, "backward"), make_search_spec(d, "forward")
    if back.start() != fwd.start().complement():
        yield "start equation fails"
    for t in _all_states(task.width):
        ct = t.complement()
        if back.is_target(t) != fwd.is_target(ct):
            yield f"is_target equation fails at {sorted(t)}"
        re_succ = back.succ(t)
        pr_succ = fwd.succ(ct)
        if {s for _, s in re_succ} != {s.complement() for _, s in pr_succ}:
            yield f"succ equation fails at {sorted(t)}"
        elif [(a.name, s) for a, s in re_succ] != [(a.name, s.complement()) for a, s in pr_succ]:
            yield f"succ action pairing differs at {sorted(t)}"


def check_involution(task):
    back = dual_task(dual_task(task))
    for f in ("atoms", "init", "goal", "actions", "normalized", "dualized"):
        if getattr(back, f) != getattr(task, f):
            yield f"field {f} changed under double dualization"


def check_trace(task):
    cfg = SearchConfig(record_layers=True)
    back = bfs_solve(make_search_spec(task, "backward"), cfg)
    fwd = bfs_solve(make_search_spec(dual_task(task), "forward"), cfg)
    if back.verdict != fwd.verdict:
        yield f"verdicts differ: {back.verdict.value} vs {fwd.verdict.value}"
    flipped = [[s.complement() for s in layer] for layer in fwd.layers]
    if back.layers != flipped:
        yield "expansion layers are not complement-identical"


def check_transfer(task):
    if not oracle.solvable_bruteforce(task):
        return
    out = bfs_solve(make_search_spec(dual_task(task), "forward"))
    if not out.solved:
        yield "dual forward search found no plan on a solvable task"
        return
    try:
        validate_plan(task, dual_plan_to_primal(out.plan))
    except PlanError as e:
        yield f"transferred plan invalid: {e}"


# normalization --------------------------------------------------------------

def check_normalization(raw):
    n = raw.width
    for a in raw.actions:
        na = normalize_action(a)
        for s in _all_states(n):
            if not a.pre <= s:
                continue
            ipc = (s - a.delete) | a.add
            if apply(s, na) != ipc:
                yield f"{a.name}: normalized result differs at {sorted(s)}"
                break


def check_regression_contract(task):
    states = _all_states(task.width)
    for a in task.actions:
        for t in states:
            if not a.delete.isdisjoint(t):
                continue
            r = regress(t, a)
            for s in states:
                if r <= s and not (a.pre <= s and t <= apply(s, a)):
                    yield f"{a.name}: regression contract fails at t={sorted(t)} s={sorted(s)}"
                    return


# engines / pruning ----------------------------------------------------------

def engine_configs():
    """Every (direction, SearchConfig) combination the engine supports."""
    out = []
    for pr in _subsets(("useful", "invariants")):
        out.append(("forward", SearchConfig("bfs", pruners=pr)))
        for h in ("goal-count",) + RELAXED:
            out.append(("forward", SearchConfig("gbfs", h, pr)))
    for pr in _subsets(("relevant", "invariants")):
        out.append(("backward", SearchConfig("bfs", pruners=pr)))
        out.append(("backward", SearchConfig("gbfs", "goal-count", pr)))
    return out


_CONFIGS = engine_configs()


def check_engines(task):
    expected = oracle.solvable_bruteforce(task)
    shortest = oracle.shortest_plan_length(task)
    for direction, cfg in _CONFIGS:
        spec = make_search_spec(task, direction)
        out = (bfs_solve if cfg.strategy == "bfs" else gbfs_solve)(spec, cfg)
        label = f"{direction} {cfg.strategy} {cfg.heuristic} {'+'.join(sorted(cfg.pruners)) or 'none'}"
        if out.verdict is Verdict.LIMIT or out.solved != expected:
            yield f"{label}: verdict {out.verdict.value}, oracle solvable={expected}"
            continue
        if out.solved:
            try:
                validate_plan(task, out.plan)
            except PlanError as e:
                yield f"{label}: invalid plan {e}"
            if cfg.strategy == "bfs" and not cfg.pruners and len(out.plan) != shortest:
                yield f"{label}: plan length {len(out.plan)} but shortest is {shortest}"


def check_bfs_pruning_monotone(task):
    for direction, names in (("forward", ("useful", "invariants")), ("backward", ("relevant", "invariants"))):
        spec = make_search_spec(task, direction)
        base = bfs_solve(spec)
        for pr in _subsets(names)[1:]:
            out = bfs_solve(spec, SearchConfig(pruners=pr))
            if out.verdict != base.verdict:
                yield f"{direction} {'+'.join(sorted(pr))}: verdict changed"
            if out.stats.expanded > base.stats.expanded:
                yield (
                    f"{direction} {'+'.join(sorted(pr))}: expanded {out.stats.expanded}"
                    f" > {base.stats.expanded} without pruning"
                )


def check_invariants(task):
    m = mutex_fixpoint(task)
    reachable = oracle.enumerate_reachable(task)
    for s in reachable:
        if not m.always_false.isdisjoint(s):
            yield f"always-false atom true in reachable state {sorted(s)}"
        if not m.always_true <= s:
            yield f"always-true atom false in reachable state {sorted(s)}"
        for p, q in m.pairs:
            if p in s and q in s:
                yield f"mutex ({p},{q}) violated in reachable state {sorted(s)}"
    c = backward_invariants(task)
    for s in oracle.goal_reaching_states(task):
        if violates_backward(s, c):
            yield f"goal-reaching state {sorted(s)} violates the backward invariants"


# round trips ----------------------------------------------------------------

def check_gtf_roundtrip(task):
    text = write_gtf(task)
    back = read_gtf(text)
    if back != task:
        yield "GTF round trip changed the task"
    elif write_gtf(back) != text:
        yield "GTF text not reproduced"


def pddl_roundtrip(task: Task) -> Task:
    dom, prob = write_pddl(task)
    d = parse_domain(dom)
    again = ground(d, parse_problem(prob, d), GroundOptions(reachability=False, remove_rigid=False))
    return demangle_task(again)


def check_pddl_roundtrip(task):
    back = pddl_roundtrip(task)
    for f in ("atoms", "init", "goal", "actions"):
        if getattr(back, f) != getattr(task, f):
            yield f"PDDL round trip changed {f}"


# drivers --------------------------------------------------------------------

SUITES = {
    "duality": [
        ("duality", check_duality, "agree"),
        ("equations", check_equations, "hold"),
        ("involution", check_involution, "hold"),
        ("trace", check_trace, "agree"),
        ("transfer", check_transfer, "hold"),
    ],
    "pruning": [
        ("engines", check_engines, "agree"),
        ("invariants", check_invariants, "sound"),
    ],
    "semantics": [
        ("regression", check_regression_contract, "hold"),
        ("gtf", check_gtf_roundtrip, "lossless"),
        ("pddl", check_pddl_roundtrip, "lossless"),
    ],
}


def run_battery(suite: str, count: int, atoms: int, actions: int, seed: int) -> list[SuiteResult]:
    groups = list(SUITES) if suite == "all" else [suite]
    results = []
    for g in groups:
        for name, fn, verb in SUITES[g]:
            tasks = random_tasks(count, atoms, actions, seed)
            results.append(_run(name, tasks, fn, verb))
    if suite == "all":
        raw = random_tasks(count, atoms, actions, seed, raw=True)
        results.append(_run("normalization", raw, check_normalization, "hold"))
    return results
