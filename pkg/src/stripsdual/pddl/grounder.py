"""Grounding of parsed STRIPS domains into :class:`~stripsdual.core.Task`.

Types restrict the objects a parameter may bind to (the same effect as
compiling them into rigid unary predicates and simplifying those away).
Rigid predicates, which no schema ever adds or deletes, are evaluated in
the initial state and dropped from the atom universe. Optionally, atoms
and actions that are delete-relaxed unreachable are pruned as well.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from ..core import Task, normalize_task
from ..errors import PddlError
from .parser import DomainAst, ProblemAst, check_problem

UNREACHABLE_GOAL = "_unreachable-goal"


@dataclass(frozen=True)
class GroundOptions:
    reachability: bool = True
    remove_rigid: bool = True


@dataclass
class GroundingReport:
    candidates: int = 0
    rigid_blocked: int = 0
    unreachable_actions: int = 0
    pruned_atoms: int = 0
    rigid_predicates: tuple[str, ...] = ()
    degenerate: bool = False
    per_schema: dict = field(default_factory=dict)


def atom_name(pred: str, args) -> str:
    return f"{pred}({','.join(args)})" if args else pred


def _objects_by_type(dom: DomainAst, universe: dict) -> dict:
    cache = {}

    def objs(typ):
        if typ not in cache:
            cache[typ] = [o for o, t in universe.items() if dom.is_subtype(t, typ)]
        return cache[typ]

    return objs


def ground_with_report(
    domain: DomainAst, problem: ProblemAst, opts: GroundOptions = GroundOptions()
) -> tuple[Task, GroundingReport]:
    check_problem(problem, domain)
    report = GroundingReport()
    universe = {**domain.constants, **problem.objects}
    objs = _objects_by_type(domain, universe)

    if opts.remove_rigid:
        changing = {p for a in domain.actions for p, _ in a.add + a.delete}
        rigid = [p for p in domain.predicates if p not in changing]
    else:
        rigid = []
    rigid_set = set(rigid)
    report.rigid_predicates = tuple(rigid)
    init_facts = {(p, tuple(args)) for p, args in problem.init}

    fluent_preds = [p for p in domain.predicates if p not in rigid_set]
    universe_atoms = []
    for pred in fluent_preds:
        domains = [objs(t) for _, t in domain.predicates[pred]]
        for args in itertools.product(*domains):
            universe_atoms.append(atom_name(pred, args))
    known = set(universe_atoms)

    def inst(atom, binding):
        pred, args = atom
        return pred, tuple(binding.get(a, a) for a in args)

    ground_actions = []
    for schema in domain.actions:
        params = schema.parameters
        domains = [objs(t) for _, t in params]
        total = math.prod(len(d) for d in domains)
        report.candidates += total
        rigid_pre = [lit for lit in schema.precondition if lit[0] in rigid_set]
        fluent_pre = [lit for lit in schema.precondition if lit[0] not in rigid_set]
        # check each rigid literal as soon as its last variable is bound
        checks = [[] for _ in params]
        position = {v: i for i, (v, _) in enumerate(params)}
        ground_rigid = []
        for lit in rigid_pre:
            vars_ = [position[a] for a in lit[1] if a.startswith("?")]
            if vars_:
                checks[max(vars_)].append(lit)
            else:
                ground_rigid.append(lit)
        kept = 0
        if all(inst(lit, {}) in init_facts for lit in ground_rigid):
            binding: dict = {}
            for values in _bindings(params, domains, checks, binding, init_facts, inst):
                b = dict(zip((v for v, _ in params), values))
                pre = [atom_name(*inst(lit, b)) for lit in fluent_pre]
                add = [atom_name(*inst(lit, b)) for lit in schema.add]
                dele = [atom_name(*inst(lit, b)) for lit in schema.delete]
                name = atom_name(schema.name, values)
                ground_actions.append((name, pre, add, dele))
                kept += 1
        report.rigid_blocked += total - kept
        report.per_schema[schema.name] = (total, kept)

    # literals whose arguments are looser than the predicate's declared types
    for _, pre, add, dele in ground_actions:
        for name in itertools.chain(pre, add, dele):
            if name not in known:
                known.add(name)
                universe_atoms.append(name)

    init = []
    for pred, args in problem.init:
        if pred not in rigid_set:
            init.append(atom_name(pred, args))
    goal = []
    for pred, args in problem.goal:
        if pred in rigid_set:
            if (pred, tuple(args)) not in init_facts:
                report.degenerate = True
            continue
        name = atom_name(pred, args)
        if name not in known:
            raise PddlError(f"goal atom {name} is not in the grounded universe")
        goal.append(name)

    atoms = universe_atoms
    if opts.reachability:
        reached = set(init)
        live = []
        frontier = list(ground_actions)
        changed = True
        while changed:
            changed = False
            rest = []
            for act in frontier:
                if all(p in reached for p in act[1]):
                    live.append(act)
                    reached.update(act[2])
                    changed = True
                else:
                    rest.append(act)
            frontier = rest
        live_names = {a[0] for a in live}
        keep = reached | set(goal)
        report.unreachable_actions = len(ground_actions) - len(live)
        ground_actions = [
            (n, pre, add, [d for d in dele if d in keep])
            for n, pre, add, dele in ground_actions
            if n in live_names
        ]
        atoms = [a for a in universe_atoms if a in keep]
        report.pruned_atoms = len(universe_atoms) - len(atoms)
    if report.degenerate:
        atoms = atoms + [UNREACHABLE_GOAL]
        goal.append(UNREACHABLE_GOAL)
    task = Task.build(atoms, init, goal, ground_actions)
    return normalize_task(task), report


def _bindings(params, domains, checks, binding, facts, inst):
    """Yield value tuples for ``params`` that satisfy the staged rigid checks."""
    values = []

    def rec(i):
        if i == len(params):
            yield tuple(values)
            return
        var = params[i][0]
        for obj in domains[i]:
            binding[var] = obj
            if all(inst(lit, binding) in facts for lit in checks[i]):
                values.append(obj)
                yield from rec(i + 1)
                values.pop()
        binding.pop(var, None)

    yield from rec(0)


def ground(domain: DomainAst, problem: ProblemAst, opts: GroundOptions = GroundOptions()) -> Task:
    """Ground, simplify rigid facts, optionally prune by reachability, normalize."""
    return ground_with_report(domain, problem, opts)[0]
