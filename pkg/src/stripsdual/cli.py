"""Command line entry point: ground, dualize, solve, validate, invariants, check.

Exit codes: 0 success, 1 unsolvable / invalid plan / counterexample,
2 resource limit, 3 input error. Paths may be ``-`` for stdin/stdout.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import checks
from .core import normalize_task, validate_plan
from .dual import dual_task
from .errors import PlanError, StripsError
from .invariants import backward_invariants, mutex_fixpoint
from .pddl import (
    GroundOptions,
    format_plan,
    ground,
    parse_domain,
    parse_plan,
    parse_problem,
    read_gtf,
    write_gtf,
    write_pddl,
)
from .search import KINDS, PRUNERS, SearchConfig, Verdict, make_search_spec, solve

EXIT_OK, EXIT_FAIL, EXIT_LIMIT, EXIT_INPUT = 0, 1, 2, 3

DEFAULTS = {
    "forward": ("relaxed-plan", "useful,invariants"),
    "backward": ("goal-count", "relevant,invariants"),
}


class InputError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _load_task(path: str):
    # inputs follow IPC delete-then-add semantics; normalizing makes that explicit
    return normalize_task(read_gtf(_read(path)))


def cmd_ground(args) -> int:
    domain = parse_domain(_read(args.domain))
    problem = parse_problem(_read(args.problem), domain)
    opts = GroundOptions(reachability=not args.no_reachability_prune, remove_rigid=not args.keep_rigid)
    _write(args.output, write_gtf(ground(domain, problem, opts)))
    return EXIT_OK


def cmd_dualize(args) -> int:
    dual = dual_task(_load_task(args.task))
    _write(args.output, write_gtf(dual))
    if args.emit_pddl:
        out = Path(args.emit_pddl)
        out.mkdir(parents=True, exist_ok=True)
        dom, prob = write_pddl(dual, name="dual")
        (out / "domain.pddl").write_text(dom, encoding="utf-8")
        (out / "problem.pddl").write_text(prob, encoding="utf-8")
    return EXIT_OK


def _pruners(text: str) -> frozenset:
    if text.strip() in ("", "none"):
        return frozenset()
    return frozenset(p.strip() for p in text.split(",") if p.strip())


def cmd_solve(args) -> int:
    task = _load_task(args.task)
    heuristic, prune = DEFAULTS[args.direction]
    if args.heuristic is not None:
        heuristic = args.heuristic
    if args.prune is not None:
        prune = args.prune
    if args.strategy == "bfs":
        heuristic = "none"
    config = SearchConfig(
        strategy=args.strategy,
        heuristic=heuristic,
        pruners=_pruners(prune),
        node_limit=args.node_limit,
        time_limit=args.time_limit,
    )
    outcome = solve(make_search_spec(task, args.direction), config)
    print(f"verdict={outcome.verdict.value}")
    for line in outcome.stats.lines():
        print(line)
    if outcome.solved:
        print(f"plan_length={len(outcome.plan)}")
        text = format_plan(outcome.plan)
        if args.output:
            _write(args.output, text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    return EXIT_LIMIT if outcome.verdict is Verdict.LIMIT else EXIT_FAIL


def cmd_validate(args) -> int:
    task = read_gtf(_read(args.task))
    plan = parse_plan(_read(args.plan))
    try:
        trace = validate_plan(task, plan)
    except PlanError as e:
        print(f"invalid: {e}")
        return EXIT_FAIL
    print(f"valid: {len(plan)} step(s), final state {' '.join(task.names(trace[-1]))}".rstrip())
    return EXIT_OK


def cmd_invariants(args) -> int:
    task = _load_task(args.task)
    names = task.atoms.names
    if args.direction == "forward":
        m = mutex_fixpoint(task)
        for i in m.always_false:
            print(f"always-false {names[i]}")
        for i in m.always_true:
            print(f"always-true {names[i]}")
        for p, q in sorted(m.pairs):
            print(f"mutex {names[p]} {names[q]}")
    else:
        c = backward_invariants(task)
        for i in c.unary:
            print(f"always-true {names[i]}")
        for p, q in sorted(c.clauses):
            print(f"clause {names[p]} {names[q]}")
    return EXIT_OK


def cmd_check(args) -> int:
    results = checks.run_battery(args.suite, args.random, args.atoms, args.actions, args.seed)
    status = EXIT_OK
    out_dir = Path(args.out_dir)
    for r in results:
        print(r.line())
        for seed, task, msg in r.failures:
            status = EXIT_FAIL
            path = out_dir / f"counterexample-{r.name}-{seed}.gtf"
            out_dir.mkdir(parents=True, exist_ok=True)
            path.write_text(write_gtf(task), encoding="utf-8")
            print(f"  seed {seed}: {msg} (written to {path})")
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stripsdual", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ground", help="ground a STRIPS PDDL domain/problem into GTF")
    p.add_argument("-d", "--domain", required=True)
    p.add_argument("-p", "--problem", required=True)
    p.add_argument("-o", "--output")
    p.add_argument("--no-reachability-prune", action="store_true")
    p.add_argument("--keep-rigid", action="store_true", help="do not simplify away rigid predicates")
    p.set_defaults(func=cmd_ground)

    p = sub.add_parser("dualize", help="write the dual of a grounded task")
    p.add_argument("task")
    p.add_argument("-o", "--output")
    p.add_argument("--emit-pddl", metavar="DIR")
    p.set_defaults(func=cmd_dualize)

    p = sub.add_parser("solve", help="search for a plan")
    p.add_argument("task")
    p.add_argument("--direction", choices=("forward", "backward"), default="forward")
    p.add_argument("--strategy", choices=("bfs", "gbfs"), default="gbfs")
    p.add_argument("--heuristic", choices=[k for k in KINDS if k != "none"])
    p.add_argument("--prune", help=f"comma list from {','.join(PRUNERS)}, or none")
    p.add_argument("--time-limit", type=float)
    p.add_argument("--node-limit", type=int)
    p.add_argument("-o", "--output", help="plan file (default: stdout)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("validate", help="check a plan against a task")
    p.add_argument("task")
    p.add_argument("plan")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("invariants", help="print synthesized invariants")
    p.add_argument("task")
    p.add_argument("--direction", choices=("forward", "backward"), default="forward")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("check", help="run the oracle property battery")
    p.add_argument("--random", type=int, default=100)
    p.add_argument("--atoms", type=int, default=6)
    p.add_argument("--actions", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--suite", choices=("duality", "pruning", "all"), default="all")
    p.add_argument("--out-dir", default=".", help="where counterexample GTF files go")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (StripsError, InputError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


dispatch = main


if __name__ == "__main__":
    sys.exit(main())
