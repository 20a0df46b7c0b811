"""Emit a grounded task as a parameter-free STRIPS PDDL domain/problem pair.

Every atom becomes a zero-ary predicate and every action a zero-parameter
schema, so grounding the output again (without rigid simplification or
reachability pruning) reproduces the task atom for atom. Names are
escaped into PDDL identifiers reversibly; see :func:`mangle`.
"""
from __future__ import annotations

from ..core import Task
from .parser import UNSUPPORTED_CONNECTIVES

_ESCAPES = {"_": "__", "(": "_o", ")": "_c", ",": "_k"}
_UNESCAPES = {v[1]: k for k, v in _ESCAPES.items()}
_PREFIX = "x_d"
_RESERVED = UNSUPPORTED_CONNECTIVES | {"and", "define", "either", "object"}


def mangle(name: str) -> str:
    body = "".join(_ESCAPES.get(ch, ch) for ch in name)
    if not body[:1].isalpha() or body in _RESERVED:
        body = _PREFIX + body
    return body


def demangle(ident: str) -> str:
    if ident.startswith(_PREFIX):
        ident = ident[len(_PREFIX):]
    out, i = [], 0
    while i < len(ident):
        ch = ident[i]
        if ch == "_" and i + 1 < len(ident):
            out.append(_UNESCAPES[ident[i + 1]])
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def _conj(names):
    if not names:
        return "(and)"
    return "(and " + " ".join(f"({mangle(n)})" for n in names) + ")"


def write_pddl(task: Task, name: str = "grounded") -> tuple[str, str]:
    """Return ``(domain_text, problem_text)`` for ``task``.

    PDDL reads effects delete-first; that matches the add-then-delete reading
    on normalized tasks, which is what callers are expected to pass.
    """
    preds = "\n".join(f"    ({mangle(a)})" for a in task.atoms.names)
    lines = [
        f"(define (domain {name})",
        "  (:requirements :strips)",
        "  (:predicates" + ("\n" + preds if preds else "") + ")",
    ]
    for a in task.actions:
        effects = [f"({mangle(n)})" for n in task.names(a.add)]
        effects += [f"(not ({mangle(n)}))" for n in task.names(a.delete)]
        lines += [
            f"  (:action {mangle(a.name)}",
            "    :parameters ()",
            f"    :precondition {_conj(task.names(a.pre))}",
            f"    :effect (and{''.join(' ' + e for e in effects)}))",
        ]
    domain = "\n".join(lines) + ")\n"
    init = " ".join(f"({mangle(n)})" for n in task.names(task.init))
    problem = (
        f"(define (problem {name}-problem)\n"
        f"  (:domain {name})\n"
        f"  (:init{' ' + init if init else ''})\n"
        f"  (:goal {_conj(task.names(task.goal))}))\n"
    )
    return domain, problem


def demangle_task(task: Task) -> Task:
    """Undo :func:`mangle` on every atom and action name of a re-ingested task."""
    return Task.build(
        [demangle(a) for a in task.atoms.names],
        [demangle(a) for a in task.names(task.init)],
        [demangle(a) for a in task.names(task.goal)],
        [
            (
                demangle(a.name),
                [demangle(x) for x in task.names(a.pre)],
                [demangle(x) for x in task.names(a.add)],
                [demangle(x) for x in task.names(a.delete)],
            )
            for a in task.actions
        ],
        normalized=task.normalized,
        dualized=task.dualized,
    )
