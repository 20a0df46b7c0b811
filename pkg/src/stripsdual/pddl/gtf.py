"""GTF, the line-oriented grounded task format, and plan files.

Layout::

    gtf 1
    atoms: <n>
    <one atom name per line>
    init:
    <space-separated atom names, possibly empty>
    goal:
    <space-separated atom names, possibly empty>
    actions: <m>
    action <name>
    pre: <atoms>
    add: <atoms>
    del: <atoms>
    flags: normalized dualized        (optional)
"""
from __future__ import annotations

import re

from ..core import Action, AtomTable, Plan, Task
from ..errors import GtfError, StructuralError

VERSION = "1"
NAME_RE = re.compile(r"^[a-z0-9_()\-,]+$")
FLAGS = ("normalized", "dualized")


def write_gtf(task: Task) -> str:
    names = task.atoms.names
    lines = [f"gtf {VERSION}", f"atoms: {len(names)}", *names]
    lines += ["init:", " ".join(task.names(task.init))]
    lines += ["goal:", " ".join(task.names(task.goal))]
    lines.append(f"actions: {len(task.actions)}")
    for a in task.actions:
        lines.append(f"action {a.name}")
        for key, s in (("pre", a.pre), ("add", a.add), ("del", a.delete)):
            lines.append(f"{key}: {' '.join(task.names(s))}".rstrip())
    flags = [f for f in FLAGS if getattr(task, f)]
    if flags:
        lines.append("flags: " + " ".join(flags))
    return "\n".join(lines) + "\n"


class _Lines:
    def __init__(self, text):
        self.lines = text.splitlines()
        self.i = 0

    def next(self, what) -> str:
        if self.i >= len(self.lines):
            raise GtfError(f"unexpected end of file, expected {what}", self.i + 1)
        self.i += 1
        return self.lines[self.i - 1]

    @property
    def lineno(self):
        return self.i

    def done(self):
        return all(not ln.strip() for ln in self.lines[self.i:])


def _keyed(lines: _Lines, key: str) -> str:
    line = lines.next(f"'{key}:'")
    prefix = key + ":"
    if not line.startswith(prefix):
        raise GtfError(f"expected '{prefix}', got {line!r}", lines.lineno)
    return line[len(prefix):].strip()


def _count(lines: _Lines, key: str) -> int:
    value = _keyed(lines, key)
    if not value.isdigit():
        raise GtfError(f"'{key}:' needs a non-negative count", lines.lineno)
    return int(value)


def _atoms_line(lines: _Lines, key: str, table: AtomTable, inline: bool):
    value = _keyed(lines, key)
    if not inline and not value:
        value = lines.next(f"{key} atom line").strip()
    try:
        return table.state(value.split())
    except StructuralError as e:
        raise GtfError(str(e), lines.lineno) from None


def read_gtf(text: str) -> Task:
    lines = _Lines(text)
    header = lines.next("header").split()
    if len(header) != 2 or header[0] != "gtf":
        raise GtfError("missing 'gtf <version>' header", 1)
    if header[1] != VERSION:
        raise GtfError(f"unsupported GTF version {header[1]} (expected {VERSION})", 1)
    n = _count(lines, "atoms")
    names = []
    for _ in range(n):
        name = lines.next("atom name").strip()
        if not NAME_RE.match(name):
            raise GtfError(f"bad atom name {name!r} (atom count may be wrong)", lines.lineno)
        names.append(name)
    try:
        table = AtomTable(tuple(names))
    except StructuralError as e:
        raise GtfError(str(e)) from None
    init = _atoms_line(lines, "init", table, inline=False)
    goal = _atoms_line(lines, "goal", table, inline=False)
    m = _count(lines, "actions")
    actions = []
    seen = set()
    for _ in range(m):
        line = lines.next("action header")
        if not line.startswith("action "):
            raise GtfError(f"expected 'action <name>', got {line!r}", lines.lineno)
        name = line[len("action "):].strip()
        if not NAME_RE.match(name):
            raise GtfError(f"bad action name {name!r}", lines.lineno)
        if name in seen:
            raise GtfError(f"duplicate action name {name!r}", lines.lineno)
        seen.add(name)
        pre = _atoms_line(lines, "pre", table, inline=True)
        add = _atoms_line(lines, "add", table, inline=True)
        dele = _atoms_line(lines, "del", table, inline=True)
        actions.append(Action(name, pre, add, dele))
    flags = set()
    if not lines.done():
        value = _keyed(lines, "flags")
        flags = set(value.split())
        unknown = flags - set(FLAGS)
        if unknown:
            raise GtfError(f"unknown flag(s) {' '.join(sorted(unknown))}", lines.lineno)
        if not lines.done():
            raise GtfError("trailing content after flags", lines.lineno + 1)
    try:
        return Task(table, init, goal, tuple(actions), "normalized" in flags, "dualized" in flags)
    except StructuralError as e:
        raise GtfError(str(e)) from None


def parse_plan(text: str) -> Plan:
    """Read a plan file: one step per line as ``name`` or ``(name)``.

    Lines starting with ``;`` are comments. A parenthesized step with
    spaces, as emitted by most planners, ``(move t l1 l2)``, is read as
    the grounded name ``move(t,l1,l2)``.
    """
    steps = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith(";"):
            continue
        if line.startswith("(") and line.endswith(")"):
            line = line[1:-1].strip()
            parts = line.split()
            if len(parts) > 1:
                line = f"{parts[0]}({','.join(parts[1:])})"
        steps.append(line.lower())
    return Plan(tuple(steps))


def format_plan(plan: Plan) -> str:
    return "".join(f"({name})\n" for name in plan.steps)
