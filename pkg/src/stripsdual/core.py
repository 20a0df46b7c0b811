"""Grounded STRIPS data model and transition semantics.

Atoms are interned into an :class:`AtomTable`; every condition, state and
sub-goal is a :class:`StateSet`, a fixed-width bit vector stored in a Python
int so that union, intersection and subset tests are word-parallel.

Internally actions use the add-then-delete reading
``s' = (s | add) - del``. Inputs follow the IPC delete-then-add reading and
are brought into agreement with :func:`normalize_task`, after which both
readings coincide.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, Sequence

from .errors import (
    ConsistencyViolation,
    PlanError,
    PreconditionViolation,
    StructuralError,
)


class StateSet:
    """Subset of an atom universe of fixed width, as a bit vector.

    Bit ``i`` is set iff atom ``i`` is a member. Bits at or above ``width``
    are always clear.
    """

    __slots__ = ("bits", "width")

    def __init__(self, bits: int, width: int):
        if width < 0:
            raise StructuralError("negative width")
        if bits < 0 or bits >> width:
            raise StructuralError(f"bits outside width {width}")
        self.bits = bits
        self.width = width

    @classmethod
    def empty(cls, width: int) -> "StateSet":
        return cls(0, width)

    @classmethod
    def full(cls, width: int) -> "StateSet":
        return cls((1 << width) - 1, width)

    @classmethod
    def from_indices(cls, indices: Iterable[int], width: int) -> "StateSet":
        bits = 0
        for i in indices:
            if not 0 <= i < width:
                raise StructuralError(f"atom index {i} outside universe of {width}")
            bits |= 1 << i
        return cls(bits, width)

    def _check(self, other: "StateSet") -> None:
        if self.width != other.width:
            raise StructuralError(f"width mismatch: {self.width} vs {other.width}")

    def __or__(self, other: "StateSet") -> "StateSet":
        self._check(other)
        return StateSet(self.bits | other.bits, self.width)

    def __and__(self, other: "StateSet") -> "StateSet":
        self._check(other)
        return StateSet(self.bits & other.bits, self.width)

    def __sub__(self, other: "StateSet") -> "StateSet":
        self._check(other)
        return StateSet(self.bits & ~other.bits, self.width)

    def __le__(self, other: "StateSet") -> bool:
        self._check(other)
        return not self.bits & ~other.bits

    def __ge__(self, other: "StateSet") -> bool:
        return other <= self

    def __lt__(self, other: "StateSet") -> bool:
        return self <= other and self.bits != other.bits

    def __gt__(self, other: "StateSet") -> bool:
        return other < self

    def isdisjoint(self, other: "StateSet") -> bool:
        self._check(other)
        return not self.bits & other.bits

    def complement(self) -> "StateSet":
        return StateSet(((1 << self.width) - 1) & ~self.bits, self.width)

    def __eq__(self, other) -> bool:
        if not isinstance(other, StateSet):
            return NotImplemented
        return self.bits == other.bits and self.width == other.width

    def __hash__(self) -> int:
        return hash((self.bits, self.width))

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __bool__(self) -> bool:
        return self.bits != 0

    def __iter__(self) -> Iterator[int]:
        bits, i = self.bits, 0
        while bits:
            if bits & 1:
                yield i
            bits >>= 1
            i += 1

    def __contains__(self, index: int) -> bool:
        return 0 <= index < self.width and bool(self.bits >> index & 1)

    def __repr__(self) -> str:
        return f"StateSet({sorted(self)}, width={self.width})"


@dataclass(frozen=True)
class AtomTable:
    """Ordered, duplicate-free atom names with reverse lookup."""

    names: tuple[str, ...]
    index: dict = field(init=False, compare=False, hash=False, repr=False)

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        index = {}
        for i, name in enumerate(names):
            if name in index:
                raise StructuralError(f"duplicate atom {name!r}")
            index[name] = i
        object.__setattr__(self, "index", index)

    def __len__(self) -> int:
        return len(self.names)

    def state(self, names: Iterable[str]) -> StateSet:
        """Intern a collection of atom names; duplicates collapse."""
        bits = 0
        for name in names:
            try:
                bits |= 1 << self.index[name]
            except KeyError:
                raise StructuralError(f"atom {name!r} is not in the universe") from None
        return StateSet(bits, len(self.names))

    def names_of(self, s: StateSet) -> list[str]:
        return [self.names[i] for i in s]


@dataclass(frozen=True)
class Action:
    name: str
    pre: StateSet
    add: StateSet
    delete: StateSet

    def __post_init__(self):
        if not self.pre.width == self.add.width == self.delete.width:
            raise StructuralError(f"action {self.name!r} mixes widths")

    @property
    def width(self) -> int:
        return self.pre.width

    @property
    def add_del_disjoint(self) -> bool:
        return self.add.isdisjoint(self.delete)

    @property
    def add_pre_disjoint(self) -> bool:
        return self.add.isdisjoint(self.pre)

    @property
    def is_normalized(self) -> bool:
        return self.add_del_disjoint and self.add_pre_disjoint


@dataclass(frozen=True)
class Task:
    """A grounded STRIPS task (atoms, initial condition, goal, actions).

    ``normalized`` states that every action has an add list disjoint from
    its precondition and delete list. ``dualized`` only records provenance.
    """

    atoms: AtomTable
    init: StateSet
    goal: StateSet
    actions: tuple[Action, ...]
    normalized: bool = False
    dualized: bool = False
    _by_name: dict = field(init=False, compare=False, hash=False, repr=False)

    def __post_init__(self):
        actions = tuple(self.actions)
        object.__setattr__(self, "actions", actions)
        n = len(self.atoms)
        if self.init.width != n or self.goal.width != n:
            raise StructuralError("initial/goal condition width differs from atom count")
        by_name = {}
        for a in actions:
            if a.width != n:
                raise StructuralError(f"action {a.name!r} has width {a.width}, expected {n}")
            if a.name in by_name:
                raise StructuralError(f"duplicate action name {a.name!r}")
            by_name[a.name] = a
        if self.normalized and not all(a.is_normalized for a in actions):
            raise StructuralError("task flagged normalized but an action is not")
        object.__setattr__(self, "_by_name", by_name)

    @classmethod
    def build(
        cls,
        atoms: Sequence[str],
        init: Iterable[str],
        goal: Iterable[str],
        actions: Iterable[tuple[str, Iterable[str], Iterable[str], Iterable[str]]] = (),
        normalized: bool = False,
        dualized: bool = False,
    ) -> "Task":
        """Construct a task from atom names; ``actions`` are (name, pre, add, del)."""
        table = AtomTable(tuple(atoms))
        acts = tuple(
            Action(name, table.state(pre), table.state(add), table.state(dele))
            for name, pre, add, dele in actions
        )
        return cls(table, table.state(init), table.state(goal), acts, normalized, dualized)

    @property
    def width(self) -> int:
        return len(self.atoms)

    def action(self, name: str) -> Action:
        try:
            return self._by_name[name]
        except KeyError:
            raise StructuralError(f"unknown action {name!r}") from None

    def has_action(self, name: str) -> bool:
        return name in self._by_name

    def state(self, names: Iterable[str]) -> StateSet:
        return self.atoms.state(names)

    def names(self, s: StateSet) -> list[str]:
        return self.atoms.names_of(s)


@dataclass(frozen=True)
class Plan:
    steps: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)


def applicable(s: StateSet, a: Action) -> bool:
    return a.pre <= s


def apply(s: StateSet, a: Action) -> StateSet:
    """Progress ``s`` through ``a``: add first, then delete."""
    if not a.pre <= s:
        missing = a.pre - s
        raise PreconditionViolation(a.name, [f"#{i}" for i in missing])
    return (s | a.add) - a.delete


def consistent(t: StateSet, a: Action) -> bool:
    return a.delete.isdisjoint(t)


def regress(t: StateSet, a: Action) -> StateSet:
    """Regress sub-goal ``t`` over ``a``: drop what ``a`` adds, require its precondition."""
    if not a.delete.isdisjoint(t):
        raise ConsistencyViolation(a.name, [f"#{i}" for i in a.delete & t])
    return (t - a.add) | a.pre


def relevant(t: StateSet, a: Action) -> bool:
    return not a.add.isdisjoint(t)


def useful(s: StateSet, a: Action) -> bool:
    return not a.add <= s


def satisfies_goal(s: StateSet, task: Task) -> bool:
    return task.goal <= s


def normalize_action(a: Action) -> Action:
    # order matters: delete list is cleaned against the original add list
    delete = a.delete - a.add
    add = a.add - a.pre
    if delete == a.delete and add == a.add:
        return a
    return Action(a.name, a.pre, add, delete)


def normalize_task(task: Task) -> Task:
    """Make every add list disjoint from its precondition and delete list.

    Preserves the IPC delete-then-add meaning of each action while making
    the add-then-delete reading agree with it. Idempotent.
    """
    if task.normalized:
        return task
    return replace(
        task, actions=tuple(normalize_action(a) for a in task.actions), normalized=True
    )


def validate_plan(task: Task, plan: Plan | Sequence[str]) -> list[StateSet]:
    """Simulate ``plan`` from the initial state and return the state trace.

    The task is normalized first, so raw tasks are read with IPC semantics.
    Raises :class:`PlanError` on an unknown name, an inapplicable step or a
    final state that misses part of the goal.
    """
    steps = plan.steps if isinstance(plan, Plan) else tuple(plan)
    task = normalize_task(task)
    s = task.init
    trace = [s]
    for i, name in enumerate(steps):
        if not task.has_action(name):
            raise PlanError(f"step {i}: unknown action {name!r}", step=i)
        a = task.action(name)
        if not a.pre <= s:
            missing = task.names(a.pre - s)
            raise PlanError(
                f"step {i}: {name} is not applicable, missing {' '.join(missing)}",
                step=i,
                missing=missing,
            )
        s = (s | a.add) - a.delete
        trace.append(s)
    if not task.goal <= s:
        missing = task.names(task.goal - s)
        raise PlanError(f"final state misses goal atoms {' '.join(missing)}", missing=missing)
    return trace
