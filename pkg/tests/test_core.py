import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stripsdual import Action, AtomTable, Plan, StateSet, Task
from stripsdual.core import (
    applicable,
    apply,
    consistent,
    normalize_action,
    normalize_task,
    regress,
    relevant,
    satisfies_goal,
    useful,
    validate_plan,
)
from stripsdual.errors import (
    ConsistencyViolation,
    PlanError,
    PreconditionViolation,
    StructuralError,
)

from conftest import make_task

TABLE = AtomTable(("p", "q", "r"))


def S(names, table=TABLE):
    return table.state(names)


def A(pre, add, dele, name="a", table=TABLE):
    return Action(name, S(pre, table), S(add, table), S(dele, table))


def test_atom_table_is_a_bijection():
    t = AtomTable(("x", "y", "z"))
    assert [t.index[n] for n in t.names] == [0, 1, 2]
    with pytest.raises(StructuralError):
        AtomTable(("x", "x"))
    with pytest.raises(StructuralError):
        t.state(["w"])


def test_stateset_width_and_complement():
    s = StateSet.from_indices([0, 2], 3)
    assert s.complement() == StateSet.from_indices([1], 3)
    assert s.complement().complement() == s
    assert StateSet.empty(3).complement() == StateSet.full(3)
    with pytest.raises(StructuralError):
        StateSet(0b1000, 3)
    with pytest.raises(StructuralError):
        _ = s | StateSet.empty(4)


@given(st.integers(0, 12).flatmap(lambda w: st.tuples(st.just(w), st.integers(0, (1 << w) - 1))))
def test_complement_is_an_involution(wb):
    w, bits = wb
    s = StateSet(bits, w)
    assert s.complement().complement() == s
    assert s.complement().bits >> w == 0
    assert s.isdisjoint(s.complement())


def test_duplicates_collapse():
    assert S(["p", "p", "q"]) == S(["q", "p"])


def test_applicable():
    assert applicable(S("p"), A("p", "", ""))
    assert not applicable(S(""), A("p", "", ""))
    assert applicable(S("q"), A("", "", ""))
    with pytest.raises(StructuralError):
        applicable(StateSet.empty(2), A("p", "", ""))


def test_apply(t1):
    assert apply(t1.init, t1.action("a1")) == t1.state("q")
    # add-then-delete is observable on a raw action
    assert apply(S("pq"), A("", "q", "q")) == S("p")
    with pytest.raises(PreconditionViolation):
        apply(S("p"), A("q", "", "", name="a2"))


def test_regress(t1, t2):
    assert regress(t1.state("q"), t1.action("a1")) == t1.state("p")
    assert regress(t2.state("qr"), t2.action("a2")) == t2.state("q")
    with pytest.raises(ConsistencyViolation):
        regress(t1.state("p"), t1.action("a1"))


def test_consistent(t1):
    a1 = t1.action("a1")
    assert consistent(t1.state("q"), a1)
    assert not consistent(t1.state("p"), a1)
    assert consistent(S("pqr"), A("p", "q", ""))


def test_relevant(t1):
    a1 = t1.action("a1")
    assert relevant(t1.state("q"), a1)
    assert not relevant(t1.state("p"), a1)
    assert not relevant(t1.state(""), a1)


def test_useful():
    assert not useful(S("pq"), A("", "q", ""))
    assert useful(S("p"), A("", "q", ""))
    assert not useful(S(""), A("", "", ""))
    assert not useful(S("pqr"), A("", "", ""))


def test_normalize_examples():
    a = normalize_action(A("p", "pq", "q"))
    assert (a.pre, a.add, a.delete) == (S("p"), S("q"), S(""))
    b = A("p", "q", "r")
    assert normalize_action(b) is b
    c = normalize_action(A("", "p", "p"))
    assert (c.pre, c.add, c.delete) == (S(""), S("p"), S(""))


def test_normalize_task_keeps_conditions_and_is_idempotent():
    raw = make_task("pq", "p", "q", [("a", "p", "pq", "q")], normalized=False)
    n = normalize_task(raw)
    assert n.normalized and all(a.is_normalized for a in n.actions)
    assert (n.atoms, n.init, n.goal) == (raw.atoms, raw.init, raw.goal)
    assert normalize_task(n) == n


def test_normalized_flag_is_checked():
    with pytest.raises(StructuralError):
        make_task("p", "", "", [("a", "p", "p", "")], normalized=True)


def test_task_rejects_duplicate_action_names():
    with pytest.raises(StructuralError):
        make_task("p", "", "", [("a", "", "", ""), ("a", "p", "", "")])


def test_satisfies_goal(t1):
    assert satisfies_goal(t1.state("q"), t1)
    assert not satisfies_goal(t1.state("p"), t1)
    empty_goal = make_task("pq", "", "", [])
    assert satisfies_goal(empty_goal.state(""), empty_goal)


def test_validate_plan(t1, t2):
    assert validate_plan(t1, Plan(("a1",))) == [t1.state("p"), t1.state("q")]
    assert validate_plan(t2, ["a1", "a2"]) == [t2.state("p"), t2.state("pq"), t2.state("pqr")]
    with pytest.raises(PlanError) as e:
        validate_plan(t2, ["a2"])
    assert e.value.step == 0 and e.value.missing == ("q",)
    with pytest.raises(PlanError) as e:
        validate_plan(t2, ["a1"])
    assert e.value.step is None and e.value.missing == ("r",)
    with pytest.raises(PlanError):
        validate_plan(t2, ["nope"])


def test_validate_plan_reads_raw_tasks_delete_first():
    raw = make_task("p", "", "p", [("a", "", "p", "p")], normalized=False)
    assert validate_plan(raw, ["a"])[-1] == raw.state("p")


def test_empty_plan_solves_goal_in_init():
    t = make_task("pq", "pq", "q", [])
    assert validate_plan(t, []) == [t.init]


# exhaustive properties over small universes

def _triples(width):
    states = [StateSet(b, width) for b in range(1 << width)]
    return states, [Action("a", p, a, d) for p in states for a in states for d in states]


@pytest.mark.parametrize("width", [0, 1, 2])
def test_normalization_preserves_ipc_semantics_exhaustively(width):
    states, actions = _triples(width)
    for a in actions:
        na = normalize_action(a)
        assert na.is_normalized
        for s in states:
            if a.pre <= s:
                assert apply(s, na) == (s - a.delete) | a.add
                # both readings coincide once normalized
                assert (s | na.add) - na.delete == (s - na.delete) | na.add


@pytest.mark.parametrize("width", [0, 1, 2])
def test_regression_contract_exhaustively(width):
    states, actions = _triples(width)
    for a in actions:
        for t in states:
            if not consistent(t, a):
                continue
            r = regress(t, a)
            if not relevant(t, a):
                assert r >= t
            for s in states:
                if r <= s:
                    assert applicable(s, a) and apply(s, a) >= t


set_bits = st.integers(0, 255)


@settings(max_examples=300)
@given(set_bits, set_bits, set_bits, set_bits)
def test_progression_through_non_useful_action_never_grows(p, a, d, s):
    act = Action("a", StateSet(p, 8), StateSet(a, 8), StateSet(d, 8))
    state = StateSet(s, 8)
    if applicable(state, act) and not useful(state, act):
        assert apply(state, act) <= state


@settings(max_examples=300)
@given(set_bits, set_bits, set_bits, set_bits)
def test_regression_contract_width_eight(p, a, d, t):
    act = normalize_action(Action("a", StateSet(p, 8), StateSet(a, 8), StateSet(d, 8)))
    goal = StateSet(t, 8)
    if consistent(goal, act):
        r = regress(goal, act)
        for s in (r, r | StateSet(0b10101010, 8), StateSet.full(8)):
            assert applicable(s, act) and apply(s, act) >= goal
