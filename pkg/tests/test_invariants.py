import pytest

from stripsdual import StateSet, dual_task
from stripsdual.errors import NotNormalizedError
from stripsdual.invariants import (
    BackwardClauseSet,
    MutexSet,
    backward_invariants,
    mutex_fixpoint,
    violates_backward,
    violates_forward,
)
from stripsdual.oracle import (
    RandomTaskConfig,
    enumerate_reachable,
    goal_reaching_states,
    random_task,
)

from conftest import make_task


def test_mutexes_t1(t1):
    m = mutex_fixpoint(t1)
    assert m.pairs == {(0, 1)}
    assert not m.always_false and not m.always_true


def test_no_mutexes_t2(t2):
    m = mutex_fixpoint(t2)
    assert m.pairs == frozenset()
    # p is never deleted
    assert m.always_true == t2.state("p")


def test_unary_dominates_t3(t3):
    m = mutex_fixpoint(t3)
    assert m.always_false == t3.state("pq")
    assert m.pairs == frozenset()


def test_backward_invariants_t1(t1):
    c = backward_invariants(t1)
    assert c.clauses == {(0, 1)} and not c.unary
    # the empty state is the only one that cannot reach the goal
    for s in map(lambda b: StateSet(b, 2), range(4)):
        assert violates_backward(s, c) == (s.bits == 0)


def test_backward_invariants_trivial_task():
    t = make_task("pq", "", "", [])
    c = backward_invariants(t)
    assert not c.clauses and not c.unary


def test_backward_invariants_t2_against_oracle(t2):
    c = backward_invariants(t2)
    for s in goal_reaching_states(t2):
        assert not violates_backward(s, c)


def test_violation_predicates(t1):
    c = BackwardClauseSet(frozenset({(0, 1)}), t1.state(""))
    assert violates_backward(t1.state(""), c)
    assert not violates_backward(t1.state("p"), c)
    assert not violates_backward(t1.state(""), BackwardClauseSet(frozenset(), t1.state("")))
    m = MutexSet(t1.state(""), t1.state(""), frozenset({(0, 1)}))
    assert violates_forward(t1.state("pq"), m)
    assert not violates_forward(t1.state("q"), m)
    assert not violates_forward(t1.state("pq"), MutexSet(t1.state(""), t1.state(""), frozenset()))
    assert violates_forward(t1.state("p"), MutexSet(t1.state("p"), t1.state(""), frozenset()))


def test_requires_normalized():
    raw = make_task("p", "", "p", [("a", "", "p", "p")], normalized=False)
    with pytest.raises(NotNormalizedError):
        mutex_fixpoint(raw)
    with pytest.raises(NotNormalizedError):
        backward_invariants(raw)


def test_pairs_are_canonical_and_not_subsumed():
    for seed in range(100):
        t = random_task(RandomTaskConfig(n_atoms=7, n_actions=5, seed=seed))
        m = mutex_fixpoint(t)
        for p, q in m.pairs:
            assert p < q
            assert p not in m.always_false and q not in m.always_false


@pytest.mark.parametrize("seed", range(150))
def test_soundness_against_oracle(seed):
    t = random_task(RandomTaskConfig(n_atoms=2 + seed % 7, n_actions=1 + seed % 8, seed=seed))
    m = mutex_fixpoint(t)
    for s in enumerate_reachable(t):
        assert not violates_forward(s, m)
        assert m.always_true <= s
    c = backward_invariants(t)
    for s in goal_reaching_states(t):
        assert not violates_backward(s, c)


def test_battery_finds_nontrivial_invariants():
    # guards against the soundness test passing vacuously
    found_pairs = found_clauses = 0
    for seed in range(200):
        t = random_task(RandomTaskConfig(seed=seed))
        found_pairs += bool(mutex_fixpoint(t).pairs)
        found_clauses += bool(backward_invariants(t).clauses)
    assert found_pairs > 20 and found_clauses > 20


def test_duality_consistency():
    for seed in range(100):
        t = random_task(RandomTaskConfig(seed=seed))
        readback = backward_invariants(dual_task(t))
        m = mutex_fixpoint(t)
        assert readback.clauses == m.pairs
        assert readback.unary == m.always_false
