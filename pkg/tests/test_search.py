import math

import pytest

from stripsdual import StateSet, dual_task
from stripsdual.errors import NotNormalizedError, SearchConfigError, StructuralError
from stripsdual.oracle import (
    RandomTaskConfig,
    random_task,
    shortest_plan_length,
    solvable_bruteforce,
    solvable_from,
)
from stripsdual.search import (
    INF,
    SearchConfig,
    Verdict,
    bfs_solve,
    gbfs_solve,
    heuristic_value,
    make_search_spec,
)

from conftest import make_task


def names(succ):
    return [(a.name, s) for a, s in succ]


def test_forward_spec_t1(t1):
    spec = make_search_spec(t1, "forward")
    assert spec.start() == t1.state("p")
    assert names(spec.succ(t1.state("p"))) == [("a1", t1.state("q"))]
    assert spec.is_target(t1.state("q"))


def test_backward_spec_t1(t1):
    spec = make_search_spec(t1, "backward")
    assert spec.start() == t1.state("q")
    assert names(spec.succ(t1.state("q"))) == [("a1", t1.state("p"))]
    assert spec.is_target(t1.state("p"))


def test_backward_spec_t2_with_and_without_relevance(t2):
    spec = make_search_spec(t2, "backward")
    assert names(spec.succ(t2.state("r"))) == [("a1", t2.state("pr")), ("a2", t2.state("q"))]
    out = bfs_solve(spec, SearchConfig(pruners={"relevant"}, record_layers=True))
    assert out.layers[1] == [t2.state("q")]


def test_spec_requires_normalized():
    raw = make_task("p", "", "p", [("a", "", "p", "p")], normalized=False)
    with pytest.raises(NotNormalizedError):
        make_search_spec(raw, "forward")
    with pytest.raises(SearchConfigError):
        make_search_spec(make_task("p", "", "", []), "sideways")


def test_bfs_examples(t1, t2, t3):
    out = bfs_solve(make_search_spec(t1, "forward"))
    assert out.verdict is Verdict.SOLVED and out.plan.steps == ("a1",)
    assert out.stats.expanded == 2
    assert bfs_solve(make_search_spec(t3, "forward")).verdict is Verdict.UNSOLVABLE
    back = bfs_solve(make_search_spec(t2, "backward"), SearchConfig(pruners={"relevant"}))
    assert back.plan.steps == ("a1", "a2")


def test_gbfs_examples(t1, t2):
    out = gbfs_solve(make_search_spec(t2, "forward"), SearchConfig("gbfs", "goal-count"))
    assert out.solved and len(out.plan) == 2 == shortest_plan_length(t2)
    solved = make_task("pq", "pq", "q", [("a", "p", "", "p")])
    out = gbfs_solve(make_search_spec(solved, "forward"), SearchConfig("gbfs", "hadd"))
    assert out.plan.steps == () and out.stats.expanded == 1 and out.stats.generated == 0


def test_useful_pruner_skips_non_useful_actions():
    t = make_task("pq", "pq", "", [("noop", "p", "q", "")])
    t = make_task("pqr", "pq", "r", [("noop", "p", "q", ""), ("go", "q", "r", "")])
    out = bfs_solve(make_search_spec(t, "forward"), SearchConfig(pruners={"useful"}))
    assert out.stats.pruned["useful"] == 1
    assert out.solved and out.plan.steps == ("go",)


def test_pruner_direction_is_enforced(t1):
    with pytest.raises(SearchConfigError):
        bfs_solve(make_search_spec(t1, "forward"), SearchConfig(pruners={"relevant"}))
    with pytest.raises(SearchConfigError):
        bfs_solve(make_search_spec(t1, "backward"), SearchConfig(pruners={"useful"}))
    with pytest.raises(SearchConfigError):
        SearchConfig("gbfs")
    with pytest.raises(SearchConfigError):
        SearchConfig(pruners={"magic"})
    with pytest.raises(SearchConfigError):
        gbfs_solve(make_search_spec(t1, "backward"), SearchConfig("gbfs", "hadd"))


def test_heuristic_examples(t1, t2, t3):
    # hand Bellman fixpoint on T2: cost(q)=1, cost(r)=2
    assert heuristic_value("hadd", t2, t2.init) == 2
    assert heuristic_value("hmax", t2, t2.init) == 2
    assert heuristic_value("relaxed-plan", t2, t2.init) == 2
    assert heuristic_value("goal-count", t1, t1.state("q")) == 0
    assert heuristic_value("goal-count", t2, t2.state("pq"), "backward") == 1
    for kind in ("hadd", "hmax", "relaxed-plan"):
        assert heuristic_value(kind, t3, t3.init) == INF == math.inf
    with pytest.raises(SearchConfigError):
        heuristic_value("hadd", t2, t2.init, "backward")
    with pytest.raises(StructuralError):
        heuristic_value("hadd", t2, StateSet.empty(2))


def test_hadd_counts_shared_preconditions_twice():
    t = make_task(
        "abcg", "", "g",
        [("mk-a", "", "a", ""), ("mk-b", "a", "b", ""), ("mk-c", "a", "c", ""), ("fin", "bc", "g", "")],
    )
    assert heuristic_value("hadd", t, t.init) == 5
    assert heuristic_value("hmax", t, t.init) == 3
    assert heuristic_value("relaxed-plan", t, t.init) == 4


def test_limits(t2):
    out = bfs_solve(make_search_spec(t2, "forward"), SearchConfig(node_limit=1))
    assert out.verdict is Verdict.LIMIT
    out = bfs_solve(make_search_spec(t2, "forward"), SearchConfig(time_limit=0.0))
    assert out.verdict in (Verdict.LIMIT, Verdict.SOLVED)


def test_invariant_pruning_on_forward_nodes(t1):
    # from {p}, a task with an extra dead action leading to a state no goal is reachable from
    t = make_task("pqr", "p", "q", [("trap", "p", "r", "p"), ("a1", "p", "q", "p")])
    out = bfs_solve(make_search_spec(t, "forward"), SearchConfig(pruners={"invariants"}))
    assert out.stats.pruned["invariants"] == 1 and out.plan.steps == ("a1",)


@pytest.mark.parametrize("seed", range(60))
def test_bfs_forward_is_shortest(seed):
    t = random_task(RandomTaskConfig(n_atoms=6, n_actions=6, seed=seed))
    out = bfs_solve(make_search_spec(t, "forward"))
    length = shortest_plan_length(t)
    assert out.solved == (length is not None)
    if out.solved:
        assert len(out.plan) == length


@pytest.mark.parametrize("seed", range(60))
def test_infinite_heuristic_means_dead_end(seed):
    t = random_task(RandomTaskConfig(n_atoms=5, n_actions=4, seed=seed))
    for bits in range(1 << t.width):
        s = StateSet(bits, t.width)
        for kind in ("hadd", "hmax", "relaxed-plan"):
            if heuristic_value(kind, t, s) == INF:
                assert not solvable_from(t, s)


@pytest.mark.parametrize("seed", range(40))
def test_trace_duality_small(seed):
    t = random_task(RandomTaskConfig(n_atoms=5, n_actions=5, seed=seed))
    cfg = SearchConfig(record_layers=True)
    back = bfs_solve(make_search_spec(t, "backward"), cfg)
    fwd = bfs_solve(make_search_spec(dual_task(t), "forward"), cfg)
    assert back.layers == [[s.complement() for s in layer] for layer in fwd.layers]
    assert back.solved == fwd.solved == solvable_bruteforce(t)
