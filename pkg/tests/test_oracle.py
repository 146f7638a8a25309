import itertools
import random

import pytest

from conftest import complete, cycle, path, random_graph
from equitree.errors import BudgetExceeded
from equitree.graph import induces_forest
from equitree.oracle import oracle_min_k, oracle_solve
from equitree.verify import verify


def naive(g, k, mode):
    """Try every assignment in k^n."""
    q, r = divmod(g.n, k)
    cap = -(-g.n // k)
    for assignment in itertools.product(range(k), repeat=g.n):
        sizes = [assignment.count(c) for c in range(k)]
        if mode == "cap" and max(sizes) > cap:
            continue
        if mode == "strict" and sorted(sizes) != sorted([q + 1] * r + [q] * (k - r)):
            continue
        if all(induces_forest(g, [v for v in range(g.n) if assignment[v] == c], method="dfs")
               for c in range(k)):
            return True
    return False


def test_k4_one_color():
    assert oracle_solve(complete(4), 1).status == "NotExist"
    assert not naive(complete(4), 1, "cap")


def test_k4_two_colors():
    assert naive(complete(4), 2, "cap")
    res = oracle_solve(complete(4), 2)
    assert res.found and res.coloring == [0, 0, 1, 1]


def test_c5_two_colors():
    assert naive(cycle(5), 2, "cap")
    res = oracle_solve(cycle(5), 2)
    assert res.found and res.coloring == [0, 0, 0, 1, 1]


@pytest.mark.parametrize(
    "g, expected",
    [(path(6), 1), (cycle(4), 2), (complete(5), 3)],
)
def test_min_k(g, expected):
    brute = next(k for k in range(1, g.n + 1) if naive(g, k, "cap"))
    assert brute == expected
    k, res = oracle_min_k(g)
    assert k == expected and verify(g, res.coloring, k).valid


def test_strict_mode_sizes():
    res = oracle_solve(path(7), 3, mode="strict")
    assert res.found
    sizes = sorted(res.coloring.count(c) for c in range(3))
    assert sizes == [2, 2, 3]


def test_completeness_against_naive():
    rng = random.Random(11)
    for trial in range(150):
        n = rng.randint(1, 6)
        g = random_graph(n, rng.choice([0.3, 0.5, 0.8]), seed=trial)
        for k in (1, 2, 3):
            for mode in ("cap", "strict"):
                res = oracle_solve(g, k, mode=mode)
                assert res.found == naive(g, k, mode), (g, k, mode)
                if res.found:
                    rep = verify(g, res.coloring, k)
                    assert rep.valid
                    if mode == "strict":
                        assert rep.strictly_equitable


def test_monotone_in_k():
    rng = random.Random(2)
    for trial in range(40):
        g = random_graph(rng.randint(3, 9), 0.6, seed=100 + trial)
        found = [oracle_solve(g, k).found for k in range(1, g.n + 1)]
        first = found.index(True)
        assert all(found[first:])


def test_budget():
    assert oracle_solve(complete(12), 5, node_limit=10).status == "BudgetExceeded"
    with pytest.raises(BudgetExceeded):
        oracle_min_k(complete(12), node_limit=10)


def test_size_guard():
    with pytest.raises(ValueError):
        oracle_solve(path(21), 3)
