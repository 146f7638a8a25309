"""End-to-end acceptance checks.

Each test prints one ``ACCEPTANCE <n> PASS|FAIL`` line so that a plain
``pytest -v`` run doubles as the acceptance report.
"""
import json
import random
import time
from collections import Counter

import numpy as np
import pytest

from equitree.cli import main
from equitree.coloring import PartialColoring, debug_checks_enabled
from equitree.errors import InvariantBroken
from equitree.generator import GenSpec, generate
from equitree.graph import Graph, degeneracy_ordering, parse_edge_list
from equitree.oracle import oracle_solve
from equitree.plan import PARAMETER_TABLE, Branch, base3_decompose, cap_values, layered_threshold
from equitree.solve import solve
from equitree.verify import verify

BETA = dict(PARAMETER_TABLE)


@pytest.fixture
def announce(capsys):
    def _announce(number, ok, detail):
        with capsys.disabled():
            print(f"\nACCEPTANCE {number} {'PASS' if ok else 'FAIL'}: {detail}")
        return ok
    return _announce


def _color_via_cli(tmp_path, n, d, k, dmax, seed, *flags):
    gpath = tmp_path / f"g_{n}_{d}_{k}_{seed}.txt"
    jpath = tmp_path / f"c_{n}_{d}_{k}_{seed}.json"
    assert main(["gen", "--n", str(n), "--d", str(d), "--dmax", str(dmax),
                 "--seed", str(seed), "-o", str(gpath)]) == 0
    code = main(["color", str(gpath), "-k", str(k), "--json", str(jpath), *flags])
    return code, parse_edge_list(gpath.read_bytes()), json.loads(jpath.read_text())


@pytest.mark.slow
def test_1_conformance_grid(tmp_path, announce):
    start = time.perf_counter()
    total = valid = 0
    branches, pairs, failures = Counter(), Counter(), Counter()
    for d in (1, 2):
        for alpha in (10, 15, 27, 52):
            k = alpha * d
            for n in (10 * k, 110 * k):
                dmax = max(d, n // BETA[alpha])
                for seed in range(25):
                    code, g, out = _color_via_cli(tmp_path, n, d, k, dmax, seed)
                    total += 1
                    branches[out["branch"]] += 1
                    pairs[(out["alpha"], out["beta"])] += 1
                    if out["error"]:
                        failures[out["error"]["kind"]] += 1
                    # re-check the emitted coloring from scratch
                    if code == 0 and out["valid"] and verify(g, out["color"], k).valid:
                        valid += 1
    elapsed = time.perf_counter() - start
    ok = valid == total and not failures and branches["SmallT"] and branches["Layered"]
    announce(1, ok, f"{valid}/{total} valid, branches {dict(branches)}, "
                    f"pairs {dict(sorted(pairs.items()))}, failures {dict(failures)}, {elapsed:.0f}s")
    assert ok
    assert elapsed < 300


def _hub_tree(n, hub, seed):
    """Random recursive tree whose vertex 0 has ``hub`` children."""
    rng = random.Random(seed)
    edges = [(0, v) for v in range(1, hub + 1)]
    edges += [(v, rng.randrange(1, v)) for v in range(hub + 1, n)]
    return Graph.from_edges(n, edges)


REQUIRED_CHECKS = {
    "layer_size_identity", "closure_edge_lower", "degenerate_edge_upper",
    "closure_size_bound", "prefix_size_bound", "residual_degree_sum", "cap_ratio",
}


def test_2_layered_diagnostics(announce):
    runs = checks = violations = 0
    names = set()
    shapes = set()
    for seed in range(10):
        g = _hub_tree(2028, 100, seed)
        res = solve(g, 52)
        plan, lp = res.plan, res.layer_plan
        assert (plan.alpha, plan.beta, plan.t, plan.branch) == (10, 18, 39, Branch.LAYERED)
        assert plan.base3.m >= 2 and plan.t >= 12
        assert res.valid
        assert all(len(lp.a[i]) > 0 for i in range(lp.m))
        shapes.add((plan.base3.m, tuple(len(a) for a in lp.a)))
        runs += 1
        checks += len(res.diagnostics.checks)
        violations += len(res.diagnostics.violations)
        names |= {c.name for c in res.diagnostics.checks}
    ok = violations == 0 and REQUIRED_CHECKS <= names
    announce(2, ok, f"{runs} layered runs (alpha,beta)=(10,18) t=39, layer shapes {sorted(shapes)}, "
                    f"{checks} checks, {violations} violations")
    assert ok


def test_3_oracle_equivalence(announce):
    rng = random.Random(2024)
    graphs = successes = confirmed = bad_outputs = 0
    for i in range(300):
        d = 1 + i % 3
        n = rng.randint(max(2, d + 1), 10)
        g = generate(GenSpec(n=n, d=d, dmax=n - 1, seed=rng.randrange(2**32),
                             dist=rng.choice(["fixed", "uniform"])))
        graphs += 1
        for k in (2, 3, 4):
            res = solve(g, k)
            if res.coloring is not None and not res.valid:
                bad_outputs += 1
            if res.success:
                successes += 1
                confirmed += oracle_solve(g, k, mode="cap").found
    ok = successes == confirmed and bad_outputs == 0
    announce(3, ok, f"{graphs} graphs x 3 k: {successes} solver successes, "
                    f"{confirmed} confirmed by oracle, {bad_outputs} outputs failing verification")
    assert ok


def test_4_base3_arithmetic(announce):
    start = time.perf_counter()
    T = 10**5
    bad = 0
    # independent prefixes: ell_i = t // 3^(m+1-i), grouped by digit count
    groups = []
    m = 0
    while 3**m <= T:
        ts = np.arange(3**m, min(3 ** (m + 1) - 1, T) + 1, dtype=np.int64)
        ell = np.stack([ts // 3 ** (m + 1 - i) for i in range(m + 2)], axis=1)
        omega = ell[:, 1:] - 3 * ell[:, :-1]
        bad += int(np.any((omega < 0) | (omega > 2)) or np.any(omega[:, 0] == 0))
        bad += int(np.any((omega * 3 ** np.arange(m, -1, -1)).sum(axis=1) != ts))
        groups.append((m, ts, ell, omega))
        m += 1
    # the package decomposition agrees row by row
    for m, ts, ell, omega in groups:
        for t, row_ell, row_om in zip(ts.tolist(), ell.tolist(), omega.tolist()):
            p = base3_decompose(t, 8)
            if p.m != m or list(p.ell) != row_ell or list(p.omega) != row_om:
                bad += 1
            elif any(p.ell[i] != 3 * p.ell[i - 1] + p.omega[i - 1] for i in range(1, m + 2)):
                bad += 1
    # caps for every alpha: ceiling definition, and the halving ratio above threshold
    ratio_checked = 0
    for alpha, beta in PARAMETER_TABLE:
        num, den = 2 * alpha - 3, 2 * alpha - 5
        thr = layered_threshold(alpha, beta)
        for m, ts, ell, _ in groups:
            caps = np.concatenate([cap_values(ell[:, 1:m + 1], alpha), ts[:, None]], axis=1)
            inner = caps[:, :m]
            bad += int(np.any(den * inner < num * ell[:, 1:m + 1]))
            bad += int(np.any(den * (inner - 1) >= num * ell[:, 1:m + 1]))
            above = ts >= thr
            ratio_checked += int(above.sum())
            bad += int(np.any(2 * caps[above, :-1] > caps[above, 1:]))
            for j in range(0, len(ts), 97):
                if list(base3_decompose(int(ts[j]), alpha).caps) != caps[j].tolist():
                    bad += 1
    elapsed = time.perf_counter() - start
    ok = bad == 0 and elapsed < 10
    announce(4, ok, f"t in [1, {T}] x {len(PARAMETER_TABLE)} alphas, "
                    f"{ratio_checked} (t, alpha) pairs above threshold, {bad} failures, {elapsed:.1f}s")
    assert ok


def _debug_instances():
    rng = random.Random(5)
    for i in range(100):
        kind = i % 4
        if kind == 0:  # SmallT under hypotheses
            d = 1 + i % 2
            k = 10 * d
            yield generate(GenSpec(n=10 * k, d=d, dmax=10 * k // 18, seed=i)), k, False
        elif kind == 1:  # Layered under hypotheses
            yield generate(GenSpec(n=880, d=1, dmax=15, seed=i)), 8, False
        elif kind == 2:  # forced layering off-hypothesis, failures allowed
            n = rng.randint(40, 200)
            yield generate(GenSpec(n=n, d=rng.randint(1, 3), dmax=n // 4, seed=i)), rng.randint(2, 6), True
        else:  # tight BestEffort swaps
            n = rng.randint(10, 60)
            yield generate(GenSpec(n=n, d=rng.randint(1, 4), dmax=n - 1, seed=i,
                                   dist="uniform")), rng.randint(2, 5), False


def test_5_mutation_invariants(monkeypatch, announce):
    monkeypatch.setenv("EQUITREE_DEBUG_CHECKS", "1")
    assert debug_checks_enabled()
    # the checker must actually fire on a corrupted state
    probe = PartialColoring(Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)]), 1)
    fired = False
    try:
        for v in range(3):
            probe._append(v, 0)
            probe.n_colored += 1
            probe._after_mutation(0)
    except InvariantBroken:
        fired = True
    runs = broken = failures = mutations = 0
    branches = Counter()
    for g, k, forced in _debug_instances():
        runs += 1
        try:
            res = solve(g, k, force_layered=forced)
        except InvariantBroken:
            broken += 1
            continue
        branches[res.plan.branch.value] += 1
        failures += res.failure is not None
        if res.success and not res.valid:
            broken += 1
    ok = fired and broken == 0
    announce(5, ok, f"{runs} instances with per-mutation checks, {broken} invariant breaks, "
                    f"{failures} solver failures (off-hypothesis), branches {dict(branches)}")
    assert ok


def _naive_core_number(g):
    alive = set(range(g.n))
    deg = {v: len(g.adj[v]) for v in alive}
    best = 0
    while alive:
        v = min(alive, key=lambda x: deg[x])
        best = max(best, deg[v])
        alive.remove(v)
        for w in g.adj[v]:
            if w in alive:
                deg[w] -= 1
    return best


def test_6_degeneracy(announce):
    rng = random.Random(6)
    agree = within = 0
    for i in range(200):
        n = rng.randint(1, 300)
        d = rng.randint(0, 6)
        spec = GenSpec(n=n, d=d, dmax=d + rng.randint(0, 30), seed=i,
                       dist=rng.choice(["fixed", "uniform"]))
        g = generate(spec)
        reported = degeneracy_ordering(g).d
        agree += reported == _naive_core_number(g)
        within += reported <= d
    ok = agree == within == 200
    announce(6, ok, f"200 graphs: {agree} match the naive core number, {within} within the requested d")
    assert ok


def test_7_determinism(tmp_path, announce):
    gpath = tmp_path / "g.txt"
    main(["gen", "--n", "5720", "--d", "1", "--dmax", "100", "--seed", "3", "-o", str(gpath)])
    outputs = []
    for run in range(2):
        out = tmp_path / f"color{run}.json"
        main(["color", str(gpath), "-k", "52", "--diagnostics", "--json", str(out)])
        outputs.append(out.read_bytes())
    csvs = []
    for run, extra in enumerate([[], [], ["--jobs", "2"]]):
        out = tmp_path / f"bench{run}.csv"
        main(["bench", "--n", "300,3300", "--d", "1,2", "--k", "30", "--dmax", "20",
              "--seeds", "0,1,2", "--csv", str(out), *extra])
        csvs.append(out.read_bytes())
    branch = json.loads(outputs[0])["branch"]
    ok = outputs[0] == outputs[1] and csvs[0] == csvs[1] == csvs[2]
    announce(7, ok, f"color JSON ({branch}, {len(outputs[0])} bytes) identical across runs; "
                    f"bench CSV ({len(csvs[0].splitlines()) - 1} rows) identical across 2 serial + 1 parallel run")
    assert ok
