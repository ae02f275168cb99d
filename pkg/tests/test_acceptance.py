"""Acceptance criteria 1-9, one PASS/FAIL line each.

The shared suite is 200 random connected graphs (n in [2, 10]) crossed with
the four daemons and three fault seeds.
"""

import random
import time

import pytest

from sscvc import compose_layers, randomize_configuration, zeroed_configuration
from sscvc.engine import DAEMON_KINDS, DaemonKind, enabled_actions, rounds_to_reach, run
from sscvc.experiment import RunSpec, execute
from sscvc.graph import bfs_distances, complete_graph, diameter, generate_random_connected, path_graph, star_graph
from sscvc.state import random_node_state
from sscvc.verifiers import (
    brute_force_optimal_cvc,
    check_cmcp_solution,
    check_cvc_solution,
    is_legitimate_cmcp,
    is_legitimate_cvc,
)

N_GRAPHS = 200
FAULT_SEEDS = (0, 1, 2)
MUTATIONS = 500


def report(k, ok, detail):
    return f"CRITERION {k}: {'PASS' if ok else 'FAIL'}  {detail}"


@pytest.fixture(scope="module")
def echo(request):
    capman = request.config.pluginmanager.getplugin("capturemanager")

    def _echo(k, ok, detail):
        with capman.global_and_fixture_disabled():
            print("\n" + report(k, ok, detail))
        assert ok, detail

    return _echo


@pytest.fixture(scope="module")
def suite_graphs():
    rng = random.Random(2024)
    out = []
    for i in range(N_GRAPHS):
        n = rng.randint(2, 10)
        p = rng.choice([0.15, 0.25, 0.4, 0.6, 0.8])
        out.append(generate_random_connected(n, p, 10_000 + i))
    return out


@pytest.fixture(scope="module")
def composed_runs(suite_graphs):
    """Criterion 1 suite: BFS layer on, every daemon, every fault seed."""
    t0 = time.perf_counter()
    runs = []
    for gi, g in enumerate(suite_graphs):
        for kind in DAEMON_KINDS:
            for fs in FAULT_SEEDS:
                c0 = randomize_configuration(g, 1000 * gi + fs)
                res = run(g, c0, DaemonKind(kind, fs), program=compose_layers(True))
                runs.append((g, kind, fs, res))
    return runs, time.perf_counter() - t0


@pytest.fixture(scope="module")
def optima(suite_graphs):
    return {id(g): brute_force_optimal_cvc(g)[0] for g in suite_graphs if g.n <= 12}


def test_criterion_1_convergence(composed_runs, echo):
    runs, elapsed = composed_runs
    bad = [(g.n, kind, fs) for g, kind, fs, r in runs if not r.terminal]
    worst = max(r.trace.n_steps / (50 * g.n**3) for g, _, _, r in runs)
    echo(1, not bad and elapsed < 300,
         f"{len(runs) - len(bad)}/{len(runs)} terminal within 50*n^3 steps "
         f"(max steps/cap {worst:.4f}), {elapsed:.1f}s")


def test_criterion_2_partition(composed_runs, echo):
    runs, _ = composed_runs
    bad = []
    for g, kind, fs, r in runs:
        rep = check_cmcp_solution(r.final, g)
        if not rep.ok:
            bad.append((g.edges(), kind, fs, rep.problems))
    echo(2, not bad, f"{len(runs) - len(bad)}/{len(runs)} partitions complete, minimal, "
                     f"connected and with independent singletons")


def test_criterion_3_two_approximation(composed_runs, optima, echo):
    runs, _ = composed_runs
    checked = bad = 0
    worst = 0.0
    for g, _, _, r in runs:
        if g.n > 12:
            continue
        cov = check_cvc_solution(r.final, g)
        opt = optima[id(g)]
        checked += 1
        worst = max(worst, cov.size / opt if opt else 1.0)
        if not (cov.is_vertex_cover and cov.is_connected and cov.size <= 2 * opt):
            bad += 1
    echo(3, bad == 0 and checked > 0,
         f"{checked - bad}/{checked} covers valid, connected, size <= 2*optimum (worst ratio {worst:.3f})")


def test_criterion_4_move_bound(suite_graphs, echo):
    total = bad = 0
    worst = 0.0
    for gi, g in enumerate(suite_graphs):
        dist = bfs_distances(g)
        n = g.n
        budget = n + 3 * n * (n + 1) // 2
        for kind in DAEMON_KINDS:
            for fs in FAULT_SEEDS:
                res = run(g, randomize_configuration(g, 7000 + 1000 * gi + fs), DaemonKind(kind, fs),
                          program=compose_layers(False), distances=dist)
                moves = res.trace.layer_moves("CMCP")
                total += 1
                worst = max(worst, moves / budget)
                bad += (not res.terminal) or moves > budget
    echo(4, bad == 0, f"{total - bad}/{total} runs within n + 3n(n+1)/2 clique moves "
                      f"(worst moves/budget {worst:.3f})")


def _first_legitimate(g, c0, dist, extra=None):
    mark = [None]

    def watch(i, c):
        if is_legitimate_cmcp(c, g, dist) and (extra is None or extra(c)):
            mark[0] = i
            return True
        return False

    res = run(g, c0, "synchronous", program=compose_layers(False), distances=dist, observer=watch)
    return res, mark[0]


def test_criterion_5_round_bound(suite_graphs, echo):
    total = bad = 0
    worst = 0.0
    for gi, g in enumerate(suite_graphs):
        dist = bfs_distances(g)
        diam = diameter(g)
        for fs in FAULT_SEEDS:
            res, at = _first_legitimate(g, randomize_configuration(g, 9000 + 1000 * gi + fs), dist)
            total += 1
            if at is None:
                bad += 1
                continue
            n_c = check_cmcp_solution(res.final, g, dist).n_c
            bound = 3 * min(n_c * (diam + 1), g.n) + 2
            rounds = rounds_to_reach(res.trace, at)
            worst = max(worst, rounds / bound)
            bad += rounds > bound
    echo(5, bad == 0, f"{total - bad}/{total} synchronous runs legitimate within "
                      f"3*min(n_c*(Diam+1), n)+2 rounds (worst rounds/bound {worst:.3f})")


def test_criterion_6_cover_layer(suite_graphs, echo):
    total = bad = 0
    for gi, g in enumerate(suite_graphs):
        dist = bfs_distances(g)
        for fs in FAULT_SEEDS:
            res, at = _first_legitimate(g, randomize_configuration(g, 11000 + 1000 * gi + fs), dist)
            total += 1
            if at is None or not res.terminal:
                bad += 1
                continue
            fired = {}
            only_vc = True
            for rec in res.trace.steps[at:]:
                for p, lab in rec.moves:
                    only_vc &= lab == "VC"
                    fired[p] = fired.get(p, 0) + 1
            after = rounds_to_reach(res.trace, res.trace.n_steps) - rounds_to_reach(res.trace, at)
            ok = only_vc and all(k <= 1 for k in fired.values()) and after <= 1
            ok = ok and is_legitimate_cvc(res.final, g)
            bad += not ok
    echo(6, bad == 0, f"{total - bad}/{total} runs: after clique legitimacy each node fires VC "
                      f"at most once and the cover is legitimate within 1 round")


def test_criterion_7_silence_equivalence(composed_runs, echo):
    runs, _ = composed_runs
    prog = compose_layers(False)

    def silent(c, g, dist):
        return not any(lab.layer == "CMCP" for p in g.nodes
                       for lab in enabled_actions(c, g, p, prog, dist))

    terminals = [(g, r.final) for g, _, _, r in runs]
    checked = bad = 0
    for g, c in terminals:
        dist = bfs_distances(g)
        checked += 1
        bad += is_legitimate_cmcp(c, g, dist) != silent(c, g, dist)
    rng = random.Random(77)
    fields = ("N", "d", "S", "C", "lead")
    for _ in range(MUTATIONS):
        g, c = rng.choice(terminals)
        dist = bfs_distances(g)
        p = rng.choice(g.nodes)
        while True:
            f = rng.choice(fields)
            new = c[p].update(**{f: getattr(random_node_state(g, p, rng), f)})
            if new != c[p]:
                break
        m = dict(c)
        m[p] = new
        checked += 1
        bad += is_legitimate_cmcp(m, g, dist) != silent(m, g, dist)
    echo(7, bad == 0, f"{checked - bad}/{checked} configurations ({len(terminals)} terminal + "
                      f"{MUTATIONS} mutated): legitimate <=> no clique action enabled")


def test_criterion_8_golden_scenarios(echo):
    def solve(g):
        out = execute(RunSpec(graph=g, daemon=DaemonKind("synchronous"), fault_seed=None, oracle=True))
        return [set(m) for _, m in out.partition.cliques], out.cover

    results = []
    cl, cov = solve(complete_graph(3))
    results.append(cl == [{0, 1, 2}] and cov.size == 3 and cov.ratio == 1.5)
    cl, cov = solve(path_graph(3))
    results.append(cl == [{0, 1}, {2}] and cov.cover == {0, 1} and cov.ratio == 2.0)
    results.append(brute_force_optimal_cvc(path_graph(5))[0] == 3)
    _, cov = solve(star_graph(3))
    results.append(cov.cover == {0, 1} and cov.ratio == 2.0)
    echo(8, all(results), f"K3, P3, P5 oracle, star: {['ok' if x else 'MISMATCH' for x in results]}")


def test_criterion_9_determinism(echo):
    g = generate_random_connected(9, 0.3, 5)
    same = True
    for kind in DAEMON_KINDS:
        spec = RunSpec(graph=g, daemon=DaemonKind(kind, 3), fault_seed=11, oracle=True)
        a, b = execute(spec), execute(spec)
        same &= a.trace.dumps() == b.trace.dumps() and a.dumps_report() == b.dumps_report()
    echo(9, same, "identical run specs give byte-identical traces and reports for every daemon")
