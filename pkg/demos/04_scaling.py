"""How steps, moves and rounds grow with n, against the quadratic move budget.

Clique-layer moves are compared with n + 3n(n+1)/2 and synchronous rounds
with 3*min(n_c*(Diam+1), n) + 2.  The round column counts rounds until
silence, which is never fewer than rounds until legitimacy.  Pass ``--quick`` for a smaller sweep.
"""

import sys

from sscvc.experiment import BenchConfig, run_bench

quick = "--quick" in sys.argv
cfg = BenchConfig(
    n_min=2,
    n_max=8 if quick else 12,
    graphs_per_n=3 if quick else 12,
    daemons=("synchronous", "central_random", "adversarial_greedy"),
    seeds=(0, 1),
    use_bfs=False,
    oracle=False,
)
rows = run_bench(cfg)

print(f"{'n':>3} {'runs':>5} {'max cmcp moves':>15} {'budget':>7} {'sync rounds':>12} {'round bound':>12}")
for n in range(cfg.n_min, cfg.n_max + 1):
    mine = [r for r in rows if r["n"] == n]
    sync = [r for r in mine if r["daemon"] == "synchronous"]
    budget = n + 3 * n * (n + 1) // 2
    rbound = max(3 * min(r["n_c"] * (r["Diam"] + 1), n) + 2 for r in sync)
    worst = max(r["cmcp_moves"] for r in mine)
    print(f"{n:>3} {len(mine):>5} {worst:>15} {budget:>7} {max(r['rounds'] for r in sync):>12} {rbound:>12}")
    assert worst <= budget
