"""Three small graphs, from the all-zero state to a silent configuration.

Run with ``python3 demos/01_small_graphs.py``.  The synchronous daemon moves
every enabled node each step, so the printed step log reads like a table of
what each node did at each tick.
"""

from sscvc import complete_graph, path_graph, star_graph, zeroed_configuration
from sscvc.experiment import RunSpec, execute
from sscvc.engine import DaemonKind

for name, g in [("triangle", complete_graph(3)), ("path 0-1-2", path_graph(3)), ("star", star_graph(3))]:
    out = execute(RunSpec(g, DaemonKind("synchronous"), fault_seed=None, use_bfs=True, oracle=True))
    print(f"== {name}: edges {g.edges()}, root {g.root}")
    for i, rec in enumerate(out.trace.steps, 1):
        print(f"  step {i}: " + ", ".join(f"{p}:{lab}" for p, lab in rec.moves))
    cliques = " ".join(str(sorted(m)) for _, m in out.partition.cliques)
    cov = out.cover
    print(f"  cliques {cliques}")
    print(f"  cover {sorted(cov.cover)}; optimum {cov.optimal_size}; ratio {cov.ratio:.2f}\n")

# The zeroed state of a lone node needs exactly two moves: select itself, record itself.
g = path_graph(1)
out = execute(RunSpec(g, DaemonKind("central_random"), fault_seed=None, use_bfs=False))
assert [lab for rec in out.trace.steps for _, lab in rec.moves] == ["C1", "C3"]
print("single node:", out.trace.final[0])
