"""Why the default rule set differs from the literal guards.

Five nodes: 0 and 1 and 3 form a triangle near the root, 2 hangs off 0 and
3, and 4 is a pendant of 2.  Node 2's greedy clique sees neighbor 3 first.
Under the literal rules 3 stays in 2's selection even though it already
joined 0's clique, and it then vetoes 4.  Both 2 and 4 end up alone and the
edge 2-4 is left uncovered.
"""

from sscvc import compose_layers, run, zeroed_configuration
from sscvc.graph import Graph, bfs_distances
from sscvc.verifiers import check_cmcp_solution, check_cvc_solution

g = Graph.from_edges([(0, 1), (0, 3), (1, 3), (0, 2), (2, 3), (2, 4)])
dist = bfs_distances(g)
for rules in ("literal", "repaired"):
    res = run(g, zeroed_configuration(g), "synchronous", program=compose_layers(False, rules), distances=dist)
    part = check_cmcp_solution(res.final, g)
    cov = check_cvc_solution(res.final, g, with_oracle=True)
    print(f"{rules:>9}: cliques {[sorted(m) for _, m in part.cliques]}")
    print(f"{'':>9}  partition ok: {part.ok}  {'; '.join(part.problems)}")
    print(f"{'':>9}  cover {sorted(cov.cover)} valid: {cov.is_vertex_cover}  ratio {cov.ratio:.2f}\n")
