"""
Exhaustive search over small graphs
===================================

Scan every connected graph on n vertices and keep the maximizers.
"""

from kdist import SearchTask, max_k_distances, verify_tree_theorem

report = max_k_distances(SearchTask(n=7, k=3, clique_cap=2))
print(report.graphs_scanned, "graphs scanned, maximum", report.max_e_gk)
for c in report.witness_classification:
    print(c)

# same scan split into four shards gives the same answer
split = max_k_distances(SearchTask(n=7, k=3, clique_cap=2, shards=4))
assert split.result_dict() == report.result_dict()

# trees: the best tree is always a broom of the predicted width
print(verify_tree_theorem(range(5, 11), range(3, 6)).verdict)
