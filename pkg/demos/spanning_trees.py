"""
Long paths in spanning trees
============================

When a graph has few interior vertices for distance k, no spanning tree
can have a longest path of intermediate length.
"""

from kdist import Graph, interior_vertices, spanning_tree_lemma_check
from kdist.structure import spanning_tree_count

# K_{3,4}: every vertex has a partner at distance 2, so none is interior
g = Graph.from_edges(7, [(a, b) for a in range(3) for b in range(3, 7)])
print("spanning trees:", spanning_tree_count(g))
print("interior for k=2:", sorted(interior_vertices(g, 2)))

# a path with a pendant pair; interior vertices have nothing at distance k
h = Graph.from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (4, 6)])
for k in (3, 4):
    r = max(2, len(interior_vertices(h, k)))
    print(spanning_tree_lemma_check(h, k, r).to_dict())
