"""
The seven-cycle beats the double broom at distance three
=========================================================

"""

from kdist import cycle, double_broom, distance_k_graph, is_triangle_free

c7 = cycle(7)
db = double_broom(7, 3)

# both distance-3 graphs are triangle free
for name, g in [("C_7", c7), ("double broom", db)]:
    g3 = distance_k_graph(g, 3)
    print(f"{name:13s} graph6={g.to_graph6().decode()}  pairs at distance 3: {g3.num_edges()}"
          f"  triangle-free: {is_triangle_free(g3)}")

# the distance-3 graph of C_7 is itself a 7-cycle
print(sorted(distance_k_graph(c7, 3).edges()))
