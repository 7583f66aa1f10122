"""
Brooms and how wide they should be
==================================

A t-broom hangs t leaf clusters off the ends of spokes of equal length.
For even k the best number of spokes sits within one of a closed-form value.
"""

from kdist import BroomSpec, best_broom, optimal_broom_width, t_broom, t_broom_distance_count
from kdist import distance_k_graph, is_triangle_free, k_distance_count

spec = BroomSpec(4, (3, 3, 2))
g = t_broom(spec)
print(spec, "n =", spec.n)
# closed form and direct count agree
print(t_broom_distance_count(spec), k_distance_count(g, 4))

for n, k in [(20, 4), (49, 4), (40, 6), (31, 5)]:
    spec, count = best_broom(n, k)
    line = f"n={n:3d} k={k}  best broom has {spec.t} spokes, {count} pairs at distance k"
    if k % 2 == 0:
        x, cands = optimal_broom_width(n, k)
        line += f"  (width value {x:.3f}, admissible {cands})"
    print(line)

# odd k with three or more spokes joins the hubs in a clique: more pairs,
# but no longer a tree and the distance-k graph picks up triangles
g = t_broom(best_broom(31, 5)[0])
print("edges", g.num_edges(), "on", g.n, "vertices; triangle-free:", is_triangle_free(distance_k_graph(g, 5)))
