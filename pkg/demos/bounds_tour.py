"""
Upper bounds on the number of k-distances
=========================================

"""

import json

from kdist import cycle, double_broom, evaluate_bounds, glued_cliques, star

for g, k in [(cycle(7), 3), (double_broom(9, 4), 4), (glued_cliques(7), 2), (star(6), 2)]:
    report = evaluate_bounds(g, k)
    print(json.dumps(report.to_dict(), sort_keys=True))
