"""Short paths whose in-neighbourhoods cover almost everything."""

import tourneykit as tk
from tourneykit.dominating import IN_DOMINATING, OUT_DOMINATING

t = tk.random_tournament(200, seed=1)
for c in (1, 3, 6, 10):
    ds = tk.almost_dominating(t, 0, c, IN_DOMINATING)
    print(f"c={c:2d} path {ds.path} leaves {len(ds.uncovered):3d} uncovered, bound {float(ds.bound):.2f}")

ds = tk.almost_dominating(t, 0, 5, OUT_DOMINATING)
print("reverse kind ends at 0:", ds.path)

pair = tk.sparse_linkage(tk.random_tournament(30, seed=2), 2)
print("small robust source set", pair.A, "and sink set", pair.B, "budget", pair.budget)
