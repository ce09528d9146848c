"""Strong connectivity with flow certificates."""

import tourneykit as tk

t = tk.paley_tournament(11)
rep = tk.connectivity_report(t)
print("Paley 11: kappa =", rep.kappa, "diameter =", tk.diameter(t))

# 0 beats 5, so ask about 5 -> 0 where no single arc helps
cert = tk.pair_k_connected(t, 5, 0, rep.kappa)
print(f"{rep.kappa} disjoint paths 5 -> 0:")
for p in cert.paths:
    print("   ", p)

cert = tk.pair_k_connected(t, 5, 0, rep.kappa + 1)
print("asking for one more gives a separator:", cert.separator)

d = tk.random_tournament(14, seed=9)
rep = tk.connectivity_report(d)
print("random 14: kappa =", rep.kappa, "cut", rep.witness_separator, "splits", rep.witness_pair)

res = tk.is_k_linked(t, [(0, 1), (2, 3)])
print("linkage 0->1, 2->3:", res.status.name, res.value and res.value.paths)
