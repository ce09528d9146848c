"""Cycle factors with prescribed lengths, and the one tournament that resists."""

import tourneykit as tk

t = tk.random_tournament(14, seed=3)
spec = tk.FactorSpec((3, 5, 6), (0, None, 1))
res = tk.find_factor(t, spec)
print("3+5+6 with 0 in the triangle and 1 in the 6-cycle:", res.status.name)
if res.found:
    for c in res.value.cycles:
        print("   ", c.vertices)
    print("verified:", tk.verify_factor(t, spec, res.value))

p7 = tk.paley_tournament(7)
print("Paley 7 largest transitive set of size 4:", tk.max_transitive_subtournament(p7, 4))
print("Paley 7 as a triangle plus a 4-cycle:", tk.find_factor(p7, tk.FactorSpec((3, 4))).status.name)
print("Paley 7 as one 7-cycle:", tk.find_factor(p7, tk.FactorSpec((7,))).value.cycles[0].vertices)
