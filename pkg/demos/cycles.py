"""Hamiltonian cycles, pancyclicity and the two-cycle split on a random tournament."""

import tourneykit as tk

t = tk.random_tournament(12, seed=4)
print("strongly connected:", tk.is_strongly_connected(t))

cycle = tk.camion_cycle(t)
print("spanning cycle:", cycle.vertices)

# every vertex sits on a cycle of every length
for length in (3, 6, 12):
    print(f"length {length:2d} through 0:", tk.moon_cycle(t, 0, length).vertices)

res = tk.two_cycle_partition(t, 0, 4)
print("4-cycle through 0 plus an 8-cycle:", res.status.name, res.value and [c.vertices for c in res.value])

try:
    tk.camion_cycle(tk.transitive_tournament(5))
except tk.NotStronglyConnected as e:
    print("transitive tournament, no path between", e.pair)
