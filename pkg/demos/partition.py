"""Split a tournament into strongly k-connected parts of given sizes, and link paths."""

import tourneykit as tk

t = tk.random_tournament(40, seed=2)
res = tk.partition_k_connected(t, 2, 2, [15, 25], [[0], [1]])
print("parts of 15 and 25, pins 0 and 1:", res.status.name, "via", res.note)
if res.found:
    cert = res.value
    print("sizes", cert.sizes, "kappas", cert.kappas, "re-verified", cert.verify(t))

# the matching step on its own: a1 and a2 compete for s1
g = tk.BipartiteGraph(["a1", "a2", "a3"], ["s1", "s2", "s3"],
                      [("a1", "s1"), ("a2", "s1"), ("a3", "s1"), ("a3", "s2")])
print("Hall witness:", tk.hall_matching(g).witness)

res = tk.linked_paths_with_lengths(t, tk.PathLinkSpec([(0, 5), (1, 6)], [5, 7]))
print("paths 0~>5 on 5 vertices and 1~>6 on 7:", res.value and res.value.paths)
