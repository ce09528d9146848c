"""A highly connected tournament whose small pieces are never well connected."""

import tourneykit as tk

spec = tk.ExtremalSpec(2, 2, 2)
t = tk.extremal_tournament(spec)
print(f"n={spec.n}, roles in order:")
print("   ", " ".join(spec.roles))

cert = tk.certify_extremal(t, spec, 2)
print("kappa", cert.kappa_exact, "diameter", cert.diameter_exact, ">=", cert.diameter_bound)
print("smallest strongly 2-connected piece:", cert.min_k_subtournament, "vertices", cert.min_witness)
print("size bound", cert.size_bound, "every layer separates:", cert.layers_separate)

sub = tk.induced_subdigraph(t, cert.min_witness)
print("that piece is minimal:", tk.is_minimally_strongly_k_connected(sub, 2)[0])
