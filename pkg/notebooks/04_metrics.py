# coding: utf-8

# # Conflict measures
#
# Internal conflict, disagreement, polarization and controversy are all
# quadratic in `z`, so a good push estimate gives good measures.

# In[1]:

import numpy as np

import fjlocal
from fjlocal.metrics import relative_errors
from fjlocal.oracle import solve_dense
from fjlocal.opinions import generate

G = fjlocal.barabasi_albert(3000, 4, seed=2)
for dist in ("unif", "exp", "pow"):
    s, _ = generate(dist, G.n, seed=9)
    exact = fjlocal.report(G, solve_dense(G, s), s)
    approx = fjlocal.report(G, fjlocal.improved_bli(G, s, 1e-2).z_hat, s)
    print(dist, {k: f"{v:.1e}" for k, v in relative_errors(approx, exact).items()})


# Stress adds conflict and disagreement. Summing per-node stress counts
# each undirected edge from both ends.

# In[2]:

z = solve_dense(G, s)
print(fjlocal.total_stress(G, z, s))
