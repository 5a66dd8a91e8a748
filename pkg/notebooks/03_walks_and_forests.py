# coding: utf-8

# # Monte Carlo estimators
#
# A walk that stops at each node `v` with probability `1 / (1 + d_v)`
# ends at `j` with probability `[(I + L)^{-1}]_{uj}`. Averaging `s` over the
# endpoints gives an unbiased estimate of `z_u`.

# In[1]:

import numpy as np

import fjlocal
from fjlocal.oracle import fundamental_matrix, solve_dense

P2 = fjlocal.path_graph(2)
s = np.array([1.0, 0.0])
print(solve_dense(P2, s))
print(fjlocal.rwb_all(P2, s, fjlocal.WalkConfig(num_walks=100_000, seed=0)).z_hat)


# Hoeffding tells us how many walks an additive error needs.

# In[2]:

for eps in (0.1, 0.01):
    print(eps, fjlocal.hoeffding_walks(eps, 0.01))


# Wilson's algorithm samples spanning forests whose root distribution
# matches the same fundamental matrix. One forest gives a root for every node.

# In[3]:

G = fjlocal.erdos_renyi(10, 0.3, seed=4, directed=True)
P = fjlocal.root_frequencies(G, 50_000, seed=5)
F = fundamental_matrix(G)
print(np.abs(P - F).max())


# In[4]:

H = fjlocal.barabasi_albert(500, 3, seed=7)
sh = np.random.default_rng(7).random(H.n)
est = fjlocal.forest_sample(H, sh, 2000, seed=8)
print(np.abs(est.z_hat - solve_dense(H, sh)).max())
