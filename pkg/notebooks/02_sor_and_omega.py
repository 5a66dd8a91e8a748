# coding: utf-8

# # Over-relaxed push and choosing omega
#
# Scaling each push by `omega` trades monotone convergence for speed.
# At `omega = 1` the method is exactly the plain push.

# In[1]:

import numpy as np

import fjlocal
from fjlocal.sor import omega_from_mu

G = fjlocal.erdos_renyi(2000, 0.005, seed=6)
s = np.random.default_rng(6).random(G.n)

for omega in (1.0, 1.2, 1.5, 1.8):
    res = fjlocal.improved_blisor(G, s, 1e-2, omega=omega)
    print(f"omega={omega}  pushes={res.pushes}")


# For undirected graphs the Jacobi spectral radius `mu` gives the classic
# optimum `1 + (mu / (1 + sqrt(1 - mu^2)))^2`.

# In[2]:

print(omega_from_mu(0.5), omega_from_mu(0.9))
sel = fjlocal.omega_opt_dense(fjlocal.grid_2d(20, 20))
print(sel)


# No formula applies to digraphs, so we sweep. Large omega can diverge on
# directed input; the sweep records those points as `inf`.

# In[3]:

D = fjlocal.erdos_renyi(300, 0.02, seed=3, directed=True)
sd = np.random.default_rng(3).random(D.n)
sweep = fjlocal.omega_sweep(D, sd, 1e-2, grid=np.round(np.arange(1.0, 1.91, 0.1), 2))
for row in sweep.sweep_table:
    print(row[0], row[1])
print("chosen", sweep.omega)
