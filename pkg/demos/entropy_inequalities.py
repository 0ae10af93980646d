# coding: utf-8

# # Zero-entropy inequalities
#
# The 0-entropy of a subsystem is log2 of the rank of its reduced state.
# All checks below compare ranks as integers, so nothing is rounded.

# In[1]:

from rankcanon.inequalities import check_multipartite_suite, check_rank_inequality, check_saturation, check_tripartite_suite
from rankcanon.quantum_states import basis_state, ghz, random_density


# In[2]:

rho = random_density([2, 2, 2], rank=3, seed=5)
for rep in check_rank_inequality(rho):
    print(rep)


# The whole tripartite suite on a few random states:

# In[3]:

for seed in range(5):
    rho = random_density([2, 2, 3], rank=1 + seed, seed=seed)
    reps = check_tripartite_suite(rho)
    print(f"seed {seed}: {sum(r.holds for r in reps)}/{len(reps)} hold, {sum(r.saturated for r in reps)} saturated")


# In[4]:

rho4 = random_density([2, 2, 2, 2], rank=2, seed=1)
reps = check_multipartite_suite(rho4)
print(len(reps), "four-party inequalities, all hold:", all(r.holds for r in reps))


# Saturation: GHZ is pure but r_B r_C = 4 differs from r_A = 2, so it is
# strict. A product basis state meets every class condition with equality.

# In[5]:

print(check_saturation(ghz(3)))
print(check_saturation(basis_state([2, 2, 2], [0, 0, 0]), "ppt"))
