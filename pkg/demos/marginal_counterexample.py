# coding: utf-8

# # Three marginals that fit together but have no joint state
#
# Take ρ_AB maximally mixed on two qubits and ρ_AC, ρ_BC both Bell states.
# Their single-party marginals all agree (each is I/2), yet the ranks
# (4, 1, 1) break r(ρ_AC) r(ρ_BC) >= r(ρ_AB), so no state on ABC has them.

# In[1]:

from rankcanon.inequalities import marginal_necessary_check
from rankcanon.quantum_states import max_entangled, maximally_mixed


# In[2]:

bell = max_entangled(2)
rep = marginal_necessary_check(maximally_mixed([2, 2]), bell, bell)
print(rep)


# In[3]:

print("ranks:", rep.ranks)
print("one-party marginals consistent:", rep.marginals_consistent)
print("verdict:", rep.verdict)
