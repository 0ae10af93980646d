# coding: utf-8

# # Canonical form of a block matrix
#
# A block matrix is an m1 x n1 grid of m2 x n2 blocks. Local invertible
# transforms (U ⊗ V) M (W ⊗ X) do not change its rank, its Schmidt rank or
# the ranks of either partial transpose, so we can bring it into a staircase
# shape first and read the bounds off the pieces.

# In[1]:

from rankcanon import BlockMatrix, ExactMatrix
from rankcanon.block_matrix import partial_transpose_B, schmidt_rank
from rankcanon.canonical_form import check_conjecture, column_reduce, decompose, to_canonical, verify_induction_chain
from rankcanon.quantum_states import random_block_matrix


# Start with a 3 x 3 grid of 2 x 2 blocks whose Schmidt rank is 4.

# In[2]:

M = random_block_matrix(3, 3, 2, 2, schmidt_rank=4, seed=11)
print(M)
print("Sr =", schmidt_rank(M), " rank =", M.rank(), " rank of block transpose =", partial_transpose_B(M).rank())


# In[3]:

res = to_canonical(M)
print(res.N)
print("profile p =", res.profile.p, " k =", res.profile.k)
print("column mixings needed:", res.mixings)
print("certificate replays exactly:", res.replays())


# A generic matrix lands entirely in the first step. This sparse 2 x 3 grid
# needs two steps, so the column reduction and the split into parts have
# something to show.

# In[4]:

def blk(*entries):
    return ExactMatrix(2, 2, list(entries))

S = BlockMatrix([[blk(0, 0, 0, 0), blk(0, 1, 0, 0), blk(1, 0, 0, 0)],
                 [blk(0, 1, 0, 1), blk(0, 1, 0, 1), blk(0, 0, 1, 0)]])
red = column_reduce(to_canonical(S))
print("profile k =", red.profile.k)
parts = decompose(red)
print("r =", red.profile.r)
for s, (part, tail) in enumerate(zip(parts.parts, parts.tails)):
    print(f"part {s}: rank {part.rank()}, tail Schmidt rank {schmidt_rank(tail) if not tail.is_empty() else 0}")


# Every rank relation along the way is checked exactly:

# In[5]:

print(verify_induction_chain(red, parts).summary())
print(check_conjecture(S))


# The flip matrix has rank 1 but its block transpose has rank 4, so the
# bound r(M^Γ) <= Sr(M) r(M) is attained.

# In[6]:

flip = BlockMatrix([[ExactMatrix.unit(2, 2, i, j) for j in range(2)] for i in range(2)])
print(check_conjecture(flip))
