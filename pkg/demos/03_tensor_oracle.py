"""Brute-force count of invariant two-row tensors, compared with the closed formula.

The oracle works in (R^(2n+2))^(2k): it symmetrizes rows, antisymmetrizes
columns, then keeps tensors that are J-trace free and killed by the
derivation action of J.  Everything is exact integer elimination.
"""

import time

from killtensors import tensorlab
from killtensors.repdim import cpn_killing_dim

for n, k in [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (3, 1), (2, 3)]:
    t = time.perf_counter()
    young = tensorlab.young_two_row_space(n, k)
    dim = tensorlab.oracle_cpn_dim(n, k)
    print(f"n={n} k={k}: two-row space {young.dim:>4}, invariant {dim:>4}, formula {cpn_killing_dim(n, k):>4}"
          f"  ({time.perf_counter() - t:.2f}s)")

# symmetric products of Killing fields span everything
for n, k in [(1, 2), (1, 3), (2, 2), (2, 3)]:
    g = tensorlab.generation_rank(n, k)
    print(f"n={n} k={k}: source {g.source_dim} target {g.target_dim} rank {g.rank} kernel {g.kernel_dim}")

# SU(3) pieces of the rank-2 tensors on CP_2, by Casimir eigenvalue
print(tensorlab.su_isotypic_dims(2, 2))

try:
    tensorlab.oracle_cpn_dim(5, 4)
except tensorlab.OracleTooLarge as exc:
    print(exc)
