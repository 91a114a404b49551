"""Dimensions of Killing-tensor spaces on spheres and complex projective spaces."""

from killtensors.repdim import branching_terms, cpn_killing_dim, cpn_killing_dim_closed, sphere_killing_dim

# rank-k Killing tensors on the round n-sphere
for n in range(1, 6):
    print(f"S^{n}:", [sphere_killing_dim(n, k) for k in range(6)])

# on CP_n the count is a difference of sums of squares of SL(n+1) dimensions
n, k = 2, 3
terms = branching_terms(n, k)
print([(t.p, t.q, t.dim_factor) for t in terms])
print("CP_2, rank 3:", cpn_killing_dim(n, k))

print()
print("     " + "".join(f"{k:>10}" for k in range(1, 6)))
for n in range(1, 8):
    print(f"CP_{n} " + "".join(f"{cpn_killing_dim(n, k):>10}" for k in range(1, 6)))

# fixed-rank polynomials agree with the sum for any n
assert all(cpn_killing_dim(n, 3) == cpn_killing_dim_closed(3, n) for n in range(1, 50))
