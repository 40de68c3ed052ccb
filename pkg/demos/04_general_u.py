"""
Other values of u
=================

For u outside {0, 1, -1} the uniformity stays at most 5, and the maps
with uniformity 5 are permutations.
"""
from collections import Counter

from binomspec import build_binomial, diff, is_permutation, make_field, predict_permutation, special_u

f = make_field(43)
sign = (-1) ** f.r
tally = Counter()
for u in range(2, f.q - 1):
    F = build_binomial(f, u)
    branch = 4 if f.chi(f.add(1, u)) == sign * f.chi(f.sub(1, u)) else 5
    tally[branch, diff.differential_uniformity(F), is_permutation(F)] += 1
    assert is_permutation(F) == predict_permutation(f, u)

for (branch, d, perm), n in sorted(tally.items()):
    print(f"bound {branch}: delta={d} permutation={perm}  x{n}")

# a pair of u values that lands in the permutation branch with delta <= 4
for u in special_u(f):
    F = build_binomial(f, u)
    print("special u", u, "delta", diff.differential_uniformity(F), "perm", is_permutation(F))

# u and -u share their spectrum
u = 10
print(diff.diff_spectrum(build_binomial(f, u)), diff.diff_spectrum(build_binomial(f, f.neg(u))))
