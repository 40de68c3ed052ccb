"""
Boomerang spectrum and the sum Gamma
====================================

For q = 3 (mod 8) the boomerang table vanishes; for q = 7 (mod 8) the row
a = 1 is fixed by one restricted character sum.
"""
from binomspec import boom, build_binomial, charsum, make_field

F11 = build_binomial(make_field(11), 1)
print("beta on F_11:", boom.boomerang_uniformity(F11))

for q in (7, 23, 31, 47, 167):
    f = make_field(q)
    g = charsum.gamma(f)
    got = boom.boom_spectrum(build_binomial(f, 1))
    print(f"q={q:4d} Gamma={g:4d} {got}  closed form {boom.predict_boom_spectrum(f, g)}")

# Gamma also equals (S1 - S2 - 1) / 2 with two unrestricted sums
f = make_field(7, 3)
print("F_343:", charsum.gamma_decomposition(f), "bound holds:", charsum.gamma_bound_holds(f))

# only four quadrant pairs can carry boomerang solutions
f = make_field(47)
for b in (1, 5, 9):
    bc = boom.boom_quadrant_counts(f, b)
    nonzero = {k: v for k, v in bc.counts.items() if v}
    print("b =", b, nonzero, "pair prediction", boom.predict_boom_pair_counts(f, b))
