"""
Differential spectrum of x^r (1 + chi(x))
=========================================

With r = (q+1)/4 the map kills every non-square, yet its derivative in
direction 1 is almost injective away from b = 0.
"""
from binomspec import build_binomial, make_field
from binomspec import diff

f = make_field(23)
F = build_binomial(f, u=1)
print("F on F_23:", F.outputs.tolist())

row = diff.ddt_row(F, 1)
print("delta(1, b):", row.tolist())

spec = diff.diff_spectrum(F)
print("spectrum", spec, "vs closed form", diff.predict_diff_spectrum_u1(f))

# every row a != 0 is a relabelling of row 1, so one row gives the whole table
print("row 5 reduces to row 1:", diff.verify_row_reduction(f, 1, 5))
print("uniformity from the full table:", diff.differential_uniformity(F))

# q = 3 (mod 8) gives locally-PN maps, q = 7 (mod 8) locally-APN ones
for q in (11, 19, 23, 31):
    t = build_binomial(make_field(q), 1)
    print(q, diff.classify_locality(t, "punctured"))

# splitting the solutions by quadrant explains the counts
b = 3
print("b = 3:", diff.quadrant_counts(f, b))
pred = diff.predict_quadrants_u1(f, b)
print("predicted:", pred.as_tuple(), "witnesses", pred.witnesses)
