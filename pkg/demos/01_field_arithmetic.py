"""
Arithmetic in F_{p^n}
=====================

Elements are integers 0..q-1 read as base-p coefficient vectors, so whole
fields fit in a numpy array and every operation broadcasts.
"""
import numpy as np

from binomspec import make_field

# F_27 uses the first irreducible cubic in lexicographic order, constant term first
f = make_field(3, 3)
print(f, "modulus", f.modulus, "r =", f.r)

x = f.elements()
print("index 5 has coefficients", f.coeffs(5))

# Frobenius: x^q == x for every element
assert np.array_equal(f.pow(x, f.q), x)

# chi is a lookup table; half the nonzero elements are squares
chi = f.chi_table
print("squares:", (chi == 1).sum(), "non-squares:", (chi == -1).sum())

# for q = 3 (mod 4) a square root is just a power
a = f.square(11)
print("sqrt of", a, "->", f.sqrt_if_square(a))

# the scalar wrapper is handy at a prompt
e = f.element(7)
print(e, "*", e.inverse(), "=", e * e.inverse())

# the four quadrants S_ij = {x : chi(x) = (-1)^i, chi(x+1) = (-1)^j}
print("quadrant sizes (00, 01, 10, 11):", f.quadrant_sizes())
