"""
Sum formulas in the Euler characteristic basis
==============================================

Compute the sum formula for a handful of Weyl modules of type C3 at
p = 3 and straighten each reflected weight into the dominant chamber.
"""

from weylforge import jsf, parse_system, straighten
from weylforge.charalg import format_terms

c3 = parse_system("C3")

# the dot action either lands on a wall (sign 0) or on a dominant weight
for mu in [(-2, 1, 0), (1, -3, 2), (0, 0, -1)]:
    s = straighten(c3, mu)
    print(mu, "->", s.sign, s.dominant)

# weights in the lowest alcove give an empty sum
for lam in [(0, 0, 0), (0, 1, 0), (1, 0, 1), (0, 0, 2), (1, 1, 1), (0, 3, 0), (2, 0, 2), (2, 1, 2)]:
    print(f"{lam}: {format_terms(jsf(c3, lam, 3).items()) or '0'}")
