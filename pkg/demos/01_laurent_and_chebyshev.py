from kbsm import A, TPoly, chebyshev_S, parse, poly_gcd, to_chebyshev, to_monomial
from kbsm.laurent import evaluate, monic_division

# ### Laurent polynomials
#
# Coefficients live in Z[A, A^-1]. Polynomials print with the highest power of `A` first,
# and the printed text parses back to the same value.

c2 = A**3 + A**-3
d2 = parse("A^3 + 2A + 2A^-1 + A^-3")[0]
print("c_2 =", c2)
print("d_2 =", d2)
print("c_2 at A = 2:", evaluate(c2, 2))

# The gcd is reported up to a unit, normalised to lowest exponent 0 and a positive leading coefficient.

print("gcd(c_2, d_2) =", poly_gcd(c2, d2))

# Division by a polynomial whose extreme coefficients are +-1 leaves a remainder in any chosen
# exponent window of the right width.

q, r = monic_division(A**7, c2, -3)
print(f"A^7 = ({q}) * c_2 + ({r})")

# ### Chebyshev polynomials
#
# `S_n` obeys S_0 = 1, S_1 = t, S_{n+1} = t S_n - S_{n-1}. Every `TPoly` carries its basis tag.

for n in range(5):
    print(f"S_{n} =", chebyshev_S(n))

p = TPoly({3: A, 1: 2})
print("monomial:", p)
print("Chebyshev:", to_chebyshev(p))
print("round trip ok:", to_monomial(to_chebyshev(p)) == p)
