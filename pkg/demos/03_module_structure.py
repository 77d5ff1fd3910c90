from kbsm import A, Basis, TPoly, normal_form, rank_over_QA, relation, split_obstruction, torsion_witness
from kbsm.modpres import manifold_catalog, marche_type_check

# ### The relations
#
# Each relation expresses c_n S_n in terms of S_0 (n even) or S_1 (n odd).

for n in (2, 3, 4):
    r = relation(n)
    print(f"n = {n}: c = {r.c}; d = {r.d}")
    print("   ", r.expression)

# ### Normal forms
#
# Reducing every coordinate n >= 2 modulo c_n gives a unique representative.

p = TPoly({2: A**5}, Basis.CHEBYSHEV)
print("nf(A^5 S_2) =", normal_form(p))
print("nf(relation 5) is zero:", normal_form(relation(5).expression).is_zero())

# ### Rank over Q(A)
#
# Over the rational functions every S_n collapses onto S_0 or S_1; with the two free knots this gives rank 4.

report = rank_over_QA(6)
print("rank:", report.rank)
for e in report.entries:
    print(f"  S_{e.n} = {e.ratio} * S_{e.eps}")

# ### Torsion
#
# For even n the element below is nonzero but dies after multiplying by A + A^-1.

w = torsion_witness(2)
print("element:", w.element)
print("annihilator:", w.annihilator)
print("annihilated normal form is zero:", normal_form(w.element.scale(w.annihilator)).is_zero())
print("of (A^k - A^-k)-type with k =", marche_type_check(w.annihilator))

for n in range(2, 12):
    w = torsion_witness(n)
    print(f"  n = {n:2d}: annihilator {w.annihilator if w else '(none)'}")

# ### The splitting obstruction
#
# The ideal (c_n/g, d_n/g) is not principal: modulo 2 both generators share a non-unit factor,
# while over the integers their gcd is 1.

for n in (2, 3):
    v = split_obstruction(n)
    c = v.certificate
    print(f"n = {n}: {v.ideal} -> {v.status.value}; mod {c.prime} common factor {c.factor}")

# ### A positive control
#
# S^1 x S^2 has torsion annihilated by 1 - A^2k, which the type check recognises.

s1s2 = manifold_catalog()[0]
print([(r.k, r.marche_type) for r in s1s2.torsion])
