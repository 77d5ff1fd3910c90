from kbsm import arrowdiag as ad
from kbsm.arrowdiag import MoveSpec

# ### Arrow diagrams
#
# The generators of the skein module as diagrams: `x` is a circle with one arrow, `t` adds a curl,
# `K` and `K'` are arcs joining an antipodal pair of boundary points.

for name in ad.GENERATORS:
    d = ad.generator(name)
    print(f"{name:6s} parity {ad.arrow_count_parity(d)}  {d.to_json()}")

coeff, rest = ad.reduce_kinks(ad.generator("t"))
print("t =", coeff, "* x:", rest == ad.generator("x"))

# ### Moves
#
# Moves are explicit rewrites. Pushing an arrow through the glued boundary reverses it; a finger move
# adds two antipodal pairs of endpoints.

kp = ad.generator("K'")
pushed = ad.apply_move(kp, MoveSpec("BOUNDARY_ARROW", strand=0, end=1))
print(pushed.strands)

finger = ad.apply_move(kp, MoveSpec("FINGER+", strand=0, pos=0, half=0, gap=0))
print("endpoint pairs:", kp.endpoint_pairs, "->", finger.endpoint_pairs)
back = ad.apply_move(finger, ad.inverse_move(kp, MoveSpec("FINGER+", strand=0, pos=0, half=0, gap=0)))
print("inverse restores the diagram:", ad.equivalent(back, kp))
