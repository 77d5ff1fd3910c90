from kbsm import bracket as br
from kbsm.laurent import divide_exact

# ### Kauffman bracket of planar diagrams
#
# Diagrams come from braid closures; `i` is a positive crossing on strands i, i+1 and `-i` a negative one.
# The bracket is normalised by <empty> = 1, so a single circle gives -A^2 - A^-2.

diagrams = {
    "unknot": br.PlanarDiagram((), 1, 0),
    "Hopf link": br.braid_closure([1, 1]),
    "right trefoil": br.braid_closure([1, 1, 1]),
    "left trefoil": br.braid_closure([-1, -1, -1]),
    "figure-eight": br.braid_closure([1, -2, 1, -2]),
}

for name, d in diagrams.items():
    value = br.bracket_statesum(d)
    assert value == br.bracket_recursive(d)
    print(f"{name:14s} {value}")

# Dividing by the circle value gives the bracket normalised at the unknot.

print("trefoil / delta =", divide_exact(br.bracket(diagrams["right trefoil"]), br.DELTA))

# ### Framing
#
# A positive curl multiplies the bracket by -A^3 and a negative curl by -A^-3.

t = diagrams["right trefoil"]
print("positive curl factor:", divide_exact(br.bracket(br.add_kink(t, 1)), br.bracket(t)))
print("negative curl factor:", divide_exact(br.bracket(br.add_kink(t, -1)), br.bracket(t)))

# Diagrams serialise to JSON; the CLI reads the same format (`kbsm bracket file.json`).

print(diagrams["Hopf link"].to_json())
