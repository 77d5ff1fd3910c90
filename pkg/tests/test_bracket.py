import json
import random
from itertools import product

import pytest

from kbsm import bracket as br
from kbsm.acceptance import random_diagrams, standard_corpus
from kbsm.laurent import ONE, A, LaurentPoly, divide_exact

DELTA = -(A**2) - A**-2


def oracle(d: br.PlanarDiagram) -> LaurentPoly:
    """Plain state sum: loops counted by walking a graph of crossing slots."""
    n = len(d.crossings)
    where: dict[int, list[tuple[int, int]]] = {}
    for ci, c in enumerate(d.crossings):
        for k, e in enumerate(c.edges):
            where.setdefault(e, []).append((ci, k))
    total = LaurentPoly()
    for state in product("AB", repeat=n):
        nbr: dict[tuple[int, int], list[tuple[int, int]]] = {}

        def link(x, y):
            nbr.setdefault(x, []).append(y)
            nbr.setdefault(y, []).append(x)

        for slots in where.values():
            if len(slots) == 2:
                link(*slots)
            else:  # an edge that starts and ends in the same crossing slot pair
                link(slots[0], slots[0])
        for ci, (c, s) in enumerate(zip(d.crossings, state)):
            o = c.over[0]
            if s == "A":
                pairs = [((o + 1) % 4, (o + 2) % 4), ((o + 3) % 4, o)]
            else:
                pairs = [(o, (o + 1) % 4), ((o + 2) % 4, (o + 3) % 4)]
            for a, b in pairs:
                link((ci, a), (ci, b))
        seen = set()
        loops = 0
        for start in nbr:
            if start in seen:
                continue
            loops += 1
            stack = [start]
            while stack:
                x = stack.pop()
                if x in seen:
                    continue
                seen.add(x)
                stack.extend(nbr[x])
        loops += d.free_loops
        a_count = state.count("A")
        term = A ** (a_count - (n - a_count)) * DELTA**loops
        total = total + term
    return total * (-(A**3)) ** d.kinks if d.kinks >= 0 else total * (-(A**-3)) ** (-d.kinks)


def jones(word):
    """Jones polynomial as {exponent of t: coeff} with t = A^-4, via the bracket."""
    d = br.braid_closure(word)
    w = sum(1 if g > 0 else -1 for g in word)
    f = (-(A**3)) ** (-w) if w <= 0 else (-(A**-3)) ** w
    f = f * divide_exact(br.bracket(d), DELTA)
    return {-e / 4: c for e, c in f.items()}


@pytest.mark.parametrize("name", sorted(standard_corpus()))
def test_corpus_against_oracle(name):
    d = standard_corpus()[name]
    assert br.bracket_statesum(d) == oracle(d) == br.bracket_recursive(d)


@pytest.mark.parametrize("d", random_diagrams(40, seed=99, max_crossings=7))
def test_random_against_oracle(d):
    assert br.bracket(d) == oracle(d)


def test_known_values():
    assert br.bracket(br.PlanarDiagram((), 0, 0)) == ONE
    assert br.bracket(br.PlanarDiagram((), 1, 0)) == DELTA
    # right-handed trefoil: V = -t^-4 + t^-3 + t^-1 (left) / -t^4 + t^3 + t (right)
    assert jones([1, 1, 1]) in ({1: 1, 3: 1, 4: -1}, {-1: 1, -3: 1, -4: -1})
    assert jones([1, 1, 1]) != jones([-1, -1, -1])
    assert jones([1, -2, 1, -2]) == {-2: 1, -1: -1, 0: 1, 1: -1, 2: 1}
    hopf = jones([1, 1])
    assert set(hopf.values()) == {-1} and len(hopf) == 2


def test_mirror_and_union():
    for d in list(standard_corpus().values())[:12]:
        assert br.bracket(br.mirror(d)) == br.bracket(d).bar()
    t = br.braid_closure([1, 1, 1])
    h = br.braid_closure([1, 1])
    assert br.bracket(br.disjoint_union(t, h)) == br.bracket(t) * br.bracket(h)


def test_kinks():
    t = br.braid_closure([1, 1, 1])
    assert br.bracket(br.add_kink(t, 1)) == -(A**3) * br.bracket(t)
    assert br.bracket(br.add_kink(t, -1)) == -(A**-3) * br.bracket(t)
    assert br.bracket(br.add_kink(br.add_kink(t, 1), -1)) == br.bracket(t)
    framed = br.PlanarDiagram(t.crossings, 0, -2)
    assert br.bracket(framed) == A**-6 * br.bracket(t)


def test_resolve_is_skein_relation():
    d = br.braid_closure([1, -2, 1, -2])
    for cid in range(d.n_crossings):
        lhs = br.bracket(d)
        rhs = A * br.bracket(br.resolve(d, cid, "A")) + A**-1 * br.bracket(br.resolve(d, cid, "B"))
        assert lhs == rhs


def test_parallel_state_sum():
    d = br.braid_closure([1, -2, 3] * 4)
    assert br.bracket_statesum(d, workers=2) == br.bracket_statesum(d) == br.bracket_recursive(d)


def test_json_round_trip():
    d = br.braid_closure([1, 1, 2, -1])
    data = json.loads(d.to_json())
    assert set(data) == {"crossings", "free_loops", "kinks"}
    assert set(data["crossings"][0]) == {"edges", "over"}
    assert br.PlanarDiagram.from_json(d.to_json()) == d


@pytest.mark.parametrize(
    "data,fragment",
    [
        ({"crossings": [{"edges": [0, 1, 2, 3], "over": [0, 2]}]}, "label"),
        ({"crossings": [{"edges": [0, 0, 1, 1], "over": [0, 2]}, {"edges": [2, 3, 2, 3], "over": [0, 2]}]}, ""),
        ({"crossings": [{"edges": [0, 1, 0, 1], "over": [0, 1]}]}, "over"),
        ({"crossings": [], "free_loops": -1}, ""),
    ],
)
def test_invalid_diagrams_rejected(data, fragment):
    with pytest.raises(br.DiagramError) as info:
        br.PlanarDiagram.from_dict(data)
    assert fragment in str(info.value)


def test_nonplanar_rejected():
    # every label appears twice, but the cyclic orders admit no planar embedding
    d = br.PlanarDiagram((br.Crossing((0, 1, 2, 1), (0, 2)), br.Crossing((0, 3, 2, 3), (0, 2))), 0, 0)
    problems = br.validate(d)
    assert any("planar" in p for p in problems)
