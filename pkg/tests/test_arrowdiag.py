import json
import random

import pytest

from kbsm import arrowdiag as ad
from kbsm import bracket as br
from kbsm.arrowdiag import Arrow, ArrowDiagram, CrossVisit, MoveSpec, Strand
from kbsm.laurent import A, LaurentPoly
from movegen import applicable


@pytest.mark.parametrize("name", ad.GENERATORS)
def test_generators_are_valid(name):
    d = ad.generator(name)
    assert ad.validate(d) == []
    assert ArrowDiagram.from_json(d.to_json()) == d


def test_generator_parities():
    assert ad.arrow_count_parity(ad.generator("x")) == (1,)
    assert ad.arrow_count_parity(ad.generator("K")) == (0,)
    assert ad.arrow_count_parity(ad.generator("K'")) == (1,)
    assert ad.arrow_count_parity(ad.generator("empty")) == ()


def test_t_reduces_to_x():
    coeff, rest = ad.reduce_kinks(ad.generator("t"))
    assert coeff == -(A**-3)
    assert rest == ad.generator("x")


@pytest.mark.parametrize(
    "diagram,message",
    [
        (ArrowDiagram((Strand((), (0, 1)),), {}, 3), "odd number of boundary points"),
        (ArrowDiagram((Strand((), (0, 1)),), {}, 4), "lacks antipode"),
        (ArrowDiagram((Strand((CrossVisit(0, True),)),), {0: 1}), "visited 1 time"),
        (ArrowDiagram((Strand((CrossVisit(0, True), CrossVisit(0, True))),), {0: 1}), "over/under"),
        (ArrowDiagram((Strand((CrossVisit(0, True), CrossVisit(0, False))),), {}), "has no sign"),
        (ArrowDiagram((Strand(),), {5: 1}), "unvisited crossing"),
        (ArrowDiagram((Strand((), (0, 2)),), {}, 4), "has no arc-ends"),
    ],
)
def test_validation_messages(diagram, message):
    problems = ad.validate(diagram)
    assert any(message in p for p in problems), problems


def random_walk(start: str, steps: int, rng: random.Random):
    d = ad.generator(start)
    for _ in range(steps):
        moves = applicable(d)
        if not moves:
            return
        by_kind: dict[str, list] = {}
        for mv, e in moves:
            by_kind.setdefault(mv.kind, []).append((mv, e))
        mv, e = rng.choice(by_kind[rng.choice(sorted(by_kind))])
        yield d, mv, e
        d = e


@pytest.mark.parametrize("seed", range(6))
@pytest.mark.parametrize("start", ["x", "t", "K", "K'"])
def test_move_walks(start, seed):
    rng = random.Random(seed * 31 + len(start))
    for d, mv, e in random_walk(start, 5, rng):
        assert ad.validate(e) == []
        assert e.endpoint_pairs - d.endpoint_pairs == ad.PAIR_DELTA[mv.kind]
        assert sorted(ad.arrow_count_parity(e)) == sorted(ad.arrow_count_parity(d))
        assert MoveSpec.from_dict(json.loads(json.dumps(mv.to_dict()))) == mv
        try:
            inverse = ad.inverse_move(d, mv)
        except ValueError:
            continue
        assert ad.equivalent(ad.apply_move(e, inverse), d), (mv, d, e)


def two_arcs_with_crossing():
    d = ad.apply_move(ad.generator("K"), MoveSpec("FINGER+", strand=0, pos=0, half=0, gap=0))
    return ad.apply_move(d, MoveSpec("R2+", strand1=0, pos1=0, strand2=1, pos2=0, sign=1, parallel=True))


def test_boundary_crossing_swaps_levels_and_keeps_sign():
    d = two_arcs_with_crossing()
    found = [(mv, e) for mv, e in applicable(d) if mv.kind == "BOUNDARY_CROSSING"]
    assert found
    for mv, e in found:
        old = {c for c in d.crossing_ids()}
        new = e.crossing_ids() - old
        assert len(new) == 1
        (c,) = new
        removed = (old - e.crossing_ids()).pop()
        # the crossing keeps its oriented sign but over and under trade places
        assert e.sign_map[c] == d.sign_map[removed]
        assert ad.equivalent(ad.apply_move(e, ad.inverse_move(d, mv)), d)


def test_boundary_arrow_reverses_direction():
    kp = ad.generator("K'")
    e = ad.apply_move(kp, MoveSpec("BOUNDARY_ARROW", strand=0, end=1))
    assert e.strands[0].visits == (Arrow(-1),)


def test_moves_reject_bad_locations():
    x = ad.generator("x")
    with pytest.raises(ad.PatternMismatch):
        ad.apply_move(x, MoveSpec("R1-", strand=0, pos=0))
    with pytest.raises(ad.PatternMismatch):
        ad.apply_move(x, MoveSpec("BOUNDARY_ARROW", strand=0, end=0))
    with pytest.raises(ad.PatternMismatch):
        ad.apply_move(x, MoveSpec("ARROW+", strand=3, pos=0))
    with pytest.raises(ValueError):
        MoveSpec("R4")


def test_planar_round_trip_preserves_bracket():
    for word in ([1, 2, 1], [1, -2, 1, -2], [1, 1, 1], [1, 1]):
        pd = br.braid_closure(word)
        assert br.bracket(ad.to_planar(ad.from_planar(pd))) == br.bracket(pd)


def test_planar_moves_match_bracket():
    rng = random.Random(5)
    checked = 0
    for _ in range(200):
        strands = rng.randint(2, 3)
        word = [rng.choice((1, -1)) * rng.randint(1, strands - 1) for _ in range(rng.randint(1, 4))]
        d = ad.from_planar(br.braid_closure(word, strands))
        base = br.bracket(ad.to_planar(d))
        k = rng.randrange(len(d.strands))
        sign = rng.choice((1, -1))
        e = ad.apply_move(d, MoveSpec("R1+", strand=k, pos=rng.randint(0, len(d.strands[k].visits)), sign=sign))
        try:
            planar = ad.to_planar(e)
        except br.DiagramError:
            continue
        assert br.bracket(planar) == LaurentPoly({3 * sign: -1}) * base
        checked += 1
    assert checked > 20


def test_to_planar_refuses_arrows():
    with pytest.raises(br.DiagramError):
        ad.to_planar(ad.generator("x"))
