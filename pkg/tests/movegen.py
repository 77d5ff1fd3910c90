"""Enumerate every move that applies to a small arrow diagram."""

from __future__ import annotations

from itertools import product

from kbsm import arrowdiag as ad
from kbsm.arrowdiag import MoveSpec


def candidate_moves(d: ad.ArrowDiagram) -> list[MoveSpec]:
    out: list[MoveSpec] = []
    ns = len(d.strands)
    lens = [len(s.visits) for s in d.strands]
    for i in range(ns):
        for pos in range(lens[i] + 1):
            for sign, over_first in product((1, -1), (True, False)):
                out.append(MoveSpec("R1+", strand=i, pos=pos, sign=sign, over_first=over_first))
            out.append(MoveSpec("ARROW+", strand=i, pos=pos, direction=1))
            out.append(MoveSpec("ARROW+", strand=i, pos=pos, direction=-1))
            for half, gap in product((0, 1), range(d.half + 1)):
                out.append(MoveSpec("FINGER+", strand=i, pos=pos, half=half, gap=gap))
        for pos in range(lens[i]):
            out.append(MoveSpec("R1-", strand=i, pos=pos))
            out.append(MoveSpec("ARROW-", strand=i, pos=pos))
            out.append(MoveSpec("SLIDE", strand=i, pos=pos))
        for end in (0, 1):
            out.append(MoveSpec("BOUNDARY_ARROW", strand=i, end=end))
        out.append(MoveSpec("FINGER-", strand=i))
    for i, j in product(range(ns), repeat=2):
        for p1, p2 in product(range(lens[i] + 1), range(lens[j] + 1)):
            for sign, par in product((1, -1), (True, False)):
                out.append(MoveSpec("R2+", strand1=i, pos1=p1, strand2=j, pos2=p2, sign=sign, parallel=par))
        for p1, p2 in product(range(lens[i]), range(lens[j])):
            out.append(MoveSpec("R2-", strand1=i, pos1=p1, strand2=j, pos2=p2))
    locs = [(i, p) for i in range(ns) for p in range(lens[i])]
    for a in range(len(locs)):
        for b in range(a + 1, len(locs)):
            for c in range(b + 1, len(locs)):
                out.append(MoveSpec("R3", locations=(locs[a], locs[b], locs[c])))
    n = d.boundary_points
    for p in range(n):
        out.append(MoveSpec("BOUNDARY_CROSSING", points=(p, (p + 1) % n)))
    return out


def applicable(d: ad.ArrowDiagram) -> list[tuple[MoveSpec, ad.ArrowDiagram]]:
    found = []
    for mv in candidate_moves(d):
        try:
            found.append((mv, ad.apply_move(d, mv)))
        except ad.PatternMismatch:
            pass
    return found
