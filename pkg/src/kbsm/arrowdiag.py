"""Arrow diagrams for links in F x S^1 and in the twisted bundle RP^2 x~ S^1.

A diagram is a list of strands.  Each strand is an oriented sequence of
visits: a pass through a crossing (over or under) or an arrow mark whose
direction is ``+1`` along the strand orientation and ``-1`` against it.
Closed strands have no ends.  Arcs end on the boundary of the disk, whose
``boundary_points = 2m`` points are numbered counterclockwise; point ``i``
is glued to its antipode ``(i + m) % 2m``.  Crossing signs are the usual
oriented signs computed from the stored strand orientations.

Moves are local rewrites at explicit locations (see :class:`MoveSpec`).
The move catalog for the twisted bundle (``BOUNDARY_ARROW``, ``FINGER+/-``,
``BOUNDARY_CROSSING``) follows the gluing ``(x, y) ~ (-x, conj(y))``: an
arrow pushed through the boundary reverses, and a crossing pushed through
the boundary swaps over and under while keeping its oriented sign.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from itertools import permutations, product
from typing import Optional, Union

from .bracket import Crossing, PlanarDiagram, DiagramError
from .bracket import validate as validate_planar
from .laurent import ONE, LaurentPoly

__all__ = [
    "CrossVisit",
    "Arrow",
    "Strand",
    "ArrowDiagram",
    "MoveSpec",
    "PatternMismatch",
    "MOVE_KINDS",
    "PAIR_DELTA",
    "validate",
    "apply_move",
    "inverse_move",
    "arrow_count_parity",
    "components",
    "reduce_kinks",
    "to_planar",
    "from_planar",
    "generator",
    "GENERATORS",
    "canonical_key",
    "equivalent",
]


@dataclass(frozen=True)
class CrossVisit:
    crossing: int
    over: bool


@dataclass(frozen=True)
class Arrow:
    direction: int = 1


Visit = Union[CrossVisit, Arrow]


@dataclass(frozen=True)
class Strand:
    visits: tuple = ()
    ends: Optional[tuple[int, int]] = None

    def __post_init__(self):
        object.__setattr__(self, "visits", tuple(self.visits))
        if self.ends is not None:
            object.__setattr__(self, "ends", tuple(self.ends))

    @property
    def closed(self) -> bool:
        return self.ends is None


@dataclass(frozen=True)
class ArrowDiagram:
    strands: tuple[Strand, ...] = ()
    signs: tuple[tuple[int, int], ...] = ()
    boundary_points: int = 0

    def __post_init__(self):
        object.__setattr__(self, "strands", tuple(self.strands))
        signs = self.signs.items() if isinstance(self.signs, dict) else self.signs
        object.__setattr__(self, "signs", tuple(sorted((int(c), int(s)) for c, s in signs)))

    @property
    def sign_map(self) -> dict[int, int]:
        return dict(self.signs)

    @property
    def half(self) -> int:
        return self.boundary_points // 2

    def antipode(self, point: int) -> int:
        return (point + self.half) % self.boundary_points

    def crossing_ids(self) -> set[int]:
        return {v.crossing for s in self.strands for v in s.visits if isinstance(v, CrossVisit)}

    def arrow_count(self) -> int:
        return sum(isinstance(v, Arrow) for s in self.strands for v in s.visits)

    @property
    def endpoint_pairs(self) -> int:
        return self.boundary_points // 2

    # -- JSON -----------------------------------------------------------

    def to_dict(self) -> dict:
        strands = []
        for s in self.strands:
            visits = [
                {"crossing": v.crossing, "over": v.over} if isinstance(v, CrossVisit) else {"arrow": v.direction}
                for v in s.visits
            ]
            strands.append({"ends": None if s.ends is None else list(s.ends), "visits": visits})
        return {
            "boundary_points": self.boundary_points,
            "signs": {str(c): s for c, s in self.signs},
            "strands": strands,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "ArrowDiagram":
        try:
            strands = []
            for s in data.get("strands", []):
                visits = []
                for v in s.get("visits", []):
                    if "arrow" in v:
                        visits.append(Arrow(int(v["arrow"])))
                    else:
                        visits.append(CrossVisit(int(v["crossing"]), bool(v["over"])))
                ends = s.get("ends")
                strands.append(Strand(tuple(visits), None if ends is None else tuple(int(e) for e in ends)))
            signs = {int(c): int(v) for c, v in data.get("signs", {}).items()}
            return cls(tuple(strands), signs, int(data.get("boundary_points", 0)))
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise DiagramError(f"malformed arrow diagram JSON: {exc}") from None

    @classmethod
    def from_json(cls, text: str) -> "ArrowDiagram":
        return cls.from_dict(json.loads(text))


class PatternMismatch(ValueError):
    """The local configuration required by a move is not present."""


def validate(d: ArrowDiagram) -> list[str]:
    """List every violated invariant; an empty list means the diagram is valid."""
    out: list[str] = []
    n = d.boundary_points
    if n < 0 or n % 2:
        out.append(f"odd number of boundary points ({n})")
    used: dict[int, int] = {}
    for i, s in enumerate(d.strands):
        if s.ends is not None:
            if len(s.ends) != 2:
                out.append(f"arc {i} has {len(s.ends)} endpoints (expected 2)")
                continue
            for p in s.ends:
                if not 0 <= p < max(n, 1) or n == 0:
                    out.append(f"arc {i} ends at boundary point {p} outside 0..{n - 1}")
                    continue
                used[p] = used.get(p, 0) + 1
        for v in s.visits:
            if isinstance(v, Arrow) and v.direction not in (1, -1):
                out.append(f"arrow on strand {i} has direction {v.direction}")
    for p, k in sorted(used.items()):
        if k > 1:
            out.append(f"boundary point {p} is used by {k} arc-ends")
    if n and n % 2 == 0:
        for p in sorted(used):
            if d.antipode(p) not in used:
                out.append(f"endpoint {p} lacks antipode")
        for p in range(n // 2):
            if p not in used and d.antipode(p) not in used:
                out.append(f"boundary pair ({p}, {d.antipode(p)}) has no arc-ends")
    visits: dict[int, list[bool]] = {}
    for s in d.strands:
        for v in s.visits:
            if isinstance(v, CrossVisit):
                visits.setdefault(v.crossing, []).append(v.over)
    signs = d.sign_map
    for c, overs in sorted(visits.items()):
        if len(overs) != 2:
            out.append(f"crossing {c} visited {len(overs)} time(s) (expected 2)")
        elif sorted(overs) != [False, True]:
            out.append(f"crossing {c} lacks an over/under pair")
        if signs.get(c) not in (1, -1):
            out.append(f"crossing {c} has no sign")
    for c in sorted(set(signs) - set(visits)):
        out.append(f"sign given for unvisited crossing {c}")
    return out


def _require_valid(d: ArrowDiagram) -> None:
    problems = validate(d)
    if problems:
        raise DiagramError("; ".join(problems))


# -- components ---------------------------------------------------------------


def _arc_at(d: ArrowDiagram, point: int) -> tuple[int, int]:
    """(strand index, end index) of the arc-end sitting at ``point``."""
    for i, s in enumerate(d.strands):
        if s.ends is not None:
            for k, p in enumerate(s.ends):
                if p == point:
                    return i, k
    raise DiagramError(f"no arc ends at boundary point {point}")


def components(d: ArrowDiagram) -> list[list[tuple[int, bool]]]:
    """Link components as lists of (strand index, traversed reversed?)."""
    comps = []
    seen: set[int] = set()
    for i, s in enumerate(d.strands):
        if i in seen:
            continue
        if s.closed:
            seen.add(i)
            comps.append([(i, False)])
            continue
        comp = []
        cur, rev = i, False
        while cur not in seen:
            seen.add(cur)
            comp.append((cur, rev))
            exit_point = d.strands[cur].ends[0 if rev else 1]
            cur, k = _arc_at(d, d.antipode(exit_point))
            rev = k == 1
        comps.append(comp)
    return comps


def arrow_count_parity(d: ArrowDiagram) -> tuple[int, ...]:
    """Arrow count mod 2 for each link component, ordered by first strand."""
    _require_valid(d)
    return tuple(
        sum(isinstance(v, Arrow) for i, _ in comp for v in d.strands[i].visits) % 2
        for comp in components(d)
    )


# -- small rewriting helpers --------------------------------------------------------


def _with_strands(d: ArrowDiagram, strands, signs=None, boundary_points=None) -> ArrowDiagram:
    return ArrowDiagram(
        tuple(strands),
        d.sign_map if signs is None else signs,
        d.boundary_points if boundary_points is None else boundary_points,
    )


def _fresh_crossing(d: ArrowDiagram, k: int = 0) -> int:
    ids = d.crossing_ids() | set(d.sign_map)
    return max(ids, default=-1) + 1 + k


def _strand(d: ArrowDiagram, i: int) -> Strand:
    if not 0 <= i < len(d.strands):
        raise PatternMismatch(f"no strand {i}")
    return d.strands[i]


def _pair_indices(s: Strand, pos: int) -> tuple[int, int]:
    """Indices of two consecutive visits starting at ``pos`` (cyclic on closed strands)."""
    n = len(s.visits)
    if n < 2 or not 0 <= pos < n:
        raise PatternMismatch(f"no consecutive visits at position {pos}")
    if pos + 1 < n:
        return pos, pos + 1
    if s.closed:
        return pos, 0
    raise PatternMismatch(f"no consecutive visits at position {pos}")


def _remove_indices(s: Strand, idx) -> Strand:
    drop = set(idx)
    return replace(s, visits=tuple(v for k, v in enumerate(s.visits) if k not in drop))


def _insert(s: Strand, pos: int, new) -> Strand:
    if not 0 <= pos <= len(s.visits):
        raise PatternMismatch(f"insertion position {pos} out of range")
    v = s.visits
    return replace(s, visits=v[:pos] + tuple(new) + v[pos:])


def _reverse_strand(d: ArrowDiagram, i: int) -> ArrowDiagram:
    """Reverse the stored orientation of strand ``i``, keeping the link."""
    s = d.strands[i]
    own = [v.crossing for v in s.visits if isinstance(v, CrossVisit)]
    flip = {c for c in own if own.count(c) == 1}
    visits = tuple(Arrow(-v.direction) if isinstance(v, Arrow) else v for v in reversed(s.visits))
    ends = None if s.ends is None else (s.ends[1], s.ends[0])
    strands = list(d.strands)
    strands[i] = Strand(visits, ends)
    signs = {c: (-x if c in flip else x) for c, x in d.signs}
    return _with_strands(d, strands, signs)


# -- moves ----------------------------------------------------------------------


MOVE_KINDS = (
    "R1+", "R1-", "R2+", "R2-", "R3",
    "ARROW+", "ARROW-", "SLIDE",
    "BOUNDARY_ARROW", "FINGER+", "FINGER-", "BOUNDARY_CROSSING",
)

# declared change in the number of antipodal endpoint pairs
PAIR_DELTA = {k: 0 for k in MOVE_KINDS}
PAIR_DELTA.update({"FINGER+": 2, "FINGER-": -2})


@dataclass(frozen=True)
class MoveSpec:
    """A move kind plus its location parameters.

    ========================  =================================================
    kind                      parameters
    ========================  =================================================
    ``R1+``                   strand, pos, sign, over_first
    ``R1-``                   strand, pos
    ``R2+``                   strand1, pos1, strand2, pos2, sign, parallel
    ``R2-``                   strand1, pos1, strand2, pos2
    ``R3``                    locations: three (strand, pos) pairs
    ``ARROW+``                strand, pos, direction
    ``ARROW-``                strand, pos
    ``SLIDE``                 strand, pos
    ``BOUNDARY_ARROW``        strand, end (0 = start, 1 = end)
    ``FINGER+``               strand, pos, half (0 or 1), gap (0..m)
    ``FINGER-``               strand (a visit-free arc on adjacent points)
    ``BOUNDARY_CROSSING``     points: two adjacent boundary points
    ========================  =================================================

    ``R1``/``R2``/``R3``/``ARROW``/``SLIDE`` are the moves for F x S^1; the
    last four exist only when the disk boundary is glued antipodally.
    """

    kind: str
    params: tuple = field(default=())

    def __init__(self, kind: str, **params):
        if kind not in MOVE_KINDS:
            raise ValueError(f"unknown move kind {kind!r}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "params", tuple(sorted(params.items())))

    def __getitem__(self, key):
        return dict(self.params)[key]

    def get(self, key, default=None):
        return dict(self.params).get(key, default)

    def to_dict(self) -> dict:
        return {"kind": self.kind, **{k: (list(v) if isinstance(v, tuple) else v) for k, v in self.params}}

    @classmethod
    def from_dict(cls, data: dict) -> "MoveSpec":
        data = dict(data)
        kind = data.pop("kind")
        if "locations" in data:
            data["locations"] = tuple(tuple(x) for x in data["locations"])
        if "points" in data:
            data["points"] = tuple(data["points"])
        return cls(kind, **data)


def apply_move(d: ArrowDiagram, move: MoveSpec) -> ArrowDiagram:
    """Rewrite ``d`` by one move; raise :class:`PatternMismatch` if it does not apply."""
    _require_valid(d)
    handler = _HANDLERS[move.kind]
    out = handler(d, move)
    _require_valid(out)
    if out.endpoint_pairs - d.endpoint_pairs != PAIR_DELTA[move.kind]:
        raise AssertionError(f"{move.kind} changed the endpoint pair count unexpectedly")
    return out


def _r1_add(d, mv):
    s = _strand(d, mv["strand"])
    sign = mv["sign"]
    if sign not in (1, -1):
        raise PatternMismatch("kink sign must be +1 or -1")
    c = _fresh_crossing(d)
    over_first = bool(mv.get("over_first", True))
    strands = list(d.strands)
    strands[mv["strand"]] = _insert(s, mv["pos"], (CrossVisit(c, over_first), CrossVisit(c, not over_first)))
    signs = d.sign_map
    signs[c] = sign
    return _with_strands(d, strands, signs)


def _r1_remove(d, mv):
    s = _strand(d, mv["strand"])
    i, j = _pair_indices(s, mv["pos"])
    a, b = s.visits[i], s.visits[j]
    if not (isinstance(a, CrossVisit) and isinstance(b, CrossVisit) and a.crossing == b.crossing):
        raise PatternMismatch("R1- needs two consecutive visits to the same crossing")
    strands = list(d.strands)
    strands[mv["strand"]] = _remove_indices(s, (i, j))
    signs = d.sign_map
    del signs[a.crossing]
    return _with_strands(d, strands, signs)


def _r2_add(d, mv):
    s1, p1, s2, p2 = mv["strand1"], mv["pos1"], mv["strand2"], mv["pos2"]
    _strand(d, s1), _strand(d, s2)
    sign = mv["sign"]
    if sign not in (1, -1):
        raise PatternMismatch("R2 sign must be +1 or -1")
    c1, c2 = _fresh_crossing(d), _fresh_crossing(d, 1)
    top = (CrossVisit(c1, True), CrossVisit(c2, True))
    bottom = (CrossVisit(c1, False), CrossVisit(c2, False))
    if not mv.get("parallel", True):
        bottom = bottom[::-1]
    strands = list(d.strands)
    if s1 == s2:
        if p1 == p2:
            raise PatternMismatch("R2 on one strand needs two distinct positions")
        # insert at the later position first so the earlier index stays valid
        for pos, vis in sorted(((p1, top), (p2, bottom)), key=lambda x: -x[0]):
            strands[s1] = _insert(strands[s1], pos, vis)
    else:
        strands[s1] = _insert(strands[s1], p1, top)
        strands[s2] = _insert(strands[s2], p2, bottom)
    signs = d.sign_map
    signs[c1], signs[c2] = sign, -sign
    return _with_strands(d, strands, signs)


def _r2_remove(d, mv):
    s1, s2 = _strand(d, mv["strand1"]), _strand(d, mv["strand2"])
    i1 = _pair_indices(s1, mv["pos1"])
    i2 = _pair_indices(s2, mv["pos2"])
    top = [s1.visits[k] for k in i1]
    bot = [s2.visits[k] for k in i2]
    if mv["strand1"] == mv["strand2"] and set(i1) & set(i2):
        raise PatternMismatch("R2- locations overlap")
    if not all(isinstance(v, CrossVisit) for v in top + bot):
        raise PatternMismatch("R2- needs crossing visits only")
    if not all(v.over for v in top) or any(v.over for v in bot):
        raise PatternMismatch("R2- needs one strand over at both crossings")
    cs = {v.crossing for v in top}
    if len(cs) != 2 or cs != {v.crossing for v in bot}:
        raise PatternMismatch("R2- locations must share the same two crossings")
    signs = d.sign_map
    a, b = sorted(cs)
    if signs[a] != -signs[b]:
        raise PatternMismatch("R2- crossings must have opposite signs")
    strands = list(d.strands)
    if mv["strand1"] == mv["strand2"]:
        strands[mv["strand1"]] = _remove_indices(s1, i1 + i2)
    else:
        strands[mv["strand1"]] = _remove_indices(s1, i1)
        strands[mv["strand2"]] = _remove_indices(s2, i2)
    del signs[a], signs[b]
    return _with_strands(d, strands, signs)


def _r3(d, mv):
    locs = mv["locations"]
    if len(locs) != 3:
        raise PatternMismatch("R3 needs three locations")
    pairs = []
    for si, pos in locs:
        s = _strand(d, si)
        i, j = _pair_indices(s, pos)
        a, b = s.visits[i], s.visits[j]
        if not (isinstance(a, CrossVisit) and isinstance(b, CrossVisit)) or a.crossing == b.crossing:
            raise PatternMismatch("R3 locations must be two visits to distinct crossings")
        pairs.append((si, i, j, a, b))
    if len({(si, k) for si, i, j, *_ in pairs for k in (i, j)}) != 6:
        raise PatternMismatch("R3 locations must not share visits")
    cs =[frozenset((a.crossing, b.crossing)) for *_, a, b in pairs]
    if len(set(cs)) != 3 or len(frozenset().union(*cs)) != 3:
        raise PatternMismatch("R3 locations must pairwise share one crossing")
    levels = sorted(int(a.over) + int(b.over) for *_, a, b in pairs)
    if levels != [0, 1, 2]:
        raise PatternMismatch("R3 needs a top, a middle and a bottom strand")
    strands = list(d.strands)
    for si, i, j, a, b in pairs:
        v = list(strands[si].visits)
        v[i], v[j] = b, a
        strands[si] = replace(strands[si], visits=tuple(v))
    return _with_strands(d, strands)


def _arrow_add(d, mv):
    s = _strand(d, mv["strand"])
    k = mv.get("direction", 1)
    if k not in (1, -1):
        raise PatternMismatch("arrow direction must be +1 or -1")
    strands = list(d.strands)
    strands[mv["strand"]] = _insert(s, mv["pos"], (Arrow(k), Arrow(-k)))
    return _with_strands(d, strands)


def _arrow_remove(d, mv):
    s = _strand(d, mv["strand"])
    i, j = _pair_indices(s, mv["pos"])
    a, b = s.visits[i], s.visits[j]
    if not (isinstance(a, Arrow) and isinstance(b, Arrow) and a.direction == -b.direction):
        raise PatternMismatch("ARROW- needs two consecutive opposite arrows")
    strands = list(d.strands)
    strands[mv["strand"]] = _remove_indices(s, (i, j))
    return _with_strands(d, strands)


def _slide(d, mv):
    s = _strand(d, mv["strand"])
    i, j = _pair_indices(s, mv["pos"])
    a, b = s.visits[i], s.visits[j]
    if {type(a), type(b)} != {Arrow, CrossVisit}:
        raise PatternMismatch("SLIDE needs an arrow next to a crossing visit")
    v = list(s.visits)
    v[i], v[j] = b, a
    strands = list(d.strands)
    strands[mv["strand"]] = replace(s, visits=tuple(v))
    return _with_strands(d, strands)


def _need_boundary(d):
    if d.boundary_points == 0:
        raise PatternMismatch("move needs a glued disk boundary")


def _adjacent_index(s: Strand, end: int) -> int:
    if not s.visits:
        raise PatternMismatch("no visit next to that end")
    return len(s.visits) - 1 if end == 1 else 0


def _boundary_arrow(d, mv):
    _need_boundary(d)
    si, end = mv["strand"], mv["end"]
    s = _strand(d, si)
    if s.closed or end not in (0, 1):
        raise PatternMismatch("BOUNDARY_ARROW needs an arc end")
    k = _adjacent_index(s, end)
    arrow = s.visits[k]
    if not isinstance(arrow, Arrow):
        raise PatternMismatch("no arrow next to that arc end")
    # direction measured along the traversal that runs into the boundary
    toward = arrow.direction if end == 1 else -arrow.direction
    ti, tend = _arc_at(d, d.antipode(s.ends[end]))
    strands = list(d.strands)
    strands[si] = _remove_indices(s, (k,))
    t = strands[ti]
    # after the gluing the traversal leaves the antipode; conjugation reverses the arrow
    away = -toward
    if tend == 0:
        strands[ti] = _insert(t, 0, (Arrow(away),))
    else:
        strands[ti] = _insert(t, len(t.visits), (Arrow(-away),))
    return _with_strands(d, strands)


def _renumber_points(d: ArrowDiagram, mapping: dict[int, int], strands, n: int) -> list[Strand]:
    return [s if s.ends is None else Strand(s.visits, tuple(mapping[p] for p in s.ends)) for s in strands]


def _finger_add(d, mv):
    si, pos = mv["strand"], mv["pos"]
    half, gap = mv.get("half", 0), mv.get("gap", 0)
    s = _strand(d, si)
    m = d.half
    if half not in (0, 1) or not 0 <= gap <= m:
        raise PatternMismatch("FINGER+ gap out of range")
    if not 0 <= pos <= len(s.visits):
        raise PatternMismatch("FINGER+ position out of range")
    m2 = m + 2
    # old point (h, j) -> new index with two slots inserted at ``gap`` in each half
    mapping = {}
    for h in (0, 1):
        for j in range(m):
            mapping[h * m + j] = h * m2 + (j if j < gap else j + 2)
    x1, x2 = half * m2 + gap, half * m2 + gap + 1
    ax1, ax2 = (x1 + m2) % (2 * m2), (x2 + m2) % (2 * m2)
    strands = _renumber_points(d, mapping, d.strands, 2 * m2)
    s = strands[si]
    before, after = s.visits[:pos], s.visits[pos:]
    tiny = Strand((), (ax1, ax2))
    if s.closed:
        strands[si] = Strand(after + before, (x2, x1))
        strands.append(tiny)
    else:
        strands[si] = Strand(before, (s.ends[0], x1))
        strands.append(Strand(after, (x2, s.ends[1])))
        strands.append(tiny)
    return _with_strands(d, strands, boundary_points=2 * m2)


def _finger_remove(d, mv):
    _need_boundary(d)
    ti = mv["strand"]
    t = _strand(d, ti)
    n = d.boundary_points
    if t.closed or t.visits:
        raise PatternMismatch("FINGER- needs a visit-free arc")
    p, q = t.ends
    if (q - p) % n not in (1, n - 1) or n < 4:
        raise PatternMismatch("FINGER- arc must join adjacent boundary points")
    ai, ak = _arc_at(d, d.antipode(p))
    bi, bk = _arc_at(d, d.antipode(q))
    if ti in (ai, bi):
        raise PatternMismatch("FINGER- arc is glued to itself")
    # orient a to end at antipode(p) and b to start at antipode(q)
    work = d
    if ak == 0:
        work = _reverse_strand(work, ai)
    if ai != bi:
        _, bk = _arc_at(work, d.antipode(q))
        if bk == 1:
            work = _reverse_strand(work, bi)
    a, b = work.strands[ai], work.strands[bi]
    strands = list(work.strands)
    if ai == bi:
        strands[ai] = Strand(a.visits, None)
        drop = {ti}
    else:
        strands[ai] = Strand(a.visits + b.visits, (a.ends[0], b.ends[1]))
        drop = {ti, bi}
    strands = [s for k, s in enumerate(strands) if k not in drop]
    removed = {p, q, d.antipode(p), d.antipode(q)}
    remaining = [x for x in range(n) if x not in removed]
    mapping = {x: k for k, x in enumerate(remaining)}
    strands = _renumber_points(work, mapping, strands, n - 4)
    return _with_strands(work, strands, boundary_points=n - 4)


def _boundary_crossing(d, mv):
    _need_boundary(d)
    p, q = mv["points"]
    n = d.boundary_points
    if (q - p) % n not in (1, n - 1):
        raise PatternMismatch("BOUNDARY_CROSSING needs adjacent boundary points")
    xi, xk = _arc_at(d, p)
    yi, yk = _arc_at(d, q)
    xs, ys = d.strands[xi], d.strands[yi]
    ix, iy = _adjacent_index(xs, xk), _adjacent_index(ys, yk)
    vx, vy = xs.visits[ix], ys.visits[iy]
    if not (isinstance(vx, CrossVisit) and isinstance(vy, CrossVisit)) or vx.crossing != vy.crossing:
        raise PatternMismatch("the visits next to both ends must be one crossing")
    if xi == yi and ix == iy:
        raise PatternMismatch("degenerate crossing pattern")
    c = vx.crossing
    signs = d.sign_map
    # +1 when the stored orientation runs into the boundary at that end
    into = lambda k: 1 if k == 1 else -1
    sign_trav = signs.pop(c) * into(xk) * into(yk)
    ap, aq = d.antipode(p), d.antipode(q)
    xpi, xpk = _arc_at(d, ap)
    ypi, ypk = _arc_at(d, aq)
    out_of = lambda k: 1 if k == 0 else -1
    new_sign = sign_trav * out_of(xpk) * out_of(ypk)
    c2 = _fresh_crossing(d)
    strands = [list(s.visits) for s in d.strands]
    ends = [None if s.ends is None else list(s.ends) for s in d.strands]
    # remove the crossing near p, q (larger index first on a shared strand)
    for si, k in sorted(((xi, ix), (yi, iy)), key=lambda t: -t[1]):
        del strands[si][k]
    ends[xi][xk], ends[yi][yk] = q, p
    # the continuations now leave from swapped antipodes and cross there
    ends[xpi][xpk], ends[ypi][ypk] = aq, ap
    visit_x = CrossVisit(c2, not vx.over)
    visit_y = CrossVisit(c2, not vy.over)
    for si, k, v in ((xpi, xpk, visit_x), (ypi, ypk, visit_y)):
        if k == 0:
            strands[si].insert(0, v)
        else:
            strands[si].append(v)
    signs[c2] = new_sign
    new = [Strand(tuple(v), None if e is None else tuple(e)) for v, e in zip(strands, ends)]
    return _with_strands(d, new, signs)


_HANDLERS = {
    "R1+": _r1_add,
    "R1-": _r1_remove,
    "R2+": _r2_add,
    "R2-": _r2_remove,
    "R3": _r3,
    "ARROW+": _arrow_add,
    "ARROW-": _arrow_remove,
    "SLIDE": _slide,
    "BOUNDARY_ARROW": _boundary_arrow,
    "FINGER+": _finger_add,
    "FINGER-": _finger_remove,
    "BOUNDARY_CROSSING": _boundary_crossing,
}


def inverse_move(d: ArrowDiagram, move: MoveSpec) -> MoveSpec:
    """The move that undoes ``apply_move(d, move)``, located in the result."""
    k = move.kind
    if k == "R1+":
        return MoveSpec("R1-", strand=move["strand"], pos=move["pos"])
    if k == "R2+":
        s1, p1, s2, p2 = move["strand1"], move["pos1"], move["strand2"], move["pos2"]
        if s1 == s2:
            # the earlier insertion shifts the later one by two
            if p1 < p2:
                p2 += 2
            else:
                p1 += 2
        return MoveSpec("R2-", strand1=s1, pos1=p1, strand2=s2, pos2=p2)
    if k == "ARROW+":
        return MoveSpec("ARROW-", strand=move["strand"], pos=move["pos"])
    if k in ("R3", "SLIDE"):
        return move
    if k == "BOUNDARY_ARROW":
        s = d.strands[move["strand"]]
        ti, tend = _arc_at(d, d.antipode(s.ends[move["end"]]))
        return MoveSpec("BOUNDARY_ARROW", strand=ti, end=tend)
    if k == "FINGER+":
        extra = 1 if d.strands[move["strand"]].closed else 2
        return MoveSpec("FINGER-", strand=len(d.strands) + extra - 1)
    if k == "BOUNDARY_CROSSING":
        p, q = move["points"]
        return MoveSpec("BOUNDARY_CROSSING", points=(d.antipode(p), d.antipode(q)))
    raise ValueError(f"no stored inverse for {k}; it removes structure")


# -- evaluation helpers --------------------------------------------------------------


def reduce_kinks(d: ArrowDiagram) -> tuple[LaurentPoly, ArrowDiagram]:
    """Remove every Reidemeister-I curl, returning the framing factor.

    A curl with crossing sign ``s`` contributes ``(-A^3)^s``; the generator
    ``t`` therefore reduces to ``-A^-3`` times ``x``.
    """
    _require_valid(d)
    coeff = ONE
    changed = True
    while changed:
        changed = False
        for si, s in enumerate(d.strands):
            n = len(s.visits)
            for pos in range(n if s.closed else n - 1):
                if n < 2:
                    break
                a, b = s.visits[pos], s.visits[(pos + 1) % n]
                if isinstance(a, CrossVisit) and isinstance(b, CrossVisit) and a.crossing == b.crossing:
                    sign = d.sign_map[a.crossing]
                    coeff = coeff * LaurentPoly({3 * sign: -1})
                    d = apply_move(d, MoveSpec("R1-", strand=si, pos=pos))
                    changed = True
                    break
            if changed:
                break
    return coeff, d


def to_planar(d: ArrowDiagram) -> PlanarDiagram:
    """PlanarDiagram for a diagram with no arrows and no arcs.

    Such a diagram lies in a ball, so its bracket is its skein class.
    """
    _require_valid(d)
    if d.boundary_points or d.arrow_count():
        raise DiagramError("only arrow-free diagrams of closed curves live in a ball")
    label = 0
    inc: dict[tuple[int, bool], int] = {}
    out: dict[tuple[int, bool], int] = {}
    loops = 0
    for s in d.strands:
        cv = [v for v in s.visits if isinstance(v, CrossVisit)]
        if not cv:
            loops += 1
            continue
        for k, v in enumerate(cv):
            nxt = cv[(k + 1) % len(cv)]
            out[(v.crossing, v.over)] = label
            inc[(nxt.crossing, nxt.over)] = label
            label += 1
    signs = d.sign_map
    crossings = []
    for c in sorted(signs):
        u_in, u_out = inc[(c, False)], out[(c, False)]
        o_in, o_out = inc[(c, True)], out[(c, True)]
        if signs[c] == 1:
            edges = (u_in, o_out, u_out, o_in)
        else:
            edges = (u_in, o_in, u_out, o_out)
        crossings.append(Crossing(edges, (1, 3)))
    pd = PlanarDiagram(tuple(crossings), loops, 0)
    problems = validate_planar(pd)
    if problems:
        raise DiagramError("; ".join(problems))
    return pd


def from_planar(pd: PlanarDiagram) -> ArrowDiagram:
    """Closed-curve arrow diagram with the same crossings, orienting each component."""
    if pd.kinks:
        raise DiagramError("residual kinks have no place in an arrow diagram; add them as crossings")
    slots: dict[int, list[tuple[int, int]]] = {}
    for ci, c in enumerate(pd.crossings):
        for pos, e in enumerate(c.edges):
            slots.setdefault(e, []).append((ci, pos))
    partner = {}
    for a, b in slots.values():
        partner[a], partner[b] = b, a
    seen_in: set[tuple[int, int]] = set()
    strands = []
    entry: dict[int, dict[bool, int]] = {}  # crossing -> over? -> incoming position
    for ci in range(len(pd.crossings)):
        for pos in range(4):
            if (ci, pos) in seen_in or (ci, (pos + 2) % 4) in seen_in:
                continue
            visits = []
            cur = (ci, pos)
            while cur not in seen_in:
                seen_in.add(cur)
                c, p = cur
                over = p in pd.crossings[c].over
                visits.append(CrossVisit(c, over))
                entry.setdefault(c, {})[over] = p
                cur = partner[(c, (p + 2) % 4)]
            strands.append(Strand(tuple(visits)))
    signs = {}
    for c, e in entry.items():
        u_in, o_in = e[False], e[True]
        o_out = (o_in + 2) % 4
        signs[c] = 1 if o_out == (u_in + 1) % 4 else -1
    strands.extend(Strand() for _ in range(pd.free_loops))
    return ArrowDiagram(tuple(strands), signs, 0)


# -- named generators ------------------------------------------------------------


GENERATORS = ("empty", "x", "t", "K", "K'")


def generator(name: str) -> ArrowDiagram:
    """Template diagram for a named generator.

    ``x`` is a trivial circle carrying one arrow, ``t`` is ``x`` with a
    negative curl, ``K`` a crossingless arc joining an antipodal pair and
    ``K'`` the same arc with one arrow.
    """
    if name == "empty":
        return ArrowDiagram()
    if name == "x":
        return ArrowDiagram((Strand((Arrow(1),)),))
    if name == "t":
        return ArrowDiagram((Strand((Arrow(1), CrossVisit(0, True), CrossVisit(0, False))),), {0: -1})
    if name == "K":
        return ArrowDiagram((Strand((), (0, 1)),), {}, 2)
    if name in ("K'", "K′", "Kprime"):
        return ArrowDiagram((Strand((Arrow(1),), (0, 1)),), {}, 2)
    raise KeyError(f"unknown generator {name!r}; choose from {', '.join(GENERATORS)}")


# -- comparison up to relabeling ---------------------------------------------------


def _relabeled_key(strands, signs, n) -> tuple:
    relabel: dict[int, int] = {}
    out = []
    for s in strands:
        vis = []
        for v in s.visits:
            if isinstance(v, CrossVisit):
                relabel.setdefault(v.crossing, len(relabel))
                vis.append(("c", relabel[v.crossing], v.over))
            else:
                vis.append(("a", v.direction))
        out.append((s.ends or (), tuple(vis)))
    sig = tuple(sorted((relabel[c], x) for c, x in signs.items() if c in relabel))
    return (n, tuple(out), sig)


def canonical_key(d: ArrowDiagram, limit: int = 200_000) -> tuple:
    """Key equal for diagrams differing by crossing ids, strand order,
    rotation of closed strands and rotation of the boundary numbering.

    Brute force; meant for the small diagrams used in tests.
    """
    n = d.boundary_points
    signs = d.sign_map
    best = None
    count = 0
    for shift in range(n) if n else [0]:
        moved = [
            s if s.ends is None else Strand(s.visits, tuple((p + shift) % n for p in s.ends))
            for s in d.strands
        ]
        for perm in permutations(moved):
            choices = [range(len(s.visits)) if s.closed and s.visits else [0] for s in perm]
            for rots in product(*choices):
                count += 1
                if count > limit:
                    raise ValueError("diagram too large for brute-force canonical key")
                rotated = [
                    Strand(s.visits[r:] + s.visits[:r], s.ends) if s.closed else s
                    for s, r in zip(perm, rots)
                ]
                key = _relabeled_key(rotated, signs, n)
                if best is None or key < best:
                    best = key
    return best


def _extend(v1, v2, signs1, signs2, fwd: dict, back: dict) -> Optional[tuple[dict, dict]]:
    fwd, back = dict(fwd), dict(back)
    for a, b in zip(v1, v2):
        if isinstance(a, Arrow) or isinstance(b, Arrow):
            if a != b:
                return None
            continue
        if a.over != b.over or signs1[a.crossing] != signs2[b.crossing]:
            return None
        if fwd.setdefault(a.crossing, b.crossing) != b.crossing:
            return None
        if back.setdefault(b.crossing, a.crossing) != a.crossing:
            return None
    return fwd, back


def _match(left, right, used, signs1, signs2, fwd, back) -> bool:
    if not left:
        return True
    s, rest = left[0], left[1:]
    for j, t in enumerate(right):
        if j in used or t.ends != s.ends or len(t.visits) != len(s.visits):
            continue
        rots = range(len(t.visits)) if (t.closed and t.visits) else [0]
        for r in rots:
            maps = _extend(s.visits, t.visits[r:] + t.visits[:r], signs1, signs2, fwd, back)
            if maps and _match(rest, right, used | {j}, signs1, signs2, *maps):
                return True
    return False


def equivalent(d1: ArrowDiagram, d2: ArrowDiagram) -> bool:
    """Equal up to crossing ids, strand order, rotation of closed strands
    and rotation of the boundary numbering.

    Backtracking search for a matching of strands; unlike
    :func:`canonical_key` it stays fast on diagrams with many strands.
    """
    if (d1.boundary_points, len(d1.strands), len(d1.signs)) != (d2.boundary_points, len(d2.strands), len(d2.signs)):
        return False
    n = d1.boundary_points
    for shift in range(n) if n else [0]:
        moved = [
            s if s.ends is None else Strand(s.visits, tuple((p + shift) % n for p in s.ends))
            for s in d1.strands
        ]
        # long and constrained strands first prune the search early
        moved.sort(key=lambda s: (s.closed, -len(s.visits)))
        if _match(tuple(moved), d2.strands, frozenset(), d1.sign_map, d2.sign_map, {}, {}):
            return True
    return False
