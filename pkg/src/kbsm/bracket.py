"""Kauffman bracket of unoriented framed link diagrams in S^3.

Diagrams are combinatorial: each crossing lists four edge labels in
counterclockwise order together with the pair of positions occupied by
the over-strand, ``(0, 2)`` or ``(1, 3)``.  Every label occurs exactly
twice over all crossings.  Crossingless circles are counted by
``free_loops`` and residual Reidemeister-I twists by ``kinks``.

Normalization: ``<empty> = 1`` and ``<O> = delta = -A^2 - A^-2``.  At a
crossing whose over-strand sits at positions ``(o, o+2)``, the A-smoothing
joins positions ``(o+1, o+2)`` and ``(o+3, o)``; the B-smoothing joins
``(o, o+1)`` and ``(o+2, o+3)``.  A kink counted by ``kinks = +1`` (and a
crossing inserted by ``add_kink(d, +1)``) contributes ``-A^3``.
"""

from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .laurent import ONE, LaurentPoly

__all__ = [
    "Crossing",
    "PlanarDiagram",
    "DiagramError",
    "DELTA",
    "KINK_FACTOR",
    "resolve",
    "bracket_statesum",
    "bracket_recursive",
    "bracket",
    "add_kink",
    "mirror",
    "disjoint_union",
    "braid_closure",
    "validate",
]

DELTA = LaurentPoly({2: -1, -2: -1})
KINK_FACTOR = LaurentPoly({3: -1})  # positive kink
_NEG_KINK = LaurentPoly({-3: -1})


class DiagramError(ValueError):
    """Structurally invalid diagram or bad operation argument."""


@dataclass(frozen=True)
class Crossing:
    edges: tuple[int, int, int, int]
    over: tuple[int, int] = (0, 2)

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "over", tuple(self.over))
        if len(self.edges) != 4:
            raise DiagramError(f"a crossing needs 4 edges, got {self.edges}")
        if self.over not in ((0, 2), (1, 3)):
            raise DiagramError(f"over-strand must occupy (0, 2) or (1, 3), got {self.over}")

    def smoothing(self, choice: str) -> tuple[tuple[int, int], tuple[int, int]]:
        """Edge-label pairs joined by the A- or B-smoothing."""
        o = self.over[0]
        e = self.edges
        if choice == "A":
            return (e[(o + 1) % 4], e[(o + 2) % 4]), (e[(o + 3) % 4], e[o])
        if choice == "B":
            return (e[o], e[(o + 1) % 4]), (e[(o + 2) % 4], e[(o + 3) % 4])
        raise DiagramError(f"smoothing choice must be 'A' or 'B', got {choice!r}")

    def mirrored(self) -> "Crossing":
        return Crossing(self.edges, (1, 3) if self.over == (0, 2) else (0, 2))


@dataclass(frozen=True)
class PlanarDiagram:
    crossings: tuple[Crossing, ...] = ()
    free_loops: int = 0
    kinks: int = 0

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(self.crossings))
        if self.free_loops < 0:
            raise DiagramError("free_loops must be nonnegative")

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    def labels(self) -> set[int]:
        return {e for c in self.crossings for e in c.edges}

    # -- JSON ------------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "crossings": [{"edges": list(c.edges), "over": list(c.over)} for c in self.crossings],
            "free_loops": self.free_loops,
            "kinks": self.kinks,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "PlanarDiagram":
        try:
            crossings = tuple(
                Crossing(tuple(int(e) for e in c["edges"]), tuple(c.get("over", (0, 2))))
                for c in data.get("crossings", [])
            )
            d = cls(crossings, int(data.get("free_loops", 0)), int(data.get("kinks", 0)))
        except (KeyError, TypeError) as exc:
            raise DiagramError(f"malformed diagram JSON: {exc}") from None
        problems = validate(d)
        if problems:
            raise DiagramError("; ".join(problems))
        return d

    @classmethod
    def from_json(cls, text: str) -> "PlanarDiagram":
        return cls.from_dict(json.loads(text))


def _occurrences(crossings: Sequence[Crossing]) -> dict[int, list[tuple[int, int]]]:
    occ: dict[int, list[tuple[int, int]]] = {}
    for ci, c in enumerate(crossings):
        for pos, e in enumerate(c.edges):
            occ.setdefault(e, []).append((ci, pos))
    return occ


def validate(d: PlanarDiagram) -> list[str]:
    """Structural problems with ``d``; an empty list means valid.

    Planarity is checked through Euler's formula on the rotation system:
    each connected 4-valent component with V crossings must bound V + 2 faces.
    """
    problems = []
    for e, slots in sorted(_occurrences(d.crossings).items()):
        if e < 0:
            problems.append(f"edge label {e} is negative")
        if len(slots) != 2:
            problems.append(f"edge label {e} occurs {len(slots)} times (expected 2)")
    if problems or not d.crossings:
        return problems
    occ = _occurrences(d.crossings)
    partner = {}
    for a, b in occ.values():
        partner[a], partner[b] = b, a
    # connected components over crossings
    parent = list(range(len(d.crossings)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in occ.values():
        parent[find(a[0])] = find(b[0])
    ncomp = len({find(i) for i in range(len(d.crossings))})
    seen = set()
    faces = 0
    for ci in range(len(d.crossings)):
        for pos in range(4):
            if (ci, pos) in seen:
                continue
            faces += 1
            cur = (ci, pos)
            while cur not in seen:
                seen.add(cur)
                c2, p2 = partner[cur]
                cur = (c2, (p2 + 1) % 4)
    if faces != len(d.crossings) + 2 * ncomp:
        problems.append(
            f"rotation system is not planar ({faces} faces, expected {len(d.crossings) + 2 * ncomp})"
        )
    return problems


def resolve(d: PlanarDiagram, crossing_id: int, choice: str) -> PlanarDiagram:
    """Replace one crossing by its A- or B-smoothing."""
    if not 0 <= crossing_id < len(d.crossings):
        raise DiagramError(f"unknown crossing id {crossing_id}")
    c = d.crossings[crossing_id]
    rest = [x for i, x in enumerate(d.crossings) if i != crossing_id]
    crossings, loops = _smooth(c.smoothing(choice), c.edges, rest)
    return PlanarDiagram(tuple(crossings), d.free_loops + loops, d.kinks)


def _smooth(pairs, local_edges, rest: list[Crossing]) -> tuple[list[Crossing], int]:
    count = Counter(local_edges)
    parent = {e: e for e in count}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    groups: dict[int, list[int]] = {}
    for e in count:
        groups.setdefault(find(e), []).append(e)
    loops = 0
    rename = {}
    for members in groups.values():
        external = sorted(e for e in members if count[e] == 1)
        if not external:
            loops += 1
        else:
            u, v = external
            rename[v] = u
    if rename:
        rest = [
            Crossing(tuple(rename.get(e, e) for e in x.edges), x.over) for x in rest
        ]
    return rest, loops


# -- state sum -------------------------------------------------------------


def _state_counts(crossings: tuple[Crossing, ...], start: int, stop: int) -> Counter:
    """Counter of (a - b, loops) over the states with index in [start, stop)."""
    labels = sorted({e for c in crossings for e in c.edges})
    index = {e: i for i, e in enumerate(labels)}
    pairs = [
        [tuple((index[a], index[b]) for a, b in c.smoothing(ch)) for ch in ("A", "B")]
        for c in crossings
    ]
    n = len(crossings)
    out: Counter = Counter()
    for state in range(start, stop):
        parent = list(range(len(labels)))
        comps = len(labels)
        b = 0
        for i in range(n):
            bit = (state >> i) & 1
            b += bit
            for x, y in pairs[i][bit]:
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                while parent[y] != y:
                    parent[y] = parent[parent[y]]
                    y = parent[y]
                if x != y:
                    parent[x] = y
                    comps -= 1
        out[(n - 2 * b, comps)] += 1
    return out


def _counts_to_poly(counts: Counter) -> LaurentPoly:
    total = LaurentPoly()
    by_loops: dict[int, dict[int, int]] = {}
    for (e, loops), k in counts.items():
        by_loops.setdefault(loops, {})
        by_loops[loops][e] = by_loops[loops].get(e, 0) + k
    for loops, terms in by_loops.items():
        total = total + LaurentPoly(terms) * DELTA ** loops
    return total


def _framing(d: PlanarDiagram) -> LaurentPoly:
    return KINK_FACTOR ** d.kinks if d.kinks >= 0 else _NEG_KINK ** (-d.kinks)


def bracket_statesum(d: PlanarDiagram, workers: int = 1) -> LaurentPoly:
    """Sum of ``A^(a-b) delta^loops`` over all 2^c smoothing states.

    ``workers > 1`` splits the state index range over processes; partial
    counts are added, so the result does not depend on scheduling.
    """
    n = len(d.crossings)
    total_states = 1 << n
    if workers > 1 and n >= 10:
        step = -(-total_states // workers)
        bounds = [(s, min(s + step, total_states)) for s in range(0, total_states, step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_state_counts, [d.crossings] * len(bounds), *zip(*bounds))
            counts: Counter = Counter()
            for part in parts:
                counts.update(part)
    else:
        counts = _state_counts(d.crossings, 0, total_states)
    return _counts_to_poly(counts) * DELTA ** d.free_loops * _framing(d)


# -- memoized recursion ----------------------------------------------------


def _canonical(crossings: Iterable[Crossing]) -> tuple:
    """Relabel edges in order of first appearance."""
    relabel: dict[int, int] = {}
    out = []
    for c in crossings:
        edges = []
        for e in c.edges:
            if e not in relabel:
                relabel[e] = len(relabel)
            edges.append(relabel[e])
        out.append((tuple(edges), c.over[0]))
    return tuple(out)


def _core(key: tuple, memo: dict) -> LaurentPoly:
    # bracket of the crossings alone, free loops and kinks excluded
    if not key:
        return ONE
    hit = memo.get(key)
    if hit is not None:
        return hit
    first = Crossing(key[0][0], (0, 2) if key[0][1] == 0 else (1, 3))
    rest = [Crossing(e, (0, 2) if o == 0 else (1, 3)) for e, o in key[1:]]
    value = LaurentPoly()
    for choice, weight in (("A", LaurentPoly({1: 1})), ("B", LaurentPoly({-1: 1}))):
        crossings, loops = _smooth(first.smoothing(choice), first.edges, rest)
        value = value + weight * DELTA ** loops * _core(_canonical(crossings), memo)
    memo[key] = value
    return value


def bracket_recursive(d: PlanarDiagram, memo: Optional[dict] = None) -> LaurentPoly:
    """Evaluate ``<L+> = A <L0> + A^-1 <Linf>`` recursively with memoization.

    ``memo`` may be shared between calls from a single thread.
    """
    if memo is None:
        memo = {}
    return _core(_canonical(d.crossings), memo) * DELTA ** d.free_loops * _framing(d)


def bracket(d: PlanarDiagram) -> LaurentPoly:
    return bracket_recursive(d)


# -- constructions -----------------------------------------------------------


def _fresh(d: PlanarDiagram, k: int) -> list[int]:
    start = max(d.labels(), default=-1) + 1
    return list(range(start, start + k))


def add_kink(d: PlanarDiagram, sign: int, edge: Optional[int] = None) -> PlanarDiagram:
    """Insert a Reidemeister-I curl on ``edge`` (or on a free loop).

    ``sign = +1`` multiplies the bracket by ``-A^3`` and ``sign = -1`` by
    ``-A^-3``.
    """
    if sign not in (1, -1):
        raise DiagramError("kink sign must be +1 or -1")
    over = (0, 2) if sign == 1 else (1, 3)
    if not d.crossings:
        if d.free_loops == 0:
            raise DiagramError("no component to put a kink on")
        e, loop = 0, 1
        c = Crossing((e, loop, loop, e), over)
        return PlanarDiagram((c,), d.free_loops - 1, d.kinks)
    occ = _occurrences(d.crossings)
    if edge is None:
        edge = min(occ)
    if edge not in occ:
        raise DiagramError(f"unknown edge {edge}")
    loop, tail = _fresh(d, 2)
    ci, pos = occ[edge][1]
    crossings = list(d.crossings)
    edges = list(crossings[ci].edges)
    edges[pos] = tail
    crossings[ci] = Crossing(tuple(edges), crossings[ci].over)
    crossings.append(Crossing((edge, loop, loop, tail), over))
    return PlanarDiagram(tuple(crossings), d.free_loops, d.kinks)


def mirror(d: PlanarDiagram) -> PlanarDiagram:
    return PlanarDiagram(tuple(c.mirrored() for c in d.crossings), d.free_loops, -d.kinks)


def disjoint_union(d1: PlanarDiagram, d2: PlanarDiagram) -> PlanarDiagram:
    off = max(d1.labels(), default=-1) + 1
    moved = tuple(Crossing(tuple(e + off for e in c.edges), c.over) for c in d2.crossings)
    return PlanarDiagram(d1.crossings + moved, d1.free_loops + d2.free_loops, d1.kinks + d2.kinks)


def braid_closure(word: Sequence[int], strands: Optional[int] = None) -> PlanarDiagram:
    """Closure of a braid word; ``i`` is sigma_i (positive crossing), ``-i`` its inverse.

    Strands are oriented upward; the left strand of sigma_i passes over.
    """
    if strands is None:
        strands = max((abs(g) for g in word), default=0) + 1
    if any(g == 0 or abs(g) >= strands for g in word):
        raise DiagramError(f"braid generators must lie in 1..{strands - 1}")
    bottom = list(range(strands))
    current = list(bottom)
    nxt = strands
    crossings = []
    for g in word:
        i = abs(g) - 1
        a, b = current[i], current[i + 1]
        c, dd = nxt, nxt + 1
        nxt += 2
        # counterclockwise from south-west: a (SW), b (SE), dd (NE), c (NW)
        crossings.append(Crossing((a, b, dd, c), (0, 2) if g > 0 else (1, 3)))
        current[i], current[i + 1] = c, dd
    rename = {}
    loops = 0
    for j in range(strands):
        if current[j] == bottom[j]:
            loops += 1
        else:
            rename[current[j]] = bottom[j]
    crossings = [Crossing(tuple(rename.get(e, e) for e in x.edges), x.over) for x in crossings]
    return PlanarDiagram(tuple(crossings), loops, 0)
