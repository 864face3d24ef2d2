"""Planar diagrams of plat tangles and their closures.

A crossing is a 4-tuple of edge ids listed counterclockwise, starting at a
slot of the under-strand (so slots 0 and 2 are the under-strand, 1 and 3 the
over-strand), as in PD codes. Tangle diagrams also carry the edge ids at
boundary points 1..2n.

Plats are drawn with the boundary on top, points 1..2n left to right, and the
braid read downward to the bottom caps. A generator twisting (p, q) puts a
crossing between the strand at p (left) and at q (right); the wrap-around
generator s6 is drawn on the annulus, with point 1 to the right of point 6.
For s^+ the strand running from top-left to bottom-right passes under,
which makes the A-smoothing the vertical (identity) one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

from .braid import BraidWord, Mode
from .tl import Matching, basis_matching, enumerate_matchings


class DiagramError(ValueError):
    pass


class Incidence(NamedTuple):
    crossing: int  # -1 for a boundary endpoint
    slot: int  # slot 0..3, or the 0-based boundary position


class Strand(NamedTuple):
    closed: bool
    edges: tuple[int, ...]
    passages: tuple[tuple[int, int], ...]  # (crossing, entry slot)


@dataclass(frozen=True)
class PlanarDiagram:
    crossings: tuple[tuple[int, int, int, int], ...]
    endpoints: tuple[int, ...] = ()
    free_loops: int = 0
    _incidence: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(tuple(c) for c in self.crossings))
        object.__setattr__(self, "endpoints", tuple(self.endpoints))
        if len(self.endpoints) not in (0, 4, 6):
            raise DiagramError("a diagram has 0, 4 or 6 boundary endpoints")
        inc: dict[int, list[Incidence]] = {}
        for c, slots in enumerate(self.crossings):
            if len(slots) != 4:
                raise DiagramError("crossings are 4-valent")
            for k, e in enumerate(slots):
                inc.setdefault(e, []).append(Incidence(c, k))
        for t, e in enumerate(self.endpoints):
            inc.setdefault(e, []).append(Incidence(-1, t))
        bad = [e for e, l in inc.items() if len(l) != 2]
        if bad:
            raise DiagramError(f"edges {bad} do not have exactly two incidences")
        object.__setattr__(self, "_incidence", inc)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def edges(self) -> list[int]:
        return sorted(self._incidence)

    @property
    def is_closed(self) -> bool:
        return not self.endpoints

    def incidences(self, e: int) -> tuple[Incidence, Incidence]:
        a, b = self._incidence[e]
        return a, b

    def _other(self, e: int, here: Incidence) -> Incidence:
        a, b = self._incidence[e]
        return b if a == here else a

    # -- traversal --------------------------------------------------------
    def _walk(self, e: int, start: Incidence) -> Strand:
        """Follow the strand through edge ``e``, leaving incidence ``start``."""
        edges, passages = [], []
        here = start
        while True:
            edges.append(e)
            nxt = self._other(e, here)
            if nxt.crossing < 0:
                return Strand(False, tuple(edges), tuple(passages))
            passages.append((nxt.crossing, nxt.slot))
            out = (nxt.slot + 2) % 4
            here = Incidence(nxt.crossing, out)
            e = self.crossings[nxt.crossing][out]
            if e == edges[0] and here == start:
                return Strand(True, tuple(edges), tuple(passages))

    def strands(self) -> list[Strand]:
        """Arcs (from lower boundary position) then closed components (from lowest edge).

        Closed components are oriented leaving the lowest edge through its
        second-listed incidence, i.e. arriving first at the incidence that
        comes first in (crossing, slot) order.
        """
        seen: set[int] = set()
        out = []
        for t, e in enumerate(self.endpoints):
            if e in seen:
                continue
            s = self._walk(e, Incidence(-1, t))
            seen.update(s.edges)
            out.append(s)
        for e in self.edges:
            if e in seen:
                continue
            a, b = sorted(self._incidence[e])
            s = self._walk(e, b)
            seen.update(s.edges)
            out.append(s)
        return out

    def component_count(self) -> int:
        return sum(1 for s in self.strands() if s.closed) + self.free_loops

    def arc_count(self) -> int:
        return sum(1 for s in self.strands() if not s.closed)

    # -- faces --------------------------------------------------------------
    def faces(self) -> list[int]:
        """Face label of every dart.

        Darts 4c+k leave crossing c through slot k; the face of dart 4c+k is
        the corner between slots k and k+1. For tangles, the boundary circle
        is part of the graph (three darts per boundary point, after the
        crossing darts) so faces are regions of the disk.
        """
        nc = len(self.crossings)
        m = len(self.endpoints)
        base = 4 * nc
        total = base + 3 * m
        twin = [0] * total

        def dart(i: Incidence) -> int:
            return 4 * i.crossing + i.slot if i.crossing >= 0 else base + 3 * i.slot

        for e, (i1, i2) in self._incidence.items():
            d1, d2 = dart(i1), dart(i2)
            twin[d1], twin[d2] = d2, d1
        # Counterclockwise around the disk the boundary points run m, ..., 1.
        # At point t the rotation is [inward, towards t+1, towards t-1].
        for t in range(m):
            to_next = base + 3 * t + 2
            prev_of_next = base + 3 * ((t - 1) % m) + 1
            twin[to_next], twin[prev_of_next] = prev_of_next, to_next

        def cw(d: int) -> int:
            if d < base:
                return d - d % 4 + (d % 4 - 1) % 4
            r = (d - base) % 3
            return d - r + (r - 1) % 3

        label = [-1] * total
        f = 0
        for d0 in range(total):
            if label[d0] >= 0:
                continue
            d = d0
            while label[d] < 0:
                label[d] = f
                d = cw(twin[d])
            f += 1
        return label

    def nugatory_crossings(self) -> list[int]:
        """Crossings at which two opposite corners lie in the same region."""
        if not self.crossings:
            return []
        face = self.faces()
        return [c for c in range(len(self.crossings))
                if face[4 * c] == face[4 * c + 2] or face[4 * c + 1] == face[4 * c + 3]]

    def is_connected(self) -> bool:
        """True iff the projection (ignoring the boundary) is one connected piece."""
        if self.free_loops:
            return not self.crossings and not self.endpoints and self.free_loops == 1
        if not self.crossings:
            return len(self._incidence) <= 1
        parent = list(range(len(self.crossings)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e, (i1, i2) in self._incidence.items():
            if i1.crossing < 0 or i2.crossing < 0:
                if i1.crossing < 0 and i2.crossing < 0:
                    return False  # crossingless arc
                continue
            parent[find(i1.crossing)] = find(i2.crossing)
        return len({find(c) for c in range(len(self.crossings))}) == 1

    # -- transformations ----------------------------------------------------
    def mirror(self) -> PlanarDiagram:
        """Change every crossing (reflection through the projection plane)."""
        return PlanarDiagram(tuple(c[1:] + c[:1] for c in self.crossings), self.endpoints, self.free_loops)

    def relabel(self) -> PlanarDiagram:
        """Renumber edges 0.. in order of first appearance."""
        order: dict[int, int] = {}
        for c in self.crossings:
            for e in c:
                order.setdefault(e, len(order))
        for e in self.endpoints:
            order.setdefault(e, len(order))
        return PlanarDiagram(tuple(tuple(order[e] for e in c) for c in self.crossings),
                             tuple(order[e] for e in self.endpoints), self.free_loops)

    def disjoint_union(self, other: PlanarDiagram) -> PlanarDiagram:
        if self.endpoints or other.endpoints:
            raise DiagramError("split union is defined for closed diagrams")
        shift = max(self._incidence, default=-1) + 1
        moved = tuple(tuple(e + shift for e in c) for c in other.crossings)
        return PlanarDiagram(self.crossings + moved, (), self.free_loops + other.free_loops)

    def insert_kink(self, edge: int, variant: int) -> PlanarDiagram:
        """Add a Reidemeister I curl on ``edge``.

        ``variant`` in 0..3 selects the curl side (bit 0) and which strand of
        the new crossing is over (bit 1).
        """
        i1, i2 = self._incidence[edge]
        top = max(self._incidence) + 1
        loop, out = top, top + 1
        crossings = [list(c) for c in self.crossings]
        endpoints = list(self.endpoints)
        if i2.crossing >= 0:
            crossings[i2.crossing][i2.slot] = out
        else:
            endpoints[i2.slot] = out
        cyc = [edge, out, loop, loop] if variant & 1 else [edge, loop, loop, out]
        if variant & 2:
            cyc = cyc[1:] + cyc[:1]
        crossings.append(cyc)
        return PlanarDiagram(tuple(map(tuple, crossings)), tuple(endpoints), self.free_loops)

    def canonical_code(self) -> tuple:
        """Code equal for two diagrams iff they agree up to planar isotopy rel boundary.

        Edges and crossings are renumbered by a traversal that starts from the
        boundary points in order (or, for closed diagrams, from the lowest
        edge), so the code depends only on the rotation system, the
        over/under data and the boundary labels. Closed diagrams are only
        handled when connected.
        """
        labels: dict[int, int] = {}
        seen: dict[int, int] = {}
        records = []

        def lab(e: int) -> int:
            return labels.setdefault(e, len(labels))

        stack: list[tuple[int, Incidence]] = []
        for t, e in enumerate(self.endpoints):
            lab(e)
            stack.append((e, Incidence(-1, t)))
        if not self.endpoints and self.crossings:
            e = self.crossings[0][0]
            lab(e)
            stack.append((e, sorted(self._incidence[e])[1]))
        stack.reverse()
        while stack:
            e, here = stack.pop()
            nxt = self._other(e, here)
            c = nxt.crossing
            if c < 0 or c in seen:
                continue
            seen[c] = len(seen)
            k = nxt.slot
            slots = [self.crossings[c][(k + r) % 4] for r in range(4)]
            records.append((k % 2,) + tuple(lab(x) for x in slots))
            for r in (3, 2, 1):
                stack.append((slots[r], Incidence(c, (k + r) % 4)))
        if len(seen) != len(self.crossings):
            raise DiagramError("canonical codes need every crossing reachable from the start")
        ends = tuple(labels[e] for e in self.endpoints)
        return (ends, tuple(records), self.free_loops)

    def to_pd(self) -> str:
        """Plain-text PD export: one ``X a b c d`` line per crossing.

        Edge ids run counterclockwise from an under-strand slot, so the
        over-strand occupies positions 2 and 4 of each line.
        """
        lines = [f"X {a} {b} {c} {d}" for a, b, c, d in self.crossings]
        if self.endpoints:
            lines.append("ENDPOINTS " + " ".join(map(str, self.endpoints)))
        if self.free_loops:
            lines.append(f"LOOPS {self.free_loops}")
        return "\n".join(lines)


def euler_genus(d: PlanarDiagram) -> int:
    """Genus of the rotation system (0 for every diagram drawn in the plane).

    The boundary circle of a tangle counts as part of the graph.
    """
    m = len(d.endpoints)
    faces = len(set(d.faces()))
    vertices = d.n_crossings + m
    edges = len(d.edges) + m
    comps = _graph_components(d)
    return (2 * comps - (vertices - edges + faces)) // 2


def _graph_components(d: PlanarDiagram) -> int:
    nodes = list(range(d.n_crossings)) + ["boundary"] * bool(d.endpoints)
    parent = {x: x for x in nodes}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for e in d.edges:
        i1, i2 = d.incidences(e)
        a = i1.crossing if i1.crossing >= 0 else "boundary"
        b = i2.crossing if i2.crossing >= 0 else "boundary"
        parent[find(a)] = find(b)
    return len({find(x) for x in nodes})


def flypes(d: PlanarDiagram) -> Iterator[PlanarDiagram]:
    """All diagrams one flype away from ``d``.

    A flype needs a connected set R of crossings cut off by exactly four
    edges and a crossing c outside R that meets R in two consecutive arms. R is turned
    over about the axis through c (reflected, with every crossing changed)
    and c moves to the far side of R.
    """
    nc = d.n_crossings
    if nc < 2:
        return
    face = d.faces()
    for c in range(nc):
        others = [x for x in range(nc) if x != c]
        for r in range(1, len(others) + 1):
            for group in itertools.combinations(others, r):
                if _region_connected(d, group):
                    yield from _flypes_at(d, face, c, frozenset(group))


def _region_connected(d: PlanarDiagram, group: tuple[int, ...]) -> bool:
    members = set(group)
    seen = {group[0]}
    stack = [group[0]]
    while stack:
        x = stack.pop()
        for e in d.crossings[x]:
            for inc in d.incidences(e):
                y = inc.crossing
                if y in members and y not in seen:
                    seen.add(y)
                    stack.append(y)
    return len(seen) == len(members)


def _flypes_at(d: PlanarDiagram, face: list[int], c: int, region: frozenset) -> Iterator[PlanarDiagram]:
    inner_end: dict[int, Incidence] = {}
    for e in d.edges:
        ends = [i for i in d.incidences(e) if i.crossing in region]
        if len(ends) == 1:
            inner_end[e] = ends[0]
    if len(inner_end) != 4:
        return
    slots = d.crossings[c]
    for k in range(4):
        v, u, x, y = (slots[(k + r) % 4] for r in range(4))
        if u not in inner_end or v not in inner_end or u == v:
            continue
        if x in inner_end or y in inner_end or x == y or x in (u, v) or y in (u, v):
            continue
        rest = [e for e in inner_end if e not in (u, v)]

        def after(e: int) -> list[int]:
            cr, kr = inner_end[e]
            f = face[4 * cr + kr]
            return [g for g in inner_end if face[4 * inner_end[g].crossing + (inner_end[g].slot - 1) % 4] == f]

        nxt = [e for e in after(v) if e in rest]
        if len(nxt) != 1:
            continue
        p = nxt[0]
        q = rest[0] if rest[1] == p else rest[1]
        top = max(d.edges) + 1
        ea, eb = top, top + 1
        swap = {u: y, v: x, p: ea, q: eb}
        crossings = []
        for j, cr in enumerate(d.crossings):
            if j == c:
                new = [0] * 4
                for r, e in enumerate((p, q, ea, eb)):
                    new[(k + r) % 4] = e
                crossings.append(tuple(new))
            elif j in region:
                crossings.append(tuple(swap.get(e, e) for e in reversed(cr)))
            else:
                crossings.append(cr)
        try:
            out = PlanarDiagram(tuple(crossings), d.endpoints, d.free_loops)
        except DiagramError:
            continue
        if euler_genus(out) == 0:
            yield out.relabel()


def flype_class(d: PlanarDiagram, limit: int = 10_000) -> set[tuple]:
    """Canonical codes of every diagram reachable from ``d`` by flypes."""
    start = d.canonical_code()
    seen = {start}
    frontier = [d]
    while frontier and len(seen) < limit:
        nxt = []
        for x in frontier:
            for y in flypes(x):
                code = y.canonical_code()
                if code not in seen:
                    seen.add(code)
                    nxt.append(y)
        frontier = nxt
    return seen


# -- plats ---------------------------------------------------------------------

@dataclass(frozen=True)
class PlatTangle:
    """Plat presentation: braid ``word`` above the caps of basis matching ``bottom``."""

    word: BraidWord
    bottom: int = 0  # 1-based basis label; 0 selects the standard caps

    def __post_init__(self):
        n = self.word.mode.n
        if self.bottom == 0:
            object.__setattr__(self, "bottom", standard_bottom(n))
        basis_matching(n, self.bottom)  # range check

    @property
    def strands(self) -> int:
        return 2 * self.word.mode.n

    @property
    def n(self) -> int:
        return self.word.mode.n

    @property
    def bottom_matching(self) -> Matching:
        return basis_matching(self.n, self.bottom)


def standard_bottom(n: int) -> int:
    """Label of the standard caps {(1,2),(3,4),...}."""
    std = Matching(tuple((2 * k + 1, 2 * k + 2) for k in range(n)))
    return enumerate_matchings(n).index(std) + 1


class _UF:
    def __init__(self):
        self.parent: list[int] = []

    def new(self) -> int:
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x: int, y: int) -> None:
        self.parent[self.find(x)] = self.find(y)


def _assemble(mode: Mode, letters, bottom: Matching, top: Matching | None) -> PlanarDiagram:
    size = 2 * mode.n
    uf = _UF()
    cur = [uf.new() for _ in range(size)]
    top_segments = list(cur)
    raw = []
    for index, sign in letters:
        p, q = mode.points(index)
        i, j = p - 1, q - 1
        nw, ne = cur[i], cur[j]
        sw, se = uf.new(), uf.new()
        raw.append((nw, sw, se, ne) if sign > 0 else (ne, nw, sw, se))
        cur[i], cur[j] = sw, se
    for p, q in bottom.pairs:
        uf.union(cur[p - 1], cur[q - 1])
    if top is not None:
        for p, q in top.pairs:
            uf.union(top_segments[p - 1], top_segments[q - 1])
    order: dict[int, int] = {}
    crossings = []
    for slots in raw:
        roots = tuple(uf.find(s) for s in slots)
        for r in roots:
            order.setdefault(r, len(order))
        crossings.append(tuple(order[r] for r in roots))
    endpoints: tuple[int, ...] = ()
    if top is None:
        roots = [uf.find(s) for s in top_segments]
        for r in roots:
            order.setdefault(r, len(order))
        endpoints = tuple(order[r] for r in roots)
    all_roots = {uf.find(s) for s in range(len(uf.parent))}
    free = len(all_roots - set(order))
    return PlanarDiagram(tuple(crossings), endpoints, free)


def build_plat(p: PlatTangle) -> PlanarDiagram:
    """Tangle diagram of the plat: one crossing per letter, boundary points on top."""
    return _assemble(p.word.mode, p.word.letters, p.bottom_matching, None)


def close(p: PlatTangle, i: int | None = None) -> PlanarDiagram:
    """Cap the boundary points of the plat with basis matching ``i``.

    For 4-plats only the standard caps are allowed (the plat closure); for
    6-plats ``i`` selects the 0_i closure.
    """
    if i is None:
        i = standard_bottom(p.n)
    if p.n == 2 and i != standard_bottom(2):
        raise DiagramError("4-plats are closed with the standard caps only")
    return _assemble(p.word.mode, p.word.letters, p.bottom_matching, basis_matching(p.n, i))


# -- predicates ------------------------------------------------------------------

def is_alternating(d: PlanarDiagram) -> bool:
    for s in d.strands():
        flags = [slot % 2 for _, slot in s.passages]  # 1 = over
        if any(x == y for x, y in zip(flags, flags[1:])):
            return False
        if s.closed and len(flags) > 1 and flags[0] == flags[-1]:
            return False
    return True


def is_reduced(d: PlanarDiagram) -> bool:
    return not d.nugatory_crossings()


def crossing_signs(d: PlanarDiagram) -> list[int]:
    """Sign of every crossing under the canonical orientation (closed diagrams)."""
    if d.endpoints:
        raise DiagramError("crossing signs need a closed, oriented diagram")
    under: dict[int, int] = {}
    over: dict[int, int] = {}
    for s in d.strands():
        for c, slot in s.passages:
            (over if slot % 2 else under)[c] = slot
    unit = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    signs = []
    for c in range(d.n_crossings):
        ux, uy = unit[(under[c] + 2) % 4]
        ox, oy = unit[(over[c] + 2) % 4]
        signs.append(1 if ox * uy - oy * ux > 0 else -1)
    return signs


def writhe(d: PlanarDiagram) -> int:
    return sum(crossing_signs(d))


def iter_plat_closures(p: PlatTangle) -> Iterator[tuple[int, PlanarDiagram]]:
    for i in range(1, len(enumerate_matchings(p.n)) + 1):
        if p.n == 2 and i != standard_bottom(2):
            continue
        yield i, close(p, i)
