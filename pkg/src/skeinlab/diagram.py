"""Link diagrams as PD codes, Kauffman states, and diagram surgery.

A crossing is a 4-tuple of arc labels listed counterclockwise starting at
the incoming under-strand, the usual table convention, so positions 0 and
2 hold the under-strand and positions 1 and 3 the over-strand.  The
A-smoothing joins each over-strand end to its counterclockwise-adjacent
arc: slot pairs (1,2) and (3,0).  The B-smoothing joins (0,1) and (2,3).

Unoriented diagrams do not distinguish the two under-strand ends, so each
stored tuple is canonicalized up to rotation by two positions; this makes
mirror() a genuine involution.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

A_JOINS = ((1, 2), (3, 0))
B_JOINS = ((0, 1), (2, 3))


class MalformedPDError(ValueError):
    pass


def _canonical_crossing(t: tuple) -> tuple:
    r = (t[2], t[3], t[0], t[1])
    return min(t, r)


class LinkDiagram:
    """An unoriented link diagram given by its crossing tuples.

    Arc labels may be any hashable values; parse_pd produces consecutive
    integers.  free_loops counts crossing-free circle components.
    """

    __slots__ = ("crossings", "free_loops", "name", "arcs", "_slots_of_arc")

    def __init__(self, crossings: Iterable[Sequence[Hashable]], free_loops: int = 0,
                 name: str = ""):
        rows = []
        for t in crossings:
            t = tuple(t)
            if len(t) != 4:
                raise MalformedPDError(f"crossing needs 4 arcs, got {t!r}")
            rows.append(_canonical_crossing(t))
        if free_loops < 0:
            raise MalformedPDError("negative loop count")
        self.crossings = tuple(rows)
        self.free_loops = free_loops
        self.name = name
        slots: dict[Hashable, list[tuple[int, int]]] = {}
        for ci, t in enumerate(self.crossings):
            for pos, arc in enumerate(t):
                slots.setdefault(arc, []).append((ci, pos))
        for arc, occ in slots.items():
            if len(occ) != 2:
                raise MalformedPDError(
                    f"arc {arc!r} appears {len(occ)} time(s); every arc must appear exactly twice")
        self.arcs = frozenset(slots)
        self._slots_of_arc = slots

    # -- structure -----------------------------------------------------

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    def arc_slots(self, arc) -> tuple[tuple[int, int], tuple[int, int]]:
        a, b = self._slots_of_arc[arc]
        return a, b

    def components(self) -> list[frozenset]:
        """Partition of the arcs into link components (strand-following:
        a strand entering a crossing leaves at the opposite position)."""
        parent = {a: a for a in self.arcs}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for t in self.crossings:
            for pos in (0, 1):
                ra, rb = find(t[pos]), find(t[pos + 2])
                if ra != rb:
                    parent[ra] = rb
        groups: dict = {}
        for a in self.arcs:
            groups.setdefault(find(a), set()).add(a)
        return [frozenset(g) for g in sorted(groups.values(), key=lambda g: sorted(map(repr, g)))]

    @property
    def component_count(self) -> int:
        return len(self.components()) + self.free_loops

    def __eq__(self, other):
        if not isinstance(other, LinkDiagram):
            return NotImplemented
        return (sorted(self.crossings, key=repr) == sorted(other.crossings, key=repr)
                and self.free_loops == other.free_loops)

    def __repr__(self):
        label = self.name or f"{self.crossing_count} crossings"
        return f"LinkDiagram<{label}>"


# ---------------------------------------------------------------------------
# parsing

def parse_pd(text: str, name: str = "") -> LinkDiagram:
    """Parse PD text: entries "X a b c d" separated by newlines or "/",
    plus "O" for a crossing-free loop.  Arc labels may be any integers;
    they are kept as written."""
    crossings = []
    loops = 0
    for chunk in text.replace("/", "\n").splitlines():
        tokens = chunk.replace(",", " ").split()
        if not tokens:
            continue
        head = tokens[0].upper()
        if head == "O":
            if len(tokens) != 1:
                raise MalformedPDError(f"loop entry takes no arguments: {chunk!r}")
            loops += 1
            continue
        if head != "X":
            raise MalformedPDError(f"expected 'X a b c d' or 'O', got {chunk!r}")
        if len(tokens) != 5:
            raise MalformedPDError(f"crossing needs 4 arc labels: {chunk!r}")
        try:
            crossings.append(tuple(int(x) for x in tokens[1:]))
        except ValueError as exc:
            raise MalformedPDError(f"non-integer arc label in {chunk!r}") from exc
    return LinkDiagram(crossings, free_loops=loops, name=name)


# ---------------------------------------------------------------------------
# Kauffman states

# A state assigns "A" or "B" to each crossing, in crossing order.
KauffmanState = tuple

ALL_A = "A"
ALL_B = "B"


def all_a_state(diagram: LinkDiagram) -> KauffmanState:
    return ("A",) * diagram.crossing_count


def all_b_state(diagram: LinkDiagram) -> KauffmanState:
    return ("B",) * diagram.crossing_count


@dataclass(frozen=True)
class StateGraph:
    """Circles of a smoothed diagram with one edge per crossing."""
    circle_count: int
    edges: tuple  # (circle_i, circle_j) per crossing, in crossing order

    @property
    def has_loop_edge(self) -> bool:
        return any(i == j for i, j in self.edges)


def _check_state(diagram: LinkDiagram, state: Sequence[str]) -> None:
    if len(state) != diagram.crossing_count:
        raise ValueError("state length must equal the crossing count")
    for s in state:
        if s not in ("A", "B"):
            raise ValueError(f"state entries must be 'A' or 'B', got {s!r}")


def apply_state(diagram: LinkDiagram, state: Sequence[str]) -> StateGraph:
    """Smooth every crossing and collect the circles.

    Slot ends are (crossing, position) points; each arc connects its two
    occurrences and each smoothing joins slot pairs within a crossing.
    """
    _check_state(diagram, state)
    k = diagram.crossing_count
    parent = list(range(4 * k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for arc in diagram.arcs:
        (c1, p1), (c2, p2) = diagram.arc_slots(arc)
        union(4 * c1 + p1, 4 * c2 + p2)
    joins_per_crossing = []
    for ci, s in enumerate(state):
        joins = A_JOINS if s == "A" else B_JOINS
        joins_per_crossing.append(joins)
        for a, b in joins:
            union(4 * ci + a, 4 * ci + b)

    roots: dict[int, int] = {}
    for x in range(4 * k):
        r = find(x)
        if r not in roots:
            roots[r] = len(roots)
    circle_count = len(roots) + diagram.free_loops
    edges = []
    for ci, joins in enumerate(joins_per_crossing):
        (a, b), (c, d) = joins
        edges.append((roots[find(4 * ci + a)], roots[find(4 * ci + c)]))
    return StateGraph(circle_count=circle_count, edges=tuple(edges))


def circle_count(diagram: LinkDiagram, state: Sequence[str]) -> int:
    return apply_state(diagram, state).circle_count


# ---------------------------------------------------------------------------
# diagram predicates

def is_a_adequate(diagram: LinkDiagram) -> bool:
    """No crossing touches the same all-A circle twice."""
    if diagram.crossing_count == 0:
        return True
    return not apply_state(diagram, all_a_state(diagram)).has_loop_edge


def is_b_adequate(diagram: LinkDiagram) -> bool:
    if diagram.crossing_count == 0:
        return True
    return not apply_state(diagram, all_b_state(diagram)).has_loop_edge


def is_adequate(diagram: LinkDiagram) -> bool:
    return is_a_adequate(diagram) and is_b_adequate(diagram)


def is_alternating(diagram: LinkDiagram) -> bool:
    """Walk every strand; passages must alternate over/under.

    Positions 0 and 2 are under-passages, 1 and 3 over-passages.  A strand
    entering at a slot leaves at the opposite slot of the same crossing.
    """
    seen: set[tuple[int, int]] = set()
    for ci in range(diagram.crossing_count):
        for start in range(4):
            if (ci, start) in seen:
                continue
            walk = []
            c, p = ci, start
            while (c, p) not in seen:
                seen.add((c, p))
                opp = (p + 2) % 4
                seen.add((c, opp))
                walk.append(p % 2)  # 0: under, 1: over
                arc = diagram.crossings[c][opp]
                (c1, p1), (c2, p2) = diagram.arc_slots(arc)
                c, p = (c2, p2) if (c1, p1) == (c, opp) else (c1, p1)
            for i in range(len(walk)):
                if walk[i] == walk[(i + 1) % len(walk)]:
                    return False
    return True


def mirror(diagram: LinkDiagram) -> LinkDiagram:
    """Swap over- and under-strands everywhere (rotate each tuple once)."""
    return LinkDiagram(
        [(b, c, d, a) for a, b, c, d in diagram.crossings],
        free_loops=diagram.free_loops,
        name=f"mirror({diagram.name})" if diagram.name else "",
    )


# ---------------------------------------------------------------------------
# cabling
#
# The m-cable replaces every crossing by an m x m grid of crossings and
# every arc by a band of m parallel arcs.  Grid layout per crossing: the
# under-cable runs bottom (slot 0) to top (slot 2), the over-cable left
# (slot 3) to right (slot 1).  vert(u, j) is the segment of under-strand
# u (x = u) between rows j and j+1; horiz(o, i) the segment of
# over-strand o (y = o) between columns i and i+1.  Boundary stubs carry
# counterclockwise indices within each slot; gluing a band between two
# slots reverses the index (i pairs with m+1-i).

def _stub_index(slot: int, m: int, *, x: int = 0, y: int = 0) -> int:
    # counterclockwise index of a boundary stub within its slot
    if slot == 0:
        return x
    if slot == 1:
        return y
    if slot == 2:
        return m + 1 - x
    return m + 1 - y


def cable(diagram: LinkDiagram, m: int) -> LinkDiagram:
    """Blackboard m-cable: k*m^2 crossings, every arc made into m parallel
    copies.  Band arcs are labeled ("band", arc, i) with i = 1..m indexed
    counterclockwise at the arc's first slot end."""
    if m < 1:
        raise ValueError("cable width must be >= 1")
    band_at: dict[tuple[int, int, int], tuple] = {}
    for arc in diagram.arcs:
        (c1, p1), (c2, p2) = diagram.arc_slots(arc)
        for i in range(1, m + 1):
            label = ("band", arc, i)
            band_at[(c1, p1, i)] = label
            band_at[(c2, p2, m + 1 - i)] = label

    crossings = []
    for ci, t in enumerate(diagram.crossings):
        def vert(u, j):
            if j == 0:
                return band_at[(ci, 0, _stub_index(0, m, x=u))]
            if j == m:
                return band_at[(ci, 2, _stub_index(2, m, x=u))]
            return ("v", ci, u, j)

        def horiz(o, i):
            if i == 0:
                return band_at[(ci, 3, _stub_index(3, m, y=o))]
            if i == m:
                return band_at[(ci, 1, _stub_index(1, m, y=o))]
            return ("h", ci, o, i)

        for u in range(1, m + 1):
            for o in range(1, m + 1):
                crossings.append((vert(u, o - 1), horiz(o, u), vert(u, o), horiz(o, u - 1)))
    return LinkDiagram(
        crossings,
        free_loops=diagram.free_loops * m,
        name=f"cable({diagram.name or '?'},{m})",
    )
