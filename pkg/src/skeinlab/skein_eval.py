"""Exact bracket evaluation of decorated diagrams.

A decorated diagram is a closed tangle network: crossing nodes (bare
Kauffman crossings) and coupon nodes (boxes carrying a fixed linear
combination of planar matchings, e.g. a Jones-Wenzl projector), wired
together by a fixed-point-free involution on the ports.  Evaluation
resolves every node into its matchings and glues, producing the bracket
value in Z[A, A^-1] after one exact division by the accumulated coupon
denominator.

The sweep visits nodes one at a time.  Its running state is a bag of
terms, each a perfect matching on the currently dangling wire-ends with
an integer Laurent coefficient; attaching a node splices its chords into
the affected strands, closes loops into powers of delta = -A^2 - A^-2,
and merges equal matchings.  Only the strands meeting the node are
touched, so the cost per term is linear in the node's port count.

Peak width (dangling wire-ends) controls the cost.  Node order comes
from a MorsePlan: exact subset minimization for small networks, a width
greedy otherwise, or a builder-supplied order for cables.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass

from .diagram import A_JOINS, B_JOINS, LinkDiagram, apply_state
from .laurent import (
    LaurentPolynomial,
    ONE,
    RationalFunction,
    divide_exact,
    loop_value,
    quantum_dimension,
    term_add,
    term_mul,
    term_shift,
)
from .temperley_lieb import cleared_projector, top_point

DEFAULT_MAX_WIDTH = 24
_ENV_MAX_WIDTH = "SKEINLAB_MAX_WIDTH"

_DELTA = loop_value()


class ResourceLimitError(RuntimeError):
    """The evaluation would exceed the configured width budget."""


def resolve_max_width(max_width: int | None = None) -> int:
    if max_width is not None:
        return max_width
    env = os.environ.get(_ENV_MAX_WIDTH)
    if env:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"{_ENV_MAX_WIDTH} must be an integer, got {env!r}")
    return DEFAULT_MAX_WIDTH


class CrossingNode:
    """A bare crossing; ports 0..3 in the PD slot convention."""

    __slots__ = ()
    port_count = 4
    denominator = ONE

    # local matchings as port->port maps, with monomial exponents
    _A_MAP = {1: 2, 2: 1, 3: 0, 0: 3}
    _B_MAP = {0: 1, 1: 0, 2: 3, 3: 2}

    def local_terms(self):
        return ((self._A_MAP, {1: 1}), (self._B_MAP, {-1: 1}))

    def __repr__(self):
        return "CrossingNode()"


class CouponNode:
    """A box carrying an explicit element of TL_n, given as matchings of
    its 2n boundary points with integer Laurent coefficients over a
    common denominator.

    Ports use the circle convention of PlanarMatching: 0..n-1 across the
    bottom, then n..2n-1 across the top right to left.
    """

    __slots__ = ("port_count", "denominator", "_terms", "label")

    def __init__(self, points: int, terms, denominator: LaurentPolynomial = ONE,
                 label: str = ""):
        self.port_count = points
        self.denominator = denominator
        self.label = label
        resolved = []
        for pairs, coeff in terms:
            pmap: dict[int, int] = {}
            for a, b in pairs:
                pmap[a] = b
                pmap[b] = a
            if len(pmap) != points:
                raise ValueError("coupon matching must cover all points")
            if isinstance(coeff, LaurentPolynomial):
                coeff = coeff.terms
            resolved.append((pmap, dict(coeff)))
        self._terms = tuple(resolved)

    def local_terms(self):
        return self._terms

    def __repr__(self):
        tag = self.label or f"{len(self._terms)} term(s)"
        return f"CouponNode({self.port_count} points, {tag})"


_PROJECTOR_CACHE: dict[int, CouponNode] = {}


def projector_node(n: int) -> CouponNode:
    """The Jones-Wenzl box f(n) as a coupon with cleared denominators."""
    node = _PROJECTOR_CACHE.get(n)
    if node is None:
        q, rows = cleared_projector(n)
        terms = [(m.pairs, coeff) for coeff, m in rows]
        node = CouponNode(2 * n, terms, q, label=f"f({n})")
        _PROJECTOR_CACHE[n] = node
    return node


def matching_coupon(points: int, pairs, label: str = "") -> CouponNode:
    """A single fixed matching with coefficient 1."""
    return CouponNode(points, [(tuple(pairs), {0: 1})], ONE, label=label)


Port = tuple  # (node_index, port_index)


class DecoratedDiagram:
    """Nodes plus a closed wiring: every port is paired with exactly one
    other port (never itself)."""

    __slots__ = ("nodes", "pairing", "free_loops", "suggested_order")

    def __init__(self, nodes, pairing: dict, free_loops: int = 0,
                 suggested_order=None):
        self.nodes = tuple(nodes)
        self.free_loops = free_loops
        self.suggested_order = tuple(suggested_order) if suggested_order else None
        full: dict[Port, Port] = {}
        for a, b in pairing.items():
            full[a] = b
            full[b] = a
        expected = {(ni, pi) for ni, node in enumerate(self.nodes)
                    for pi in range(node.port_count)}
        if set(full) != expected:
            missing = expected - set(full)
            extra = set(full) - expected
            raise ValueError(f"wiring mismatch: missing {sorted(missing)[:4]}, "
                             f"unknown {sorted(extra)[:4]}")
        for a, b in full.items():
            if a == b:
                raise ValueError(f"port {a} wired to itself")
            if full[b] != a:
                raise ValueError("wiring is not an involution")
        self.pairing = full
        if self.suggested_order is not None:
            if sorted(self.suggested_order) != list(range(len(self.nodes))):
                raise ValueError("suggested order must visit every node once")

    @property
    def node_count(self) -> int:
        return len(self.nodes)


def from_link(link: LinkDiagram) -> DecoratedDiagram:
    """One crossing node per PD crossing, wired along the arcs."""
    pairing = {}
    for arc in link.arcs:
        (c1, p1), (c2, p2) = link.arc_slots(arc)
        pairing[(c1, p1)] = (c2, p2)
    nodes = [CrossingNode() for _ in link.crossings]
    return DecoratedDiagram(nodes, pairing, free_loops=link.free_loops)


# ---------------------------------------------------------------------------
# ordering


@dataclass(frozen=True)
class NodeEvent:
    node: int
    closes: int          # wire-ends glued shut by this attachment
    opens: int           # fresh dangling wire-ends
    width_after: int


@dataclass(frozen=True)
class MorsePlan:
    """An attachment order together with its width profile."""
    events: tuple
    peak_width: int
    free_loops: int

    @property
    def order(self) -> tuple:
        return tuple(e.node for e in self.events)

    def validate(self, dd: DecoratedDiagram) -> None:
        if sorted(self.order) != list(range(dd.node_count)):
            raise ValueError("plan must visit every node exactly once")


def _events_for_order(dd: DecoratedDiagram, order) -> MorsePlan:
    events = []
    width = 0
    peak = 0
    processed = [False] * dd.node_count
    for ni in order:
        node = dd.nodes[ni]
        closes = opens = 0
        for pi in range(node.port_count):
            qn, _ = dd.pairing[(ni, pi)]
            if qn == ni:
                continue
            if processed[qn]:
                closes += 1
            else:
                opens += 1
        width += opens - closes
        peak = max(peak, width)
        processed[ni] = True
        events.append(NodeEvent(ni, closes, opens, width))
    return MorsePlan(tuple(events), peak, dd.free_loops)


def _order_exact(dd: DecoratedDiagram) -> list:
    """Subset DP minimizing peak width; exponential in the node count."""
    n = dd.node_count
    # neighbor port counts: cross[v][u] = wires between v and u
    cross = [dict() for _ in range(n)]
    loops_out = [0] * n
    for ni, node in enumerate(dd.nodes):
        for pi in range(node.port_count):
            qn, _ = dd.pairing[(ni, pi)]
            if qn != ni:
                cross[ni][qn] = cross[ni].get(qn, 0) + 1
                loops_out[ni] += 1
    full = (1 << n) - 1
    best = {0: 0}
    choice = {}
    width_of = {0: 0}
    # widths are cheap to maintain incrementally
    for subset in range(1, full + 1):
        v = (subset & -subset).bit_length() - 1
        prev = subset & ~(1 << v)
        # width(subset) from width(prev): v's wires flip roles
        into = sum(c for u, c in cross[v].items() if prev >> u & 1)
        w = width_of[prev] + (loops_out[v] - into) - into
        width_of[subset] = w
        bestv = None
        for v in range(n):
            if not subset >> v & 1:
                continue
            p = subset & ~(1 << v)
            if p not in best:
                continue
            cand = max(best[p], width_of[subset])
            if bestv is None or cand < bestv:
                bestv = cand
                choice[subset] = v
        best[subset] = bestv
    order = []
    s = full
    while s:
        v = choice[s]
        order.append(v)
        s &= ~(1 << v)
    order.reverse()
    return order


def _order_greedy(dd: DecoratedDiagram) -> list:
    n = dd.node_count
    cross = [dict() for _ in range(n)]
    degree = [0] * n
    for ni, node in enumerate(dd.nodes):
        for pi in range(node.port_count):
            qn, _ = dd.pairing[(ni, pi)]
            if qn != ni:
                cross[ni][qn] = cross[ni].get(qn, 0) + 1
                degree[ni] += 1
    done = [False] * n
    into = [0] * n  # wires from the processed region into each pending node
    order = []
    width = 0
    for _ in range(n):
        bestv = None
        bestkey = None
        for v in range(n):
            if done[v]:
                continue
            w = width + degree[v] - 2 * into[v]
            key = (w, -into[v], v)
            if bestkey is None or key < bestkey:
                bestkey = key
                bestv = v
        v = bestv
        done[v] = True
        width += degree[v] - 2 * into[v]
        order.append(v)
        for u, c in cross[v].items():
            if not done[u]:
                into[u] += c
    return order


DP_NODE_LIMIT = 13


def morse_decompose(dd: DecoratedDiagram) -> MorsePlan:
    """Choose an attachment order: exact subset minimization for small
    networks, otherwise the narrowest of the width greedy and the
    builder's suggestion."""
    if dd.node_count <= DP_NODE_LIMIT:
        return _events_for_order(dd, _order_exact(dd))
    plans = [_events_for_order(dd, _order_greedy(dd))]
    if dd.suggested_order is not None:
        plans.append(_events_for_order(dd, dd.suggested_order))
    return min(plans, key=lambda p: p.peak_width)


# ---------------------------------------------------------------------------
# the sweep


def _delta_powers(k: int, table=[{0: 1}]):
    while len(table) <= k:
        table.append(term_mul(table[-1], _DELTA.terms))
    return table


def evaluate(dd: DecoratedDiagram, plan: MorsePlan | None = None,
             max_width: int | None = None,
             max_terms: int | None = None) -> LaurentPolynomial:
    """Bracket value of a closed decorated diagram in Z[A, A^-1].

    Links and fully cabled diagrams always land in the Laurent ring; a
    partially smoothed projector network need not (closing a strand over
    part of a box leaves quantum integers in the denominator), and then
    this raises — evaluate_rational is the total version.
    """
    value, denominator = _sweep(dd, plan, max_width, max_terms)
    if value.is_zero() or denominator == ONE:
        return value
    return divide_exact(value, denominator)


def evaluate_rational(dd: DecoratedDiagram, plan: MorsePlan | None = None,
                      max_width: int | None = None,
                      max_terms: int | None = None) -> RationalFunction:
    """Exact value of a closed decorated diagram in Q(A), reduced."""
    value, denominator = _sweep(dd, plan, max_width, max_terms)
    return RationalFunction(value, denominator)


def _sweep(dd: DecoratedDiagram, plan: MorsePlan | None = None,
           max_width: int | None = None,
           max_terms: int | None = None):
    """Run the attachment sweep; return (integer Laurent total, accumulated
    coupon denominator) before the final division."""
    if plan is None:
        plan = morse_decompose(dd)
    else:
        plan.validate(dd)
    cap = resolve_max_width(max_width)
    if plan.peak_width > cap:
        raise ResourceLimitError(
            f"plan needs width {plan.peak_width}, budget is {cap} "
            f"(raise with --max-width or {_ENV_MAX_WIDTH})")

    processed = [False] * dd.node_count
    denominator = ONE
    # term bag: canonical matching key -> integer Laurent coefficient dict
    terms: dict[tuple, dict] = {(): {0: 1}}

    for event in plan.events:
        ni = event.node
        node = dd.nodes[ni]
        nports = node.port_count
        denominator = denominator * node.denominator

        # port classification is shared by every term
        # ('i', local) internal wire / ('o', None) into the swept region
        # ('n', port) fresh wire out to an untouched node
        pclass = []
        for pi in range(nports):
            qn, qp = dd.pairing[(ni, pi)]
            if qn == ni:
                pclass.append(("i", qp))
            elif processed[qn]:
                pclass.append(("o", None))
            else:
                pclass.append(("n", (qn, qp)))

        local_terms = node.local_terms()
        new_terms: dict[tuple, dict] = {}
        for key, coeff in terms.items():
            M = {}
            for a, b in key:
                M[a] = b
                M[b] = a
            for local_map, local_coeff in local_terms:
                new_key, cycles = _attach(ni, nports, local_map, pclass, M)
                if len(local_coeff) == 1:
                    [(e, c)] = local_coeff.items()
                    piece = term_shift(coeff, e)
                    if c != 1:
                        piece = {k: c * v for k, v in piece.items()}
                else:
                    piece = term_mul(coeff, local_coeff)
                if cycles:
                    piece = term_mul(piece, _delta_powers(cycles)[cycles])
                slot = new_terms.get(new_key)
                if slot is None:
                    new_terms[new_key] = piece
                else:
                    new_terms[new_key] = term_add(slot, piece)
        terms = {k: v for k, v in new_terms.items() if v}
        processed[ni] = True
        if max_terms is not None and len(terms) > max_terms:
            raise ResourceLimitError(
                f"{len(terms)} live matchings exceeds the cap of {max_terms}")
        if not terms:
            break

    total: dict = {}
    for key, coeff in terms.items():
        if key:
            raise AssertionError("sweep finished with dangling wires")
        total = term_add(total, coeff)
    if dd.free_loops:
        total = term_mul(total, _delta_powers(dd.free_loops)[dd.free_loops])
    return LaurentPolynomial(total), denominator


def _attach(ni: int, nports: int, local_map: dict, pclass: list, M: dict):
    """Splice one local matching into the strand state M (mutated copy
    semantics: M is consumed).  Returns (new matching key, closed loops)."""
    M = dict(M)
    visited = [False] * nports
    new_pairs = []
    cycles = 0

    def exit_port(q):
        # leave local port q through its external side
        kind, val = pclass[q]
        if kind == "i":
            return ("l", val)
        if kind == "n":
            return ("t", val)
        other = M.pop((ni, q))
        del M[other]
        if other[0] == ni:
            # the strand loops straight back into this node
            return ("l", other[1])
        return ("t", other)

    for p0 in range(nports):
        if visited[p0]:
            continue
        # direction one: through the node's chord at p0
        closed = False
        ends = []
        cur = p0
        while True:
            visited[cur] = True
            q = local_map[cur]
            visited[q] = True
            kind, val = exit_port(q)
            if kind == "t":
                ends.append(val)
                break
            if val == p0:
                closed = True
                break
            cur = val
        if closed:
            cycles += 1
            continue
        # direction two: out of p0's external side
        kind, val = exit_port(p0)
        if kind == "t":
            ends.append(val)
        else:
            cur = val
            while True:
                visited[cur] = True
                q = local_map[cur]
                visited[q] = True
                kind, val = exit_port(q)
                if kind == "t":
                    ends.append(val)
                    break
                cur = val
        new_pairs.append((ends[0], ends[1]) if ends[0] <= ends[1] else (ends[1], ends[0]))

    for a, b in M.items():
        if a < b:
            new_pairs.append((a, b))
    new_pairs.sort()
    return tuple(new_pairs), cycles


# ---------------------------------------------------------------------------
# brackets and cables


def bracket(link: LinkDiagram, max_width: int | None = None) -> LaurentPolynomial:
    """Kauffman bracket, normalized so the empty diagram gives 1 and a
    crossing-free circle gives delta."""
    return evaluate(from_link(link), max_width=max_width)


BRUTE_FORCE_LIMIT = 20


def bracket_bruteforce(link: LinkDiagram) -> LaurentPolynomial:
    """Plain 2^k state sum; the independent oracle for the sweep."""
    k = link.crossing_count
    if k > BRUTE_FORCE_LIMIT:
        raise ResourceLimitError(f"{k} crossings is past the brute-force limit")
    total: dict = {}
    for state in itertools.product("AB", repeat=k):
        graph = apply_state(link, state)
        exponent = sum(1 if s == "A" else -1 for s in state)
        circles = graph.circle_count  # free loops are already counted
        contribution = term_shift(_delta_powers(circles)[circles], exponent)
        total = term_add(total, contribution)
    return LaurentPolynomial(total)


def _grid_index(block: int, m: int, u: int, o: int) -> int:
    return block * m * m + (u - 1) * m + (o - 1)


def _stub_port(block: int, slot: int, idx: int, m: int) -> Port:
    """Engine port of the cable stub with counterclockwise index idx
    (1..m) at the given slot of original crossing `block`."""
    if slot == 0:
        return (_grid_index(block, m, idx, 1), 0)
    if slot == 1:
        return (_grid_index(block, m, m, idx), 1)
    if slot == 2:
        return (_grid_index(block, m, m + 1 - idx, m), 2)
    return (_grid_index(block, m, 1, m + 1 - idx), 3)


def cable_ports(link: LinkDiagram, m: int):
    """Port-level wiring of the blackboard m-cable.

    Returns (crossing_node_count, internal_pairing, band_ends) where
    band_ends[(arc, i)] = (first-end port, second-end port): the two grid
    ports tied by band i of `arc`, the first at the arc's first PD slot
    (stub index i), the second at the other end (stub index m+1-i).
    """
    if m < 1:
        raise ValueError("cable width must be >= 1")
    k = link.crossing_count
    pairing: dict[Port, Port] = {}
    for block in range(k):
        for u in range(1, m + 1):
            for o in range(1, m):
                pairing[(_grid_index(block, m, u, o), 2)] = (_grid_index(block, m, u, o + 1), 0)
        for o in range(1, m + 1):
            for u in range(1, m):
                pairing[(_grid_index(block, m, u, o), 1)] = (_grid_index(block, m, u + 1, o), 3)
    band_ends = {}
    for arc in link.arcs:
        (c1, p1), (c2, p2) = link.arc_slots(arc)
        for i in range(1, m + 1):
            band_ends[(arc, i)] = (_stub_port(c1, p1, i, m), _stub_port(c2, p2, m + 1 - i, m))
    return k * m * m, pairing, band_ends


def cabled_diagram(link: LinkDiagram, m: int, box_arcs=(),
                   coupon: CouponNode | None = None) -> DecoratedDiagram:
    """The blackboard m-cable of `link` with a coupon (default: the
    Jones-Wenzl box f(m)) spliced across the cable at each arc in
    `box_arcs`.  Free loops of `link` are *not* carried over; the caller
    decides what a closed cabled loop is worth."""
    box_arcs = list(box_arcs)
    n_grid, pairing, band_ends = cable_ports(link, m)
    nodes: list = [CrossingNode() for _ in range(n_grid)]
    boxed = {}
    for bi, arc in enumerate(box_arcs):
        if arc in boxed:
            raise ValueError(f"arc {arc!r} boxed twice")
        node = coupon if coupon is not None else projector_node(m)
        if node.port_count != 2 * m:
            raise ValueError("coupon size must match the cable width")
        boxed[arc] = len(nodes)
        nodes.append(node)
    for (arc, i), (end1, end2) in band_ends.items():
        bn = boxed.get(arc)
        if bn is None:
            pairing[end1] = end2
        else:
            # band i enters the box bottom at position i-1 and leaves the
            # top at the same position, continuing to the reversed stub
            pairing[end1] = (bn, i - 1)
            pairing[(bn, top_point(i - 1, m))] = end2
    return DecoratedDiagram(nodes, pairing, free_loops=0)


def _component_box_arcs(link: LinkDiagram):
    return [min(comp, key=repr) for comp in link.components()]


def colored_jones(link: LinkDiagram, n: int,
                  max_width: int | None = None) -> LaurentPolynomial:
    """Unreduced n-colored Jones polynomial in the Kauffman variable,
    blackboard framing: the n-cable with one Jones-Wenzl box per
    component.  The 0-crossing unknot gives the loop polynomial of f(n)."""
    if n < 0:
        raise ValueError("color must be >= 0")
    if n == 0:
        return LaurentPolynomial.one()
    loops_factor = quantum_dimension(n) ** link.free_loops if link.free_loops else ONE
    if not link.crossings:
        return loops_factor
    box_arcs = _component_box_arcs(link) if n >= 2 else []
    dd = cabled_diagram(link, n, box_arcs)
    value = evaluate(dd, max_width=max_width)
    return value * loops_factor if link.free_loops else value
