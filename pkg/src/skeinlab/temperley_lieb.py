"""The Temperley-Lieb algebras TL_n and their Jones-Wenzl projectors.

Boundary points of an (n, n)-tangle sit on a circle: bottom points
0..n-1 left to right, then top points n..2n-1 continuing counterclockwise,
so top position p (left to right) is point 2n-1-p.  A basis diagram is a
non-crossing perfect matching of the 2n points; there are Catalan(n) of
them.  Elements are finite sums with coefficients in Q(A); closed loops
formed while stacking evaluate to delta = -A^2 - A^-2 each.

The n-th Jones-Wenzl projector is built by the two-box recursion
    f(n) = f(n-1)x1 - (Delta_{n-2}/Delta_{n-1}) (f(n-1)x1) e_{n-1} (f(n-1)x1)
with f(0) empty and f(1) a single strand.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .laurent import (
    LaurentPolynomial,
    RationalFunction,
    divide_exact,
    laurent_lcm,
    loop_value,
    quantum_dimension,
)


def top_point(position: int, n: int) -> int:
    """Circle label of the top boundary point at left-to-right position p."""
    return 2 * n - 1 - position


class PlanarMatching:
    """A non-crossing perfect matching of 2n circle points."""

    __slots__ = ("n", "pairs", "_partner")

    def __init__(self, n: int, pairs: Iterable[tuple[int, int]]):
        partner: dict[int, int] = {}
        for a, b in pairs:
            if a == b or not (0 <= a < 2 * n and 0 <= b < 2 * n):
                raise ValueError(f"bad chord ({a}, {b}) on {2 * n} points")
            if a in partner or b in partner:
                raise ValueError("point matched twice")
            partner[a] = b
            partner[b] = a
        if len(partner) != 2 * n:
            raise ValueError("matching must cover all points")
        stack: list[int] = []
        for i in range(2 * n):
            j = partner[i]
            if j > i:
                stack.append(i)
            else:
                if not stack or stack.pop() != j:
                    raise ValueError("chords cross")
        self.n = n
        self._partner = partner
        self.pairs = tuple(sorted((min(a, b), max(a, b)) for a, b in partner.items() if a < b))

    def partner(self, point: int) -> int:
        return self._partner[point]

    def __eq__(self, other):
        if not isinstance(other, PlanarMatching):
            return NotImplemented
        return self.n == other.n and self.pairs == other.pairs

    def __hash__(self):
        return hash((self.n, self.pairs))

    def __lt__(self, other):
        return self.pairs < other.pairs

    def to_parens(self) -> str:
        """Balanced-parenthesis rendering in circle order."""
        return "".join("(" if self._partner[i] > i else ")" for i in range(2 * self.n))

    def __repr__(self):
        return f"PlanarMatching({self.n}, {self.to_parens()})"


def identity_matching(n: int) -> PlanarMatching:
    return PlanarMatching(n, [(i, top_point(i, n)) for i in range(n)])


def cup_cap_matching(n: int, i: int) -> PlanarMatching:
    """The generator e_i (1 <= i <= n-1): cup at bottom positions i-1, i
    and cap at the same top positions; all other strands vertical."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"e_{i} does not live in TL_{n}")
    pairs = [(i - 1, i), (top_point(i - 1, n), top_point(i, n))]
    pairs += [(j, top_point(j, n)) for j in range(n) if j not in (i - 1, i)]
    return PlanarMatching(n, pairs)


def enumerate_matchings(n: int) -> list[PlanarMatching]:
    """All non-crossing perfect matchings of 2n points (Catalan(n) many)."""

    def split(points: tuple[int, ...]) -> list[list[tuple[int, int]]]:
        if not points:
            return [[]]
        a = points[0]
        results = []
        # a's partner must leave an even gap on each side of the chord
        for idx in range(1, len(points), 2):
            b = points[idx]
            for left in split(points[1:idx]):
                for right in split(points[idx + 1:]):
                    results.append([(a, b)] + left + right)
        return results

    return [PlanarMatching(n, pairs) for pairs in split(tuple(range(2 * n)))]


def _coerce_scalar(c) -> RationalFunction:
    if isinstance(c, RationalFunction):
        return c
    if isinstance(c, LaurentPolynomial):
        return RationalFunction.from_laurent(c)
    if isinstance(c, int):
        return RationalFunction(c)
    raise TypeError(f"bad scalar {c!r}")


class TLElement:
    """A Q(A)-linear combination of TL_n basis diagrams."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[PlanarMatching, RationalFunction] | None = None):
        self.n = n
        self.terms: dict[PlanarMatching, RationalFunction] = {}
        if terms:
            for m, c in terms.items():
                if m.n != n:
                    raise ValueError("strand count mismatch")
                c = _coerce_scalar(c)
                if not c.is_zero():
                    self.terms[m] = c

    @classmethod
    def basis(cls, m: PlanarMatching) -> "TLElement":
        return cls(m.n, {m: RationalFunction.one()})

    @classmethod
    def identity(cls, n: int) -> "TLElement":
        return cls.basis(identity_matching(n))

    @classmethod
    def generator(cls, n: int, i: int) -> "TLElement":
        return cls.basis(cup_cap_matching(n, i))

    @classmethod
    def zero(cls, n: int) -> "TLElement":
        return cls(n)

    def __add__(self, other: "TLElement") -> "TLElement":
        if not isinstance(other, TLElement):
            return NotImplemented
        if self.n != other.n:
            raise ValueError("strand count mismatch")
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, RationalFunction.zero()) + c
            if s.is_zero():
                out.pop(m, None)
            else:
                out[m] = s
        return TLElement(self.n, out)

    def __sub__(self, other: "TLElement") -> "TLElement":
        return self + (-other)

    def __neg__(self) -> "TLElement":
        return TLElement(self.n, {m: -c for m, c in self.terms.items()})

    def scale(self, c) -> "TLElement":
        c = _coerce_scalar(c)
        if c.is_zero():
            return TLElement.zero(self.n)
        return TLElement(self.n, {m: ci * c for m, ci in self.terms.items()})

    def __rmul__(self, other):
        if isinstance(other, (int, LaurentPolynomial, RationalFunction)):
            return self.scale(other)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, TLElement):
            return tl_multiply(self, other)
        if isinstance(other, (int, LaurentPolynomial, RationalFunction)):
            return self.scale(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, TLElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return f"TLElement(TL_{self.n}, 0)"
        bits = [f"({c}) {m.to_parens()}" for m, c in sorted(self.terms.items(), key=lambda t: t[0].pairs)]
        return f"TLElement(TL_{self.n}, " + " + ".join(bits) + ")"


def _stack_pair(a: PlanarMatching, b: PlanarMatching) -> tuple[PlanarMatching, int]:
    """Glue b on top of a (a's top position p fuses with b's bottom point p);
    return the resulting matching and the number of closed loops formed."""
    n = a.n
    crossed: set[int] = set()  # interface positions met by boundary strands

    def walk(side: str, pt: int) -> int:
        # Follow a strand from one composite boundary point to the other.
        # Composite labels: a's bottoms keep 0..n-1, b's tops keep n..2n-1.
        while True:
            if side == "a":
                nxt = a.partner(pt)
                if nxt < n:
                    return nxt
                p = top_point(nxt, n)
                crossed.add(p)
                side, pt = "b", p
            else:
                nxt = b.partner(pt)
                if nxt >= n:
                    return nxt
                crossed.add(nxt)
                side, pt = "a", top_point(nxt, n)

    chords: list[tuple[int, int]] = []
    done: set[int] = set()
    for side, start in [("a", i) for i in range(n)] + [("b", top_point(p, n)) for p in range(n)]:
        if start in done:
            continue
        end = walk(side, start)
        done.add(start)
        done.add(end)
        chords.append((start, end))

    # whatever never met the boundary closes up into loops
    loops = 0
    for p in range(n):
        if p in crossed:
            continue
        cur = p
        while True:
            crossed.add(cur)
            up = b.partner(cur)          # bottom-to-bottom chord of b
            crossed.add(up)
            down = a.partner(top_point(up, n))  # top-to-top chord of a
            cur = top_point(down, n)
            if cur == p:
                break
        loops += 1
    return PlanarMatching(n, chords), loops


def tl_multiply(x: TLElement, y: TLElement) -> TLElement:
    """Product in TL_n: stack y atop x, delta per closed loop."""
    if x.n != y.n:
        raise ValueError("strand count mismatch")
    d = RationalFunction.from_laurent(loop_value())
    out: dict[PlanarMatching, RationalFunction] = {}
    dpow: list[RationalFunction] = [RationalFunction.one()]
    for mx, cx in x.terms.items():
        for my, cy in y.terms.items():
            m, loops = _stack_pair(mx, my)
            while loops >= len(dpow):
                dpow.append(dpow[-1] * d)
            c = cx * cy * dpow[loops]
            s = out.get(m)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(m, None)
            else:
                out[m] = s
    return TLElement(x.n, out)


def tl_tensor(x: TLElement, y: TLElement) -> TLElement:
    """Horizontal juxtaposition: x on the left, y on the right."""
    n, m = x.n, y.n
    total = n + m

    def remap_x(pt):
        return pt if pt < n else top_point(top_point(pt, n), total)

    def remap_y(pt):
        return n + pt if pt < m else top_point(n + top_point(pt, m), total)

    out: dict[PlanarMatching, RationalFunction] = {}
    for mx, cx in x.terms.items():
        for my, cy in y.terms.items():
            chords = [(remap_x(a), remap_x(b)) for a, b in mx.pairs]
            chords += [(remap_y(a), remap_y(b)) for a, b in my.pairs]
            mm = PlanarMatching(total, chords)
            c = cx * cy
            s = out.get(mm)
            s = c if s is None else s + c
            out[mm] = s
    return TLElement(total, out)


def _close_last(m: PlanarMatching) -> tuple[PlanarMatching, int]:
    """Join the rightmost bottom point to the rightmost top point around
    the side; returns the smaller matching and the loop count (0 or 1)."""
    n = m.n
    b, t = n - 1, top_point(n - 1, n)  # adjacent on the circle
    loops = 0
    chords = []
    if m.partner(b) == t:
        loops = 1
        chords = [(a, c) for a, c in m.pairs if a != b]
    else:
        pb, pt = m.partner(b), m.partner(t)
        chords = [(a, c) for a, c in m.pairs if b not in (a, c) and t not in (a, c)]
        chords.append((pb, pt))

    def relabel(pt_):
        return pt_ if pt_ < n - 1 else pt_ - 2

    return PlanarMatching(n - 1, [(relabel(a), relabel(c)) for a, c in chords]), loops


def partial_trace(x: TLElement, count: int = 1) -> TLElement:
    """Close the rightmost `count` strands around the side."""
    if not 0 <= count <= x.n:
        raise ValueError("cannot close more strands than exist")
    d = RationalFunction.from_laurent(loop_value())
    cur = x
    for _ in range(count):
        out: dict[PlanarMatching, RationalFunction] = {}
        for m, c in cur.terms.items():
            mm, loops = _close_last(m)
            if loops:
                c = c * d
            s = out.get(mm)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(mm, None)
            else:
                out[mm] = s
        cur = TLElement(cur.n - 1, out)
    return cur


def closure(x: TLElement) -> RationalFunction:
    """Markov-style closure of all strands; the bracket value of the
    resulting closed diagram."""
    closed = partial_trace(x, x.n)
    if closed.is_zero():
        return RationalFunction.zero()
    # TL_0 has the single empty matching
    [(m, c)] = closed.terms.items()
    return c


_JW_CACHE: dict[int, TLElement] = {}


def jones_wenzl(n: int) -> TLElement:
    """The n-th Jones-Wenzl projector in TL_n (Wenzl's recursion)."""
    if n < 0:
        raise ValueError("projector index must be >= 0")
    got = _JW_CACHE.get(n)
    if got is not None:
        return got
    if n == 0:
        val = TLElement.basis(PlanarMatching(0, []))
    elif n == 1:
        val = TLElement.identity(1)
    else:
        prev = tl_tensor(jones_wenzl(n - 1), TLElement.identity(1))
        ratio = RationalFunction(quantum_dimension(n - 2), quantum_dimension(n - 1))
        e = TLElement.generator(n, n - 1)
        val = prev - ratio * (prev * e * prev)
    _JW_CACHE[n] = val
    return val


def absorption_check(m: int, n: int) -> bool:
    """(f(n) x id_m) . f(m+n) == f(m+n)."""
    big = jones_wenzl(m + n)
    left = tl_tensor(jones_wenzl(n), TLElement.identity(m))
    return left * big == big


def cleared_projector(n: int) -> tuple[LaurentPolynomial, list[tuple[dict, PlanarMatching]]]:
    """Denominator-free form of f(n): a common denominator Q and integer
    Laurent coefficients (as raw dicts) with f(n) = (1/Q) * sum c_i m_i.

    Used by the sweep evaluator so closed diagrams can be computed entirely
    over Z[A, A^-1] with one checked exact division at the end.
    """
    f = jones_wenzl(n)
    q = LaurentPolynomial.one()
    for c in f.terms.values():
        q = laurent_lcm(q, c.den)
    out = []
    for m, c in sorted(f.terms.items(), key=lambda t: t[0].pairs):
        num = c.num * divide_exact(q, c.den)
        out.append((num.terms, m))
    return q, out
