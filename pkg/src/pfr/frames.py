"""Finite frames as validated data.

A finite bounded distributive lattice is a frame and a Heyting algebra; the
validator rejects anything less, naming the first violated law.  All lattice
tables (meet, join, arrow, pseudocomplement) are precomputed at validation
time, and frames are immutable afterwards, so every operation here is a pure
table lookup.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import order
from .errors import NotALattice, NotAPoset, NotDistributive, UnknownElement


class FiniteFrame:
    """A finite frame over opaque string element identifiers.

    Build instances through :func:`validate_frame`; the constructor trusts
    its tables.
    """

    def __init__(self, name, elements, up, meet_t, join_t, arrow_t, pstar_t,
                 bottom_i, top_i):
        self.name = name
        self.elements = tuple(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        self._up = tuple(up)
        self._low = tuple(order.lowers_from_uppers(len(elements), up))
        self._meet = meet_t
        self._join = join_t
        self._arrow = arrow_t
        self._pstar = pstar_t
        self._bottom_i = bottom_i
        self._top_i = top_i
        self._key = (self.elements,
                     frozenset((a, b) for a in self.elements for b in self.elements
                               if self.leq(a, b)))

    # identifier API ------------------------------------------------------

    def _i(self, a: str) -> int:
        try:
            return self.index[a]
        except KeyError:
            raise UnknownElement(f"{a!r} not in frame {self.name!r}") from None

    @property
    def bottom(self) -> str:
        return self.elements[self._bottom_i]

    @property
    def top(self) -> str:
        return self.elements[self._top_i]

    @property
    def size(self) -> int:
        return len(self.elements)

    def leq(self, a: str, b: str) -> bool:
        return bool((self._up[self._i(a)] >> self._i(b)) & 1)

    def meet(self, a: str, b: str) -> str:
        return self.elements[self._meet[self._i(a)][self._i(b)]]

    def join(self, a: str, b: str) -> str:
        return self.elements[self._join[self._i(a)][self._i(b)]]

    def arrow(self, a: str, b: str) -> str:
        return self.elements[self._arrow[self._i(a)][self._i(b)]]

    def pstar(self, a: str) -> str:
        return self.elements[self._pstar[self._i(a)]]

    def meet_all(self, items) -> str:
        acc = self.top
        for x in items:
            acc = self.meet(acc, x)
        return acc

    def join_all(self, items) -> str:
        acc = self.bottom
        for x in items:
            acc = self.join(acc, x)
        return acc

    def is_regular(self, a: str) -> bool:
        return self.pstar(self.pstar(a)) == a

    def covers(self):
        return [(self.elements[i], self.elements[j])
                for i, j in order.cover_pairs(self.size, self._up)]

    def is_boolean(self) -> bool:
        return all(is_complemented(self, a) for a in self.elements)

    def canonical_key(self) -> tuple:
        return order.canonical_key(self.size, self._up)

    def __eq__(self, other):
        return isinstance(other, FiniteFrame) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"FiniteFrame({self.name!r}, {self.size} elements)"


def validate_frame(elements, covers=None, relation=None, name: str = "") -> FiniteFrame:
    """Check the lattice laws and build a frame with all tables filled.

    The order comes either from a cover relation (closed transitively) or
    from a full relation given as (a, b) pairs meaning a <= b.  Raises
    NotAPoset / NotALattice / NotDistributive with the first witness found.
    """
    elements = tuple(elements)
    n = len(elements)
    if n == 0:
        raise NotAPoset("empty")
    if len(set(elements)) != n:
        raise NotAPoset("duplicate-elements")
    idx = {e: i for i, e in enumerate(elements)}

    if covers is not None:
        try:
            pairs = [(idx[a], idx[b]) for a, b in covers]
        except KeyError as exc:
            raise UnknownElement(str(exc)) from None
        up = order.close_covers(n, pairs)
        if up is None:
            raise NotAPoset("cycle")
    elif relation is not None:
        up = [1 << i for i in range(n)]
        for a, b in relation:
            up[idx[a]] |= 1 << idx[b]
        bad = order.order_violation(n, up)
        if bad is not None:
            law, wit = bad
            raise NotAPoset(law, tuple(elements[i] for i in wit))
    else:
        raise ValueError("need covers or relation")

    low = order.lowers_from_uppers(n, up)
    full = order.full_mask(n)

    bottoms = [i for i in range(n) if up[i] == full]
    tops = [i for i in range(n) if low[i] == full]
    if not bottoms:
        raise NotALattice("no-bottom")
    if not tops:
        raise NotALattice("no-top")
    bottom_i, top_i = bottoms[0], tops[0]

    meet_t = [[0] * n for _ in range(n)]
    join_t = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            m = order.set_meet(n, up, low, (1 << i) | (1 << j))
            if m is None:
                raise NotALattice("missing-meet", (elements[i], elements[j]))
            meet_t[i][j] = m
            v = order.set_join(n, up, low, (1 << i) | (1 << j))
            if v is None:
                raise NotALattice("missing-join", (elements[i], elements[j]))
            join_t[i][j] = v

    for a in range(n):
        for b in range(n):
            for c in range(n):
                if meet_t[a][join_t[b][c]] != join_t[meet_t[a][b]][meet_t[a][c]]:
                    raise NotDistributive(
                        "distributivity", (elements[a], elements[b], elements[c]))

    # a -> b exists in any finite distributive lattice: the candidate set
    # {c | a /\ c <= b} is closed under joins, so its join is its maximum.
    arrow_t = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            acc = bottom_i
            for c in range(n):
                if (up[meet_t[a][c]] >> b) & 1:
                    acc = join_t[acc][c]
            arrow_t[a][b] = acc
    pstar_t = [arrow_t[a][bottom_i] for a in range(n)]

    return FiniteFrame(name, elements, up, meet_t, join_t, arrow_t, pstar_t,
                       bottom_i, top_i)


@dataclass
class FrameMap:
    """A total assignment between frames; homomorphy is computed, never assumed."""

    source: FiniteFrame
    target: FiniteFrame
    assignment: dict

    def __call__(self, a: str) -> str:
        return self.assignment[a]


def check_hom(fmap: FrameMap) -> bool:
    """True iff the map preserves 0, 1 and all binary meets and joins."""
    src, tgt, h = fmap.source, fmap.target, fmap.assignment
    if set(h) != set(src.elements):
        return False
    if h[src.bottom] != tgt.bottom or h[src.top] != tgt.top:
        return False
    for a in src.elements:
        for b in src.elements:
            if h[src.meet(a, b)] != tgt.meet(h[a], h[b]):
                return False
            if h[src.join(a, b)] != tgt.join(h[a], h[b]):
                return False
    return True


def is_dense(frame: FiniteFrame, a: str) -> bool:
    return frame.pstar(a) == frame.bottom


def is_complemented(frame: FiniteFrame, a: str) -> bool:
    return frame.join(a, frame.pstar(a)) == frame.top


def subfit_counterexample(frame: FiniteFrame):
    """First pair (a, b) with a not<= b admitting no c with a∨c = 1 ≠ b∨c."""
    top = frame.top
    for a in frame.elements:
        for b in frame.elements:
            if frame.leq(a, b):
                continue
            if not any(frame.join(a, c) == top and frame.join(b, c) != top
                       for c in frame.elements):
                return (a, b)
    return None


def is_subfit(frame: FiniteFrame) -> bool:
    return subfit_counterexample(frame) is None


def ed_witness(frame: FiniteFrame):
    for a in frame.elements:
        if frame.join(frame.pstar(a), frame.pstar(frame.pstar(a))) != frame.top:
            return a
    return None


def is_extremally_disconnected(frame: FiniteFrame) -> bool:
    return ed_witness(frame) is None


def is_completely_regular(frame: FiniteFrame) -> bool:
    """Every element is the join of those interpolably well inside it.

    The rather-below relation b -< a (b* ∨ a = 1) is refined to its largest
    interpolative subrelation by a greatest-fixpoint iteration; on finite
    carriers this matches the rational-chain definition because dyadic
    witness chains collapse to iterated interpolation.
    """
    els = frame.elements
    rel = {(b, a) for b in els for a in els
           if frame.join(frame.pstar(b), a) == frame.top}
    while True:
        refined = {(b, a) for (b, a) in rel
                   if any((b, c) in rel and (c, a) in rel for c in els)}
        if refined == rel:
            break
        rel = refined
    for a in els:
        if frame.join_all(b for b in els if (b, a) in rel) != a:
            return False
    return True


def booleanization(frame: FiniteFrame):
    """The Boolean frame of regular elements plus the double-pseudocomplement map.

    Meets are inherited; joins are recomputed from the restricted order,
    which realizes (x ∨ y)** without a separate table.
    """
    regs = [a for a in frame.elements if frame.is_regular(a)]
    rel = [(a, b) for a in regs for b in regs if frame.leq(a, b)]
    bframe = validate_frame(regs, relation=rel, name=f"B({frame.name})")
    assert bframe.is_boolean(), "regular elements must form a Boolean algebra"
    beta = FrameMap(frame, bframe,
                    {a: frame.pstar(frame.pstar(a)) for a in frame.elements})
    return bframe, beta


def frame_laws_violation(frame: FiniteFrame):
    """Re-derive every table from the raw order and report the first mismatch.

    Used for fault injection: any single corrupted table entry shows up here.
    Returns (law, witness) or None.
    """
    n = frame.size
    up, low = frame._up, frame._low
    els = frame.elements
    for i in range(n):
        for j in range(n):
            m = order.set_meet(n, up, low, (1 << i) | (1 << j))
            if m is None or frame._meet[i][j] != m:
                return ("meet-table", (els[i], els[j]))
            v = order.set_join(n, up, low, (1 << i) | (1 << j))
            if v is None or frame._join[i][j] != v:
                return ("join-table", (els[i], els[j]))
    for a in els:
        for b in els:
            for c in els:
                if frame.meet(a, frame.join(b, c)) != \
                        frame.join(frame.meet(a, b), frame.meet(a, c)):
                    return ("distributivity", (a, b, c))
                if (frame.leq(frame.meet(a, b), c)) != (frame.leq(a, frame.arrow(b, c))):
                    return ("adjunction", (a, b, c))
    for a in els:
        if frame.pstar(a) != frame.arrow(a, frame.bottom):
            return ("pstar", (a,))
        if frame.pstar(frame.pstar(frame.pstar(a))) != frame.pstar(a):
            return ("triple-star", (a,))
    return None
