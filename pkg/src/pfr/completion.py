"""Cut completion of finite posets, with density certificates.

The completion is deliberately frame-agnostic: it is the desk-scale oracle
for density statements about finite samples of function lattices, not a
frame constructor (cut lattices need not be distributive).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import order
from .errors import NotAPoset, NotDirected, UnknownElement


class FinitePoset:
    """A finite poset over opaque string identifiers."""

    def __init__(self, name, elements, up):
        self.name = name
        self.elements = tuple(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        self._up = tuple(up)
        self._low = tuple(order.lowers_from_uppers(len(elements), up))

    def _i(self, a):
        try:
            return self.index[a]
        except KeyError:
            raise UnknownElement(f"{a!r} not in poset {self.name!r}") from None

    @property
    def size(self):
        return len(self.elements)

    def leq(self, a, b) -> bool:
        return bool((self._up[self._i(a)] >> self._i(b)) & 1)

    def join_of_set(self, items):
        """Least upper bound of the set, or None when absent."""
        mask = 0
        for a in items:
            mask |= 1 << self._i(a)
        if mask == 0:
            mins = [i for i in range(self.size)
                    if self._up[i] == order.full_mask(self.size)]
            return self.elements[mins[0]] if mins else None
        j = order.set_join(self.size, self._up, self._low, mask)
        return None if j is None else self.elements[j]

    def meet_of_set(self, items):
        mask = 0
        for a in items:
            mask |= 1 << self._i(a)
        if mask == 0:
            maxs = [i for i in range(self.size)
                    if self._low[i] == order.full_mask(self.size)]
            return self.elements[maxs[0]] if maxs else None
        m = order.set_meet(self.size, self._up, self._low, mask)
        return None if m is None else self.elements[m]

    def up_directed(self) -> bool:
        return all(bool(self._up[i] & self._up[j])
                   for i in range(self.size) for j in range(self.size))

    def down_directed(self) -> bool:
        return all(bool(self._low[i] & self._low[j])
                   for i in range(self.size) for j in range(self.size))

    def canonical_key(self):
        return order.canonical_key(self.size, self._up)

    def __repr__(self):
        return f"FinitePoset({self.name!r}, {self.size} elements)"


def validate_poset(elements, covers=None, relation=None, name="") -> FinitePoset:
    elements = tuple(elements)
    n = len(elements)
    if n == 0:
        raise NotAPoset("empty")
    idx = {e: i for i, e in enumerate(elements)}
    if covers is not None:
        up = order.close_covers(n, [(idx[a], idx[b]) for a, b in covers])
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
    return FinitePoset(name, elements, up)


def poset_of_frame(frame) -> FinitePoset:
    return FinitePoset(frame.name, frame.elements, frame._up)


@dataclass
class Completion:
    """A complete lattice together with the cut embedding of the base poset."""

    poset: FinitePoset
    lattice: FinitePoset          # finite, hence complete; maybe non-distributive
    embed: dict                    # poset element -> lattice element
    cut_of: dict                   # lattice element -> frozenset of poset elements


def _uppers(poset: FinitePoset, subset: frozenset) -> frozenset:
    return frozenset(u for u in poset.elements
                     if all(poset.leq(a, u) for a in subset))


def _lowers(poset: FinitePoset, subset: frozenset) -> frozenset:
    return frozenset(l for l in poset.elements
                     if all(poset.leq(l, a) for a in subset))


def macneille(poset: FinitePoset) -> Completion:
    """Completion by cuts: lower sets A with A^{ul} = A, ordered by inclusion.

    The principal-cut embedding is verified join- and meet-dense before the
    completion is returned.
    """
    cuts = set()
    els = poset.elements
    for mask in range(1 << poset.size):
        subset = frozenset(els[i] for i in order.bits(mask))
        cuts.add(_lowers(poset, _uppers(poset, subset)))
    cuts = sorted(cuts, key=lambda c: (len(c), sorted(c)))
    names = [f"c{i}" for i in range(len(cuts))]
    by_name = dict(zip(names, cuts))
    rel = [(names[i], names[j]) for i in range(len(cuts))
           for j in range(len(cuts)) if cuts[i] <= cuts[j]]
    lattice = validate_poset(names, relation=rel, name=f"M({poset.name})")
    embed = {}
    for e in els:
        principal = _lowers(poset, _uppers(poset, frozenset([e])))
        embed[e] = names[cuts.index(principal)]

    image = set(embed.values())
    assert all(poset.leq(a, b) == lattice.leq(embed[a], embed[b])
               for a in els for b in els), "cut embedding must reflect order"
    assert is_join_dense(image, lattice) and is_meet_dense(image, lattice)
    return Completion(poset, lattice, embed, by_name)


def is_join_dense(sub, lattice: FinitePoset) -> bool:
    """Every lattice element is the join of the sub-elements below it."""
    sub = set(sub)
    for x in lattice.elements:
        below = [s for s in sub if lattice.leq(s, x)]
        if lattice.join_of_set(below) != x:
            return False
    return True


def is_meet_dense(sub, lattice: FinitePoset) -> bool:
    sub = set(sub)
    for x in lattice.elements:
        above = [s for s in sub if lattice.leq(x, s)]
        if lattice.meet_of_set(above) != x:
            return False
    return True


def dedekind_trim(completion: Completion) -> FinitePoset:
    """Drop the completion's bounds when they are not principal cuts.

    The conditional variant of the completion: for a directed poset this
    leaves exactly the conditionally complete part.
    """
    poset, lattice = completion.poset, completion.lattice
    if not poset.up_directed() and not poset.down_directed():
        raise NotDirected(f"{poset.name!r} is directed in neither direction")
    image = set(completion.embed.values())
    bot = lattice.meet_of_set(lattice.elements)
    top = lattice.join_of_set(lattice.elements)
    keep = [x for x in lattice.elements
            if x in image or x not in (bot, top)]
    rel = [(a, b) for a in keep for b in keep if lattice.leq(a, b)]
    return validate_poset(keep, relation=rel, name=f"D({poset.name})")
