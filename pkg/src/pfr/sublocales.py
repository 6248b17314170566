"""Sublocale lattices of finite frames.

Orientation discipline: carriers are stored as plain subsets and compared by
inclusion; the frame built by :func:`all_sublocales` carries the REVERSED
order, in which the singleton {1} is the top and the whole frame is the
bottom.  Every public operation names its orientation explicitly, because
mixing the two is the likeliest way to get this wrong.
"""

from __future__ import annotations

from itertools import combinations

from .errors import LimitExceeded, MixedParents, UnknownElement
from .frames import FiniteFrame, FrameMap, booleanization, validate_frame


class Sublocale:
    """A subset of a frame closed under all meets and under x -> (-)."""

    def __init__(self, parent: FiniteFrame, carrier):
        self.parent = parent
        self.carrier = frozenset(carrier)
        bad = sublocale_violation(parent, self.carrier)
        if bad is not None:
            raise ValueError(f"not a sublocale ({bad})")

    def is_dense_sublocale(self) -> bool:
        """Density in the sublocale sense: contains the parent's bottom.

        Distinct from density of an element of the reversed-order frame
        (see :func:`is_dense_cos_element`).
        """
        return self.parent.bottom in self.carrier

    def __eq__(self, other):
        return (isinstance(other, Sublocale) and self.parent == other.parent
                and self.carrier == other.carrier)

    def __hash__(self):
        return hash((self.parent, self.carrier))

    def __repr__(self):
        return f"Sublocale({sorted(self.carrier)})"


def sublocale_violation(frame: FiniteFrame, carrier: frozenset):
    if frame.top not in carrier:
        return "missing top"
    for s, t in combinations(carrier, 2):
        if frame.meet(s, t) not in carrier:
            return f"meet {s},{t} escapes"
    for s in carrier:
        for x in frame.elements:
            if frame.arrow(x, s) not in carrier:
                return f"arrow {x}->{s} escapes"
    return None


def closed(frame: FiniteFrame, a: str) -> Sublocale:
    """The up-set of a."""
    if a not in frame.index:
        raise UnknownElement(a)
    return Sublocale(frame, [b for b in frame.elements if frame.leq(a, b)])


def open_(frame: FiniteFrame, a: str) -> Sublocale:
    """All values of a -> (-)."""
    if a not in frame.index:
        raise UnknownElement(a)
    return Sublocale(frame, {frame.arrow(a, b) for b in frame.elements})


def join_S(sublocales) -> Sublocale:
    """Join in the INCLUSION order: meet-closure of the union.

    This is simultaneously the meet of the reversed-order frame.
    """
    sublocales = list(sublocales)
    parent = _common_parent(sublocales)
    acc = set([parent.top])
    for s in sublocales:
        acc |= s.carrier
    changed = True
    while changed:
        changed = False
        for s, t in combinations(list(acc), 2):
            m = parent.meet(s, t)
            if m not in acc:
                acc.add(m)
                changed = True
    return Sublocale(parent, acc)


def meet_S(sublocales) -> Sublocale:
    """Meet in the INCLUSION order: plain intersection (= reversed-order join)."""
    sublocales = list(sublocales)
    parent = _common_parent(sublocales)
    acc = set(parent.elements)
    for s in sublocales:
        acc &= s.carrier
    return Sublocale(parent, acc)


def _common_parent(sublocales) -> FiniteFrame:
    if not sublocales:
        raise MixedParents("empty family without parent")
    parent = sublocales[0].parent
    for s in sublocales[1:]:
        if s.parent != parent:
            raise MixedParents("sublocales over different frames")
    return parent


def closure(s: Sublocale) -> Sublocale:
    """Smallest closed sublocale containing s: the up-set of meet(carrier)."""
    return closed(s.parent, s.parent.meet_all(s.carrier))


def interior(s: Sublocale) -> Sublocale:
    """Largest open sublocale inside s (inclusion order)."""
    opens = [open_(s.parent, a) for a in s.parent.elements]
    inside = [o for o in opens if o.carrier <= s.carrier]
    if not inside:
        return Sublocale(s.parent, [s.parent.top])
    return join_S(inside)


class SublocaleFrame:
    """All sublocales of a frame, packaged as a frame in the reversed order.

    Quacks like a FiniteFrame (it delegates the table API), so trail-valued
    functions can use it as a codomain directly.  Extra data: the carrier of
    each element, and tags recording which elements are closed, open or
    induced by a subspace.
    """

    def __init__(self, parent: FiniteFrame, frame: FiniteFrame, carriers,
                 closed_tag, open_tag, induced_tag=None, space=None):
        self.parent = parent
        self.frame = frame
        self.carriers = dict(carriers)        # element id -> frozenset
        self.id_by_carrier = {c: i for i, c in self.carriers.items()}
        self.closed_tag = dict(closed_tag)    # element id -> parent element
        self.open_tag = dict(open_tag)
        self.induced_tag = dict(induced_tag) if induced_tag else None
        self.space = space
        self.closed_id_of = {a: i for i, a in self.closed_tag.items()}
        self.open_id_of = {a: i for i, a in self.open_tag.items()}

    # frame delegation ------------------------------------------------------

    @property
    def name(self):
        return self.frame.name

    @property
    def elements(self):
        return self.frame.elements

    @property
    def index(self):
        return self.frame.index

    @property
    def bottom(self):
        return self.frame.bottom

    @property
    def top(self):
        return self.frame.top

    @property
    def size(self):
        return self.frame.size

    def leq(self, a, b):
        return self.frame.leq(a, b)

    def meet(self, a, b):
        return self.frame.meet(a, b)

    def join(self, a, b):
        return self.frame.join(a, b)

    def arrow(self, a, b):
        return self.frame.arrow(a, b)

    def pstar(self, a):
        return self.frame.pstar(a)

    def meet_all(self, items):
        return self.frame.meet_all(items)

    def join_all(self, items):
        return self.frame.join_all(items)

    def is_regular(self, a):
        return self.frame.is_regular(a)

    def is_boolean(self):
        return self.frame.is_boolean()

    # orientation-explicit operations --------------------------------------

    def sublocale(self, elem_id: str) -> Sublocale:
        return Sublocale(self.parent, self.carriers[elem_id])

    def id_of(self, s: Sublocale) -> str:
        return self.id_by_carrier[s.carrier]

    def join_in_inclusion(self, ids) -> str:
        """S-join of the carriers = meet of the reversed-order frame."""
        return self.frame.meet_all(ids)

    def meet_in_inclusion(self, ids) -> str:
        """S-meet (intersection) = join of the reversed-order frame."""
        return self.frame.join_all(ids)

    def closure_id(self, elem_id: str) -> str:
        s = self.carriers[elem_id]
        return self.closed_id_of[self.parent.meet_all(s)]

    def closed_embedding(self) -> FrameMap:
        """a -> c(a), a frame homomorphism into the reversed-order frame."""
        return FrameMap(self.parent, self.frame,
                        {a: self.closed_id_of[a] for a in self.parent.elements})

    def __eq__(self, other):
        return (isinstance(other, SublocaleFrame) and self.parent == other.parent
                and self.frame == other.frame)

    def __hash__(self):
        return hash((self.parent, self.frame))

    def __repr__(self):
        return f"SublocaleFrame({self.frame.name!r}, {self.size} sublocales)"


def carrier_name(parent: FiniteFrame, carrier) -> str:
    ordered = [e for e in parent.elements if e in carrier]
    return "{" + ",".join(ordered) + "}"


def all_sublocales(parent: FiniteFrame, limit: int = 7) -> SublocaleFrame:
    """Enumerate every sublocale and build the reversed-order frame.

    A subset filter over all subsets containing the top, pruned as soon as a
    binary meet or an arrow value escapes.  The frame is validated like any
    other, and closed/open elements are tagged.
    """
    n = parent.size
    if n > limit:
        raise LimitExceeded(f"frame size {n} exceeds sublocale limit {limit}")
    els = parent.elements
    idx = parent.index
    top_i = idx[parent.top]
    meet_t = [[idx[parent.meet(a, b)] for b in els] for a in els]
    arrow_t = [[idx[parent.arrow(a, b)] for b in els] for a in els]
    rest = [i for i in range(n) if i != top_i]

    carriers = []
    for mask in range(1 << len(rest)):
        members = [top_i] + [rest[k] for k in range(len(rest)) if (mask >> k) & 1]
        mset = set(members)
        ok = True
        for ai in range(len(members)):
            a = members[ai]
            for b in members[:ai]:
                if meet_t[a][b] not in mset:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            for s in members:
                row = arrow_t  # arrow(x, s) for all x
                for x in range(n):
                    if row[x][s] not in mset:
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            carriers.append(frozenset(els[i] for i in mset))

    carriers.sort(key=lambda c: (len(c), [e for e in els if e in c]))
    ids = {carrier_name(parent, c): c for c in carriers}
    # reversed order: smaller carrier = larger element
    rel = [(i1, i2) for i1, c1 in ids.items() for i2, c2 in ids.items()
           if c2 <= c1]
    frame = validate_frame(list(ids), relation=rel, name=f"coS({parent.name})")

    closed_tag = {}
    open_tag = {}
    by_carrier = {c: i for i, c in ids.items()}
    for a in els:
        closed_tag[by_carrier[closed(parent, a).carrier]] = a
        open_tag[by_carrier[open_(parent, a).carrier]] = a
    return SublocaleFrame(parent, frame, ids, closed_tag, open_tag)


def is_dense_cos_element(sf: SublocaleFrame, elem_id: str) -> bool:
    """Density as an element of the reversed-order frame: pseudocomplement 0."""
    return sf.pstar(elem_id) == sf.bottom


def subfit_via_sublocales(sf: SublocaleFrame) -> bool:
    """Every open sublocale is an inclusion-join of the closed ones it contains."""
    parent = sf.parent
    for a in parent.elements:
        o = open_(parent, a)
        closeds = [closed(parent, b) for b in parent.elements
                   if closed(parent, b).carrier <= o.carrier]
        if join_S(closeds + [Sublocale(parent, [parent.top])]).carrier != o.carrier:
            return False
    return True


def is_meet_of_closed(sf: SublocaleFrame, elem_id: str) -> bool:
    """Is the element the reversed-order meet of the closed elements above it?"""
    above = [i for i in sf.closed_tag if sf.leq(elem_id, i)]
    return sf.meet_all(above) == elem_id


def least_dense_check(parent: FiniteFrame, sf: SublocaleFrame | None = None) -> bool:
    """The regular elements form the least dense sublocale."""
    if sf is None:
        sf = all_sublocales(parent)
    regs = frozenset(a for a in parent.elements if parent.is_regular(a))
    if regs not in sf.id_by_carrier:
        return False
    b = Sublocale(parent, regs)
    if not b.is_dense_sublocale():
        return False
    for c in sf.carriers.values():
        if parent.bottom in c and not regs <= c:
            return False
    return True


def booleanization_sublocale(parent: FiniteFrame) -> Sublocale:
    bframe, _ = booleanization(parent)
    return Sublocale(parent, bframe.elements)


def nucleus_of(sf: SublocaleFrame, elem_id: str):
    """x -> least member of the carrier above x."""
    parent = sf.parent
    carrier = sf.carriers[elem_id]
    return {x: parent.meet_all(s for s in carrier if parent.leq(x, s))
            for x in parent.elements}


def representation_as_open_join_closed(sf: SublocaleFrame, elem_id: str) -> bool:
    """Every sublocale is an intersection of sets open(x) ∨_S closed(nu(x))."""
    parent = sf.parent
    nu = nucleus_of(sf, elem_id)
    acc = set(parent.elements)
    for x in parent.elements:
        term = join_S([open_(parent, x), closed(parent, nu[x])])
        acc &= term.carrier
    return frozenset(acc) == sf.carriers[elem_id]
