"""Finite topological spaces and the point-function bridge.

Point functions take values in the rationals extended by the two infinities.
The bridge sends an arbitrary point function to a trail pair valued in the
reversed-order sublocale frame of the open-set frame, using the sublocale
induced by each sublevel set; on semicontinuous inputs this recovers the
closed-preimage correspondence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import order
from .errors import GridTooLarge, NotInducedValued, NotT0, UnknownElement
from .frames import FiniteFrame, validate_frame
from .realfn import ExtPartialRealFn, le, make_fn
from .sublocales import SublocaleFrame, all_sublocales

PLUS_INF = math.inf
MINUS_INF = -math.inf


class FiniteSpace:
    """A finite T0 space: points plus a family of opens closed under both
    set operations."""

    def __init__(self, points, opens, name: str = ""):
        self.name = name
        self.points = tuple(points)
        pset = frozenset(self.points)
        opens = frozenset(frozenset(u) for u in opens)
        if frozenset() not in opens or pset not in opens:
            raise ValueError("opens must contain the empty set and the whole space")
        for u in opens:
            for v in opens:
                if u | v not in opens or u & v not in opens:
                    raise ValueError("opens not closed under union/intersection")
            if not u <= pset:
                raise ValueError("open set outside the point set")
        self.opens = opens
        for p in self.points:
            for q in self.points:
                if p != q and all((p in u) == (q in u) for u in opens):
                    raise NotT0(f"points {p!r}, {q!r} are topologically equal")

    def open_name(self, u: frozenset) -> str:
        ordered = [p for p in self.points if p in u]
        return "{" + ",".join(ordered) + "}"

    def __eq__(self, other):
        return (isinstance(other, FiniteSpace) and self.points == other.points
                and self.opens == other.opens)

    def __hash__(self):
        return hash((self.points, self.opens))

    def __repr__(self):
        return f"FiniteSpace({self.name!r}, {len(self.points)} points)"


def open_frame(space: FiniteSpace) -> FiniteFrame:
    """The frame of opens under inclusion."""
    opens = sorted(space.opens, key=lambda u: (len(u), space.open_name(u)))
    names = [space.open_name(u) for u in opens]
    rel = [(names[i], names[j]) for i in range(len(opens))
           for j in range(len(opens)) if opens[i] <= opens[j]]
    return validate_frame(names, relation=rel,
                          name=f"O({space.name})" if space.name else "O(X)")


def induced_carrier(space: FiniteSpace, subset) -> frozenset:
    """Opens U with U = union of every V agreeing with U on the subset."""
    subset = frozenset(subset)
    carrier = set()
    for u in space.opens:
        glued = frozenset().union(
            *[v for v in space.opens if v & subset == u & subset])
        if u == glued:
            carrier.add(space.open_name(u))
    return frozenset(carrier)


def induced(space: FiniteSpace, subset):
    """The sublocale of the open-set frame induced by a point subset."""
    from .sublocales import Sublocale
    return Sublocale(open_frame(space), induced_carrier(space, subset))


def space_sublocale_frame(space: FiniteSpace, point_limit: int = 4) -> SublocaleFrame:
    """Sublocale frame of the open-set frame, tagged with inducing subsets.

    The subset filter runs over 2^(opens - 1) candidates, so the size of the
    space is capped (default 4 points).
    """
    if len(space.points) > point_limit:
        from .errors import LimitExceeded
        raise LimitExceeded(
            f"{len(space.points)} points exceed the spatial limit {point_limit}")
    frame = open_frame(space)
    sf = all_sublocales(frame, limit=frame.size)
    induced_tag = {}
    for mask in range(1 << len(space.points)):
        subset = frozenset(p for i, p in enumerate(space.points) if (mask >> i) & 1)
        carrier = induced_carrier(space, subset)
        elem = sf.id_by_carrier.get(carrier)
        if elem is not None and elem not in induced_tag:
            induced_tag[elem] = subset
    return SublocaleFrame(sf.parent, sf.frame, sf.carriers, sf.closed_tag,
                          sf.open_tag, induced_tag=induced_tag, space=space)


def is_TD(space: FiniteSpace) -> bool:
    """Every point has an open neighbourhood that stays open without it."""
    for p in space.points:
        if not any(p in u and (u - {p}) in space.opens for u in space.opens):
            return False
    return True


def is_T1(space: FiniteSpace) -> bool:
    """All singletons closed."""
    pset = frozenset(space.points)
    return all((pset - {p}) in space.opens for p in space.points)


@dataclass
class PointFn:
    """A total, otherwise arbitrary map from points to extended rationals."""

    space: FiniteSpace
    values: dict

    def __post_init__(self):
        for p in self.space.points:
            if p not in self.values:
                raise UnknownElement(f"no value for point {p!r}")
        self.values = {p: (v if v in (PLUS_INF, MINUS_INF) else Fraction(v))
                       for p, v in self.values.items()}

    def finite_values(self):
        return sorted({v for v in self.values.values()
                       if v not in (PLUS_INF, MINUS_INF)})

    def is_finite_valued(self) -> bool:
        return all(v not in (PLUS_INF, MINUS_INF) for v in self.values.values())

    def leq(self, other: "PointFn") -> bool:
        return all(self.values[p] <= other.values[p] for p in self.space.points)


def is_lsc_point(phi: PointFn) -> bool:
    """Preimages of upper rays (r, +inf] are open, r rational.

    The cut levels are the finite values plus one rational below them all,
    which realizes every distinct preimage (including the all-infinite case).
    """
    space = phi.space
    cuts = phi.finite_values()
    levels = cuts + [cuts[0] - 1 if cuts else Fraction(0)]
    for r in levels:
        pre = frozenset(p for p in space.points if phi.values[p] > r)
        if pre not in space.opens:
            return False
    return True


def is_usc_point(phi: PointFn) -> bool:
    """Preimages of lower rays [-inf, s) are open."""
    space = phi.space
    cuts = phi.finite_values()
    levels = cuts + [cuts[-1] + 1 if cuts else Fraction(0)]
    for s in levels:
        pre = frozenset(p for p in space.points if phi.values[p] < s)
        if pre not in space.opens:
            return False
    return True


def omega(phi: PointFn, sf: SublocaleFrame | None = None) -> ExtPartialRealFn:
    """Point function -> trail pair over the reversed-order sublocale frame.

    lower(r) is the sublocale induced by {x | phi(x) <= r}, upper(s) the one
    induced by {x | phi(x) >= s}; both trails break exactly at the finite
    values taken by phi.  The result is always Hausdorff.
    """
    if sf is None:
        sf = space_sublocale_frame(phi.space)
    space = phi.space
    induced_id = {subset: elem for elem, subset in sf.induced_tag.items()}

    def sub_id(points) -> str:
        return induced_id[frozenset(points)]

    cuts = phi.finite_values()
    low_vals = [sub_id(p for p in space.points if phi.values[p] == MINUS_INF)]
    for b in cuts:
        low_vals.append(sub_id(p for p in space.points if phi.values[p] <= b))
    up_vals = []
    for b in cuts:
        up_vals.append(sub_id(p for p in space.points if phi.values[p] >= b))
    up_vals.append(sub_id(p for p in space.points if phi.values[p] == PLUS_INF))
    return make_fn(sf, cuts, low_vals, cuts, up_vals)


def omega_inverse(f: ExtPartialRealFn) -> PointFn:
    """Recover the point function: least level whose inducing set holds the point.

    Requires every lower-trail value to be an induced element of a
    space-derived codomain; exact inverse of :func:`omega` on its image.
    """
    sf = f.codomain
    if not isinstance(sf, SublocaleFrame) or not sf.induced_tag or sf.space is None:
        raise NotInducedValued("codomain carries no induced-subset tags")
    for v in f.lower.values:
        if v not in sf.induced_tag:
            raise NotInducedValued(f"value {v!r} is not an induced sublocale")
    space = sf.space
    values = {}
    for p in space.points:
        if p in sf.induced_tag[f.lower.values[0]]:
            values[p] = MINUS_INF
            continue
        level = PLUS_INF
        for i, b in enumerate(f.lower.breakpoints):
            if p in sf.induced_tag[f.lower.values[i + 1]]:
                level = b
                break
        values[p] = level
    return PointFn(space, values)


def grid_point_fns(space: FiniteSpace, grid, allow_infinities: bool = True,
                   limit: int = 200000):
    """All point functions with values in the grid (plus infinities)."""
    values = [Fraction(v) for v in grid]
    if allow_infinities:
        values = values + [MINUS_INF, PLUS_INF]
    total = len(values) ** len(space.points)
    if total > limit:
        raise GridTooLarge(f"{total} grid functions exceed the limit {limit}")
    fns = []
    idxs = [0] * len(space.points)
    while True:
        fns.append(PointFn(space, {p: values[idxs[i]]
                                   for i, p in enumerate(space.points)}))
        j = 0
        while j < len(idxs):
            idxs[j] += 1
            if idxs[j] < len(values):
                break
            idxs[j] = 0
            j += 1
        if j == len(idxs):
            break
        if not space.points:
            break
    return fns


def semicontinuity_transfer_check(space: FiniteSpace, grid,
                                  allow_infinities: bool = True,
                                  limit: int = 200000) -> dict:
    """Sweep a value grid and compare point-side and trail-side predicates.

    Pairings checked for every grid function phi:
      * lsc/usc preimage openness  <->  closed trail values of omega(phi);
      * the same plus finiteness   <->  the full semicontinuity predicate;
      * finite-valued              <->  real-valued;
      * round trip through omega is the identity;
      * pointwise order            <->  trail order (on a sample of pairs).
    """
    from .realfn import (is_hausdorff, is_lsc, is_lsc_extended, is_real_valued,
                         is_usc, is_usc_extended)
    sf = space_sublocale_frame(space)
    fns = grid_point_fns(space, grid, allow_infinities, limit)
    mismatches = []
    images = []
    for phi in fns:
        img = omega(phi, sf)
        images.append(img)
        if not is_hausdorff(img):
            mismatches.append((phi.values, "image not Hausdorff"))
        if is_lsc_point(phi) != is_lsc_extended(img):
            mismatches.append((phi.values, "lsc-extended pairing"))
        if is_usc_point(phi) != is_usc_extended(img):
            mismatches.append((phi.values, "usc-extended pairing"))
        if (is_lsc_point(phi) and phi.is_finite_valued()) != is_lsc(img):
            mismatches.append((phi.values, "lsc pairing"))
        if (is_usc_point(phi) and phi.is_finite_valued()) != is_usc(img):
            mismatches.append((phi.values, "usc pairing"))
        if phi.is_finite_valued() != is_real_valued(img):
            mismatches.append((phi.values, "real-valued pairing"))
        back = omega_inverse(img)
        if back.values != phi.values:
            mismatches.append((phi.values, "round trip"))
    step = max(1, len(fns) // 40)
    for i in range(0, len(fns), step):
        for j in range(0, len(fns), step):
            if fns[i].leq(fns[j]) != le(images[i], images[j]):
                mismatches.append(((fns[i].values, fns[j].values), "order embedding"))
    return {"space": space.name, "functions": len(fns),
            "mismatches": mismatches}


def enumerate_spaces(max_points: int):
    """One representative per homeomorphism class of T0 spaces: posets with
    their up-set (Alexandrov) topologies."""
    from .enumeration import posets_up_to
    spaces = []
    for n, ups in posets_up_to(max_points).items():
        if n == 0:
            continue
        for k, up in enumerate(ups):
            points = [f"p{i}" for i in range(n)]
            upsets = []
            for mask in range(1 << n):
                if all(up[i] | mask == mask
                       for i in range(n) if (mask >> i) & 1):
                    upsets.append(frozenset(points[i] for i in range(n)
                                            if (mask >> i) & 1))
            spaces.append(FiniteSpace(points, upsets, name=f"X{n}.{k}"))
    return spaces
