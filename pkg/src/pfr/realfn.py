"""Step-trail calculus of extended partial real-valued functions on a frame.

A function is a pair of finite rational step maps into a frame: an antitone
right-continuous "lower" trail recording the value on (r, --) and an isotone
left-continuous "upper" trail recording (--, s).  The continuity conventions
make the directed-join relations hold by construction, and disjointness of
the two trails is a finite cell check, so a valid pair is exactly a frame
homomorphism out of the generator presentation of the extended partial reals
with rational cut points.

Every rationals-indexed join or meet used below stabilizes on a cell of the
merged breakpoint partition; nothing is approximated.
"""

from __future__ import annotations

import random
from bisect import bisect_left, bisect_right
from fractions import Fraction

from .errors import (CodomainNotSublocaleFrame, MixedCodomains, NotDisjoint,
                     NotExtContinuous, NotHausdorff, NotInC, NotInCbar,
                     OutOfUnitRange, UnknownElement)
from .frames import booleanization
from .sublocales import SublocaleFrame

LOWER = "lower"
UPPER = "upper"


class Trail:
    """A finite rational step map into a frame.

    direction "lower": value v[i] on [b[i], b[i+1]) and v[0] below b[0]
    (right-continuous); direction "upper": value v[i] on (b[i], b[i+1]] and v[0]
    at and below b[0] (left-continuous).  Canonical: adjacent values differ.
    """

    __slots__ = ("direction", "breakpoints", "values")

    def __init__(self, direction, breakpoints, values):
        assert direction in (LOWER, UPPER)
        breakpoints = tuple(Fraction(b) for b in breakpoints)
        values = tuple(values)
        assert len(values) == len(breakpoints) + 1
        assert all(breakpoints[i] < breakpoints[i + 1]
                   for i in range(len(breakpoints) - 1)), "breakpoints must increase"
        assert all(values[i] != values[i + 1] for i in range(len(values) - 1)), \
            "trail not canonical"
        self.direction = direction
        self.breakpoints = breakpoints
        self.values = values

    def eval(self, q, side: str = "at"):
        """Value at the rational q; sides read the adjacent cell."""
        q = Fraction(q)
        if self.direction == LOWER:
            right_closed = side in ("at", "right_limit")
        else:
            right_closed = side == "right_limit"
        if right_closed:
            i = bisect_right(self.breakpoints, q)
        else:
            i = bisect_left(self.breakpoints, q)
        return self.values[i]

    def __eq__(self, other):
        return (isinstance(other, Trail) and self.direction == other.direction
                and self.breakpoints == other.breakpoints
                and self.values == other.values)

    def __hash__(self):
        return hash((self.direction, self.breakpoints, self.values))

    def __repr__(self):
        return f"Trail({self.direction}, {list(self.breakpoints)}, {list(self.values)})"


def make_trail(direction, breakpoints, values) -> Trail:
    """Canonicalize: drop breakpoints between equal adjacent values."""
    bps, vals = [], []
    for i, v in enumerate(values):
        if vals and vals[-1] == v:
            continue
        if i > 0:
            bps.append(breakpoints[i - 1])
        vals.append(v)
    return Trail(direction, bps, vals)


class ExtPartialRealFn:
    """A disjoint trail pair over a common codomain frame."""

    __slots__ = ("codomain", "lower", "upper")

    def __init__(self, codomain, lower: Trail, upper: Trail):
        self.codomain = codomain
        self.lower = lower
        self.upper = upper
        _validate(self)

    def __eq__(self, other):
        return (isinstance(other, ExtPartialRealFn)
                and self.lower == other.lower and self.upper == other.upper
                and (self.codomain is other.codomain
                     or self.codomain == other.codomain))

    def __hash__(self):
        return hash((self.lower, self.upper))

    def __repr__(self):
        return f"Fn(lower={self.lower!r}, upper={self.upper!r})"


def make_fn(codomain, lower_bps, lower_vals, upper_bps, upper_vals) -> ExtPartialRealFn:
    return ExtPartialRealFn(codomain,
                            make_trail(LOWER, lower_bps, lower_vals),
                            make_trail(UPPER, upper_bps, upper_vals))


def _validate(f: ExtPartialRealFn):
    cod = f.codomain
    for v in f.lower.values + f.upper.values:
        if v not in cod.index:
            raise UnknownElement(f"{v!r} not in {cod.name!r}")
    lv = f.lower.values
    for i in range(len(lv) - 1):
        if not cod.leq(lv[i + 1], lv[i]):
            raise ValueError(f"lower trail not antitone at {lv[i]}>{lv[i+1]}")
    uv = f.upper.values
    for i in range(len(uv) - 1):
        if not cod.leq(uv[i], uv[i + 1]):
            raise ValueError(f"upper trail not isotone at {uv[i]}<{uv[i+1]}")
    # disjointness at every position: on each open cell and at each
    # breakpoint (where the trails read opposite adjacent cells).
    bot = cod.bottom
    for lo, hi in zip(*gap_values(f)):
        if cod.meet(lo, hi) != bot:
            raise ValueError("trail pair not disjoint on a cell")
    for b in merged_breakpoints(f):
        if cod.meet(f.lower.eval(b), f.upper.eval(b)) != bot:
            raise ValueError(f"trail pair not disjoint at {b}")


def merged_breakpoints(f: ExtPartialRealFn, extra=()):
    return sorted(set(f.lower.breakpoints) | set(f.upper.breakpoints) | set(extra))


def gap_values(f: ExtPartialRealFn, bps=None):
    """Values of both trails on the open cells cut out by ``bps``.

    Returns (lower_values, upper_values), each one longer than ``bps``.
    """
    if bps is None:
        bps = merged_breakpoints(f)
    lows = _gaps_of_trail(f.lower, bps)
    ups = _gaps_of_trail(f.upper, bps)
    return lows, ups


def _gaps_of_trail(t: Trail, bps):
    if not bps:
        return [t.values[0]]
    out = [t.eval(bps[0], "left_limit")]
    for b in bps:
        out.append(t.eval(b, "right_limit"))
    return out


def _from_gaps(codomain, bps, lows, ups) -> ExtPartialRealFn:
    """Rebuild a function from per-cell values; each trail canonicalizes on
    its own, realizing the right/left regularization of the cell map."""
    return make_fn(codomain, bps, lows, bps, ups)


def _same_codomain(f: ExtPartialRealFn, g: ExtPartialRealFn):
    if not (f.codomain is g.codomain or f.codomain == g.codomain):
        raise MixedCodomains(f"{f.codomain.name!r} vs {g.codomain.name!r}")


# constructors --------------------------------------------------------------


def mk_constant(codomain, r) -> ExtPartialRealFn:
    r = Fraction(r)
    top, bot = codomain.top, codomain.bottom
    return make_fn(codomain, [r], [top, bot], [r], [bot, top])


def mk_plus_infinity(codomain) -> ExtPartialRealFn:
    return make_fn(codomain, [], [codomain.top], [], [codomain.bottom])


def mk_minus_infinity(codomain) -> ExtPartialRealFn:
    return make_fn(codomain, [], [codomain.bottom], [], [codomain.top])


def mk_chi(codomain, a: str, b: str) -> ExtPartialRealFn:
    """Bounded indicator pair: a on [0,1) below, b on (0,1] above."""
    if codomain.meet(a, b) != codomain.bottom:
        raise NotDisjoint(f"{a} /\\ {b} != 0")
    top, bot = codomain.top, codomain.bottom
    return make_fn(codomain, [Fraction(0), Fraction(1)], [top, a, bot],
                   [Fraction(0), Fraction(1)], [bot, b, top])


def mk_chi_bar(codomain, a: str, b: str) -> ExtPartialRealFn:
    """Everywhere-constant trail pair (a, b); partial unless a, b complement."""
    if codomain.meet(a, b) != codomain.bottom:
        raise NotDisjoint(f"{a} /\\ {b} != 0")
    return make_fn(codomain, [], [a], [], [b])


def mk_l(sf: SublocaleFrame, a: str, q) -> ExtPartialRealFn:
    """Closed-scale generator: closed(a) from level q up, open(a) above q."""
    if a not in sf.parent.index:
        raise UnknownElement(a)
    q = Fraction(q)
    c_id = sf.closed_id_of[a]
    o_id = sf.open_id_of[a]
    return make_fn(sf, [q], [sf.top, c_id], [q], [sf.bottom, o_id])


# order and involution -------------------------------------------------------


def le(f: ExtPartialRealFn, g: ExtPartialRealFn) -> bool:
    """f <= g: lower trails compare up, upper trails compare down."""
    _same_codomain(f, g)
    cod = f.codomain
    bps = sorted(set(merged_breakpoints(f)) | set(merged_breakpoints(g)))
    flo, fup = gap_values(f, bps)
    glo, gup = gap_values(g, bps)
    return (all(cod.leq(x, y) for x, y in zip(flo, glo))
            and all(cod.leq(y, x) for x, y in zip(fup, gup)))


def le_lower_only(f: ExtPartialRealFn, g: ExtPartialRealFn) -> bool:
    """The lower-trail half of the order; equivalent to ``le`` when g is
    Hausdorff (the other half is implied)."""
    _same_codomain(f, g)
    cod = f.codomain
    bps = sorted(set(merged_breakpoints(f)) | set(merged_breakpoints(g)))
    flo, _ = gap_values(f, bps)
    glo, _ = gap_values(g, bps)
    return all(cod.leq(x, y) for x, y in zip(flo, glo))


def neg(f: ExtPartialRealFn) -> ExtPartialRealFn:
    """Reflection r -> -r, swapping the trails; an exact involution."""
    lo = make_trail(LOWER,
                    [-b for b in reversed(f.upper.breakpoints)],
                    list(reversed(f.upper.values)))
    up = make_trail(UPPER,
                    [-b for b in reversed(f.lower.breakpoints)],
                    list(reversed(f.lower.values)))
    return ExtPartialRealFn(f.codomain, lo, up)


# class predicates ------------------------------------------------------------


def is_extended_continuous(f: ExtPartialRealFn) -> bool:
    """Cell values join to 1 on every open cell.

    Breakpoint positions are exempt: the covering relation only constrains
    strictly ordered rational pairs, and those always straddle a cell.
    """
    cod = f.codomain
    top = cod.top
    lows, ups = gap_values(f)
    return all(cod.join(lo, hi) == top for lo, hi in zip(lows, ups))


def preserves_r5_r6(f: ExtPartialRealFn) -> bool:
    """Both rationals-indexed total joins are 1: first lower and last upper
    value equal the top.  On step trails this is also exactly boundedness."""
    cod = f.codomain
    return f.lower.values[0] == cod.top and f.upper.values[-1] == cod.top


def is_hausdorff(f: ExtPartialRealFn) -> bool:
    """Decision procedure: on every open cell the two values are mutual
    pseudocomplements.  Linear in the trail size; agreement with the
    quadratic pairwise definition is a standing harness check."""
    cod = f.codomain
    lows, ups = gap_values(f)
    return all(cod.pstar(lo) == hi and cod.pstar(hi) == lo
               for lo, hi in zip(lows, ups))


def is_hausdorff_pairwise(f: ExtPartialRealFn) -> bool:
    """Defining inequalities checked over all ordered sample pairs r < s."""
    cod = f.codomain
    samples = _sample_points(f)
    for i, r in enumerate(samples):
        for s in samples[i + 1:]:
            lo = f.lower.eval(r)
            hi = f.upper.eval(s)
            if not cod.leq(cod.pstar(lo), hi):
                return False
            if not cod.leq(cod.pstar(hi), lo):
                return False
    return True


def _sample_points(f: ExtPartialRealFn):
    """Rationals hitting every cell twice plus every breakpoint."""
    bps = merged_breakpoints(f)
    if not bps:
        return [Fraction(0), Fraction(1)]
    pts = [bps[0] - 2, bps[0] - 1]
    for i, b in enumerate(bps):
        pts.append(b)
        if i + 1 < len(bps):
            step = (bps[i + 1] - b) / 3
            pts.extend([b + step, b + 2 * step])
    pts.extend([bps[-1] + 1, bps[-1] + 2])
    return pts


def is_real_valued(f: ExtPartialRealFn) -> bool:
    """Both rationals-indexed total meets vanish: last lower and first upper
    value are 0."""
    cod = f.codomain
    return f.lower.values[-1] == cod.bottom and f.upper.values[0] == cod.bottom


def is_real_valued_star(f: ExtPartialRealFn) -> bool:
    """Both rationals-indexed total joins are dense elements."""
    cod = f.codomain
    return (cod.pstar(f.lower.values[0]) == cod.bottom
            and cod.pstar(f.upper.values[-1]) == cod.bottom)


def _require_sublocale_codomain(f: ExtPartialRealFn) -> SublocaleFrame:
    if not isinstance(f.codomain, SublocaleFrame):
        raise CodomainNotSublocaleFrame(
            f"codomain {f.codomain.name!r} carries no closed/open tags")
    return f.codomain


def is_lsc_extended(f: ExtPartialRealFn) -> bool:
    """All lower-trail values are closed sublocales."""
    sf = _require_sublocale_codomain(f)
    return all(v in sf.closed_tag for v in f.lower.values)


def is_usc_extended(f: ExtPartialRealFn) -> bool:
    sf = _require_sublocale_codomain(f)
    return all(v in sf.closed_tag for v in f.upper.values)


def is_lsc(f: ExtPartialRealFn) -> bool:
    """Closed lower values, total join 1 and total meet 0 on the lower trail."""
    sf = _require_sublocale_codomain(f)
    return (is_lsc_extended(f)
            and f.lower.values[0] == sf.top
            and f.lower.values[-1] == sf.bottom)


def is_usc(f: ExtPartialRealFn) -> bool:
    sf = _require_sublocale_codomain(f)
    return (is_usc_extended(f)
            and f.upper.values[-1] == sf.top
            and f.upper.values[0] == sf.bottom)


# lattice operations ----------------------------------------------------------


def _cell_join(f, g) -> ExtPartialRealFn:
    cod = f.codomain
    bps = sorted(set(merged_breakpoints(f)) | set(merged_breakpoints(g)))
    flo, fup = gap_values(f, bps)
    glo, gup = gap_values(g, bps)
    return _from_gaps(cod, bps, [cod.join(x, y) for x, y in zip(flo, glo)],
                      [cod.meet(x, y) for x, y in zip(fup, gup)])


def _cell_meet(f, g) -> ExtPartialRealFn:
    cod = f.codomain
    bps = sorted(set(merged_breakpoints(f)) | set(merged_breakpoints(g)))
    flo, fup = gap_values(f, bps)
    glo, gup = gap_values(g, bps)
    return _from_gaps(cod, bps, [cod.meet(x, y) for x, y in zip(flo, glo)],
                      [cod.join(x, y) for x, y in zip(fup, gup)])


def join_pointwise(f, g) -> ExtPartialRealFn:
    """Cellwise join of lowers, meet of uppers: binary join of the covering
    class, where it is the least upper bound."""
    _same_codomain(f, g)
    if not (is_extended_continuous(f) and is_extended_continuous(g)):
        raise NotInCbar("pointwise lattice operations need covering pairs")
    return _cell_join(f, g)


def meet_pointwise(f, g) -> ExtPartialRealFn:
    _same_codomain(f, g)
    if not (is_extended_continuous(f) and is_extended_continuous(g)):
        raise NotInCbar("pointwise lattice operations need covering pairs")
    return _cell_meet(f, g)


def join_hausdorff(fns) -> ExtPartialRealFn:
    """Least Hausdorff upper bound: double pseudocomplement of the cellwise
    lower join below, its pseudocomplement above."""
    fns = list(fns)
    if not fns:
        raise ValueError("empty family")
    cod = fns[0].codomain
    for f in fns:
        _same_codomain(fns[0], f)
        if not is_hausdorff(f):
            raise NotHausdorff("join formula needs Hausdorff inputs")
    bps = sorted(set().union(*(merged_breakpoints(f) for f in fns)))
    h = [cod.join_all(vals) for vals in
         zip(*(gap_values(f, bps)[0] for f in fns))]
    lows = [cod.pstar(cod.pstar(x)) for x in h]
    ups = [cod.pstar(x) for x in h]
    return _from_gaps(cod, bps, lows, ups)


def meet_hausdorff(fns) -> ExtPartialRealFn:
    """Greatest Hausdorff lower bound, dually from the upper trails."""
    fns = list(fns)
    if not fns:
        raise ValueError("empty family")
    cod = fns[0].codomain
    for f in fns:
        _same_codomain(fns[0], f)
        if not is_hausdorff(f):
            raise NotHausdorff("meet formula needs Hausdorff inputs")
    bps = sorted(set().union(*(merged_breakpoints(f) for f in fns)))
    g = [cod.join_all(vals) for vals in
         zip(*(gap_values(f, bps)[1] for f in fns))]
    ups = [cod.pstar(cod.pstar(x)) for x in g]
    lows = [cod.pstar(x) for x in g]
    return _from_gaps(cod, bps, lows, ups)


# the unit-interval rescaling pair -------------------------------------------


def alpha(r) -> Fraction:
    """Order isomorphism from the rationals onto the rational unit interval."""
    r = Fraction(r)
    return r / (1 + abs(r))


def beta(q) -> Fraction:
    """Inverse of :func:`alpha` on (-1, 1)."""
    q = Fraction(q)
    return q / (1 - abs(q))


def psi(f: ExtPartialRealFn) -> ExtPartialRealFn:
    """Compress onto the unit interval, splicing the total joins at the ends."""
    cod = f.codomain
    one, zero = Fraction(1), Fraction(-1)
    lo_bps = [zero] + [alpha(b) for b in f.lower.breakpoints] + [one]
    lo_vals = [cod.top] + list(f.lower.values) + [cod.bottom]
    up_bps = [zero] + [alpha(b) for b in f.upper.breakpoints] + [one]
    up_vals = [cod.bottom] + list(f.upper.values) + [cod.top]
    return make_fn(cod, lo_bps, lo_vals, up_bps, up_vals)


def phi(g: ExtPartialRealFn) -> ExtPartialRealFn:
    """Stretch a unit-range function back over all rationals; inverse of psi."""
    cod = g.codomain
    if not (le(mk_constant(cod, -1), g) and le(g, mk_constant(cod, 1))):
        raise OutOfUnitRange("phi needs -1 <= g <= 1")
    lo_inner = [b for b in g.lower.breakpoints if -1 < b < 1]
    lo_vals = [g.lower.eval(Fraction(-1))] + [g.lower.eval(b) for b in lo_inner]
    up_inner = [b for b in g.upper.breakpoints if -1 < b < 1]
    up_vals = [g.upper.eval(Fraction(-1), "right_limit")] + \
        [g.upper.eval(b, "right_limit") for b in up_inner]
    return make_fn(cod, [beta(b) for b in lo_inner], lo_vals,
                   [beta(b) for b in up_inner], up_vals)


# Booleanization transport ----------------------------------------------------


def _plain_frame(codomain):
    return codomain.frame if isinstance(codomain, SublocaleFrame) else codomain


def gamma(f: ExtPartialRealFn):
    """Project a Hausdorff function onto the Boolean frame of regular elements.

    Hausdorff cell values are already regular, so this is a codomain
    restriction; the image always covers (cell joins are dense below).
    """
    if not is_hausdorff(f):
        raise NotHausdorff("gamma needs a Hausdorff input")
    base = _plain_frame(f.codomain)
    bframe, bmap = booleanization(base)
    lo = [bmap(v) for v in f.lower.values]
    up = [bmap(v) for v in f.upper.values]
    return make_fn(bframe, f.lower.breakpoints, lo, f.upper.breakpoints, up)


def delta(g: ExtPartialRealFn, codomain) -> ExtPartialRealFn:
    """Send a covering function over the Boolean frame back along the
    inclusion of regular elements; inverse of :func:`gamma`."""
    if not is_extended_continuous(g):
        raise NotExtContinuous("delta needs a covering input")
    base = _plain_frame(codomain)
    for v in g.lower.values + g.upper.values:
        if v not in base.index or not base.is_regular(v):
            raise UnknownElement(f"{v!r} is not a regular element of {base.name!r}")
    return make_fn(codomain, g.lower.breakpoints, g.lower.values,
                   g.upper.breakpoints, g.upper.values)


# semicontinuous regularization ------------------------------------------------


def lower_regularization(f: ExtPartialRealFn) -> ExtPartialRealFn:
    """Closed-value envelope from below: cell values are replaced by the
    closure of the lower value, the upper trail by its pseudocomplement."""
    sf = _require_sublocale_codomain(f)
    bps = merged_breakpoints(f)
    lows, _ = gap_values(f, bps)
    closed_vals = [sf.closure_id(v) for v in lows]
    return _from_gaps(sf, bps, closed_vals, [sf.pstar(v) for v in closed_vals])


def upper_regularization(f: ExtPartialRealFn) -> ExtPartialRealFn:
    return neg(lower_regularization(neg(f)))


def regularization_reaches_l2(f: ExtPartialRealFn) -> bool:
    """Whether the lower regularization attains the total-join condition."""
    sf = _require_sublocale_codomain(f)
    return lower_regularization(f).lower.values[0] == sf.top


# cozero ------------------------------------------------------------------------


def coz(f: ExtPartialRealFn) -> str:
    """The level-0 cover element of a continuous real-valued function."""
    if not (is_extended_continuous(f) and preserves_r5_r6(f)):
        raise NotInC("cozero needs a continuous real-valued input")
    cod = f.codomain
    return cod.join(f.lower.eval(Fraction(0)), f.upper.eval(Fraction(0)))


# seeded sampling ---------------------------------------------------------------

PROFILES = ("hausdorff", "ext_continuous", "arbitrary_ic")


def sample_fn(codomain, profile: str, seed, k: int = 3) -> ExtPartialRealFn:
    """Deterministic sampler; the output always satisfies its profile predicate.

    hausdorff: an antitone chain of regular cell values, upper = pstar(lower).
    ext_continuous: an antitone chain of complemented values, upper likewise.
    arbitrary_ic: any antitone lower chain with a compatible isotone upper.
    """
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}")
    rng = random.Random(f"{codomain.name}|{codomain.size}|{profile}|{seed}|{k}")
    pool = sorted({Fraction(n, d) for n in range(-6, 7) for d in (1, 2, 3)})
    nbps = rng.randint(0, k)
    bps = sorted(rng.sample(pool, nbps))

    if profile == "hausdorff":
        choices = [a for a in codomain.elements if codomain.is_regular(a)]
    elif profile == "ext_continuous":
        choices = [a for a in codomain.elements
                   if codomain.join(a, codomain.pstar(a)) == codomain.top]
    else:
        choices = list(codomain.elements)

    lows = [rng.choice(choices)]
    for _ in range(nbps):
        below = [a for a in choices if codomain.leq(a, lows[-1])]
        lows.append(rng.choice(below))

    if profile in ("hausdorff", "ext_continuous"):
        ups = [codomain.pstar(v) for v in lows]
    else:
        ups = [rng.choice([a for a in codomain.elements
                           if codomain.leq(a, codomain.pstar(lows[0]))])]
        for v in lows[1:]:
            cands = [a for a in codomain.elements
                     if codomain.leq(ups[-1], a)
                     and codomain.leq(a, codomain.pstar(v))]
            ups.append(rng.choice(cands))
    return _from_gaps(codomain, bps, lows, ups)


def clamp_to_unit(f: ExtPartialRealFn) -> ExtPartialRealFn:
    """Truncate below -1 and above 1; lands in the unit range."""
    cod = f.codomain
    return _cell_join(_cell_meet(f, mk_constant(cod, 1)), mk_constant(cod, -1))


def embed_via_closed(f: ExtPartialRealFn, sf: SublocaleFrame) -> ExtPartialRealFn:
    """Transport a function along the closed-sublocale embedding a -> c(a)."""
    emb = sf.closed_id_of
    return make_fn(sf, f.lower.breakpoints, [emb[v] for v in f.lower.values],
                   f.upper.breakpoints, [emb[v] for v in f.upper.values])
