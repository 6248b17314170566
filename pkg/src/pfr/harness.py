"""Executable verification suites.

Every registered check binds one mathematical claim to a reproducible
procedure: exhaustive over the enumerated frame corpus where feasible,
seeded sampling elsewhere.  Reports are deterministic given the catalogue
version and the seeds; failing checks always embed a replayable
counterexample payload.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import realfn, serialize
from .enumeration import (HARD_SIZE_LIMIT, enumerate_frames,
                          enumerate_frames_brute, frame_keys_by_size)
from .errors import LimitExceeded, NotSubfit, SchemaError, UnknownCheck
from .fixtures import c3, d4, discrete_space, w5
from .frames import (FiniteFrame, booleanization, check_hom,
                     frame_laws_violation, is_complemented,
                     is_extremally_disconnected, is_subfit,
                     subfit_counterexample)
from .realfn import (clamp_to_unit, coz, delta, embed_via_closed, gamma,
                     is_extended_continuous, is_hausdorff,
                     is_hausdorff_pairwise, is_lsc, is_lsc_extended,
                     is_real_valued, is_real_valued_star, is_usc,
                     is_usc_extended, join_hausdorff, le, le_lower_only,
                     lower_regularization, make_fn, meet_hausdorff, mk_chi,
                     mk_chi_bar, mk_constant, mk_l, mk_minus_infinity,
                     mk_plus_infinity, neg, phi, preserves_r5_r6, psi,
                     sample_fn)
from .spatial import (enumerate_spaces, omega, semicontinuity_transfer_check,
                      space_sublocale_frame)
from .sublocales import (all_sublocales, is_meet_of_closed, join_S,
                         least_dense_check,
                         representation_as_open_join_closed,
                         subfit_via_sublocales)

REPORT_VERSION = "0.1.0"
DEFAULT_SEEDS = (7, 11, 13)
DEFAULT_SAMPLES = 500


@dataclass
class CheckSpec:
    """Scope of one check run: size bound, sample count, seeds."""

    id: str
    max_size: int | None = None
    samples: int | None = None
    seeds: tuple | None = None
    mode: str | None = None


@dataclass
class CheckDef:
    id: str
    anchor: str
    mode: str                      # exhaustive | sampled | observation
    max_size: int
    fn: object
    samples: int = DEFAULT_SAMPLES


class VerificationReport:
    """Deterministic verdicts plus replayable counterexamples."""

    def __init__(self, payload: dict):
        self.payload = payload

    @property
    def checks(self):
        return self.payload["checks"]

    def failures(self):
        return [c for c in self.checks if c["status"] == "fail"]

    def passed(self) -> bool:
        return not self.failures()

    def without_timing(self) -> dict:
        out = {k: v for k, v in self.payload.items()}
        out["checks"] = []
        for c in self.checks:
            c = dict(c)
            c["stats"] = {k: v for k, v in c.get("stats", {}).items() if k != "ms"}
            out["checks"].append(c)
        return out

    def to_json(self, path=None) -> str:
        return serialize.dump_json(self.payload, path)


class SuiteContext:
    """Shared caches: frame corpus, sublocale frames, space frames."""

    def __init__(self, max_size: int, samples: int, seeds):
        self.max_size = max_size
        self.samples = samples
        self.seeds = tuple(seeds)
        self._frames: dict[int, list] = {}
        self._subframes: dict = {}
        self._spaceframes: dict = {}

    def frames(self, limit: int):
        limit = min(limit, self.max_size)
        if limit not in self._frames:
            self._frames[limit] = enumerate_frames(limit)
        return self._frames[limit]

    def subframe(self, frame: FiniteFrame):
        if frame not in self._subframes:
            self._subframes[frame] = all_sublocales(frame, limit=frame.size)
        return self._subframes[frame]

    def spaceframe(self, space):
        if space not in self._spaceframes:
            self._spaceframes[space] = space_sublocale_frame(space)
        return self._spaceframes[space]

    def sample_seeds(self, count: int):
        """Split a sample budget across the configured seeds."""
        per = max(1, count // len(self.seeds))
        return [(seed, per) for seed in self.seeds]


def _result(status, counterexample=None, **stats):
    out = {"status": status, "stats": stats}
    if counterexample is not None:
        out["counterexample"] = counterexample
    return out


def _fail(payload, **stats):
    return _result("fail", counterexample=payload, **stats)


# counterexample payload builders -------------------------------------------


def _frame_payload(frame: FiniteFrame, patch=None) -> dict:
    out = {"kind": "frame-laws", "frame": serialize.frame_to_dict(frame)}
    if patch is not None:
        out["table_patch"] = patch
    return out


def _codomain_payload(codomain) -> dict:
    from .sublocales import SublocaleFrame
    if isinstance(codomain, SublocaleFrame):
        return {"sublocale_frame": serialize.sublocale_frame_to_dict(codomain)}
    return {"frame": serialize.frame_to_dict(codomain)}


def _predicate_payload(codomain, fn, predicate, expected) -> dict:
    out = {"kind": "predicate", "predicate": predicate, "expected": expected,
           "fn": serialize.fn_to_dict(fn)}
    out.update(_codomain_payload(codomain))
    return out


def _roundtrip_payload(codomain, fn, op) -> dict:
    out = {"kind": "roundtrip", "op": op, "fn": serialize.fn_to_dict(fn)}
    out.update(_codomain_payload(codomain))
    return out


def _subfit_payload(frame, pair) -> dict:
    return {"kind": "subfit-pair", "frame": serialize.frame_to_dict(frame),
            "pair": list(pair)}


# ---------------------------------------------------------------------------
# frame laws and enumeration


def _check_frame_laws(ctx: SuiteContext, spec: CheckSpec):
    bound = spec.max_size or 8
    frames_checked = 0
    for frame in ctx.frames(bound):
        bad = frame_laws_violation(frame)
        if bad is not None:
            return _fail(_frame_payload(frame), law=bad[0])
        frames_checked += 1
    return _result("pass", frames=frames_checked)


def _check_enumeration_agreement(ctx: SuiteContext, spec: CheckSpec):
    bound = spec.max_size or 8
    ours = frame_keys_by_size(ctx.frames(bound))
    brute = enumerate_frames_brute(min(bound, ctx.max_size))
    counts = {}
    for size in range(1, min(bound, ctx.max_size) + 1):
        a, b = ours.get(size, set()), brute.get(size, set())
        counts[size] = len(a)
        if a != b:
            return _fail({"kind": "enumeration", "size": size,
                          "duality": len(a), "brute": len(b)})
    return _result("pass", counts_per_size=counts)


# ---------------------------------------------------------------------------
# sublocales


def _check_space_bijection(ctx: SuiteContext, spec: CheckSpec):
    points = min(spec.max_size or 4, 4)
    spaces = enumerate_spaces(points)
    for space in spaces:
        sf = ctx.spaceframe(space)
        if sf.size != 2 ** len(space.points):
            return _fail({"kind": "space", "space": serialize.space_to_dict(space),
                          "sublocales": sf.size})
        tag = sf.induced_tag
        if len(tag) != sf.size or len(set(tag.values())) != sf.size:
            return _fail({"kind": "space", "space": serialize.space_to_dict(space),
                          "reason": "induced map not bijective"})
        # order isomorphism: subset inclusion matches carrier inclusion
        ids = list(tag)
        for i1 in ids:
            for i2 in ids:
                if (tag[i1] <= tag[i2]) != (sf.carriers[i1] <= sf.carriers[i2]):
                    return _fail({"kind": "space",
                                  "space": serialize.space_to_dict(space),
                                  "reason": "not an order embedding"})
        # joins of induced sublocales are induced by unions
        for i1 in ids:
            for i2 in ids:
                joined = join_S([sf.sublocale(i1), sf.sublocale(i2)])
                if sf.induced_tag[sf.id_of(joined)] != tag[i1] | tag[i2]:
                    return _fail({"kind": "space",
                                  "space": serialize.space_to_dict(space),
                                  "reason": "join of induced not the union"})
    return _result("pass", spaces=len(spaces))


def _check_closed_open_equations(ctx: SuiteContext, spec: CheckSpec):
    bound = spec.max_size or 6
    pairs = families = 0
    for frame in ctx.frames(bound):
        sf = ctx.subframe(frame)
        c_of, o_of = sf.closed_id_of, sf.open_id_of
        for a in frame.elements:
            ca, oa = c_of[a], o_of[a]
            # complements of each other, and mutual pseudocomplements
            if sf.meet(ca, oa) != sf.bottom or sf.join(ca, oa) != sf.top:
                return _fail(_frame_payload(frame), law="complement-pair", at=a)
            if sf.pstar(ca) != oa or sf.pstar(oa) != ca:
                return _fail(_frame_payload(frame), law="pstar-pair", at=a)
            for b in frame.elements:
                # the inclusion-order join of closed parts is the reversed
                # order's meet, and dually for the opens
                if sf.meet(c_of[a], c_of[b]) != c_of[frame.meet(a, b)]:
                    return _fail(_frame_payload(frame), law="closed-meet")
                if sf.join(o_of[a], o_of[b]) != o_of[frame.meet(a, b)]:
                    return _fail(_frame_payload(frame), law="open-meet")
                pairs += 1
        for k in range(min(frame.size, 6) + 1):
            for fam in combinations(frame.elements, k):
                families += 1
                if sf.join_all(c_of[a] for a in fam) != c_of[frame.join_all(fam)]:
                    return _fail(_frame_payload(frame), law="closed-family")
                if sf.meet_all(o_of[a] for a in fam) != o_of[frame.join_all(fam)]:
                    return _fail(_frame_payload(frame), law="open-family")
        if not check_hom(sf.closed_embedding()):
            return _fail(_frame_payload(frame), law="closed-embedding-hom")
        for elem in sf.elements:
            if not representation_as_open_join_closed(sf, elem):
                return _fail(_frame_payload(frame), law="open-join-closed-repr",
                             at=elem)
    return _result("pass", pairs=pairs, families=families)


def _check_isbell(ctx: SuiteContext, spec: CheckSpec):
    bound = spec.max_size or 6
    for frame in ctx.frames(bound):
        if not least_dense_check(frame, ctx.subframe(frame)):
            return _fail(_frame_payload(frame), law="least-dense")
    return _result("pass", frames=len(ctx.frames(bound)))


def _check_subfit_boolean(ctx: SuiteContext, spec: CheckSpec):
    bound = spec.max_size or 6
    for frame in ctx.frames(bound):
        sf = ctx.subframe(frame)
        bframe, _ = booleanization(sf.frame)
        meets = all(is_meet_of_closed(sf, elem) for elem in bframe.elements)
        if meets != is_subfit(frame):
            return _fail(_frame_payload(frame), law="subfit-boolean-biconditional")
    return _result("pass", frames=len(ctx.frames(bound)))


def _check_subfit_open_joins(ctx: SuiteContext, spec: CheckSpec):
    bound = spec.max_size or 6
    for frame in ctx.frames(bound):
        if subfit_via_sublocales(ctx.subframe(frame)) != is_subfit(frame):
            return _fail(_frame_payload(frame), law="subfit-open-join-closed")
        pair = subfit_counterexample(frame)
        if pair is not None:
            a, b = pair
            ok = not any(frame.join(a, c) == frame.top
                         and frame.join(b, c) != frame.top
                         for c in frame.elements)
            if not ok:
                return _fail(_subfit_payload(frame, pair), law="certificate-replay")
    return _result("pass", frames=len(ctx.frames(bound)))


# ---------------------------------------------------------------------------
# trail-pair calculus


def _sample_stream(ctx, codomain, profiles, count, tag):
    """Deterministic (profile, seed) stream across the configured seeds."""
    out = []
    for seed, per in ctx.sample_seeds(count):
        for k in range(per):
            prof = profiles[k % len(profiles)]
            out.append(sample_fn(codomain, prof, f"{tag}|{seed}|{k}"))
    return out


def _check_psi_phi(ctx: SuiteContext, spec: CheckSpec):
    bound = spec.max_size or 6
    count = spec.samples or ctx.samples
    total = 0
    for frame in ctx.frames(bound):
        fns = _sample_stream(ctx, frame, realfn.PROFILES, count, "psiphi")
        for f in fns:
            total += 1
            if phi(psi(f)) != f:
                return _fail(_roundtrip_payload(frame, f, "phi-after-psi"))
            if is_hausdorff(psi(f)) != is_hausdorff(f):
                return _fail(_predicate_payload(frame, f, "psi-hausdorff",
                                                is_hausdorff(f)))
            if is_extended_continuous(psi(f)) != is_extended_continuous(f):
                return _fail(_predicate_payload(frame, f, "psi-covering",
                                                is_extended_continuous(f)))
            u = clamp_to_unit(f)
            if psi(phi(u)) != u:
                return _fail(_roundtrip_payload(frame, u, "psi-after-phi"))
    return _result("pass", samples=total)


def _check_hausdorff_agreement(ctx: SuiteContext, spec: CheckSpec):
    bound = spec.max_size or 6
    count = spec.samples or 1000
    total = 0
    for frame in ctx.frames(bound):
        for f in _sample_stream(ctx, frame, realfn.PROFILES, count, "hdag"):
            total += 1
            if is_hausdorff(f) != is_hausdorff_pairwise(f):
                return _fail(_predicate_payload(frame, f, "hausdorff-agreement",
                                                is_hausdorff_pairwise(f)))
    return _result("pass", samples=total)


def _check_hausdorff_identities(ctx: SuiteContext, spec: CheckSpec):
    bound = spec.max_size or 6
    count = spec.samples or ctx.samples
    total = 0
    for frame in ctx.frames(bound):
        prev = None
        for f in _sample_stream(ctx, frame, ("hausdorff",), count, "hdid"):
            total += 1
            bps = realfn.merged_breakpoints(f)
            lows, ups = realfn.gap_values(f, bps)
            # each trail value is the pseudocomplement of the other's
            # adjacent cell value, at cells and at breakpoints
            for lo, up in zip(lows, ups):
                if frame.pstar(up) != lo or frame.pstar(lo) != up:
                    return _fail(_predicate_payload(frame, f,
                                                    "trail-identities", True))
            for b in bps:
                if f.lower.eval(b) != frame.pstar(f.upper.eval(b, "right_limit")):
                    return _fail(_predicate_payload(frame, f,
                                                    "lower-at-breakpoint", True))
                if f.upper.eval(b) != frame.pstar(f.lower.eval(b, "left_limit")):
                    return _fail(_predicate_payload(frame, f,
                                                    "upper-at-breakpoint", True))
            if prev is not None and le(prev, f) != le_lower_only(prev, f):
                return _fail(_predicate_payload(frame, f, "lower-only-order",
                                                le(prev, f)))
            prev = f
    return _result("pass", samples=total)


def _real_valued_sample(codomain, seed):
    """A Hausdorff sample forced through top below and bottom above."""
    f = sample_fn(codomain, "hausdorff", seed)
    bps = realfn.merged_breakpoints(f)
    lows, _ = realfn.gap_values(f, bps)
    lo_b = (bps[0] - 1) if bps else Fraction(0)
    hi_b = (bps[-1] + 1) if bps else Fraction(1)
    new_bps = [lo_b] + list(bps) + [hi_b]
    new_lows = [codomain.top] + lows + [codomain.bottom]
    ups = [codomain.pstar(v) for v in new_lows]
    return make_fn(codomain, new_bps, new_lows, new_bps, ups)


def _check_hbar_bounds(ctx: SuiteContext, spec: CheckSpec):
    bound = spec.max_size or 6
    count = spec.samples or 200
    families = 0
    for frame in ctx.frames(bound):
        for seed, per in ctx.sample_seeds(count):
            for k in range(per):
                fam = [sample_fn(frame, "hausdorff", f"hb|{seed}|{k}|{i}")
                       for i in range(3)]
                families += 1
                jn, mt = join_hausdorff(fam), meet_hausdorff(fam)
                if not (is_hausdorff(jn) and is_hausdorff(mt)):
                    return _fail(_predicate_payload(frame, jn, "is_hausdorff", True))
                for f in fam:
                    if not (le(f, jn) and le(mt, f)):
                        return _fail(_predicate_payload(frame, f, "bounding", True))
    return _result("pass", families=families)


def _check_hbar_least(ctx: SuiteContext, spec: CheckSpec):
    bound = spec.max_size or 5
    count = spec.samples or 200
    codomains = [f for f in ctx.frames(min(bound + 3, ctx.max_size))
                 if f.is_boolean()]
    codomains += [ctx.subframe(f) for f in ctx.frames(bound)]
    competitors = 0
    for cod in codomains:
        for seed, per in ctx.sample_seeds(count):
            for k in range(per):
                fam = [sample_fn(cod, "hausdorff", f"hl|{seed}|{k}|{i}")
                       for i in range(2)]
                jn, mt = join_hausdorff(fam), meet_hausdorff(fam)
                up = join_hausdorff([jn, sample_fn(cod, "hausdorff",
                                                   f"hlu|{seed}|{k}")])
                dn = meet_hausdorff([mt, sample_fn(cod, "hausdorff",
                                                   f"hld|{seed}|{k}")])
                competitors += 1
                if not le(jn, up):
                    return _fail(_predicate_payload(cod, up, "least-bound", True))
                if not le(dn, mt):
                    return _fail(_predicate_payload(cod, dn, "greatest-bound", True))
    return _result("pass", competitors=competitors, codomains=len(codomains))


def _check_gamma_delta(ctx: SuiteContext, spec: CheckSpec):
    bound = spec.max_size or 6
    count = spec.samples or ctx.samples
    total = 0
    for frame in ctx.frames(bound):
        bframe, _ = booleanization(frame)
        for f in _sample_stream(ctx, frame, ("hausdorff",), count, "gd"):
            total += 1
            g = gamma(f)
            if not is_extended_continuous(g):
                return _fail(_predicate_payload(bframe, g,
                                                "gamma-image-covering", True))
            if delta(g, frame) != f:
                return _fail(_roundtrip_payload(frame, f, "delta-after-gamma"))
        for g in _sample_stream(ctx, bframe, ("ext_continuous",), count, "dg"):
            total += 1
            if gamma(delta(g, frame)) != g:
                return _fail(_roundtrip_payload(bframe, g, "gamma-after-delta"))
    return _result("pass", samples=total)


def _check_eqextdisc(ctx: SuiteContext, spec: CheckSpec):
    bound = spec.max_size or 8
    for frame in ctx.frames(bound):
        via_chi = all(
            is_extended_continuous(
                mk_chi_bar(frame, frame.pstar(a), frame.pstar(frame.pstar(a))))
            for a in frame.elements)
        if via_chi != is_extremally_disconnected(frame):
            return _fail(_frame_payload(frame), law="eqextdisc")
    return _result("pass", frames=len(ctx.frames(bound)))


def _check_real_valued(ctx: SuiteContext, spec: CheckSpec):
    bound = spec.max_size or 6
    count = spec.samples or ctx.samples
    total = 0
    for frame in ctx.frames(bound):
        if not is_real_valued(mk_constant(frame, 0)):
            return _fail(_predicate_payload(frame, mk_constant(frame, 0),
                                            "is_real_valued", True))
        # the degenerate one-element frame collapses every function onto
        # the constants, so the negative cases start at size 2
        if frame.size > 1 and (is_real_valued(mk_plus_infinity(frame))
                               or is_real_valued(mk_minus_infinity(frame))):
            return _fail(_predicate_payload(frame, mk_plus_infinity(frame),
                                            "is_real_valued", False))
        for f in _sample_stream(ctx, frame, ("hausdorff",), count, "rv"):
            total += 1
            if is_real_valued(f) != is_real_valued_star(f):
                return _fail(_predicate_payload(frame, f,
                                                "real-valued-equivalence",
                                                is_real_valued(f)))
    fr = w5()
    cb = mk_chi_bar(fr, "x", "y")
    if is_real_valued(cb) or is_real_valued_star(cb):
        return _fail(_predicate_payload(fr, cb, "is_real_valued", False))
    return _result("pass", samples=total)


def _continuous_real_sample(codomain, seed):
    """A complemented-valued sample forced through top below, bottom above."""
    f = sample_fn(codomain, "ext_continuous", seed)
    bps = realfn.merged_breakpoints(f)
    lows, _ = realfn.gap_values(f, bps)
    lo_b = (bps[0] - 1) if bps else Fraction(0)
    hi_b = (bps[-1] + 1) if bps else Fraction(1)
    new_bps = [lo_b] + list(bps) + [hi_b]
    new_lows = [codomain.top] + lows + [codomain.bottom]
    ups = [codomain.pstar(v) for v in new_lows]
    return make_fn(codomain, new_bps, new_lows, new_bps, ups)


def _check_cozero(ctx: SuiteContext, spec: CheckSpec):
    bound = spec.max_size or 6
    count = spec.samples or 200
    total = 0
    for frame in ctx.frames(bound):
        for seed, per in ctx.sample_seeds(count):
            for k in range(per):
                f = _continuous_real_sample(frame, f"coz|{seed}|{k}")
                total += 1
                if not is_complemented(frame, coz(f)):
                    return _fail(_predicate_payload(frame, f,
                                                    "cozero-complemented", True))
        for a in frame.elements:
            if is_complemented(frame, a):
                if coz(mk_chi(frame, a, frame.pstar(a))) != a:
                    return _fail(_frame_payload(frame), law="cozero-onto", at=a)
    return _result("pass", samples=total)


def _check_dedekind_complete(ctx: SuiteContext, spec: CheckSpec):
    bound = spec.max_size or 5
    count = spec.samples or ctx.samples
    families = 0
    for frame in ctx.frames(bound):
        sf = ctx.subframe(frame)
        for seed, per in ctx.sample_seeds(count):
            for k in range(per):
                top_fn = _real_valued_sample(sf, f"dc-top|{seed}|{k}")
                lo_fn = _real_valued_sample(sf, f"dc-lo|{seed}|{k}")
                fam = []
                for i in range(3):
                    g = sample_fn(sf, "hausdorff", f"dc|{seed}|{k}|{i}")
                    fam.append(meet_hausdorff(
                        [top_fn, join_hausdorff([g, lo_fn])]))
                families += 1
                jn = join_hausdorff(fam)
                if not all(le(f, top_fn) for f in fam):
                    return _fail(_predicate_payload(sf, top_fn, "bounding", True))
                if not (all(is_real_valued(f) for f in fam)
                        and is_real_valued(jn)):
                    return _fail(_predicate_payload(sf, jn, "is_real_valued", True))
    return _result("pass", families=families)


def _check_gamma_restriction(ctx: SuiteContext, spec: CheckSpec):
    bound = spec.max_size or 5
    count = spec.samples or ctx.samples
    total = 0
    for frame in ctx.frames(bound):
        sf = ctx.subframe(frame)
        for f in _sample_stream(ctx, sf, ("hausdorff",), count, "gr"):
            total += 1
            if is_real_valued(f) != preserves_r5_r6(gamma(f)):
                return _fail(_predicate_payload(sf, f, "gamma-restriction",
                                                is_real_valued(f)))
    return _result("pass", samples=total)


# ---------------------------------------------------------------------------
# semicontinuity over sublocale frames


def _class_memberships(sf, f):
    ext = is_extended_continuous(f)
    lsc_b = ext and is_lsc_extended(f)
    usc_b = ext and is_usc_extended(f)
    hd = is_hausdorff(f)
    rv = is_real_valued(f)
    r56 = preserves_r5_r6(f)
    return {
        "F_bar": hd,
        "C_bar_coS": ext,
        "LSC_bar": lsc_b,
        "USC_bar": usc_b,
        "C_bar_L": lsc_b and usc_b,
        "F": hd and rv,
        "C_coS": ext and r56,
        "LSC": ext and is_lsc(f),
        "USC": ext and is_usc(f),
        "C_L": ext and r56 and is_lsc_extended(f) and is_usc_extended(f),
    }


DIAGRAM_EDGES = [
    ("C_L", "LSC"), ("C_L", "C_coS"), ("C_L", "USC"), ("C_L", "C_bar_L"),
    ("LSC", "F"), ("LSC", "LSC_bar"),
    ("C_coS", "F"), ("C_coS", "C_bar_coS"),
    ("USC", "F"), ("USC", "USC_bar"),
    ("C_bar_L", "LSC_bar"), ("C_bar_L", "C_bar_coS"), ("C_bar_L", "USC_bar"),
    ("LSC_bar", "C_bar_coS"), ("USC_bar", "C_bar_coS"),
    ("C_bar_coS", "F_bar"), ("F", "F_bar"),
]


def _cos_population(ctx, frame, sf, count, tag):
    """Samples plus structured members hitting every diagram class."""
    fns = _sample_stream(ctx, sf, realfn.PROFILES, count, tag)
    fns.append(mk_plus_infinity(sf))
    fns.append(mk_minus_infinity(sf))
    rng = random.Random(f"{tag}|{frame.name}")
    pool = sorted({Fraction(n, d) for n in range(-3, 4) for d in (1, 2)})
    for a in frame.elements:
        fns.append(mk_l(sf, a, rng.choice(pool)))
        fns.append(mk_chi_bar(sf, sf.closed_id_of[a], sf.open_id_of[a]))
    for r in (0, 1):
        fns.append(embed_via_closed(mk_constant(frame, r), sf))
    for k in range(4):
        f = sample_fn(frame, "ext_continuous", f"{tag}|emb|{k}")
        fns.append(embed_via_closed(f, sf))
    fns.extend(lower_regularization(sample_fn(sf, "arbitrary_ic", f"{tag}|reg|{k}"))
               for k in range(4))
    return fns


def diagram_check(frame: FiniteFrame, sf=None, samples: int = 120,
                  seeds=DEFAULT_SEEDS) -> dict:
    """Assert every inclusion of the class diagram on a sampled population.

    Also asserts the Boolean-sublocale-frame direction: every real-valued
    Hausdorff sample over a Boolean sublocale frame is fully continuous.
    """
    if sf is None:
        sf = all_sublocales(frame, limit=frame.size)
    ctx = SuiteContext(HARD_SIZE_LIMIT, samples, seeds)
    fns = _cos_population(ctx, frame, sf, samples, f"diag|{frame.name}")
    failures = []
    for f in fns:
        cls = _class_memberships(sf, f)
        for src, dst in DIAGRAM_EDGES:
            if cls[src] and not cls[dst]:
                failures.append({"edge": [src, dst],
                                 "fn": serialize.fn_to_dict(f)})
        if cls["F"] and cls["LSC_bar"] and not cls["LSC"]:
            failures.append({"edge": ["F∩LSC_bar", "LSC"],
                             "fn": serialize.fn_to_dict(f)})
        if cls["LSC"] and not (cls["F"] and cls["LSC_bar"]):
            failures.append({"edge": ["LSC", "F∩LSC_bar"],
                             "fn": serialize.fn_to_dict(f)})
        if sf.is_boolean() and cls["F"] and not cls["C_coS"]:
            failures.append({"edge": ["F", "C_coS (Boolean)"],
                             "fn": serialize.fn_to_dict(f)})
    return {"frame": frame.name, "functions": len(fns), "failures": failures}


def _check_diagram(ctx: SuiteContext, spec: CheckSpec):
    bound = spec.max_size or 5
    count = spec.samples or 120
    total = 0
    for frame in ctx.frames(bound):
        rep = diagram_check(frame, ctx.subframe(frame), samples=count,
                            seeds=ctx.seeds)
        total += rep["functions"]
        if rep["failures"]:
            first = rep["failures"][0]
            return _fail({"kind": "diagram", "frame": frame.name, **first})
    # an extremally disconnected plain codomain: the Hausdorff and covering
    # classes coincide there
    frame = d4()
    for f in _sample_stream(ctx, frame, realfn.PROFILES, count, "diag-ed"):
        total += 1
        if is_hausdorff(f) != is_extended_continuous(f):
            return _fail(_predicate_payload(frame, f, "ed-classes-coincide",
                                            is_hausdorff(f)))
    return _result("pass", functions=total)


def meet_density_check(frame: FiniteFrame, sf=None, samples: int = 200,
                       seeds=DEFAULT_SEEDS) -> dict:
    """Reconstruct covering functions as meets of closed-scale generators.

    For each sampled covering f over the sublocale frame of a subfit frame,
    the family contains l_{a,q} for q over the breakpoints and one rational
    per cell, a over the elements whose closed sublocale dominates the level
    value, plus the constant-trail closed generators that realize the
    rational tails of the towers.  The meet must reproduce f exactly.
    """
    cert = subfit_counterexample(frame)
    if cert is not None:
        raise NotSubfit(cert)
    if sf is None:
        sf = all_sublocales(frame, limit=frame.size)
    ctx = SuiteContext(HARD_SIZE_LIMIT, samples, seeds)
    exact = 0
    for seed, per in ctx.sample_seeds(samples):
        for k in range(per):
            f = sample_fn(sf, "ext_continuous", f"md|{seed}|{k}")
            fam = _closed_scale_family(frame, sf, f)
            if meet_hausdorff(fam) != f:
                return {"frame": frame.name, "status": "fail",
                        "counterexample": _roundtrip_payload(sf, f, "meet-density")}
            exact += 1
    return {"frame": frame.name, "status": "pass", "reconstructions": exact}


def _closed_scale_family(frame, sf, f):
    bps = realfn.merged_breakpoints(f)
    levels = list(bps)
    if bps:
        levels += [bps[0] - 1, bps[-1] + 1]
        levels += [bps[i] + (bps[i + 1] - bps[i]) / 2 for i in range(len(bps) - 1)]
    else:
        levels = [Fraction(0)]
    fam = []
    for q in sorted(levels):
        val = f.lower.eval(q)
        dominating = [a for a in frame.elements
                      if sf.leq(val, sf.closed_id_of[a])]
        fam.extend(mk_l(sf, a, q) for a in dominating)
    first = f.lower.values[0]
    for a in frame.elements:
        if sf.leq(first, sf.closed_id_of[a]):
            fam.append(mk_chi_bar(sf, sf.closed_id_of[a], sf.open_id_of[a]))
    return fam


def _check_meet_density(ctx: SuiteContext, spec: CheckSpec):
    bound = spec.max_size or 5
    count = spec.samples or 200
    done = skipped = 0
    for frame in ctx.frames(bound):
        try:
            rep = meet_density_check(frame, ctx.subframe(frame), samples=count,
                                     seeds=ctx.seeds)
        except NotSubfit:
            skipped += 1
            continue
        if rep["status"] != "pass":
            return _fail(rep["counterexample"])
        done += rep["reconstructions"]
    stats = {"reconstructions": done, "skipped_not_subfit": skipped}
    return _result("pass", **stats)


def _check_semicontinuity_classes(ctx: SuiteContext, spec: CheckSpec):
    bound = spec.max_size or 5
    count = spec.samples or ctx.samples
    total = 0
    for frame in ctx.frames(bound):
        sf = ctx.subframe(frame)
        for f in _cos_population(ctx, frame, sf, count, "semi"):
            total += 1
            cls = _class_memberships(sf, f)
            if cls["LSC"] != (cls["F"] and cls["LSC_bar"]):
                return _fail(_predicate_payload(sf, f, "lsc-meets-real",
                                                cls["LSC"]))
            if cls["USC"] != (cls["F"] and cls["USC_bar"]):
                return _fail(_predicate_payload(sf, f, "usc-meets-real",
                                                cls["USC"]))
            if is_lsc_extended(f) != is_usc_extended(neg(f)):
                return _fail(_predicate_payload(sf, f, "neg-swaps-classes", True))
            if is_hausdorff(f) != is_hausdorff(neg(f)):
                return _fail(_predicate_payload(sf, f, "neg-fixes-hausdorff", True))
    return _result("pass", samples=total)


def _check_regularization(ctx: SuiteContext, spec: CheckSpec):
    bound = spec.max_size or 5
    count = spec.samples or ctx.samples
    total = 0
    for frame in ctx.frames(bound):
        sf = ctx.subframe(frame)
        fns = _sample_stream(ctx, sf, realfn.PROFILES, count, "reg")
        for i, f in enumerate(fns):
            total += 1
            r = lower_regularization(f)
            if not is_lsc_extended(r):
                return _fail(_predicate_payload(sf, r, "is_lsc_extended", True))
            if not le(r, f):
                return _fail(_predicate_payload(sf, f, "regularization-below", True))
            if lower_regularization(r) != r:
                return _fail(_roundtrip_payload(sf, f, "regularization-idempotent"))
            g = fns[(i + 1) % len(fns)]
            if le(f, g) and not le(lower_regularization(f),
                                   lower_regularization(g)):
                return _fail(_predicate_payload(sf, f, "regularization-monotone",
                                                True))
            if is_real_valued(f) and r.lower.values[-1] != sf.bottom:
                return _fail(_predicate_payload(sf, f, "regularization-l3", True))
            # the upper variant through the involution satisfies its display
            u = realfn.upper_regularization(f)
            bps = realfn.merged_breakpoints(f, extra=realfn.merged_breakpoints(u))
            _, f_ups = realfn.gap_values(f, bps)
            u_lows, u_ups = realfn.gap_values(u, bps)
            for fu, ul, uu in zip(f_ups, u_lows, u_ups):
                cl = sf.closure_id(fu)
                if uu != cl or ul != sf.pstar(cl):
                    return _fail(_predicate_payload(sf, f,
                                                    "upper-regularization-display",
                                                    True))
    return _result("pass", samples=total)


# ---------------------------------------------------------------------------
# spatial


def _check_spatial(ctx: SuiteContext, spec: CheckSpec):
    grid = [Fraction(0), Fraction(1, 2), Fraction(1)]
    spaces = enumerate_spaces(min(spec.max_size or 3, 3)) + [discrete_space(4)]
    functions = 0
    for space in spaces:
        rep = semicontinuity_transfer_check(space, grid, allow_infinities=True)
        functions += rep["functions"]
        if rep["mismatches"]:
            return _fail({"kind": "spatial", "space": space.name,
                          "mismatch": repr(rep["mismatches"][0])})
        sf = ctx.spaceframe(space)
        # max/min of point functions transfer to the trail join/meet
        rng = random.Random(f"spatial|{space.name}")
        from .spatial import PointFn, grid_point_fns
        fns = grid_point_fns(space, grid, allow_infinities=False)
        picks = [fns[rng.randrange(len(fns))] for _ in range(10)]
        for a in picks:
            for b in picks:
                mx = PointFn(space, {p: max(a.values[p], b.values[p])
                                     for p in space.points})
                mn = PointFn(space, {p: min(a.values[p], b.values[p])
                                     for p in space.points})
                ia, ib = omega(a, sf), omega(b, sf)
                if omega(mx, sf) != join_hausdorff([ia, ib]):
                    return _fail({"kind": "spatial", "space": space.name,
                                  "mismatch": "max-join transfer"})
                if omega(mn, sf) != meet_hausdorff([ia, ib]):
                    return _fail({"kind": "spatial", "space": space.name,
                                  "mismatch": "min-meet transfer"})
    return _result("pass", functions=functions, spaces=len(spaces))


# ---------------------------------------------------------------------------
# harness-level checks


def table_mutants(frame: FiniteFrame):
    """Every frame obtained by corrupting one entry of one lattice table."""
    n = frame.size
    for tname in ("meet", "join", "arrow"):
        table = getattr(frame, f"_{tname}")
        for i in range(n):
            for j in range(n):
                for wrong in range(n):
                    if wrong == table[i][j]:
                        continue
                    patched = [list(row) for row in table]
                    patched[i][j] = wrong
                    mutant = FiniteFrame.__new__(FiniteFrame)
                    _clone_frame_into(frame, mutant)
                    setattr(mutant, f"_{tname}", tuple(tuple(r) for r in patched))
                    yield (tname, frame.elements[i], frame.elements[j],
                           frame.elements[wrong]), mutant
    for i in range(n):
        for wrong in range(n):
            if wrong == frame._pstar[i]:
                continue
            mutant = FiniteFrame.__new__(FiniteFrame)
            _clone_frame_into(frame, mutant)
            patched = list(frame._pstar)
            patched[i] = wrong
            mutant._pstar = tuple(patched)
            yield ("pstar", frame.elements[i], "", frame.elements[wrong]), mutant


def _clone_frame_into(frame: FiniteFrame, mutant: FiniteFrame):
    mutant.name = frame.name + "!"
    mutant.elements = frame.elements
    mutant.index = frame.index
    mutant._up = frame._up
    mutant._low = frame._low
    mutant._meet = frame._meet
    mutant._join = frame._join
    mutant._arrow = frame._arrow
    mutant._pstar = frame._pstar
    mutant._bottom_i = frame._bottom_i
    mutant._top_i = frame._top_i
    mutant._key = (frame.elements, frozenset())


def _check_fault_injection(ctx: SuiteContext, spec: CheckSpec):
    caught = total = 0
    for frame in (c3(), w5()):
        for patch, mutant in table_mutants(frame):
            total += 1
            if frame_laws_violation(mutant) is not None:
                caught += 1
            else:
                return _fail(_frame_payload(
                    frame, patch={"table": patch[0],
                                  "entry": [patch[1], patch[2]],
                                  "value": patch[3]}))
    return _result("pass", mutants=total, caught=caught)


def _check_determinism(ctx: SuiteContext, spec: CheckSpec):
    ids = ["prop.eqextdisc", "prop.psi-phi-roundtrip"]
    a = run_suite(ids, max_size=3, samples=30, seeds=ctx.seeds)
    b = run_suite(ids, max_size=3, samples=30, seeds=ctx.seeds)
    if a.without_timing() != b.without_timing():
        return _fail({"kind": "determinism", "first": a.without_timing(),
                      "second": b.without_timing()})
    return _result("pass", reruns=2)


def _check_cos_boolean_observation(ctx: SuiteContext, spec: CheckSpec):
    bound = spec.max_size or 6
    nonboolean = [f.name for f in ctx.frames(bound)
                  if not ctx.subframe(f).is_boolean()]
    return _result("observation", nonboolean_cos=nonboolean,
                   frames=len(ctx.frames(bound)))


def _check_f_vs_c_cos_observation(ctx: SuiteContext, spec: CheckSpec):
    bound = spec.max_size or 5
    count = spec.samples or 200
    separations = 0
    for frame in ctx.frames(bound):
        sf = ctx.subframe(frame)
        for f in _sample_stream(ctx, sf, ("hausdorff",), count, "obs-sep"):
            if is_hausdorff(f) and is_real_valued(f) and not (
                    is_extended_continuous(f) and preserves_r5_r6(f)):
                separations += 1
    return _result("observation", separations_found=separations)


# ---------------------------------------------------------------------------
# registry and runner


CHECKS: dict[str, CheckDef] = {}


def _register(id_, anchor, mode, max_size, fn, samples=DEFAULT_SAMPLES):
    CHECKS[id_] = CheckDef(id_, anchor, mode, max_size, fn, samples)


_register("frame.laws",
          "finite frames: meet adjunction, triple pseudocomplement, "
          "binary distributivity, table integrity",
          "exhaustive", 8, _check_frame_laws)
_register("frame.enumeration-agreement",
          "down-set lattices of finite posets exhaust the finite "
          "distributive lattices, one per isomorphism class",
          "exhaustive", 8, _check_enumeration_agreement)
_register("sublocale.space-bijection",
          "subsets of a finite T0 space induce exactly the sublocales of "
          "its open-set frame, respecting order and joins",
          "exhaustive", 4, _check_space_bijection)
_register("sublocale.closed-open-equations",
          "closed and open sublocales: complement pairs, meet/join "
          "equations, the closed embedding, the open-join-closed form",
          "exhaustive", 6, _check_closed_open_equations)
_register("prop.isbell-least-dense",
          "the regular-element sublocale is the least dense sublocale",
          "exhaustive", 6, _check_isbell)
_register("lemma.subfit-boolean",
          "subfit iff every regular element of the sublocale frame is a "
          "meet of closed sublocales",
          "exhaustive", 6, _check_subfit_boolean)
_register("prop.subfit-open-join-closed",
          "subfit iff every open sublocale is a join of closed sublocales; "
          "failure certificates replay",
          "exhaustive", 6, _check_subfit_open_joins)
_register("prop.psi-phi-roundtrip",
          "the unit-interval rescaling pair is an exact order isomorphism "
          "preserving the Hausdorff and covering classes",
          "sampled", 6, _check_psi_phi)
_register("prop.hausdorff-decision-agreement",
          "the cellwise pseudocomplement characterization of Hausdorff "
          "pairs matches the pairwise inequality definition",
          "sampled", 6, _check_hausdorff_agreement, samples=1000)
_register("lemma.hausdorff-trail-identities",
          "each trail of a Hausdorff pair is the pseudocomplement of the "
          "other trail's adjacent cell value",
          "sampled", 6, _check_hausdorff_identities)
_register("prop.hbar-join-meet",
          "the double-pseudocomplement join and pseudocomplement meet "
          "formulas return Hausdorff bounds",
          "sampled", 6, _check_hbar_bounds, samples=200)
_register("prop.hbar-least-bound",
          "those bounds are least/greatest among sampled Hausdorff "
          "competitors over Boolean and sublocale-frame codomains",
          "sampled", 5, _check_hbar_least, samples=200)
_register("prop.gamma-delta-roundtrip",
          "Hausdorff pairs over a frame correspond exactly to covering "
          "pairs over its Boolean frame of regular elements",
          "sampled", 6, _check_gamma_delta)
_register("prop.eqextdisc",
          "extremal disconnectedness iff the reflected indicator pair of "
          "every element is covering",
          "exhaustive", 8, _check_eqextdisc)
_register("cor.real-valued-characterization",
          "real-valued iff both trail joins are dense iff both trail "
          "meets vanish; constants yes, infinities and partial "
          "indicators no",
          "sampled", 6, _check_real_valued)
_register("prop.dedekind-complete",
          "real-valued Hausdorff pairs are closed under bounded joins",
          "sampled", 5, _check_dedekind_complete)
_register("prop.cozero-complemented",
          "level-0 cover elements of continuous real-valued pairs are "
          "complemented, and every complemented element so arises",
          "sampled", 6, _check_cozero, samples=200)
_register("prop.gamma-real-restriction",
          "a Hausdorff pair is real-valued iff its Boolean projection "
          "preserves the total-join relations",
          "sampled", 5, _check_gamma_restriction)
_register("prop.semicontinuity-classes",
          "lower semicontinuous = real-valued and closed below; the "
          "reflection swaps the semicontinuity classes",
          "sampled", 5, _check_semicontinuity_classes)
_register("prop.meet-density",
          "over subfit frames the closed-scale generators reconstruct "
          "covering pairs by meets, exactly",
          "sampled", 5, _check_meet_density, samples=200)
_register("prop.regularization-laws",
          "lower regularization is a monotone idempotent interior-like "
          "operator into the closed-valued class",
          "sampled", 5, _check_regularization)
_register("prop.diagram-inclusions",
          "every inclusion of the function-class diagram holds; over "
          "Boolean sublocale frames the real-valued and continuous "
          "classes coincide",
          "sampled", 5, _check_diagram, samples=120)
_register("prop.spatial-conservativeness",
          "pointfree semicontinuity, order and real-valuedness agree with "
          "the point definitions on finite T0 spaces",
          "exhaustive", 3, _check_spatial)
_register("harness.determinism",
          "identical seeds yield identical reports",
          "exhaustive", 3, _check_determinism)
_register("harness.fault-injection",
          "corrupting any single table entry is detected by the law scan",
          "exhaustive", 5, _check_fault_injection)
_register("obs.cos-boolean",
          "observed: reversed-order sublocale frames of the finite corpus "
          "are Boolean",
          "observation", 6, _check_cos_boolean_observation)
_register("obs.f-vs-c-cos",
          "observed: no finite separation between real-valued Hausdorff "
          "pairs and continuous pairs over sublocale frames",
          "observation", 5, _check_f_vs_c_cos_observation)


def run_suite(specs=None, max_size: int | None = None,
              samples: int | None = None, seeds=None) -> VerificationReport:
    """Run checks and assemble the report.

    ``specs`` is None (everything), a list of check ids, or a list of
    :class:`CheckSpec`.  Global ``max_size``/``samples``/``seeds`` override
    the per-check defaults downward/upward uniformly.
    """
    if max_size is not None and (max_size < 1 or max_size > HARD_SIZE_LIMIT):
        raise LimitExceeded(f"size bound {max_size} outside 1..{HARD_SIZE_LIMIT}")
    seeds = tuple(seeds) if seeds else DEFAULT_SEEDS
    if specs is None:
        specs = sorted(CHECKS)
    resolved = []
    for s in specs:
        if isinstance(s, str):
            s = CheckSpec(id=s)
        if s.id not in CHECKS:
            raise UnknownCheck(s.id)
        if s.max_size is not None and s.max_size > HARD_SIZE_LIMIT:
            raise LimitExceeded(
                f"{s.id}: size bound {s.max_size} exceeds {HARD_SIZE_LIMIT}")
        resolved.append(s)

    ctx = SuiteContext(max_size or HARD_SIZE_LIMIT,
                       samples or DEFAULT_SAMPLES, seeds)
    checks_out = []
    for spec in resolved:
        cdef = CHECKS[spec.id]
        eff = CheckSpec(
            id=spec.id,
            max_size=min(spec.max_size or cdef.max_size,
                         max_size or cdef.max_size),
            samples=spec.samples or samples or cdef.samples,
            seeds=spec.seeds or seeds,
            mode=spec.mode or cdef.mode)
        t0 = time.perf_counter()
        out = cdef.fn(ctx, eff)
        out["stats"]["ms"] = round((time.perf_counter() - t0) * 1000, 3)
        checks_out.append({"id": cdef.id, "paper_anchor": cdef.anchor,
                           "mode": eff.mode, "max_size": eff.max_size,
                           **out})
    return VerificationReport({
        "version": REPORT_VERSION,
        "seeds": list(seeds),
        "max_size": max_size or HARD_SIZE_LIMIT,
        "samples": samples or DEFAULT_SAMPLES,
        "checks": checks_out,
    })


# ---------------------------------------------------------------------------
# replay


def _patched_frame(data) -> FiniteFrame:
    frame = serialize.frame_from_dict(data["frame"])
    patch = data.get("table_patch")
    if not patch:
        return frame
    mutant = FiniteFrame.__new__(FiniteFrame)
    _clone_frame_into(frame, mutant)
    tname = patch["table"]
    if tname == "pstar":
        tab = list(frame._pstar)
        tab[frame.index[patch["entry"][0]]] = frame.index[patch["value"]]
        mutant._pstar = tuple(tab)
    else:
        tab = [list(r) for r in getattr(frame, f"_{tname}")]
        i, j = (frame.index[e] for e in patch["entry"])
        tab[i][j] = frame.index[patch["value"]]
        setattr(mutant, f"_{tname}", tuple(tuple(r) for r in tab))
    return mutant


_REPLAY_PREDICATES = {
    "is_hausdorff": is_hausdorff,
    "is_real_valued": is_real_valued,
    "is_extended_continuous": is_extended_continuous,
    "is_lsc": is_lsc,
    "is_usc": is_usc,
    "is_lsc_extended": is_lsc_extended,
    "is_usc_extended": is_usc_extended,
    "preserves_r5_r6": preserves_r5_r6,
    "hausdorff-agreement": lambda f: is_hausdorff(f) == is_hausdorff_pairwise(f),
    "real-valued-equivalence": lambda f: is_real_valued(f) == is_real_valued_star(f),
}

_REPLAY_ROUNDTRIPS = {
    "phi-after-psi": lambda f, cod: phi(psi(f)) == f,
    "psi-after-phi": lambda f, cod: psi(phi(f)) == f,
    "delta-after-gamma": lambda f, cod: delta(gamma(f), cod) == f,
    "neg-involution": lambda f, cod: neg(neg(f)) == f,
    "regularization-idempotent":
        lambda f, cod: lower_regularization(lower_regularization(f))
        == lower_regularization(f),
}


def _replay_codomain(data):
    if "sublocale_frame" in data:
        return serialize.sublocale_frame_from_dict(data["sublocale_frame"])
    return serialize.frame_from_dict(data["frame"])


def replay(data) -> str:
    """Re-execute one instance; "pass" when the asserted fact holds now,
    "fail" when the recorded failure reproduces."""
    if isinstance(data, str):
        data = serialize.load_json(data)
    kind = data.get("kind")
    if kind == "frame-laws":
        frame = _patched_frame(data)
        return "pass" if frame_laws_violation(frame) is None else "fail"
    if kind == "predicate":
        cod = _replay_codomain(data)
        f = serialize.fn_from_dict(data["fn"], cod)
        pred = _REPLAY_PREDICATES.get(data["predicate"])
        if pred is None:
            raise SchemaError(f"unknown predicate {data['predicate']!r}")
        return "pass" if pred(f) == data["expected"] else "fail"
    if kind == "roundtrip":
        cod = _replay_codomain(data)
        f = serialize.fn_from_dict(data["fn"], cod)
        op = _REPLAY_ROUNDTRIPS.get(data["op"])
        if op is None:
            raise SchemaError(f"unknown roundtrip {data['op']!r}")
        return "pass" if op(f, cod) else "fail"
    if kind == "subfit-pair":
        frame = serialize.frame_from_dict(data["frame"])
        a, b = data["pair"]
        reproduced = not any(frame.join(a, c) == frame.top
                             and frame.join(b, c) != frame.top
                             for c in frame.elements)
        return "fail" if not reproduced else "pass"
    raise SchemaError(f"unknown counterexample kind {kind!r}")
