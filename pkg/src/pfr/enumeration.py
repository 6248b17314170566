"""Exhaustive enumeration of finite posets, lattices and frames up to isomorphism.

Two independent routes produce the frame corpus:

* the duality route builds down-set lattices of incrementally generated
  posets of join-irreducibles, pruning posets whose down-set count already
  exceeds the size bound;
* the brute route grows meet-semilattices one maximal element at a time
  (every lattice is a meet-semilattice plus a top) and keeps the lattices
  that survive the distributivity check of the validator.

The verification harness demands that both routes agree size by size.
"""

from __future__ import annotations

from . import order
from .errors import LimitExceeded, NotDistributive
from .frames import FiniteFrame, validate_frame

HARD_SIZE_LIMIT = 8


def posets_up_to(max_n: int, prune=None):
    """One ``up``-row list per isomorphism class of posets with <= max_n elements.

    ``prune(n, up, low)`` may drop a poset and thereby its extensions.
    Returned as a dict size -> list of up-rows, deterministic order.
    """
    levels: dict[int, list] = {0: [[]]}
    seen = {order.canonical_key(0, [])}
    for n in range(0, max_n):
        nxt = []
        for up in levels.get(n, []):
            low = order.lowers_from_uppers(n, up)
            for dset in order.downset_masks(n, low):
                cand = order.extend_with_maximal(n, up, dset)
                cand_low = order.lowers_from_uppers(n + 1, cand)
                if prune is not None and prune(n + 1, cand, cand_low):
                    continue
                key = order.canonical_key(n + 1, cand)
                if key not in seen:
                    seen.add(key)
                    nxt.append(cand)
        levels[n + 1] = nxt
    return levels


def _frame_from_downsets(masks, name: str) -> FiniteFrame:
    masks = sorted(masks, key=lambda m: (bin(m).count("1"), m))
    names = [f"e{i}" for i in range(len(masks))]
    rel = [(names[i], names[j])
           for i in range(len(masks)) for j in range(len(masks))
           if masks[i] & ~masks[j] == 0]
    return validate_frame(names, relation=rel, name=name)


def enumerate_frames(max_size: int, hard_limit: int = HARD_SIZE_LIMIT):
    """One representative per isomorphism class of frames with <= max_size elements.

    Frames are produced as down-set lattices of posets of join-irreducibles
    and deduplicated by canonical form.  Deterministic order: by size, then
    canonical key.
    """
    if max_size < 1 or max_size > hard_limit:
        raise LimitExceeded(f"max_size {max_size} outside 1..{hard_limit}")

    def prune(n, up, low):
        return order.count_downsets(n, low, stop_above=max_size) > max_size

    produced = []
    levels = posets_up_to(max_size - 1 if max_size > 1 else 0, prune=prune)
    for n, ups in levels.items():
        for up in ups:
            low = order.lowers_from_uppers(n, up)
            masks = order.downset_masks(n, low)
            if len(masks) > max_size:
                continue
            produced.append(masks)

    frames = []
    seen = set()
    for masks in produced:
        frame = _frame_from_downsets(masks, name="")
        key = frame.canonical_key()
        assert key not in seen, "duality route produced an isomorphic duplicate"
        seen.add(key)
        frames.append((len(masks), key, frame))
    frames.sort(key=lambda t: (t[0], t[1]))
    out = []
    counters: dict[int, int] = {}
    for size, _key, frame in frames:
        counters[size] = counters.get(size, 0) + 1
        named = validate_frame(frame.elements, relation=_rel_of(frame),
                               name=f"L{size}.{counters[size]}")
        out.append(named)
    return out


def _rel_of(frame: FiniteFrame):
    return [(a, b) for a in frame.elements for b in frame.elements
            if frame.leq(a, b)]


def _valid_extension_downsets(n, up, low):
    """Downsets D such that a new maximal element above D keeps meets total:
    every D ∩ ↓y needs a greatest element."""
    out = []
    for dset in order.downset_masks(n, low):
        ok = True
        for y in range(n):
            m = dset & low[y]
            if m == 0:
                ok = False
                break
            if not any(m & ~low[d] == 0 for d in order.bits(m)):
                ok = False
                break
        if ok:
            out.append(dset)
    return out


def enumerate_lattice_relations(max_size: int):
    """All lattices with <= max_size elements, up to isomorphism.

    Grows meet-semilattices (any finite lattice minus its top) by adding
    maximal elements whose meets with existing elements stay defined, then
    caps each with a fresh top.  Returns dict size -> list of up-rows.
    """
    semis: dict[int, list] = {0: [[]]}
    seen = {order.canonical_key(0, [])}
    for n in range(0, max_size - 1):
        nxt = []
        for up in semis.get(n, []):
            low = order.lowers_from_uppers(n, up)
            if n == 0:
                candidates = [0]
            else:
                candidates = _valid_extension_downsets(n, up, low)
            for dset in candidates:
                cand = order.extend_with_maximal(n, up, dset)
                key = order.canonical_key(n + 1, cand)
                if key not in seen:
                    seen.add(key)
                    nxt.append(cand)
        semis[n + 1] = nxt

    lattices: dict[int, list] = {}
    for n, ups in semis.items():
        for up in ups:
            capped = order.extend_with_maximal(
                n, up, order.full_mask(n))
            lattices.setdefault(n + 1, []).append(capped)
    return lattices


def enumerate_frames_brute(max_size: int):
    """Distributive-lattice canonical keys per size, by direct lattice search.

    Independent oracle for :func:`enumerate_frames`: enumerate all lattices,
    run the law validator, keep the survivors' canonical keys.
    """
    keys: dict[int, set] = {}
    for size, ups in enumerate_lattice_relations(max_size).items():
        bucket = keys.setdefault(size, set())
        for up in ups:
            names = [f"e{i}" for i in range(size)]
            rel = [(names[i], names[j]) for i in range(size)
                   for j in order.bits(up[i])]
            try:
                frame = validate_frame(names, relation=rel, name="")
            except NotDistributive:
                continue
            bucket.add(frame.canonical_key())
    return keys


def frame_keys_by_size(frames):
    keys: dict[int, set] = {}
    for frame in frames:
        keys.setdefault(frame.size, set()).add(frame.canonical_key())
    return keys
