"""Bitmask machinery for finite order relations.

A relation on n elements is a list ``up`` of n ints where bit j of ``up[i]``
means i <= j.  Every row includes its own bit.  All higher layers (frames,
posets, enumeration) are built on these primitives.
"""

from __future__ import annotations

from itertools import permutations


def full_mask(n: int) -> int:
    return (1 << n) - 1


def bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def close_covers(n: int, cover_pairs):
    """Reflexive-transitive closure of a cover relation.

    ``cover_pairs`` holds (i, j) meaning i is covered by j.  Returns the
    ``up`` rows, or None when the cover graph has a cycle.
    """
    succ = [0] * n
    for i, j in cover_pairs:
        succ[i] |= 1 << j
    # Kahn ordering to detect cycles.
    indeg = [0] * n
    for i in range(n):
        for j in bits(succ[i]):
            indeg[j] += 1
    queue = [i for i in range(n) if indeg[i] == 0]
    topo = []
    while queue:
        i = queue.pop()
        topo.append(i)
        for j in bits(succ[i]):
            indeg[j] -= 1
            if indeg[j] == 0:
                queue.append(j)
    if len(topo) != n:
        return None
    up = [1 << i for i in range(n)]
    for i in reversed(topo):
        for j in bits(succ[i]):
            up[i] |= up[j]
    return up


def order_violation(n: int, up):
    """First partial-order axiom violated by ``up``, or None.

    Returns ("reflexivity", (i,)), ("antisymmetry", (i, j)) or
    ("transitivity", (i, j, k)).
    """
    for i in range(n):
        if not (up[i] >> i) & 1:
            return ("reflexivity", (i,))
    for i in range(n):
        for j in bits(up[i]):
            if j != i and (up[j] >> i) & 1:
                return ("antisymmetry", (i, j))
    for i in range(n):
        for j in bits(up[i]):
            if up[j] & ~up[i]:
                k = next(bits(up[j] & ~up[i]))
                return ("transitivity", (i, j, k))
    return None


def lowers_from_uppers(n: int, up):
    low = [0] * n
    for i in range(n):
        for j in bits(up[i]):
            low[j] |= 1 << i
    return low


def cover_pairs(n: int, up):
    """Covers (i, j) of the order: i < j with nothing strictly between."""
    out = []
    for i in range(n):
        strict = up[i] & ~(1 << i)
        for j in bits(strict):
            between = strict & lowers_mask_of(n, up, j) & ~(1 << j)
            if between == 0:
                out.append((i, j))
    return out


def lowers_mask_of(n: int, up, j: int) -> int:
    mask = 0
    for i in range(n):
        if (up[i] >> j) & 1:
            mask |= 1 << i
    return mask


def downset_masks(n: int, low):
    """All downset bitmasks of the order (``low`` rows include self)."""
    if n == 0:
        return [0]
    topo = sorted(range(n), key=lambda i: bin(low[i]).count("1"))
    out = []

    def rec(pos: int, acc: int):
        if pos == len(topo):
            out.append(acc)
            return
        i = topo[pos]
        rec(pos + 1, acc)
        if low[i] & ~acc == 1 << i:  # all strict lowers already in
            rec(pos + 1, acc | (1 << i))

    rec(0, 0)
    return out


def count_downsets(n: int, low, stop_above: int | None = None) -> int:
    """Number of downsets; bails out early once the count exceeds the bound."""
    topo = sorted(range(n), key=lambda i: bin(low[i]).count("1"))
    count = 0
    stack = [(0, 0)]
    while stack:
        pos, acc = stack.pop()
        if pos == len(topo):
            count += 1
            if stop_above is not None and count > stop_above:
                return count
            continue
        i = topo[pos]
        stack.append((pos + 1, acc))
        if low[i] & ~acc == 1 << i:
            stack.append((pos + 1, acc | (1 << i)))
    return count


def _refined_classes(n: int, up, low):
    """Stable partition of elements by an iterated order invariant.

    Classes come back sorted by invariant value, so the ordering is the same
    for isomorphic relations.
    """
    color = [(bin(up[i]).count("1"), bin(low[i]).count("1")) for i in range(n)]
    for _ in range(n):
        fresh = []
        for i in range(n):
            above = tuple(sorted(color[j] for j in bits(up[i] & ~(1 << i))))
            below = tuple(sorted(color[j] for j in bits(low[i] & ~(1 << i))))
            fresh.append((color[i], above, below))
        if len(set(fresh)) == len(set(color)):
            color = fresh
            break
        color = fresh
    classes: dict = {}
    for i in range(n):
        classes.setdefault(color[i], []).append(i)
    return [classes[c] for c in sorted(classes)]


def canonical_key(n: int, up) -> tuple:
    """Isomorphism-invariant canonical encoding of the relation.

    Minimal row tuple over all permutations that respect the refined
    invariant classes.  Exact (not a hash): equal keys iff isomorphic.
    """
    if n == 0:
        return (0,)
    low = lowers_from_uppers(n, up)
    classes = _refined_classes(n, up, low)

    best = None
    orders = [list(permutations(c)) for c in classes]

    def rec(ci: int, placed):
        nonlocal best
        if ci == len(orders):
            pos = {e: k for k, e in enumerate(placed)}
            rows = tuple(
                sum(1 << pos[j] for j in bits(up[e])) for e in placed
            )
            if best is None or rows < best:
                best = rows
            return
        for perm in orders[ci]:
            rec(ci + 1, placed + list(perm))

    rec(0, [])
    return (n,) + best


def extend_with_maximal(n: int, up, downset: int):
    """Add element n as a new maximal element strictly above ``downset``."""
    new_up = [up[i] | (1 << n) if (downset >> i) & 1 else up[i] for i in range(n)]
    new_up.append(1 << n)
    return new_up


def set_meet(n: int, up, low, mask: int) -> int | None:
    """Greatest lower bound of the elements in ``mask``, or None."""
    common = full_mask(n)
    for i in bits(mask):
        common &= low[i]
    if common == 0:
        return None
    for k in bits(common):
        if common & ~low[k] == 0:
            return k
    return None


def set_join(n: int, up, low, mask: int) -> int | None:
    """Least upper bound of the elements in ``mask``, or None."""
    common = full_mask(n)
    for i in bits(mask):
        common &= up[i]
    if common == 0:
        return None
    for k in bits(common):
        if common & ~up[k] == 0:
            return k
    return None
