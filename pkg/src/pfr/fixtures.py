"""Small named frames and spaces used by tests, docs and the harness."""

from __future__ import annotations

from itertools import combinations

from .frames import FiniteFrame, validate_frame
from .spatial import FiniteSpace


def c3() -> FiniteFrame:
    """The three-element chain 0 < a < 1."""
    return validate_frame(["0", "a", "1"], covers=[("0", "a"), ("a", "1")],
                          name="C3")


def d4() -> FiniteFrame:
    """The four-element Boolean frame with atoms u, w."""
    return validate_frame(["0", "u", "w", "1"],
                          covers=[("0", "u"), ("0", "w"), ("u", "1"), ("w", "1")],
                          name="D4")


def w5() -> FiniteFrame:
    """Opens of the three-point space with opens {}, {p}, {q}, {p,q}, X:
    0 < x,y < m < 1 with x /\\ y = 0."""
    return validate_frame(
        ["0", "x", "y", "m", "1"],
        covers=[("0", "x"), ("0", "y"), ("x", "m"), ("y", "m"), ("m", "1")],
        name="W5")


def chain(n: int) -> FiniteFrame:
    els = [f"c{i}" for i in range(n)]
    return validate_frame(els, covers=list(zip(els, els[1:])), name=f"C{n}")


def boolean_cube() -> FiniteFrame:
    """The eight-element Boolean frame of subsets of {p, q, r}."""
    pts = ["p", "q", "r"]
    subs = [frozenset(c) for k in range(4) for c in combinations(pts, k)]
    name = lambda s: "{" + ",".join(p for p in pts if p in s) + "}"
    rel = [(name(a), name(b)) for a in subs for b in subs if a <= b]
    return validate_frame([name(s) for s in subs], relation=rel, name="B8")


def m3_spec():
    """Element/cover data of the non-distributive diamond (three atoms)."""
    els = ["0", "a", "b", "c", "1"]
    covers = [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")]
    return els, covers


def sierpinski() -> FiniteSpace:
    return FiniteSpace(["p", "q"],
                       [frozenset(), frozenset(["p"]), frozenset(["p", "q"])],
                       name="Sierpinski")


def w5_space() -> FiniteSpace:
    return FiniteSpace(
        ["p", "q", "r"],
        [frozenset(), frozenset(["p"]), frozenset(["q"]), frozenset(["p", "q"]),
         frozenset(["p", "q", "r"])],
        name="W5S")


def discrete_space(n: int) -> FiniteSpace:
    pts = [f"p{i}" for i in range(n)]
    opens = [frozenset(c) for k in range(n + 1) for c in combinations(pts, k)]
    return FiniteSpace(pts, opens, name=f"Disc{n}")


def point_space() -> FiniteSpace:
    return FiniteSpace(["p"], [frozenset(), frozenset(["p"])], name="Pt")


def indiscrete2_spec():
    return ["p", "q"], [frozenset(), frozenset(["p", "q"])]
