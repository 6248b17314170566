"""JSON round trips for every on-disk format.

Rationals travel as exact fraction strings; nothing here touches floating
point except the infinity tokens of point functions.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import SchemaError, UnknownElement
from .frames import FiniteFrame, validate_frame
from .realfn import ExtPartialRealFn, make_fn
from .spatial import MINUS_INF, PLUS_INF, FiniteSpace, PointFn
from .sublocales import Sublocale, SublocaleFrame


def frac_to_str(q) -> str:
    return str(Fraction(q))


def str_to_frac(s) -> Fraction:
    try:
        return Fraction(str(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad rational {s!r}: {exc}") from None


def ext_to_str(v) -> str:
    if v == PLUS_INF:
        return "inf"
    if v == MINUS_INF:
        return "-inf"
    return frac_to_str(v)


def str_to_ext(s):
    if s == "inf":
        return PLUS_INF
    if s == "-inf":
        return MINUS_INF
    return str_to_frac(s)


# frames ---------------------------------------------------------------------


def frame_to_dict(frame: FiniteFrame) -> dict:
    return {"name": frame.name, "elements": list(frame.elements),
            "covers": [list(c) for c in frame.covers()]}


def frame_from_dict(d: dict) -> FiniteFrame:
    try:
        return validate_frame(d["elements"], covers=[tuple(c) for c in d["covers"]],
                              name=d.get("name", ""))
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"bad frame payload: {exc}") from None


def rejection_to_dict(err) -> dict:
    return {"error": err.as_json()}


# sublocales -------------------------------------------------------------------


def sublocale_to_dict(s: Sublocale) -> dict:
    return {"frame": s.parent.name,
            "carrier": [e for e in s.parent.elements if e in s.carrier]}


def sublocale_from_dict(d: dict, parent: FiniteFrame) -> Sublocale:
    if d.get("frame") not in (None, parent.name):
        raise SchemaError(f"sublocale belongs to {d.get('frame')!r}, got {parent.name!r}")
    return Sublocale(parent, d["carrier"])


def sublocale_frame_to_dict(sf: SublocaleFrame) -> dict:
    out = {"frame": frame_to_dict(sf.frame),
           "parent": frame_to_dict(sf.parent),
           "carriers": {i: [e for e in sf.parent.elements if e in c]
                        for i, c in sf.carriers.items()},
           "tags": {"closed": dict(sf.closed_tag), "open": dict(sf.open_tag),
                    "induced": ({i: sorted(pts) for i, pts in sf.induced_tag.items()}
                                if sf.induced_tag else {})}}
    return out


def sublocale_frame_from_dict(d: dict) -> SublocaleFrame:
    try:
        parent = frame_from_dict(d["parent"])
        frame = frame_from_dict(d["frame"])
        carriers = {i: frozenset(c) for i, c in d["carriers"].items()}
        tags = d["tags"]
        induced = {i: frozenset(p) for i, p in tags.get("induced", {}).items()} or None
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"bad sublocale-frame payload: {exc}") from None
    return SublocaleFrame(parent, frame, carriers, tags["closed"], tags["open"],
                          induced_tag=induced)


# trail pairs -------------------------------------------------------------------


def fn_to_dict(f: ExtPartialRealFn) -> dict:
    return {"frame": f.codomain.name,
            "lower": {"breakpoints": [frac_to_str(b) for b in f.lower.breakpoints],
                      "values": list(f.lower.values)},
            "upper": {"breakpoints": [frac_to_str(b) for b in f.upper.breakpoints],
                      "values": list(f.upper.values)}}


def fn_from_dict(d: dict, codomain) -> ExtPartialRealFn:
    try:
        lo, up = d["lower"], d["upper"]
        f = make_fn(codomain,
                    [str_to_frac(b) for b in lo["breakpoints"]], lo["values"],
                    [str_to_frac(b) for b in up["breakpoints"]], up["values"])
    except UnknownElement as exc:
        raise SchemaError(str(exc)) from None
    except (KeyError, TypeError, AssertionError, ValueError) as exc:
        raise SchemaError(f"bad function payload: {exc}") from None
    if d.get("frame") not in (None, codomain.name):
        raise SchemaError(
            f"function over {d.get('frame')!r}, codomain is {codomain.name!r}")
    return f


# spaces --------------------------------------------------------------------------


def space_to_dict(space: FiniteSpace) -> dict:
    return {"name": space.name, "points": list(space.points),
            "opens": sorted([sorted(u) for u in space.opens], key=lambda u: (len(u), u))}


def space_from_dict(d: dict) -> FiniteSpace:
    try:
        return FiniteSpace(d["points"], [frozenset(u) for u in d["opens"]],
                           name=d.get("name", ""))
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"bad space payload: {exc}") from None


def point_fn_to_dict(phi: PointFn) -> dict:
    return {"space": phi.space.name,
            "values": {p: ext_to_str(v) for p, v in phi.values.items()}}


def point_fn_from_dict(d: dict, space: FiniteSpace) -> PointFn:
    try:
        return PointFn(space, {p: str_to_ext(v) for p, v in d["values"].items()})
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"bad point-function payload: {exc}") from None


# files ----------------------------------------------------------------------------


def load_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from None


def dump_json(obj, path: str | None = None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return text


def load_codomain(path: str):
    """A frame file or a sublocale-frame export, depending on the payload."""
    d = load_json(path)
    if "carriers" in d:
        return sublocale_frame_from_dict(d)
    return frame_from_dict(d)
