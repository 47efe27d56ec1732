"""Intervals over timestamps and physical quantities (IVL<TS>, IVL<PQ>).

Literal forms::

    interval     [a;b]  ]a;b]  [a;b[  ]a;b[
    comparator   <a  <=a  >a  >=a
    centerwidth  c [w]
    width        [w]
    center       c
    any          ?c?
    hull         a..b          (TS only)
    dash         a - b         (PQ only, same as [a;b])

Relations answer with a BL; an interval whose position is not known
(width, center or any form) yields ``unk``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .errors import BoundsReversed, HL7Error, NotComparable, ParseError
from .logic import BL, FALSE, TRUE, null_result
from .nullflavor import NullFlavor, is_nullflavor_token, parse_nullflavor
from .quantity import PQ, _position as _pq_position, pq_convert, pq_parse, pq_print
from .timestamp import (
    TS,
    Precision,
    is_aligned,
    next_unit,
    ts_null,
    ts_parse,
    ts_print,
    ts_shift,
    with_precision,
)
from .ucum import UnitRegistry, registry_or_default

Element = Union[TS, PQ]
UNK = BL(NullFlavor.UNK)
_INF = (NullFlavor.NINF, NullFlavor.PINF)


class Form(enum.Enum):
    INTERVAL = "interval"
    COMPARATOR = "comparator"
    CENTERWIDTH = "centerwidth"
    WIDTH = "width"
    CENTER = "center"
    ANY = "any"
    HULL = "hull"
    DASH = "dash"


class Kind(enum.Enum):
    TS = "ts"
    PQ = "pq"


@dataclass(frozen=True)
class IVL:
    kind: Kind
    low: Optional[Element] = None
    high: Optional[Element] = None
    low_closed: bool = True
    high_closed: bool = True
    width: Optional[PQ] = None
    center: Optional[Element] = None
    form: Form = Form.INTERVAL
    hull_ends: Optional[tuple[TS, TS]] = None
    nullflavor: Optional[NullFlavor] = None
    literal: str = field(default="", compare=False)

    @property
    def has_bounds(self) -> bool:
        return self.nullflavor is None and self.low is not None and self.high is not None

    def __str__(self) -> str:
        return ivl_print(self)


# elements


def _parse_element(text: str, kind: Kind, reg: UnitRegistry) -> Element:
    text = text.strip()
    if kind is Kind.TS:
        return ts_parse(text)
    return pq_parse(text, reg)


def _print_element(e: Element) -> str:
    return ts_print(e) if isinstance(e, TS) else pq_print(e)


def _infinite(kind: Kind, nf: NullFlavor, like: Optional[Element]) -> Element:
    if kind is Kind.TS:
        return ts_null(nf)
    return PQ(None, like.unit if like is not None else None, nf)


def _key(e: Element, reg: UnitRegistry):
    """Position of an element on its axis, or None if it has none."""
    if isinstance(e, TS):
        if e.nullflavor is None:
            return (1, e.offset, 0)
        if e.nullflavor is NullFlavor.NINF:
            return (0, 0, 0)
        if e.nullflavor is NullFlavor.PINF:
            return (2, 0, 0)
        return None
    return _pq_position(e, reg)


def _dims(e: Element, reg: UnitRegistry):
    if isinstance(e, PQ) and e.unit is not None:
        return reg.canonical(e.unit).dims
    return None


def _is_infinite(e: Element) -> bool:
    return e.nullflavor in _INF


# parsing


def ivl_parse(literal: str, kind: Union[Kind, str] = Kind.TS,
              reg: UnitRegistry | None = None) -> IVL:
    kind = Kind(kind)
    reg = registry_or_default(reg)
    text = literal.strip()
    if not text:
        raise ParseError("empty interval literal")
    ivl = _parse_form(text, kind, reg)
    return _replace(ivl, literal=literal)


def _parse_form(text: str, kind: Kind, reg: UnitRegistry) -> IVL:
    if is_nullflavor_token(text):
        return IVL(kind, nullflavor=parse_nullflavor(text))
    if len(text) >= 2 and text[0] == "?" and text[-1] == "?":
        return IVL(kind, center=_parse_element(text[1:-1], kind, reg), form=Form.ANY)
    if text[0] in "<>":
        return _comparator(text, kind, reg)
    if text[0] in "[]" and text[-1] in "[]":
        inner = text[1:-1]
        if ";" in inner:
            low, sep, high = inner.partition(";")
            if ";" in high:
                raise ParseError(f"too many ';' in {text!r}")
            return _bounded(
                _parse_element(low, kind, reg), _parse_element(high, kind, reg),
                text[0] == "[", text[-1] == "]", Form.INTERVAL, kind, reg)
        if text[0] == "[" and text[-1] == "]" and _matching_open(text) == 0:
            return IVL(kind, width=_width(inner, kind, reg), form=Form.WIDTH)
    if kind is Kind.TS and ".." in text:
        a, _, b = text.partition("..")
        return _hull(ts_parse(a), ts_parse(b), reg)
    if text.endswith("]"):
        cw = _try_centerwidth(text, kind, reg)
        if cw is not None:
            return cw
    try:
        return IVL(kind, center=_parse_element(text, kind, reg), form=Form.CENTER)
    except HL7Error:
        if kind is not Kind.PQ:
            raise
    dash = _try_dash(text, reg)
    if dash is None:
        raise ParseError(f"unrecognised interval literal {text!r}")
    return dash


def _matching_open(text: str) -> int:
    """Index of the '[' matching the final ']'."""
    depth = 0
    for i in range(len(text) - 1, -1, -1):
        if text[i] == "]":
            depth += 1
        elif text[i] == "[":
            depth -= 1
            if depth == 0:
                return i
    raise ParseError(f"unbalanced brackets in {text!r}")


def _width(text: str, kind: Kind, reg: UnitRegistry) -> PQ:
    w = pq_parse(text, reg)
    if w.is_null:
        raise ParseError(f"width must be a value, got {text!r}")
    if w.value < 0:
        raise ParseError(f"negative width {text!r}")
    if kind is Kind.TS and reg.canonical(w.unit).dims != reg.canonical("s").dims:
        raise NotComparable(f"width {w} of a TS interval must be a time")
    return w


def _comparator(text: str, kind: Kind, reg: UnitRegistry) -> IVL:
    op = text[:2] if text[:2] in ("<=", ">=") else text[0]
    value = _parse_element(text[len(op):], kind, reg)
    inclusive = op.endswith("=")
    if op.startswith("<"):
        low, high = _infinite(kind, NullFlavor.NINF, value), value
        return IVL(kind, low, high, False, inclusive, form=Form.COMPARATOR)
    low, high = value, _infinite(kind, NullFlavor.PINF, value)
    return IVL(kind, low, high, inclusive, False, form=Form.COMPARATOR)


def _try_centerwidth(text: str, kind: Kind, reg: UnitRegistry) -> Optional[IVL]:
    i = _matching_open(text)
    head, inner = text[:i].strip(), text[i + 1:-1]
    if not head:
        return None
    try:
        center = _parse_element(head, kind, reg)
        width = _width(inner, kind, reg)
    except HL7Error:
        return None
    if center.is_null:
        return None
    if kind is Kind.TS:
        half = PQ(width.value / 2, width.unit)
        low = ts_shift(center, PQ(-half.value, half.unit), reg)
        high = ts_shift(center, half, reg)
    else:
        if reg.canonical(width.unit).dims != reg.canonical(center.unit).dims:
            raise NotComparable(f"width {width} does not compare to center {center}")
        half = pq_convert(width, center.unit, reg).value / 2
        low = PQ(center.value - half, center.unit)
        high = PQ(center.value + half, center.unit)
    return IVL(kind, low, high, True, True, width=width, center=center, form=Form.CENTERWIDTH)


def _try_dash(text: str, reg: UnitRegistry) -> Optional[IVL]:
    for i in range(1, len(text)):
        if text[i] != "-":
            continue
        left, right = text[:i].strip(), text[i + 1:].strip()
        if not left or not right:
            continue
        try:
            low, high = pq_parse(left, reg), pq_parse(right, reg)
        except HL7Error:
            continue
        if low.is_null or high.is_null:
            continue
        return _bounded(low, high, True, True, Form.DASH, Kind.PQ, reg)
    return None


def _hull(a: TS, b: TS, reg: UnitRegistry) -> IVL:
    if a.is_null or b.is_null:
        raise ParseError("hull endpoints must be timestamps")
    low, high = promotion(a).low, promotion(b).high
    ivl = _bounded(low, high, True, False, Form.HULL, Kind.TS, reg)
    return _replace(ivl, hull_ends=(a, b))


def _bounded(low: Element, high: Element, low_closed: bool, high_closed: bool,
             form: Form, kind: Kind, reg: UnitRegistry) -> IVL:
    if kind is Kind.PQ:
        dl, dh = _dims(low, reg), _dims(high, reg)
        if dl is not None and dh is not None and dl != dh:
            raise NotComparable(f"interval bounds {low} and {high} do not compare")
    kl, kh = _key(low, reg), _key(high, reg)
    if kl is not None and kh is not None and kl > kh:
        raise BoundsReversed(f"low bound {_print_element(low)} above high bound {_print_element(high)}")
    return IVL(kind, low, high, low_closed, high_closed, form=form)


def _replace(ivl: IVL, **changes) -> IVL:
    from dataclasses import replace
    return replace(ivl, **changes)


# printing


def ivl_print(i: IVL) -> str:
    if i.nullflavor is not None:
        return i.nullflavor.value
    if i.form is Form.COMPARATOR:
        if _is_infinite(i.low):
            return ("<=" if i.high_closed else "<") + _print_element(i.high)
        return (">=" if i.low_closed else ">") + _print_element(i.low)
    if i.form is Form.CENTERWIDTH:
        return f"{_print_element(i.center)} [{pq_print(i.width)}]"
    if i.form is Form.WIDTH:
        return f"[{pq_print(i.width)}]"
    if i.form is Form.CENTER:
        return _print_element(i.center)
    if i.form is Form.ANY:
        return f"?{_print_element(i.center)}?"
    if i.form is Form.HULL:
        a, b = i.hull_ends
        return f"{ts_print(a)}..{ts_print(b)}"
    return "{}{};{}{}".format(
        "[" if i.low_closed else "]", _print_element(i.low),
        _print_element(i.high), "]" if i.high_closed else "[")


# promotion and demotion


def _promotion_bound_precision(t: TS) -> tuple[Precision, int]:
    # calendar-unit widths keep their own precision; finer ones print to the second
    if t.precision in (Precision.YEAR, Precision.MONTH):
        return t.precision, 0
    if t.precision is Precision.FRACTION:
        return t.precision, t.digits
    return Precision.SECOND, 0


def promotion(t: TS) -> IVL:
    if t.is_null:
        return IVL(Kind.TS, nullflavor=t.nullflavor)
    start = with_precision(t, t.precision, t.digits)
    end = next_unit(start)
    p, digits = _promotion_bound_precision(t)
    low = with_precision(start, p, digits)
    high = with_precision(end, p, digits)
    ivl = IVL(Kind.TS, low, high, True, False, form=Form.INTERVAL)
    return _replace(ivl, literal=ivl_print(ivl))


_DEMOTION_CANDIDATES = [Precision.YEAR, Precision.MONTH, Precision.DAY,
                        Precision.HOUR, Precision.MINUTE, Precision.SECOND]


def demotion(i: IVL) -> TS:
    """The timestamp whose promotion is ``i``; ``inv`` when there is none."""
    invalid = ts_null(NullFlavor.INV)
    if i.kind is not Kind.TS or not i.has_bounds:
        return invalid
    low, high = i.low, i.high
    if low.is_null or high.is_null or not i.low_closed or i.high_closed:
        return invalid
    width = high.offset - low.offset
    candidates = [(p, 0) for p in _DEMOTION_CANDIDATES]
    if width < 1:
        from .numeric import terminating_exponent
        k = terminating_exponent(width.denominator)
        if k is not None and width == Fraction(1, 10 ** k):
            candidates.append((Precision.FRACTION, k))
    for p, digits in candidates:
        t = TS(low.offset, p, digits, low.tz)
        if is_aligned(t, p, digits) and next_unit(t).offset == high.offset:
            return t
    return invalid


# relations


def _bounds(i: IVL, reg: UnitRegistry):
    kl, kh = _key(i.low, reg), _key(i.high, reg)
    if kl is None or kh is None:
        return None
    lc = i.low_closed and not _is_infinite(i.low)
    hc = i.high_closed and not _is_infinite(i.high)
    return kl, lc, kh, hc


def _is_empty(b) -> bool:
    kl, lc, kh, hc = b
    return kl > kh or (kl == kh and not (lc and hc))


def _as_interval(x: Union[IVL, Element], kind: Kind) -> IVL:
    if isinstance(x, IVL):
        return x
    if x.is_null and x.nullflavor not in _INF and x.nullflavor is not NullFlavor.TRC:
        return IVL(kind, nullflavor=x.nullflavor)
    return IVL(kind, x, x, True, True)


def _check_comparable(a: IVL, b: IVL, reg: UnitRegistry) -> None:
    if a.kind is not b.kind:
        raise NotComparable(f"cannot relate IVL<{a.kind.value}> and IVL<{b.kind.value}>")
    if a.kind is Kind.PQ:
        dims = {_dims(e, reg) for e in (a.low, a.high, b.low, b.high) if e is not None}
        dims.discard(None)
        if len(dims) > 1:
            raise NotComparable(f"units of {a} and {b} do not compare")


def _prepare(a: IVL, b: Union[IVL, Element], reg: UnitRegistry):
    b = _as_interval(b, a.kind)
    nulls = [x.nullflavor for x in (a, b) if x.nullflavor is not None]
    if nulls:
        return null_result(*nulls), None, None
    _check_comparable(a, b, reg)
    if not (a.has_bounds and b.has_bounds):
        return UNK, None, None
    ba, bb = _bounds(a, reg), _bounds(b, reg)
    if ba is None or bb is None:
        return UNK, None, None
    return None, ba, bb


def _low_covers(k1, c1, k2, c2) -> bool:
    return k1 < k2 or (k1 == k2 and (c1 or not c2))


def _high_covers(k1, c1, k2, c2) -> bool:
    return k1 > k2 or (k1 == k2 and (c1 or not c2))


def ivl_contains(a: IVL, b: Union[IVL, Element], reg: UnitRegistry | None = None) -> BL:
    reg = registry_or_default(reg)
    early, ba, bb = _prepare(a, b, reg)
    if early is not None:
        return early
    if _is_empty(bb):
        return TRUE
    if _is_empty(ba):
        return FALSE
    return BL(_low_covers(ba[0], ba[1], bb[0], bb[1]) and _high_covers(ba[2], ba[3], bb[2], bb[3]))


def ivl_overlaps(a: IVL, b: Union[IVL, Element], reg: UnitRegistry | None = None) -> BL:
    reg = registry_or_default(reg)
    early, ba, bb = _prepare(a, b, reg)
    if early is not None:
        return early
    if _is_empty(ba) or _is_empty(bb):
        return FALSE
    if ba[0] != bb[0]:
        lo = max((ba[0], ba[1]), (bb[0], bb[1]), key=lambda x: x[0])
    else:
        lo = (ba[0], ba[1] and bb[1])
    if ba[2] != bb[2]:
        hi = min((ba[2], ba[3]), (bb[2], bb[3]), key=lambda x: x[0])
    else:
        hi = (ba[2], ba[3] and bb[3])
    return BL(not _is_empty((lo[0], lo[1], hi[0], hi[1])))


def ivl_relate(rel: str, a: IVL, b: Union[IVL, Element], reg: UnitRegistry | None = None) -> BL:
    if rel == "contains":
        return ivl_contains(a, b, reg)
    if rel == "overlaps":
        return ivl_overlaps(a, b, reg)
    raise ValueError(f"unknown interval relation {rel!r}")


def ivl_equal(a: IVL, b: IVL, reg: UnitRegistry | None = None) -> BL:
    reg = registry_or_default(reg)
    early, ba, bb = _prepare(a, b, reg)
    if early is not None:
        return early
    return BL(ba == bb)


def ivl_identical(a: IVL, b: IVL, reg: UnitRegistry | None = None) -> BL:
    eq = ivl_equal(a, b, reg)
    if eq.is_null or eq.state is False:
        return eq
    return BL(a.literal == b.literal)
