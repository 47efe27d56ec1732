"""Points in time (TS) with calendar precision.

A timestamp is an exact number of seconds since 0001-01-01T00:00:00 UTC on
the proleptic Gregorian calendar, plus the precision it was written at
(``2008`` is year precision, ``200910011214`` minute precision) and an
optional timezone offset kept for printing.
"""
from __future__ import annotations

import datetime as _dt
import enum
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidDate, NotComparable, NullOperand, ParseError
from .logic import BL, null_result
from .nullflavor import NullFlavor, is_nullflavor_token, parse_nullflavor
from .numeric import Ordering, terminating_exponent
from .quantity import PQ, pq_convert
from .ucum import UnitRegistry, registry_or_default

DAY = 86400
MAX_FRACTION_DIGITS = 12

_TS = re.compile(
    r"(\d{4})(\d{2})?(\d{2})?(\d{2})?(\d{2})?(\d{2})?(?:\.(\d+))?([+-]\d{4})?"
)


class Precision(enum.IntEnum):
    YEAR = 0
    MONTH = 1
    DAY = 2
    HOUR = 3
    MINUTE = 4
    SECOND = 5
    FRACTION = 6


_FIXED_STEP = {
    Precision.DAY: DAY,
    Precision.HOUR: 3600,
    Precision.MINUTE: 60,
    Precision.SECOND: 1,
}


@dataclass(frozen=True)
class TS:
    offset: Fraction | None
    precision: Precision = Precision.SECOND
    digits: int = 0  # fractional-second digits, only at FRACTION precision
    tz: int | None = None  # minutes east of UTC
    nullflavor: NullFlavor | None = None

    def __post_init__(self):
        if self.nullflavor is None and self.offset is None:
            raise ValueError("non-null TS needs an offset")
        if (self.precision is Precision.FRACTION) != (self.digits > 0):
            raise ValueError("fraction digits go with FRACTION precision only")

    @property
    def is_null(self) -> bool:
        return self.nullflavor is not None

    def components(self) -> tuple[int, int, int, int, int, Fraction]:
        """Local calendar fields ``(year, month, day, hour, minute, seconds)``."""
        local = self.offset + (self.tz or 0) * 60
        days, rem = divmod(local, DAY)
        try:
            date = _dt.date.fromordinal(int(days) + 1)
        except (ValueError, OverflowError):
            raise InvalidDate(f"offset {self.offset} is outside years 1..9999") from None
        hour, rem = divmod(rem, 3600)
        minute, sec = divmod(rem, 60)
        return date.year, date.month, date.day, int(hour), int(minute), Fraction(sec)

    def __str__(self) -> str:
        return ts_print(self)


def ts_null(nf: NullFlavor) -> TS:
    return TS(None, nullflavor=nf)


def _offset(year, month, day, hour, minute, sec: Fraction, tz) -> Fraction:
    try:
        ordinal = _dt.date(year, month, day).toordinal()
    except ValueError as exc:
        raise InvalidDate(f"invalid date {year:04d}-{month:02d}-{day:02d}: {exc}") from None
    return Fraction((ordinal - 1) * DAY + hour * 3600 + minute * 60) + sec - (tz or 0) * 60


def ts_parse(literal: str) -> TS:
    text = literal.strip()
    if is_nullflavor_token(text):
        return ts_null(parse_nullflavor(text))
    m = _TS.fullmatch(text)
    if m is None:
        raise ParseError(f"invalid TS literal {literal!r}")
    year, month, day, hour, minute, second, frac, tz = m.groups()
    fields = [month, day, hour, minute, second]
    present = sum(f is not None for f in fields)
    precision = Precision(present)
    digits = 0
    if frac is not None:
        if second is None:
            raise ParseError(f"fractional seconds need seconds in {literal!r}")
        precision, digits = Precision.FRACTION, len(frac)
    tzmin = None
    if tz is not None:
        hh, mm = int(tz[1:3]), int(tz[3:5])
        if hh > 14 or mm > 59:
            raise InvalidDate(f"invalid timezone {tz!r}")
        tzmin = (hh * 60 + mm) * (-1 if tz[0] == "-" else 1)
    y = int(year)
    mo, d = int(month or 1), int(day or 1)
    h, mi, s = int(hour or 0), int(minute or 0), int(second or 0)
    if y < 1:
        raise InvalidDate(f"year 0000 is not on the calendar in {literal!r}")
    if not 1 <= mo <= 12:
        raise InvalidDate(f"invalid month {mo} in {literal!r}")
    if h > 23 or mi > 59 or s > 59:
        raise InvalidDate(f"invalid time of day in {literal!r}")
    sec = Fraction(s) + (Fraction(int(frac), 10 ** len(frac)) if frac else 0)
    return TS(_offset(y, mo, d, h, mi, sec, tzmin), precision, digits, tzmin)


def ts_print(t: TS) -> str:
    if t.nullflavor is not None:
        return t.nullflavor.value
    year, month, day, hour, minute, sec = t.components()
    whole = int(sec)
    parts = [f"{year:04d}", f"{month:02d}", f"{day:02d}", f"{hour:02d}", f"{minute:02d}", f"{whole:02d}"]
    out = "".join(parts[: min(t.precision, Precision.SECOND) + 1])
    if t.precision is Precision.FRACTION:
        frac = int((sec - whole) * 10 ** t.digits)
        out += "." + str(frac).rjust(t.digits, "0")
    if t.tz is not None:
        sign = "-" if t.tz < 0 else "+"
        hh, mm = divmod(abs(t.tz), 60)
        out += f"{sign}{hh:02d}{mm:02d}"
    return out


# calendar steps


def _start_of(t: TS, precision: Precision, digits: int = 0) -> Fraction:
    """Offset truncated to the given precision (in local time)."""
    year, month, day, hour, minute, sec = t.components()
    fields = [year, month, day, hour, minute]
    defaults = [year, 1, 1, 0, 0]
    keep = min(precision, Precision.MINUTE) + 1
    y, mo, d, h, mi = fields[:keep] + defaults[keep:]
    if precision >= Precision.SECOND:
        scale = 10 ** digits
        s = Fraction(int(sec * scale), scale)
    else:
        s = Fraction(0)
    return _offset(y, mo, d, h, mi, s, t.tz)


def is_aligned(t: TS, precision: Precision, digits: int = 0) -> bool:
    return _start_of(t, precision, digits) == t.offset


def next_unit(t: TS) -> TS:
    """The start of the next calendar unit at ``t``'s precision."""
    if t.precision in (Precision.YEAR, Precision.MONTH):
        year, month, *_ = t.components()
        if t.precision is Precision.YEAR:
            year += 1
        else:
            year, month = (year + 1, 1) if month == 12 else (year, month + 1)
        start = _offset(year, month, 1, 0, 0, Fraction(0), t.tz)
        return TS(start, t.precision, t.digits, t.tz)
    if t.precision is Precision.FRACTION:
        step = Fraction(1, 10 ** t.digits)
    else:
        step = Fraction(_FIXED_STEP[t.precision])
    return TS(_start_of(t, t.precision, t.digits) + step, t.precision, t.digits, t.tz)


def with_precision(t: TS, precision: Precision, digits: int = 0) -> TS:
    """Truncate or extend the precision of ``t``."""
    if precision is not Precision.FRACTION:
        digits = 0
    return TS(_start_of(t, precision, digits), precision, digits, t.tz)


def ts_truncate(t: TS, precision: Precision) -> TS:
    return with_precision(t, precision)


def _refine(offset: Fraction, t: TS) -> TS:
    """Keep ``t``'s precision if ``offset`` is expressible at it, else go finer."""
    candidate = TS(offset, t.precision, t.digits, t.tz)
    if is_aligned(candidate, t.precision, t.digits):
        return candidate
    for p in range(t.precision + 1, Precision.SECOND + 1):
        candidate = TS(offset, Precision(p), 0, t.tz)
        if is_aligned(candidate, Precision(p)):
            return candidate
    frac = offset - int(offset)
    digits = terminating_exponent(frac.denominator)
    if digits is None or digits > MAX_FRACTION_DIGITS:
        raise ValueError(f"offset {offset} has no finite decimal calendar expression")
    digits = max(digits, t.digits, 1)
    return TS(offset, Precision.FRACTION, digits, t.tz)


# arithmetic and comparison


def _seconds(d: PQ, reg: UnitRegistry | None) -> Fraction:
    reg = registry_or_default(reg)
    if d.is_null:
        raise NullOperand(f"cannot shift by nullflavored {d}")
    if reg.canonical(d.unit).dims != reg.canonical("s").dims:
        raise NotComparable(f"{d} is not a time quantity")
    return pq_convert(d, "s", reg).value


def ts_shift(t: TS, d: PQ, reg: UnitRegistry | None = None) -> TS:
    secs = _seconds(d, reg)
    if t.is_null:
        return t
    return _refine(t.offset + secs, t)


def ts_diff(a: TS, b: TS, reg: UnitRegistry | None = None) -> PQ:
    if a.is_null or b.is_null:
        raise NullOperand("difference of nullflavored timestamps")
    return PQ(a.offset - b.offset, registry_or_default(reg).parse("s"))


def ts_cmp(a: TS, b: TS) -> Ordering:
    if a.is_null or b.is_null:
        raise NullOperand("comparison of nullflavored timestamps")
    return Ordering.of(a.offset, b.offset)


def ts_equal(a: TS, b: TS) -> BL:
    nulls = [t.nullflavor for t in (a, b) if t.is_null]
    if nulls:
        return null_result(*nulls)
    return BL(a.offset == b.offset)


def ts_identical(a: TS, b: TS) -> BL:
    if NullFlavor.OTH in (a.nullflavor, b.nullflavor):
        return null_result(*(t.nullflavor for t in (a, b) if t.is_null))
    return BL(a == b)
