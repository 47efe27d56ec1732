"""Physical quantities (PQ): a rational value with a UCUM unit.

``equal`` compares canonical magnitudes, so ``1 m`` equals ``100 cm``;
``identical`` compares the value and unit terms as written.  Nullflavored
quantities may keep a unit (``trc ml``), and ``oth`` may keep a shadow value
that never takes part in comparisons.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import NotComparable, NullOperand, ParseError
from .logic import BL, FALSE, TRUE, null_result
from .nullflavor import NullFlavor, is_nullflavor_token, lca, parse_nullflavor
from .numeric import Ordering, decimal_parts, real_print, to_fraction
from .ucum import Canonical, UnitExpr, UnitRegistry, registry_or_default

_VALUE = re.compile(r"\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*(.*?)\s*")


@dataclass(frozen=True)
class PQ:
    value: Fraction | None
    unit: UnitExpr | None
    nullflavor: NullFlavor | None = None

    def __post_init__(self):
        if self.nullflavor is None and (self.value is None or self.unit is None):
            raise ValueError("non-null PQ needs a value and a unit")
        if self.nullflavor not in (None, NullFlavor.OTH) and self.value is not None:
            raise ValueError("only oth may carry a shadow value")

    @property
    def is_null(self) -> bool:
        return self.nullflavor is not None

    def canonical(self, reg: UnitRegistry | None = None) -> Canonical:
        if self.unit is None:
            raise NullOperand(f"{self} has no unit")
        return registry_or_default(reg).canonical(self.unit)

    def magnitude(self, reg: UnitRegistry | None = None) -> Fraction:
        """Value expressed in canonical base units."""
        if self.nullflavor is not None:
            raise NullOperand(f"{self} has no value")
        return self.value * self.canonical(reg).factor

    def __str__(self) -> str:
        return pq_print(self)


def pq(value: Union[str, int, Fraction], unit: str = "1", reg: UnitRegistry | None = None) -> PQ:
    if isinstance(value, str):
        m, e, _ = decimal_parts(value)
        value = to_fraction(m, e)
    return PQ(Fraction(value), registry_or_default(reg).parse(unit))


def pq_parse(literal: str, reg: UnitRegistry | None = None) -> PQ:
    """Parse ``<value> [ws] <unit>``, ``<nullflavor> [unit]`` or ``<value> <unit> oth``."""
    reg = registry_or_default(reg)
    text = literal.strip()
    if not text:
        raise ParseError("empty PQ literal")
    head, *rest = text.split(None, 1)
    if is_nullflavor_token(head):
        nf = parse_nullflavor(head)
        unit = reg.parse(rest[0]) if rest else None
        return PQ(None, unit, nf)
    parts = text.split()
    shadow_nf = None
    if len(parts) > 1 and is_nullflavor_token(parts[-1]):
        shadow_nf = parse_nullflavor(parts[-1])
        if shadow_nf is not NullFlavor.OTH:
            raise ParseError(f"only oth may follow a value, got {parts[-1]!r} in {literal!r}")
        text = text[: text.rfind(parts[-1])]
    m = _VALUE.fullmatch(text)
    if m is None:
        raise ParseError(f"invalid PQ literal {literal!r}")
    mant, exp, _ = decimal_parts(m.group(1))
    unit = reg.parse(m.group(2) or "1")
    return PQ(to_fraction(mant, exp), unit, shadow_nf)


def pq_print(p: PQ) -> str:
    unit = str(p.unit) if p.unit is not None else ""
    if p.nullflavor is not None:
        if p.value is not None:
            return f"{real_print(p.value)} {unit} {p.nullflavor}"
        return f"{p.nullflavor} {unit}".rstrip()
    if unit == "1":
        return real_print(p.value)
    return f"{real_print(p.value)} {unit}"


def as_pq(x: Union[PQ, str], reg: UnitRegistry | None = None) -> PQ:
    return x if isinstance(x, PQ) else pq_parse(x, reg)


def _nulls(*ps: PQ) -> list[NullFlavor]:
    return [p.nullflavor for p in ps if p.nullflavor is not None]


# equality


def pq_equal(a: PQ, b: PQ, reg: UnitRegistry | None = None) -> BL:
    reg = registry_or_default(reg)
    nulls = _nulls(a, b)
    if nulls:
        if NullFlavor.OTH in nulls:
            return null_result(*nulls)
        pa, pb = _position(a, reg), _position(b, reg)
        if pa is not None and pb is not None and pa != pb and _same_dims(a, b, reg):
            # ninf, pinf and trc sit at fixed positions, distinct from any value
            return FALSE
        return null_result(*nulls)
    if not _same_dims(a, b, reg):
        return FALSE
    return BL(a.magnitude(reg) == b.magnitude(reg))


def pq_identical(a: PQ, b: PQ, reg: UnitRegistry | None = None) -> BL:
    if NullFlavor.OTH in _nulls(a, b):
        return null_result(*_nulls(a, b))
    same_unit = (a.unit.terms if a.unit else None) == (b.unit.terms if b.unit else None)
    return BL(a.nullflavor == b.nullflavor and a.value == b.value and same_unit)


def _same_dims(a: PQ, b: PQ, reg: UnitRegistry) -> bool:
    if a.unit is None or b.unit is None:
        return False
    return reg.canonical(a.unit).dims == reg.canonical(b.unit).dims


# ordering

_POSITIONED = {
    NullFlavor.NINF: (0, Fraction(0), 0),
    NullFlavor.TRC: (1, Fraction(0), 1),
    NullFlavor.PINF: (2, Fraction(0), 0),
}


def _position(p: PQ, reg: UnitRegistry):
    """Place a PQ on its dimension's axis; None when the flavor has no position.

    Values sit at ``(1, magnitude, 0)``.  ``trc`` sits just above zero and
    below every positive magnitude.
    """
    if p.nullflavor is None:
        return (1, p.magnitude(reg), 0)
    return _POSITIONED.get(p.nullflavor)


def pq_compare(a: PQ, b: PQ, reg: UnitRegistry | None = None) -> Ordering | BL:
    """Ordering of two quantities, or a nullflavored BL when it is undetermined."""
    reg = registry_or_default(reg)
    nulls = _nulls(a, b)
    if NullFlavor.OTH in nulls:
        return null_result(*nulls)
    pa, pb = _position(a, reg), _position(b, reg)
    if pa is None or pb is None:
        return null_result(*nulls)
    if a.unit is None or b.unit is None or not _same_dims(a, b, reg):
        raise NotComparable(f"units of {a} and {b} do not compare")
    if a.nullflavor is not None and a.nullflavor == b.nullflavor:
        return null_result(*nulls)
    return Ordering.of(pa, pb)


def _relation(accept: set[Ordering]):
    def rel(a: PQ, b: PQ, reg: UnitRegistry | None = None) -> BL:
        r = pq_compare(a, b, reg)
        if isinstance(r, BL):
            return r
        return TRUE if r in accept else FALSE
    return rel


pq_lessthan = _relation({Ordering.LT})
pq_lessorequal = _relation({Ordering.LT, Ordering.EQ})
pq_greaterthan = _relation({Ordering.GT})
pq_greaterorequal = _relation({Ordering.GT, Ordering.EQ})


class Discipline(enum.Enum):
    EQUAL_OPS = "equal_ops"
    IDENTICAL_OPS = "identical_ops"


# slots within one dimension; anything past PINF is an unplaced flavor
SLOT_NINF, SLOT_FINITE, SLOT_PINF, SLOT_NULL, SLOT_OTH = range(5)


def sort_key(p: PQ, reg: UnitRegistry | None = None,
             discipline: Discipline = Discipline.EQUAL_OPS) -> tuple:
    """Total-order key used by indexes.

    Grouped by base dimensions (unitless nulls last), then ninf, finite
    values with trc just above zero, pinf, the remaining flavors by symbol,
    and oth last.
    """
    reg = registry_or_default(reg)
    dims = (0, reg.canonical(p.unit).dims) if p.unit is not None else (1, ())
    nf = p.nullflavor
    if nf is None:
        key = (dims, SLOT_FINITE, p.magnitude(reg), 0)
    elif nf in _POSITIONED:
        slot, mag, sub = _POSITIONED[nf]
        key = (dims, (SLOT_NINF, SLOT_FINITE, SLOT_PINF)[slot], mag, sub)
    elif nf is NullFlavor.OTH:
        key = (dims, SLOT_OTH, 0, 0)
    else:
        key = (dims, SLOT_NULL, 0, nf.value)
    if discipline is Discipline.IDENTICAL_OPS:
        unit = str(p.unit) if p.unit is not None else ""
        value = real_print(p.value) if p.value is not None else ""
        key += (unit, value)
    return key


def pq_order(a: PQ, b: PQ, discipline: Discipline | str = Discipline.EQUAL_OPS,
             reg: UnitRegistry | None = None) -> Ordering:
    discipline = Discipline(discipline)
    return Ordering.of(sort_key(a, reg, discipline), sort_key(b, reg, discipline))


# conversion and arithmetic


def pq_convert(p: PQ, target: Union[UnitExpr, str], reg: UnitRegistry | None = None) -> PQ:
    reg = registry_or_default(reg)
    if p.is_null:
        raise NullOperand(f"cannot convert nullflavored {p}")
    target = reg.parse(target) if isinstance(target, str) else target
    src, dst = reg.canonical(p.unit), reg.canonical(target)
    if src.dims != dst.dims:
        raise NotComparable(f"{p.unit} does not compare to {target}")
    return PQ(p.value * src.factor / dst.factor, target)


def pq_arith(op: str, a: PQ, b: PQ, reg: UnitRegistry | None = None) -> PQ:
    reg = registry_or_default(reg)
    if op not in ("plus", "minus"):
        raise ValueError(f"unknown operation {op!r}")
    if a.unit is not None and b.unit is not None and not _same_dims(a, b, reg):
        raise NotComparable(f"cannot {op} {a} and {b}")
    nulls = _nulls(a, b)
    if nulls:
        nf = nulls[0] if len(nulls) == 1 else lca(*nulls)
        return PQ(None, a.unit, nf)
    other = pq_convert(b, a.unit, reg).value
    value = a.value + other if op == "plus" else a.value - other
    return PQ(value, a.unit)


def pq_scale(a: PQ, k: Union[Fraction, int]) -> PQ:
    if a.is_null:
        return PQ(None, a.unit, a.nullflavor)
    return PQ(a.value * Fraction(k), a.unit)


def pq_sum(values, reg: UnitRegistry | None = None) -> PQ:
    values = list(values)
    if not values:
        raise ValueError("sum of no quantities")
    total = values[0]
    for v in values[1:]:
        total = pq_arith("plus", total, v, reg)
    return total


def pq_avg(values, reg: UnitRegistry | None = None) -> PQ:
    values = list(values)
    return pq_scale(pq_sum(values, reg), Fraction(1, len(values)))


# flavors


@dataclass(frozen=True)
class PQFlavor:
    name: str
    predicate: str

    @property
    def constraint(self) -> str:
        return f"{self.name}_compares_to_{self.predicate}"

    def check(self, p: PQ, reg: UnitRegistry | None = None) -> bool:
        return flavor_check(p, self, reg)

    def coerce(self, p: PQ, reg: UnitRegistry | None = None) -> PQ:
        if not self.check(p, reg):
            raise NotComparable(
                f'value for domain {self.name} violates check constraint "{self.constraint}"')
        return p


def flavor_check(p: PQ, f: PQFlavor, reg: UnitRegistry | None = None) -> bool:
    reg = registry_or_default(reg)
    if p.unit is None:
        # a unitless null leaves the constraint undetermined, which a CHECK admits
        return True
    return reg.canonical(p.unit).dims == reg.canonical(f.predicate).dims


PQ_TIME = PQFlavor("pq_time", "s")
