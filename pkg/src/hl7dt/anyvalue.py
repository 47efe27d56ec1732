"""ANY: a tagged container for every implemented data type.

The tags form the type hierarchy::

    ANY ── BL ── BN
        ├─ QTY ── REAL, PQ, TS
        ├─ IVL
        ├─ CD ── CV ── CS
        └─ II ── IN

Widening a value to an ancestor tag always works.  Narrowing (BL to BN,
II to IN, CV to CS, or a bare nullflavor to a concrete type) works only when
the value satisfies the narrower type.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any

from .errors import CastError, HL7Error
from .identity import IN, II, ii_parse
from .interval import IVL, Kind, ivl_parse
from .logic import BL, BN, bl_parse, bn_parse
from .nullflavor import NullFlavor, parse_nullflavor
from .numeric import Real, real_parse
from .quantity import PQ, pq_parse
from .terminology import CV, cv_parse
from .timestamp import TS, ts_null, ts_parse


class TypeTag(enum.Enum):
    ANY = "ANY"
    BL = "BL"
    BN = "BN"
    QTY = "QTY"
    REAL = "REAL"
    PQ = "PQ"
    TS = "TS"
    IVL = "IVL"
    CD = "CD"
    CV = "CV"
    CS = "CS"
    II = "II"
    IN = "IN"

    @property
    def parent(self) -> TypeTag | None:
        return _PARENT[self]

    def ancestors(self) -> list[TypeTag]:
        out, t = [], self
        while t is not None:
            out.append(t)
            t = t.parent
        return out


_PARENT = {
    TypeTag.ANY: None,
    TypeTag.BL: TypeTag.ANY,
    TypeTag.BN: TypeTag.BL,
    TypeTag.QTY: TypeTag.ANY,
    TypeTag.REAL: TypeTag.QTY,
    TypeTag.PQ: TypeTag.QTY,
    TypeTag.TS: TypeTag.QTY,
    TypeTag.IVL: TypeTag.ANY,
    TypeTag.CD: TypeTag.ANY,
    TypeTag.CV: TypeTag.CD,
    TypeTag.CS: TypeTag.CV,
    TypeTag.II: TypeTag.ANY,
    TypeTag.IN: TypeTag.II,
}

# most specific first, since IN subclasses II
_KINDS = [
    (BN, TypeTag.BN), (BL, TypeTag.BL), (Real, TypeTag.REAL), (PQ, TypeTag.PQ),
    (TS, TypeTag.TS), (IVL, TypeTag.IVL), (CV, TypeTag.CV), (IN, TypeTag.IN),
    (II, TypeTag.II), (NullFlavor, TypeTag.ANY),
]


def tag_of(value: Any) -> TypeTag:
    for cls, tag in _KINDS:
        if isinstance(value, cls):
            return tag
    raise CastError(f"{type(value).__name__} is not an HL7 data type")


@dataclass(frozen=True)
class AnyValue:
    tag: TypeTag
    payload: Any

    def __post_init__(self):
        actual = tag_of(self.payload)
        if self.tag is not actual and not (self.tag is TypeTag.CS and actual is TypeTag.CV):
            raise CastError(f"payload of kind {actual.value} cannot carry tag {self.tag.value}")

    def __str__(self) -> str:
        return value_print(self.payload)


def upcast(value: Any) -> AnyValue:
    if isinstance(value, AnyValue):
        return value
    return AnyValue(tag_of(value), value)


def _is_null(v: Any) -> bool:
    return isinstance(v, NullFlavor) or getattr(v, "is_null", False)


def _null_of(tag: TypeTag, nf: NullFlavor):
    makers = {
        TypeTag.BL: lambda: BL(nf),
        TypeTag.REAL: lambda: Real(nf),
        TypeTag.PQ: lambda: PQ(None, None, nf),
        TypeTag.TS: lambda: ts_null(nf),
        TypeTag.IVL: lambda: IVL(Kind.TS, nullflavor=nf),
        TypeTag.CD: lambda: CV(nullflavor=nf),
        TypeTag.CV: lambda: CV(nullflavor=nf),
        TypeTag.II: lambda: II(nullflavor=nf),
    }
    if tag not in makers:
        raise CastError(f"nullflavor {nf.value} has no {tag.value} form")
    try:
        return makers[tag]()
    except (HL7Error, ValueError) as exc:
        raise CastError(str(exc)) from None


def downcast(a: AnyValue, target: TypeTag | str) -> Any:
    target = TypeTag(target.upper()) if isinstance(target, str) else target
    v = a.payload
    if target is a.tag:
        return v
    if target in a.tag.ancestors():
        if target is TypeTag.BL:
            return v.to_bl()
        if target is TypeTag.II:
            return II(v.root, v.extension)
        return v
    # narrowing
    if a.tag is TypeTag.ANY:
        return _null_of(target, v)
    if _is_null(v):
        raise CastError(f"nullflavored {a.tag.value} cannot narrow to {target.value}")
    if a.tag is TypeTag.BL and target is TypeTag.BN:
        return BN(v.state)
    if a.tag is TypeTag.II and target is TypeTag.IN:
        return IN(v.root, v.extension)
    if a.tag in (TypeTag.CD, TypeTag.CV) and target is TypeTag.CS and v.valueset:
        return v
    raise CastError(f"cannot cast {a.tag.value} to {target.value}")


# generic literals, used by the command line

PARSERS = {
    "nullflavor": parse_nullflavor,
    "bl": bl_parse,
    "bn": bn_parse,
    "real": real_parse,
    "pq": lambda s, **kw: pq_parse(s, kw.get("units")),
    "ts": ts_parse,
    "ivl_ts": lambda s, **kw: ivl_parse(s, Kind.TS, kw.get("units")),
    "ivl_pq": lambda s, **kw: ivl_parse(s, Kind.PQ, kw.get("units")),
    "cv": lambda s, **kw: cv_parse(s, kw.get("domain"), kw.get("terminology")),
    "ii": ii_parse,
    "in": lambda s, **kw: ii_parse(s, nonnull=True),
}


def value_parse(type_name: str, literal: str, **context) -> Any:
    try:
        parser = PARSERS[type_name.lower()]
    except KeyError:
        raise ValueError(f"unknown type {type_name!r}") from None
    if parser in (parse_nullflavor, bl_parse, bn_parse, real_parse, ts_parse, ii_parse):
        return parser(literal)
    return parser(literal, **context)


def value_print(v: Any) -> str:
    if isinstance(v, NullFlavor):
        return v.value
    if isinstance(v, AnyValue):
        return value_print(v.payload)
    return str(v)
