import pytest
from hypothesis import given
from hypothesis import strategies as st

from hl7dt.anyvalue import AnyValue, TypeTag, downcast, tag_of, upcast, value_parse, value_print
from hl7dt.errors import CastError, NullNotAllowed
from hl7dt.logic import BL, BN
from hl7dt.nullflavor import NullFlavor
from hl7dt.identity import IN, II
from hl7dt.terminology import CV
from strategies import cv_literals, ii_literals, ivl_pq_literals, pq_literals, ts_literals

SAMPLES = [
    ("bl", "true", TypeTag.BL),
    ("bn", "false", TypeTag.BN),
    ("real", "3.14", TypeTag.REAL),
    ("pq", "10 ml", TypeTag.PQ),
    ("ts", "200910011214", TypeTag.TS),
    ("ivl_ts", "[2008;2009[", TypeTag.IVL),
    ("ivl_pq", "[1 m;2 m]", TypeTag.IVL),
    ("cv", "active:2.16.840.1.113883.5.14", TypeTag.CV),
    ("ii", "1.2.3:x", TypeTag.II),
    ("in", "1.2.3:x", TypeTag.IN),
    ("nullflavor", "nav", TypeTag.ANY),
]


@pytest.mark.parametrize("type_name,literal,tag", SAMPLES)
def test_upcast_downcast_identity(type_name, literal, tag):
    v = value_parse(type_name, literal)
    a = upcast(v)
    assert a.tag is tag
    assert downcast(a, tag) is v
    assert str(a) == value_print(v) == literal


def test_pq_payload_prints_unchanged():
    assert str(upcast(value_parse("pq", "10 ml"))) == "10 ml"


def test_widening():
    assert downcast(upcast(BN(True)), TypeTag.BL) == BL(True)
    assert type(downcast(upcast(BN(True)), "bl")) is BL
    i = downcast(upcast(IN("1.2", "x")), TypeTag.II)
    assert type(i) is II and i == II("1.2", "x")
    assert downcast(upcast(value_parse("pq", "1 m")), TypeTag.QTY) is not None
    assert downcast(upcast(value_parse("pq", "1 m")), TypeTag.ANY) is not None


def test_narrowing_needs_constraints():
    assert downcast(upcast(BL(True)), TypeTag.BN) == BN(True)
    with pytest.raises(CastError):
        downcast(upcast(BL(NullFlavor.UNK)), TypeTag.BN)
    assert isinstance(downcast(upcast(II("1.2")), TypeTag.IN), IN)
    with pytest.raises(CastError):
        downcast(upcast(II(nullflavor=NullFlavor.MSK)), TypeTag.IN)
    cs_value = value_parse("cv", "active", domain="ActStatus")
    assert downcast(upcast(cs_value), TypeTag.CS) is cs_value
    with pytest.raises(CastError):
        downcast(upcast(value_parse("cv", "active:2.16.840.1.113883.5.14")), TypeTag.CS)


def test_unrelated_casts_fail():
    with pytest.raises(CastError):
        downcast(upcast(value_parse("pq", "10 ml")), TypeTag.BL)
    with pytest.raises(CastError):
        downcast(upcast(value_parse("ts", "2008")), TypeTag.PQ)
    with pytest.raises(CastError):
        AnyValue(TypeTag.PQ, BL(True))
    with pytest.raises(CastError):
        tag_of(42)


@pytest.mark.parametrize("tag", [TypeTag.BL, TypeTag.REAL, TypeTag.PQ, TypeTag.TS, TypeTag.IVL,
                                 TypeTag.CD, TypeTag.CV, TypeTag.II])
def test_bare_nullflavor_narrows_to_typed_null(tag):
    v = downcast(upcast(NullFlavor.ASKU), tag)
    assert value_print(v) == "asku"


@pytest.mark.parametrize("tag", [TypeTag.BN, TypeTag.IN])
def test_bare_nullflavor_cannot_become_nonnull_type(tag):
    with pytest.raises(CastError):
        downcast(upcast(NullFlavor.ASKU), tag)


def test_tag_hierarchy():
    assert TypeTag.CS.ancestors() == [TypeTag.CS, TypeTag.CV, TypeTag.CD, TypeTag.ANY]
    assert TypeTag.BN.parent is TypeTag.BL
    assert all(t.ancestors()[-1] is TypeTag.ANY for t in TypeTag)


def test_value_parse_unknown_type():
    with pytest.raises(ValueError):
        value_parse("money", "5 EUR")
    with pytest.raises(NullNotAllowed):
        value_parse("in", "unk")


@given(st.one_of(
    pq_literals.map(lambda s: ("pq", s)),
    ts_literals().map(lambda s: ("ts", s)),
    ivl_pq_literals().map(lambda s: ("ivl_pq", s)),
    cv_literals().map(lambda s: ("cv", s)),
    ii_literals.map(lambda s: ("ii", s)),
))
def test_upcast_downcast_round_trip(pair):
    type_name, lit = pair
    v = value_parse(type_name, lit)
    a = upcast(v)
    assert downcast(a, a.tag) is v
    assert str(a) == value_print(v)
