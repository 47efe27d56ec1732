import pytest
from hypothesis import given
from hypothesis import strategies as st

from hl7dt.errors import InvalidRoot, NullNotAllowed
from hl7dt.identity import IN, II, ii_equal, ii_parse, ii_print, normalize_root
from hl7dt.logic import FALSE, TRUE
from hl7dt.nullflavor import NullFlavor
from strategies import ii_literals, nullflavors, oid_roots, uuid_roots


def test_examples():
    i = ii_parse("2.16.840.1.113883.5.14:active")
    assert (i.root, i.extension) == ("2.16.840.1.113883.5.14", "active")
    assert ii_parse("1.2.3").extension is None
    assert ii_parse("1.2:a:b").extension == "a:b"
    assert ii_parse("1.2:").extension == ""
    with pytest.raises(InvalidRoot):
        ii_parse("9.9:x")
    with pytest.raises(NullNotAllowed):
        ii_parse("unk", nonnull=True)
    assert isinstance(ii_parse("1.2", nonnull=True), IN)


@pytest.mark.parametrize("root", ["", "1..2", "1.2.", ".1", "3", "1.02", "abc",
                                  "1234567-1234-1234-1234-123456789012"])
def test_bad_roots(root):
    with pytest.raises(InvalidRoot):
        normalize_root(root)


def test_uuid_is_lowercased():
    u = "A0B1C2D3-E4F5-A6B7-C8D9-E0F1A2B3C4D5"
    assert ii_print(ii_parse(u + ":X")) == u.lower() + ":X"
    assert ii_equal(ii_parse(u), ii_parse(u.lower())) == TRUE


def test_equal():
    assert ii_equal(ii_parse("1.2:a"), ii_parse("1.2:a")) == TRUE
    assert ii_equal(ii_parse("1.2:a"), ii_parse("1.2:b")) == FALSE
    assert ii_equal(ii_parse("1.2"), ii_parse("1.2:")) == FALSE
    assert ii_equal(ii_parse("unk"), ii_parse("1.2")).state is NullFlavor.UNK


@given(nullflavors)
def test_in_never_holds_a_nullflavor(nf):
    with pytest.raises(NullNotAllowed):
        IN(nullflavor=nf)
    with pytest.raises(NullNotAllowed):
        ii_parse(nf.value, nonnull=True)


@given(st.one_of(oid_roots, uuid_roots), st.one_of(st.none(), st.text(max_size=5)))
def test_equal_is_reflexive_and_symmetric(root, ext):
    a, b = II(root, ext), II(root.upper(), ext)
    assert ii_equal(a, b) == TRUE == ii_equal(b, a)


@given(ii_literals)
def test_round_trip(lit):
    i = ii_parse(lit)
    assert ii_parse(ii_print(i)) == i
    root, colon, ext = lit.partition(":")
    expected = (root.lower() if len(root) == 36 else root) + colon + ext
    assert ii_print(i) == expected
