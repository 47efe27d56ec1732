import pytest
from hypothesis import given

from hl7dt.errors import (
    CycleError,
    DanglingReference,
    DifferentCodeSystem,
    FormatError,
    InvalidCode,
    NullOperand,
    ParseError,
    UnknownCode,
    UnknownDomain,
)
from hl7dt.terminology import (
    ACCESSORS,
    CV,
    ConceptRegistry,
    cs,
    cv_accessor,
    cv_parse,
    cv_print,
    default_terminology,
    implies,
)
from hl7dt.ucum import _data_path
from oracles import read_toy_codes, warshall
from strategies import cv_literals

ACT_STATUS = "2.16.840.1.113883.5.14"
TOY = "2.999.1.1"

ACTIVE_FIELDS = {
    "code": "active",
    "codesystem": "2.16.840.1.113883.5.14",
    "codesystemname": "ActStatus",
    "codesystemversion": "2009-08-30",
    "valueset": "2.16.840.1.113883.1.11.15933",
    "valuesetname": "ActStatus",
    "valuesetversion": "2009-08-30",
    "originaltext": "Ongoing treatment",
}


def test_domain_literal_reproduces_record():
    c = cv_parse("active|Ongoing treatment", domain="ActStatus")
    for field, want in ACTIVE_FIELDS.items():
        assert cv_accessor(c, field) == want
    assert cv_accessor(c, "displayname") == "active"


def test_domain_literal_rejects_unknown_code():
    with pytest.raises(InvalidCode, match=r"^invalid code 'x' for codeSystem ActStatus$"):
        cv_parse("x", domain="ActStatus")
    with pytest.raises(UnknownDomain):
        cv_parse("active", domain="NoSuchDomain")


def test_full_literal():
    c = cv_parse("completed:2.16.840.1.113883.5.14@2009-08-30:2.16.840.1.113883.1.11.15933@2009-08-30")
    assert c == cs("completed", "ActStatus")
    assert cv_print(c) == "completed:2.16.840.1.113883.5.14@2009-08-30:2.16.840.1.113883.1.11.15933@2009-08-30"
    bare = cv_parse(f"active:{ACT_STATUS}")
    assert bare.valueset is None and bare.codesystem_version is None
    assert cv_parse(f"active:{ACT_STATUS}| spaced  text ").originaltext == " spaced  text "


@pytest.mark.parametrize("bad,err", [
    ("active", ParseError),
    (f"bogus:{ACT_STATUS}", InvalidCode),
    ("active:9.9.9", UnknownCode),
    (f"active:{ACT_STATUS}:9.9.9", UnknownCode),
    (f"INT:2.16.840.1.113883.5.1001:2.16.840.1.113883.1.11.15933", InvalidCode),
    (f"a:b:c:d", ParseError),
])
def test_full_literal_rejects(bad, err):
    with pytest.raises(err):
        cv_parse(bad)


def test_null_and_accessors():
    n = cv_parse("nask")
    assert n.is_null and cv_print(n) == "nask"
    with pytest.raises(NullOperand):
        cv_accessor(n, "code")
    unregistered = CV("zzz", ACT_STATUS)
    with pytest.raises(UnknownCode):
        cv_accessor(unregistered, "displayname")
    with pytest.raises(ValueError):
        cv_accessor(cs("active", "ActStatus"), "colour")
    assert len(ACCESSORS) == 9


def test_implies_examples():
    active, normal = cs("active", "ActStatus"), cs("normal", "ActStatus")
    assert implies(active, normal).value is True
    assert implies(normal, active).value is False
    assert implies(active, active).value is True
    with pytest.raises(DifferentCodeSystem):
        implies(active, cs("INT", "ActMood"))
    with pytest.raises(UnknownCode):
        implies(active, CV("zzz", ACT_STATUS))
    with pytest.raises(NullOperand):
        implies(active, cv_parse("unk"))


def test_implies_matches_warshall_closure_on_every_pair():
    codes, parents = read_toy_codes(_data_path("terminology.tsv"), TOY)
    assert len(codes) == 200
    closure = warshall(codes, parents)
    cvs = {c: CV(c, TOY) for c in codes}
    for a in codes:
        for b in codes:
            assert implies(cvs[a], cvs[b]).value is (b in closure[a]), (a, b)


def test_specializations_and_root():
    reg = default_terminology()
    assert len(reg.specializations(TOY, "F000")) == 200
    assert reg.codesystem(TOY).codes["F000"][0] == "Clinical finding"


@given(cv_literals())
def test_round_trip(lit):
    c = cv_parse(lit)
    assert cv_print(c) == lit
    assert cv_parse(cv_print(c)) == c


HEADER = "[codesystem]\n1.2\tDemo\t1\n[code]\n"


def test_loader_errors():
    with pytest.raises(CycleError):
        ConceptRegistry.loads(HEADER + "1.2\ta\tA\tb\n1.2\tb\tB\ta\n")
    with pytest.raises(DanglingReference):
        ConceptRegistry.loads(HEADER + "1.2\ta\tA\tmissing\n")
    with pytest.raises(DanglingReference):
        ConceptRegistry.loads(HEADER + "9.9\ta\tA\t\n")
    with pytest.raises(DanglingReference):
        ConceptRegistry.loads(HEADER + "1.2\ta\tA\t\n[valueset]\n1.3\tVS\t1\t1.2\tzz\n")
    with pytest.raises(DanglingReference):
        ConceptRegistry.loads(HEADER + "1.2\ta\tA\t\n[domain]\nD\t1.2\t7.7\n")
    with pytest.raises(FormatError):
        ConceptRegistry.loads(HEADER + "1.2\ta\tA\n")
    with pytest.raises(FormatError):
        ConceptRegistry.loads(HEADER + "1.2\ta:b\tA\t\n")
    with pytest.raises(FormatError):
        ConceptRegistry.loads("[nonsense]\n")


def test_custom_registry():
    reg = ConceptRegistry.loads(
        HEADER + "1.2\ta\tA\t\n1.2\tb\tB\ta\n[valueset]\n1.3\tVS\t1\t1.2\t*\n[domain]\nD\t1.2\t1.3\n")
    c = cv_parse("b|bee", domain="D", reg=reg)
    assert cv_print(c) == "b:1.2@1:1.3@1|bee"
    assert implies(c, cv_parse("a", domain="D", reg=reg), reg).value is True
