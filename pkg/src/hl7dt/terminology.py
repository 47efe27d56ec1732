"""Code systems, value sets and coded values (CD / CV / CS).

A CV names one concept: a code in a code system, optionally drawn from a
value set, optionally with the text the user originally wrote.  The full
literal is::

    code ':' codesystem ['@' version] [':' valueset ['@' version]] ['|' originaltext]

Under a concept domain (``cv_parse('active', domain='ActStatus')``) the
short literal ``code ['|' originaltext]`` is enough; the code system and
value set come from the domain binding, so the parsed value still carries
its full context.  CS is a CV bound to a domain and CD is a CV without
translations.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Union

from .errors import (
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
from .logic import BN
from .nullflavor import NullFlavor, is_nullflavor_token, parse_nullflavor
from .ucum import _data_path

SEPARATORS = ":@|"


@dataclass(frozen=True)
class CodeSystem:
    oid: str
    name: str
    version: str
    codes: dict = field(default_factory=dict, compare=False)  # code -> (displayname, parents)


@dataclass(frozen=True)
class ValueSet:
    oid: str
    name: str
    version: str
    members: frozenset  # of (codesystem oid, code)


@dataclass(frozen=True)
class ConceptDomainBinding:
    name: str
    codesystem_oid: str
    valueset_oid: str


@dataclass(frozen=True)
class CV:
    code: Optional[str] = None
    codesystem: Optional[str] = None
    codesystem_version: Optional[str] = None
    valueset: Optional[str] = None
    valueset_version: Optional[str] = None
    originaltext: Optional[str] = None
    nullflavor: Optional[NullFlavor] = None

    def __post_init__(self):
        if self.nullflavor is None and not (self.code and self.codesystem):
            raise ValueError("non-null CV needs a code and a code system")

    @property
    def is_null(self) -> bool:
        return self.nullflavor is not None

    def __str__(self) -> str:
        return cv_print(self)


CD = CV


class ConceptRegistry:
    def __init__(self, codesystems, valuesets, domains):
        self.codesystems: dict[str, CodeSystem] = {}
        self._by_name: dict[str, CodeSystem] = {}
        for cs in codesystems:
            if cs.oid in self.codesystems:
                raise FormatError(f"duplicate code system {cs.oid}")
            self.codesystems[cs.oid] = cs
            self._by_name[cs.name] = cs
        self.valuesets: dict[str, ValueSet] = {}
        for vs in valuesets:
            for oid, code in vs.members:
                if oid not in self.codesystems or code not in self.codesystems[oid].codes:
                    raise DanglingReference(f"value set {vs.oid} lists unknown code {code!r} of {oid}")
            self.valuesets[vs.oid] = vs
        self.domains: dict[str, ConceptDomainBinding] = {}
        for d in domains:
            if d.codesystem_oid not in self.codesystems:
                raise DanglingReference(f"domain {d.name} names unknown code system {d.codesystem_oid}")
            if d.valueset_oid not in self.valuesets:
                raise DanglingReference(f"domain {d.name} names unknown value set {d.valueset_oid}")
            self.domains[d.name] = d
        self._ancestors: dict[str, dict[str, frozenset]] = {
            oid: _closure(cs) for oid, cs in self.codesystems.items()
        }

    # loading

    @classmethod
    def loads(cls, text: str) -> ConceptRegistry:
        section = None
        systems, codes, valuesets, domains = [], [], [], []
        for lineno, raw in enumerate(text.splitlines(), 1):
            if not raw.strip() or raw.lstrip().startswith("#"):
                continue
            line = raw.strip()
            if line.startswith("[") and line.endswith("]"):
                section = line[1:-1]
                if section not in ("codesystem", "code", "valueset", "domain"):
                    raise FormatError(f"line {lineno}: unknown section {section!r}")
                continue
            cols = raw.split("\t")
            width = {"codesystem": 3, "code": 4, "valueset": 5, "domain": 3}.get(section)
            if width is None:
                raise FormatError(f"line {lineno}: data before any section")
            if len(cols) != width:
                raise FormatError(f"line {lineno}: expected {width} tab-separated columns in [{section}]")
            if section == "codesystem":
                systems.append(cols)
            elif section == "code":
                codes.append((lineno, cols))
            elif section == "valueset":
                valuesets.append(cols)
            else:
                domains.append(ConceptDomainBinding(*cols))
        table = {oid: CodeSystem(oid, name, version) for oid, name, version in systems}
        for lineno, (oid, code, display, parents) in codes:
            if oid not in table:
                raise DanglingReference(f"line {lineno}: code {code!r} in unknown code system {oid}")
            if not code or any(c in code for c in SEPARATORS):
                raise FormatError(f"line {lineno}: invalid code {code!r}")
            if code in table[oid].codes:
                raise FormatError(f"line {lineno}: duplicate code {code!r}")
            table[oid].codes[code] = (display, tuple(p for p in parents.split(",") if p))
        for cs in table.values():
            for code, (_, parents) in cs.codes.items():
                for p in parents:
                    if p not in cs.codes:
                        raise DanglingReference(f"code {code!r} of {cs.name} has unknown parent {p!r}")
        sets = []
        for oid, name, version, cs_oid, members in valuesets:
            if cs_oid not in table:
                raise DanglingReference(f"value set {oid} draws from unknown code system {cs_oid}")
            listed = table[cs_oid].codes if members == "*" else members.split(",")
            sets.append(ValueSet(oid, name, version, frozenset((cs_oid, c) for c in listed)))
        return cls(table.values(), sets, domains)

    @classmethod
    def load(cls, path: str | os.PathLike) -> ConceptRegistry:
        with open(path, encoding="utf-8") as fh:
            return cls.loads(fh.read())

    # lookups

    def codesystem(self, oid: str) -> CodeSystem:
        try:
            return self.codesystems[oid]
        except KeyError:
            raise UnknownCode(f"unknown code system {oid}") from None

    def codesystem_named(self, name: str) -> CodeSystem:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownCode(f"unknown code system {name!r}") from None

    def domain(self, name: str) -> ConceptDomainBinding:
        try:
            return self.domains[name]
        except KeyError:
            raise UnknownDomain(f"unknown concept domain {name!r}") from None

    def ancestors(self, oid: str, code: str) -> frozenset:
        """Reflexive-transitive ancestors of ``code``."""
        try:
            return self._ancestors[oid][code]
        except KeyError:
            raise UnknownCode(f"unknown code {code!r} in code system {oid}") from None

    def specializations(self, oid: str, code: str) -> list[str]:
        return sorted(c for c, anc in self._ancestors[oid].items() if code in anc)


def _closure(cs: CodeSystem) -> dict[str, frozenset]:
    done: dict[str, frozenset] = {}
    visiting: set[str] = set()

    def visit(code: str, path: tuple[str, ...]) -> frozenset:
        if code in done:
            return done[code]
        if code in visiting:
            cycle = path[path.index(code):] + (code,)
            raise CycleError(f"parent cycle in {cs.name}: {' -> '.join(cycle)}")
        visiting.add(code)
        out = {code}
        for p in cs.codes[code][1]:
            out |= visit(p, path + (code,))
        visiting.discard(code)
        done[code] = frozenset(out)
        return done[code]

    for code in cs.codes:
        visit(code, ())
    return done


@lru_cache(maxsize=None)
def default_terminology() -> ConceptRegistry:
    return ConceptRegistry.loads(_data_path("terminology.tsv").read_text(encoding="utf-8"))


def terminology_or_default(reg: ConceptRegistry | None) -> ConceptRegistry:
    return default_terminology() if reg is None else reg


# literals


def _split_version(part: str) -> tuple[str, Optional[str]]:
    oid, _, version = part.partition("@")
    if not oid:
        raise ParseError(f"missing OID in {part!r}")
    return oid, (version or None)


def cv_parse(literal: str, domain: Union[str, ConceptDomainBinding, None] = None,
             reg: ConceptRegistry | None = None, validate: bool = True) -> CV:
    reg = terminology_or_default(reg)
    body, bar, original = literal.partition("|")
    body = body.strip()
    original = original if bar else None
    if not bar and is_nullflavor_token(body):
        return CV(nullflavor=parse_nullflavor(body))
    if domain is not None:
        return _parse_in_domain(body, original, domain, reg)
    parts = body.split(":")
    if len(parts) not in (2, 3) or not parts[0]:
        raise ParseError(f"invalid CV literal {literal!r}")
    code = parts[0]
    cs_oid, cs_version = _split_version(parts[1])
    vs_oid, vs_version = _split_version(parts[2]) if len(parts) == 3 else (None, None)
    cv = CV(code, cs_oid, cs_version, vs_oid, vs_version, original)
    if validate:
        cs = reg.codesystem(cs_oid)
        if code not in cs.codes:
            raise InvalidCode(f"invalid code '{code}' for codeSystem {cs.name}")
        if vs_oid is not None:
            vs = reg.valuesets.get(vs_oid)
            if vs is None:
                raise UnknownCode(f"unknown value set {vs_oid}")
            if (cs_oid, code) not in vs.members:
                raise InvalidCode(f"invalid code '{code}' for valueSet {vs.name}")
    return cv


def _parse_in_domain(code: str, original, domain, reg: ConceptRegistry) -> CV:
    binding = reg.domain(domain) if isinstance(domain, str) else domain
    cs = reg.codesystem(binding.codesystem_oid)
    vs = reg.valuesets[binding.valueset_oid]
    code = code.strip()
    if not code or any(c in code for c in ":@") or (cs.oid, code) not in vs.members:
        raise InvalidCode(f"invalid code '{code}' for codeSystem {cs.name}")
    return CV(code, cs.oid, cs.version, vs.oid, vs.version, original)


def cs(code: str, domain: str, reg: ConceptRegistry | None = None) -> CV:
    """A code fixed by its concept domain."""
    return cv_parse(code, domain, reg)


def cv_print(c: CV) -> str:
    if c.nullflavor is not None:
        return c.nullflavor.value
    out = f"{c.code}:{c.codesystem}"
    if c.codesystem_version:
        out += f"@{c.codesystem_version}"
    if c.valueset:
        out += f":{c.valueset}"
        if c.valueset_version:
            out += f"@{c.valueset_version}"
    if c.originaltext is not None:
        out += f"|{c.originaltext}"
    return out


ACCESSORS = ("code", "codesystem", "codesystemname", "codesystemversion", "valueset",
             "valuesetname", "valuesetversion", "originaltext", "displayname")


def cv_accessor(c: CV, which: str, reg: ConceptRegistry | None = None) -> Optional[str]:
    if c.is_null:
        raise NullOperand(f"{which} of nullflavored CV")
    reg = terminology_or_default(reg)
    if which == "code":
        return c.code
    if which == "codesystem":
        return c.codesystem
    if which == "codesystemname":
        system = reg.codesystems.get(c.codesystem)
        return system.name if system else None
    if which == "codesystemversion":
        return c.codesystem_version
    if which == "valueset":
        return c.valueset
    if which == "valuesetname":
        vs = reg.valuesets.get(c.valueset) if c.valueset else None
        return vs.name if vs else None
    if which == "valuesetversion":
        return c.valueset_version
    if which == "originaltext":
        return c.originaltext
    if which == "displayname":
        system = reg.codesystem(c.codesystem)
        if c.code not in system.codes:
            raise UnknownCode(f"unknown code {c.code!r} in code system {system.name}")
        return system.codes[c.code][0]
    raise ValueError(f"unknown accessor {which!r}")


def implies(a: CV, b: CV, reg: ConceptRegistry | None = None) -> BN:
    """``a << b``: a is a specific kind of b (reflexive)."""
    if a.is_null or b.is_null:
        raise NullOperand("implies needs non-null concepts")
    if a.codesystem != b.codesystem:
        raise DifferentCodeSystem(f"{a.codesystem} and {b.codesystem} are different code systems")
    reg = terminology_or_default(reg)
    reg.ancestors(b.codesystem, b.code)
    return BN(b.code in reg.ancestors(a.codesystem, a.code))
