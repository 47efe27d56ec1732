"""UCUM unit expressions: parsing and exact canonicalization.

A unit string such as ``kg/m2`` or ``mm[Hg]`` parses into a flat sequence of
terms ``(atom, prefix, exponent)``.  Canonicalization expands every atom
through the registry down to the seven base units, multiplying the
conversion factors as exact rationals.
"""
from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Iterable, Union

from .errors import (
    CycleError,
    FormatError,
    UnitError,
    UnitSyntaxError,
    UnknownAtom,
    UnknownPrefix,
    UnsupportedUnit,
)
from .numeric import parse_rational

DIMENSIONS = ("m", "g", "s", "rad", "K", "C", "cd")
Dims = tuple  # 7-tuple of ints, ordered as DIMENSIONS
DIMENSIONLESS: Dims = (0,) * 7

_EXPONENT = re.compile(r"(.*?)([+-]?\d+)?")


@dataclass(frozen=True)
class Term:
    atom: str
    prefix: str | None = None
    exponent: int = 1

    @property
    def symbol(self) -> str:
        return (self.prefix or "") + self.atom

    def __str__(self) -> str:
        e = abs(self.exponent)
        return self.symbol if e == 1 else f"{self.symbol}{e}"


@dataclass(frozen=True)
class UnitExpr:
    source: str = field(compare=False)
    terms: tuple[Term, ...]

    def __str__(self) -> str:
        return print_terms(self.terms)

    def __hash__(self) -> int:
        return hash(self.terms)


def print_terms(terms: Iterable[Term]) -> str:
    out = []
    for i, t in enumerate(terms):
        if t.exponent < 0:
            out.append("/")
        elif i:
            out.append(".")
        out.append(str(t))
    return "".join(out) or "1"


@dataclass(frozen=True)
class Canonical:
    factor: Fraction
    dims: Dims

    def __mul__(self, other: Canonical) -> Canonical:
        return Canonical(self.factor * other.factor,
                         tuple(a + b for a, b in zip(self.dims, other.dims)))

    def __pow__(self, n: int) -> Canonical:
        return Canonical(self.factor ** n, tuple(d * n for d in self.dims))

    def unit_string(self) -> str:
        parts = [sym if e == 1 else f"{sym}{e}" for sym, e in zip(DIMENSIONS, self.dims) if e]
        return ".".join(parts) or "1"


ONE = Canonical(Fraction(1), DIMENSIONLESS)


@dataclass(frozen=True)
class Atom:
    symbol: str
    metric: bool
    value: Fraction | None  # None marks a special (non-ratio) unit
    unit: str
    base: str | None = None

    @property
    def special(self) -> bool:
        return self.value is None


class UnitRegistry:
    """Immutable atom and prefix tables with every atom pre-canonicalized."""

    def __init__(self, atoms: Iterable[Atom], prefixes: dict[str, Fraction]):
        self.atoms: dict[str, Atom] = {}
        for a in atoms:
            if a.symbol in self.atoms:
                raise FormatError(f"duplicate atom {a.symbol!r}")
            self.atoms[a.symbol] = a
        self.prefixes = dict(prefixes)
        self._prefix_order = sorted(self.prefixes, key=len, reverse=True)
        self._parse_cache: dict[str, UnitExpr] = {}
        self._canon_cache: dict[Union[str, UnitExpr], Canonical] = {}
        self._atom_canon: dict[str, Canonical] = {}
        bases = [a.base for a in self.atoms.values() if a.base]
        if sorted(bases) != sorted(DIMENSIONS):
            raise FormatError(f"registry must define each base unit once, got {bases}")
        for sym, atom in self.atoms.items():
            if not atom.special:
                self._canonical_atom(sym, ())

    # loading

    @classmethod
    def loads(cls, text: str) -> UnitRegistry:
        atoms, prefixes = [], {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            cols = line.split("\t")
            try:
                if cols[0] == "@prefix":
                    _, sym, value = cols
                    prefixes[sym] = parse_rational(value)
                    continue
                sym, metric, value, unit = cols
            except ValueError:
                raise FormatError(f"line {lineno}: expected 4 tab-separated columns") from None
            if metric not in ("y", "n"):
                raise FormatError(f"line {lineno}: metric flag must be y or n")
            base = unit[len("=base:"):] if unit.startswith("=base:") else None
            if base is not None and base not in DIMENSIONS:
                raise FormatError(f"line {lineno}: unknown base dimension {base!r}")
            if value == "special":
                val = None
            else:
                try:
                    val = parse_rational(value)
                except Exception:
                    raise FormatError(f"line {lineno}: bad value {value!r}") from None
                if val <= 0:
                    raise FormatError(f"line {lineno}: factor must be positive")
            atoms.append(Atom(sym, metric == "y", val, unit, base))
        return cls(atoms, prefixes)

    @classmethod
    def load(cls, path: str | os.PathLike) -> UnitRegistry:
        with open(path, encoding="utf-8") as fh:
            return cls.loads(fh.read())

    # parsing

    def parse(self, s: str) -> UnitExpr:
        hit = self._parse_cache.get(s)
        if hit is None:
            hit = UnitExpr(s, tuple(_Parser(s, self).parse()))
            self._parse_cache[s] = hit
        return hit

    def resolve(self, symbol: str) -> tuple[str | None, str]:
        """Split a simple unit symbol into ``(prefix, atom)``."""
        atom = self.atoms.get(symbol)
        if atom is None:
            for p in self._prefix_order:
                if symbol.startswith(p) and symbol[len(p):] in self.atoms:
                    atom = self.atoms[symbol[len(p):]]
                    if not atom.metric:
                        raise UnknownPrefix(f"unit {atom.symbol!r} takes no prefix (in {symbol!r})")
                    prefix = p
                    break
            else:
                raise UnknownAtom(f"unknown unit atom {symbol!r}")
        else:
            prefix = None
        if atom.special:
            raise UnsupportedUnit(f"non-ratio unit {atom.symbol!r} is not supported")
        return prefix, atom.symbol

    # canonical forms

    def canonical(self, unit: Union[UnitExpr, str]) -> Canonical:
        out = self._canon_cache.get(unit)
        if out is None:
            expr = self.parse(unit) if isinstance(unit, str) else unit
            out = ONE
            for t in expr.terms:
                out = out * self._term_canonical(t)
            self._canon_cache[unit] = out
        return out

    def _term_canonical(self, t: Term) -> Canonical:
        if t.atom.isdigit():
            c = Canonical(Fraction(int(t.atom)), DIMENSIONLESS)
        else:
            c = self._atom_canon.get(t.atom)
            if c is None:
                raise UnknownAtom(f"unknown unit atom {t.atom!r}")
        if t.prefix:
            c = Canonical(c.factor * self.prefixes[t.prefix], c.dims)
        return c ** t.exponent

    def _canonical_atom(self, symbol: str, stack: tuple[str, ...]) -> Canonical:
        if symbol in self._atom_canon:
            return self._atom_canon[symbol]
        if symbol in stack:
            raise CycleError(f"unit definition cycle: {' -> '.join(stack + (symbol,))}")
        atom = self.atoms[symbol]
        if atom.base is not None:
            dims = tuple(int(d == atom.base) for d in DIMENSIONS)
            c = Canonical(atom.value, dims)
        else:
            try:
                terms = _Parser(atom.unit, self).parse()
            except UnitError as exc:
                raise FormatError(f"definition of {symbol!r}: {exc}") from None
            c = Canonical(atom.value, DIMENSIONLESS)
            for t in terms:
                if not t.atom.isdigit():
                    self._canonical_atom(t.atom, stack + (symbol,))
                c = c * self._term_canonical(t)
        self._atom_canon[symbol] = c
        return c

    def simple_units(self, prefixes: Iterable[str] = ()) -> list[str]:
        """All plain atoms plus each metric atom under the given prefixes."""
        out = []
        for sym, atom in self.atoms.items():
            if atom.special or sym[0].isdigit():
                continue
            out.append(sym)
            if atom.metric:
                out.extend(p + sym for p in prefixes)
        return out


class _Parser:
    """term := ['/'] component (('.' | '/') component)*"""

    def __init__(self, text: str, registry: UnitRegistry):
        self.text = text
        self.pos = 0
        self.reg = registry

    def error(self, msg: str) -> UnitSyntaxError:
        return UnitSyntaxError(f"{msg} at position {self.pos} in unit {self.text!r}")

    def parse(self) -> list[Term]:
        if not self.text:
            raise UnitSyntaxError("empty unit")
        terms = self.term()
        if self.pos != len(self.text):
            raise self.error("unexpected character")
        return terms

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def term(self) -> list[Term]:
        sign = 1
        if self.peek() == "/":
            self.pos += 1
            sign = -1
        terms = self.component(sign)
        while self.peek() in (".", "/"):
            sign = 1 if self.peek() == "." else -1
            self.pos += 1
            terms.extend(self.component(sign))
        return terms

    def component(self, sign: int) -> list[Term]:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            inner = self.term()
            if self.peek() != ")":
                raise self.error("missing ')'")
            self.pos += 1
            return [Term(t.atom, t.prefix, t.exponent * sign) for t in inner]
        if ch == "{":
            raise UnsupportedUnit(f"annotations are not supported in unit {self.text!r}")
        token = self.simple_token()
        if not token:
            raise self.error("expected a unit")
        if "{" in token:
            raise UnsupportedUnit(f"annotations are not supported in unit {self.text!r}")
        if token.isdigit():
            if int(token) == 0:
                raise self.error("zero factor")
            return [Term(token, None, sign)]
        symbol, exponent = _EXPONENT.fullmatch(token).groups()
        if not symbol:
            raise self.error(f"exponent without unit in {token!r}")
        exp = int(exponent) if exponent else 1
        if exp == 0:
            raise self.error("zero exponent")
        prefix, atom = self.reg.resolve(symbol)
        return [Term(atom, prefix, exp * sign)]

    def simple_token(self) -> str:
        start, depth = self.pos, 0
        text = self.text
        while self.pos < len(text):
            ch = text[self.pos]
            if ch == "[":
                depth += 1
            elif ch == "]":
                if depth == 0:
                    raise self.error("unbalanced ']'")
                depth -= 1
            elif depth == 0 and ch in "./()":
                break
            elif ch.isspace():
                raise self.error("whitespace")
            self.pos += 1
        if depth:
            raise self.error("unbalanced '['")
        return text[start:self.pos]


def _data_path(name: str):
    return resources.files("hl7dt") / "data" / name


@lru_cache(maxsize=None)
def default_registry() -> UnitRegistry:
    return UnitRegistry.loads(_data_path("ucum.tsv").read_text(encoding="utf-8"))


def registry_or_default(reg: UnitRegistry | None) -> UnitRegistry:
    return default_registry() if reg is None else reg


def unit_parse(s: str, reg: UnitRegistry | None = None) -> UnitExpr:
    return registry_or_default(reg).parse(s)


def canonicalize(u: Union[UnitExpr, str], reg: UnitRegistry | None = None) -> Canonical:
    return registry_or_default(reg).canonical(u)


def compares_units(a: Union[UnitExpr, str], b: Union[UnitExpr, str],
                   reg: UnitRegistry | None = None) -> bool:
    reg = registry_or_default(reg)
    return reg.canonical(a).dims == reg.canonical(b).dims
