"""Booleans with null flavors: the eleven-valued BL logic and its BN flavor.

Two operand nullflavors combine to their first common ancestor.  The
``altered`` mode changes only the cells that involve ``na``: a conjunction
with ``na`` is false, and a disjunction with ``na`` keeps the other side
(``na or na`` is false).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union

from .errors import NullFlavorNotAllowed, NullNotAllowed, ParseError
from .nullflavor import NOT_ON_BL, NullFlavor, is_nullflavor_token, lca, parse_nullflavor

State = Union[bool, NullFlavor]


class LogicMode(enum.Enum):
    HL7 = "hl7"
    ALTERED = "altered"


@dataclass(frozen=True)
class BL:
    state: State

    def __post_init__(self):
        s = self.state
        if isinstance(s, NullFlavor):
            if s in NOT_ON_BL:
                raise NullFlavorNotAllowed(f"nullflavor {s} is not allowed on BL")
        elif not isinstance(s, bool):
            raise TypeError(f"BL state must be bool or NullFlavor, got {s!r}")

    @property
    def is_null(self) -> bool:
        return isinstance(self.state, NullFlavor)

    @property
    def nullflavor(self) -> NullFlavor | None:
        return self.state if isinstance(self.state, NullFlavor) else None

    def is_true(self) -> bool:
        """Filter semantics: only a definite true passes."""
        return self.state is True

    def __str__(self) -> str:
        if isinstance(self.state, bool):
            return "true" if self.state else "false"
        return self.state.value

    def __invert__(self) -> BL:
        return bl_not(self)

    def __and__(self, other: BL) -> BL:
        return bl_binary("and", self, other)

    def __or__(self, other: BL) -> BL:
        return bl_binary("or", self, other)

    def __xor__(self, other: BL) -> BL:
        return bl_binary("xor", self, other)


TRUE = BL(True)
FALSE = BL(False)


@dataclass(frozen=True)
class BN:
    """Non-null boolean flavor."""

    value: bool

    def __post_init__(self):
        if not isinstance(self.value, bool):
            raise NullNotAllowed(f"BN cannot hold {self.value!r}")

    def to_bl(self) -> BL:
        return BL(self.value)

    @classmethod
    def from_bl(cls, b: BL) -> BN:
        if b.is_null:
            raise NullNotAllowed(f"BN cannot hold nullflavor {b.state}")
        return cls(b.state)

    def __bool__(self) -> bool:
        return self.value

    def __str__(self) -> str:
        return "true" if self.value else "false"


def bl(value: bool | NullFlavor | str | BL) -> BL:
    if isinstance(value, BL):
        return value
    if isinstance(value, str):
        return bl_parse(value)
    return BL(value)


def bl_parse(literal: str) -> BL:
    tok = literal.strip()
    low = tok.lower()
    if low == "true":
        return TRUE
    if low == "false":
        return FALSE
    if is_nullflavor_token(tok):
        return BL(parse_nullflavor(tok))
    raise ParseError(f"invalid BL literal {literal!r}")


def bn_parse(literal: str) -> BN:
    return BN.from_bl(bl_parse(literal))


def null_result(*flavors: NullFlavor) -> BL:
    """Combine the null flavors of operands into a BL-admissible flavor."""
    out = flavors[0]
    for nf in flavors[1:]:
        out = lca(out, nf)
    while out in NOT_ON_BL:
        out = out.parent
    return BL(out)


def bl_not(x: BL) -> BL:
    if isinstance(x.state, bool):
        return BL(not x.state)
    return x


def _and(x: State, y: State, mode: LogicMode) -> State:
    if mode is LogicMode.ALTERED and NullFlavor.NA in (x, y):
        return False
    if x is False or y is False:
        return False
    if x is True:
        return y
    if y is True:
        return x
    return lca(x, y)


def _or(x: State, y: State, mode: LogicMode) -> State:
    if mode is LogicMode.ALTERED and NullFlavor.NA in (x, y):
        other = y if x is NullFlavor.NA else x
        return False if other is NullFlavor.NA else other
    if x is True or y is True:
        return True
    if x is False:
        return y
    if y is False:
        return x
    return lca(x, y)


def bl_binary(op: str, x: BL, y: BL, mode: LogicMode | str = LogicMode.HL7) -> BL:
    mode = LogicMode(mode) if isinstance(mode, str) else mode
    x, y = bl(x), bl(y)
    if op == "and":
        return BL(_and(x.state, y.state, mode))
    if op == "or":
        return BL(_or(x.state, y.state, mode))
    if op == "implies":
        return BL(_or(bl_not(x).state, y.state, mode))
    if op == "xor":
        either = _or(x.state, y.state, mode)
        both = _and(x.state, y.state, mode)
        return BL(_and(either, bl_not(BL(both)).state, mode))
    raise ValueError(f"unknown boolean operator {op!r}")


def bl_equal(x: BL, y: BL) -> BL:
    nulls = [s for s in (x.state, y.state) if isinstance(s, NullFlavor)]
    if nulls:
        return null_result(*nulls)
    return BL(x.state == y.state)


# row/column order used by the printed truth tables
TABLE_ORDER = ("asku", "false", "inv", "msk", "na", "nask", "nav", "ni", "oth", "true", "unk")


def truth_table(op: str, mode: LogicMode | str = LogicMode.HL7) -> dict[str, dict[str, BL]]:
    """``table[row][col]`` is ``row op col``."""
    values = {label: bl_parse(label) for label in TABLE_ORDER}
    return {
        r: {c: bl_binary(op, values[r], values[c], mode) for c in TABLE_ORDER}
        for r in TABLE_ORDER
    }


def format_table(op: str, table: dict[str, dict[str, BL]]) -> str:
    header = [op.upper(), *TABLE_ORDER]
    rows = [header] + [[r, *(str(table[r][c]) for c in TABLE_ORDER)] for r in TABLE_ORDER]
    width = max(len(cell) for row in rows for cell in row)
    return "\n".join(" ".join(cell.ljust(width) for cell in row).rstrip() for row in rows)
