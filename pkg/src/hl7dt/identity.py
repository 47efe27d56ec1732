"""Instance identifiers (II) and the non-null flavor IN.

Literal: ``root[:extension]``, split at the first colon.  The root is a
dotted-decimal OID or a UUID; UUIDs are normalized to lowercase.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .errors import InvalidRoot, NullNotAllowed, ParseError
from .logic import BL, null_result
from .nullflavor import NullFlavor, is_nullflavor_token, parse_nullflavor

_OID = re.compile(r"[0-2](\.(0|[1-9]\d*))*")
_UUID = re.compile(r"[0-9a-fA-F]{8}-[0-9a-fA-F]{4}-[0-9a-fA-F]{4}-[0-9a-fA-F]{4}-[0-9a-fA-F]{12}")


def normalize_root(root: str) -> str:
    if _OID.fullmatch(root):
        return root
    if _UUID.fullmatch(root):
        return root.lower()
    raise InvalidRoot(f"root {root!r} is neither an OID nor a UUID")


@dataclass(frozen=True)
class II:
    root: Optional[str] = None
    extension: Optional[str] = None
    nullflavor: Optional[NullFlavor] = None

    def __post_init__(self):
        if self.nullflavor is None:
            if self.root is None:
                raise InvalidRoot("non-null II needs a root")
            object.__setattr__(self, "root", normalize_root(self.root))

    @property
    def is_null(self) -> bool:
        return self.nullflavor is not None

    def __str__(self) -> str:
        return ii_print(self)


@dataclass(frozen=True)
class IN(II):
    """An II that can never be nullflavored."""

    def __post_init__(self):
        if self.nullflavor is not None:
            raise NullNotAllowed(f"IN cannot hold nullflavor {self.nullflavor.value}")
        super().__post_init__()


def ii_parse(literal: str, nonnull: bool = False) -> II:
    text = literal.strip()
    cls = IN if nonnull else II
    if is_nullflavor_token(text):
        nf = parse_nullflavor(text)
        if nonnull:
            raise NullNotAllowed(f"IN cannot hold nullflavor {nf.value}")
        return II(nullflavor=nf)
    if not text:
        raise ParseError("empty II literal")
    root, colon, extension = text.partition(":")
    return cls(root, extension if colon else None)


def ii_print(i: II) -> str:
    if i.nullflavor is not None:
        return i.nullflavor.value
    return i.root if i.extension is None else f"{i.root}:{i.extension}"


def ii_equal(a: II, b: II) -> BL:
    nulls = [x.nullflavor for x in (a, b) if x.is_null]
    if nulls:
        return null_result(*nulls)
    return BL(a.root == b.root and a.extension == b.extension)
