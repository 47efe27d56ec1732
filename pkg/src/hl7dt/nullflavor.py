"""The fifteen HL7 null flavors and their specialization tree.

Each flavor's parent is the closest more general flavor; ``ni`` (no
information) is the root.
"""
from __future__ import annotations

import enum
from functools import lru_cache

from .errors import UnknownNullFlavor


class NullFlavor(enum.Enum):
    NI = "ni"
    INV = "inv"
    OTH = "oth"
    NINF = "ninf"
    PINF = "pinf"
    UNC = "unc"
    DER = "der"
    UNK = "unk"
    ASKU = "asku"
    NAV = "nav"
    QS = "qs"
    NASK = "nask"
    TRC = "trc"
    MSK = "msk"
    NA = "na"

    def __str__(self) -> str:
        return self.value

    @property
    def parent(self) -> NullFlavor | None:
        return _PARENT[self]

    @property
    def depth(self) -> int:
        return len(ancestors(self)) - 1

    @property
    def code(self) -> int:
        """Nibble used by the packed encoding; 0 is reserved for non-null."""
        return _CODES[self]


_PARENT: dict[NullFlavor, NullFlavor | None] = {
    NullFlavor.NI: None,
    NullFlavor.INV: NullFlavor.NI,
    NullFlavor.OTH: NullFlavor.INV,
    NullFlavor.NINF: NullFlavor.OTH,
    NullFlavor.PINF: NullFlavor.OTH,
    NullFlavor.UNC: NullFlavor.INV,
    NullFlavor.DER: NullFlavor.INV,
    NullFlavor.UNK: NullFlavor.NI,
    NullFlavor.ASKU: NullFlavor.UNK,
    NullFlavor.NAV: NullFlavor.ASKU,
    NullFlavor.QS: NullFlavor.UNK,
    NullFlavor.NASK: NullFlavor.UNK,
    NullFlavor.TRC: NullFlavor.UNK,
    NullFlavor.MSK: NullFlavor.NI,
    NullFlavor.NA: NullFlavor.NI,
}

_CODES = {nf: i + 1 for i, nf in enumerate(NullFlavor)}
BY_CODE = {code: nf for nf, code in _CODES.items()}

NOT_ON_BL = frozenset({
    NullFlavor.NINF, NullFlavor.PINF, NullFlavor.UNC,
    NullFlavor.DER, NullFlavor.QS, NullFlavor.TRC,
})

# type tags whose flavor forbids every null flavor
NONNULL_TYPES = frozenset({"BN", "IN"})
KNOWN_TYPES = frozenset({
    "ANY", "BL", "BN", "QTY", "REAL", "PQ", "TS", "IVL", "IVL_TS", "IVL_PQ",
    "CD", "CV", "CS", "II", "IN",
})

_PREFIX = "nullflavor."


def parse_nullflavor(token: str) -> NullFlavor:
    """Case-insensitive lookup; a leading ``NullFlavor.`` qualifier is accepted."""
    tok = token.strip().lower()
    if tok.startswith(_PREFIX):
        tok = tok[len(_PREFIX):]
    try:
        return NullFlavor(tok)
    except ValueError:
        raise UnknownNullFlavor(f"unknown nullflavor {token!r}") from None


def is_nullflavor_token(token: str) -> bool:
    try:
        parse_nullflavor(token)
    except UnknownNullFlavor:
        return False
    return True


@lru_cache(maxsize=None)
def ancestors(nf: NullFlavor) -> tuple[NullFlavor, ...]:
    """Reflexive ancestor chain, from ``nf`` up to ``ni``."""
    chain = [nf]
    while (p := _PARENT[chain[-1]]) is not None:
        chain.append(p)
    return tuple(chain)


def subsumes(general: NullFlavor, specific: NullFlavor) -> bool:
    return general in ancestors(specific)


@lru_cache(maxsize=None)
def lca(a: NullFlavor, b: NullFlavor) -> NullFlavor:
    """First common ancestor of two flavors; reflexive, so lca(x, x) is x."""
    seen = set(ancestors(b))
    for nf in ancestors(a):
        if nf in seen:
            return nf
    raise AssertionError("tree has a single root")  # pragma: no cover


def allowed_on(nf: NullFlavor, type_name: str) -> bool:
    tag = type_name.upper()
    if tag not in KNOWN_TYPES:
        raise ValueError(f"unknown type tag {type_name!r}")
    if tag in NONNULL_TYPES:
        return False
    if tag == "BL":
        return nf not in NOT_ON_BL
    return True


def restrict_to(nf: NullFlavor, type_name: str) -> NullFlavor:
    """Climb to the nearest ancestor allowed on ``type_name``."""
    for candidate in ancestors(nf):
        if allowed_on(candidate, type_name):
            return candidate
    raise ValueError(f"{type_name} admits no null flavor")
