"""Ackermann-coded hereditarily finite sets.

A natural number ``m`` is read as the set of all ``i`` whose bit is set in
``m``.  Every operation here is a pure function on Python ints.  Operations
that can blow up take a :class:`Budget` and return :data:`OVERFLOW` instead
of a value when an intermediate result would be longer than the budget.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Union

__all__ = [
    "Budget",
    "DEFAULT_BUDGET",
    "Overflow",
    "OVERFLOW",
    "PartialNat",
    "CutVerdict",
    "mem",
    "members",
    "insert",
    "union",
    "subset",
    "singleton",
    "kuratowski_pair",
    "kuratowski_unpair",
    "powerset",
    "superexp",
    "level_code",
    "level_size",
    "vbar",
    "in_cut",
    "rank",
    "transitive_closure",
    "is_transitive",
    "minimal_member",
    "format_code",
    "parse_code",
    "pretty",
]


@dataclass(frozen=True)
class Budget:
    """Upper bound on the bit-length of any value an operation may build."""

    max_bits: int = 1 << 20

    def __post_init__(self) -> None:
        if self.max_bits < 1:
            raise ValueError("budget must allow at least one bit")

    def fits(self, value: int) -> bool:
        return value.bit_length() <= self.max_bits


DEFAULT_BUDGET = Budget()


class Overflow:
    """Marker for a value that does not fit the active budget."""

    _instance: "Overflow | None" = None

    def __new__(cls) -> "Overflow":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "OVERFLOW"

    def __bool__(self) -> bool:
        return False


OVERFLOW = Overflow()
PartialNat = Union[int, Overflow]


class CutVerdict(enum.Enum):
    IN_CUT = "InCut"
    BUDGET_EXCEEDED = "BudgetExceeded"


def _pow2(k: int, budget: Budget) -> PartialNat:
    # 2**k has k+1 bits; refuse before allocating.
    if k + 1 > budget.max_bits:
        return OVERFLOW
    return 1 << k


def mem(x: int, y: int) -> bool:
    """True iff ``x`` is a member of ``y``."""
    return (y >> x) & 1 == 1


def members(x: int) -> Iterator[int]:
    """Members of ``x`` in increasing order."""
    # peel low bits first (callers often stop early), then scan the bit string once
    for _ in range(8):
        if not x:
            return
        low = x & -x
        i = low.bit_length() - 1
        yield i
        x ^= low
    bits = bin(x)[:1:-1]
    i = bits.find("1")
    while i >= 0:
        yield i
        i = bits.find("1", i + 1)


def insert(x: int, y: int, budget: Budget = DEFAULT_BUDGET) -> PartialNat:
    """``x`` with ``y`` added."""
    s = _pow2(y, budget)
    if s is OVERFLOW:
        return OVERFLOW
    return x | s


def union(x: int, y: int) -> int:
    return x | y


def subset(x: int, y: int) -> bool:
    return x & y == x


def singleton(x: int, budget: Budget = DEFAULT_BUDGET) -> PartialNat:
    return _pow2(x, budget)


def kuratowski_pair(x: int, y: int, budget: Budget = DEFAULT_BUDGET) -> PartialNat:
    """Code of ``{{x}, {x, y}}``."""
    sx = _pow2(x, budget)
    sy = _pow2(y, budget)
    if sx is OVERFLOW or sy is OVERFLOW:
        return OVERFLOW
    a, b = sx, sx | sy
    if max(a, b) + 1 > budget.max_bits:
        return OVERFLOW
    return (1 << a) | (1 << b)


def kuratowski_unpair(p: int) -> tuple[int, int]:
    """Inverse of :func:`kuratowski_pair`; raises ``ValueError`` on non-pairs."""
    ms = list(members(p))
    if len(ms) == 1:
        (only,) = ms
        xs = list(members(only))
        if len(xs) != 1:
            raise ValueError(f"{p} is not a Kuratowski pair")
        return xs[0], xs[0]
    if len(ms) != 2:
        raise ValueError(f"{p} is not a Kuratowski pair")
    small, big = ms
    xs = list(members(small))
    if len(xs) != 1 or not subset(small, big) or bin(big).count("1") != 2:
        raise ValueError(f"{p} is not a Kuratowski pair")
    x = xs[0]
    (y,) = [m for m in members(big) if m != x]
    return x, y


def powerset(x: int, budget: Budget = DEFAULT_BUDGET) -> PartialNat:
    """Code whose members are exactly the subsets of ``x``.

    Adding a member ``a`` to ``x`` doubles the subsets; the new ones are the
    old ones shifted by ``2**a``, so the code is a product of ``1 + 2**(2**a)``.
    """
    # The largest subset is x itself, so the result has x+1 bits.
    if x + 1 > budget.max_bits:
        return OVERFLOW
    acc = 1
    for a in members(x):
        acc |= acc << (1 << a)
    return acc


def superexp(base: int, height: int, budget: Budget = DEFAULT_BUDGET) -> PartialNat:
    """Iterated exponential: ``2^base_0 = base`` and ``2^base_{h+1} = 2**(2^base_h)``."""
    v = base
    if not budget.fits(v):
        return OVERFLOW
    for _ in range(height):
        nxt = _pow2(v, budget)
        if nxt is OVERFLOW:
            return OVERFLOW
        v = nxt
    return v


def level_size(k: int, budget: Budget = DEFAULT_BUDGET) -> PartialNat:
    """Number of elements of ``V_k``; equal to ``2^0_k``."""
    return superexp(0, k, budget)


def level_code(k: int, budget: Budget = DEFAULT_BUDGET) -> PartialNat:
    """Code of ``V_k`` itself, i.e. ``2^0_{k+1} - 1``."""
    s = superexp(0, k + 1, budget)
    if s is OVERFLOW:
        return OVERFLOW
    return s - 1


def vbar(x: int, budget: Budget = DEFAULT_BUDGET) -> PartialNat:
    """Least code of the form ``2^0_z - 1`` (``z >= 1``) that is ``>= x``.

    This is the least von Neumann level that has ``x`` as a subset.
    """
    z = 1
    while True:
        c = level_code(z - 1, budget)
        if c is OVERFLOW:
            return OVERFLOW
        if c >= x:
            return c
        z += 1


def in_cut(x: int, budget: Budget = DEFAULT_BUDGET) -> CutVerdict:
    """Whether ``2^0_x`` can be computed within ``budget``.

    ``BUDGET_EXCEEDED`` is a resource verdict only; it does not claim that
    ``x`` lies outside the superexponential cut.
    """
    if superexp(0, x, budget) is OVERFLOW:
        return CutVerdict.BUDGET_EXCEEDED
    return CutVerdict.IN_CUT


def rank(x: int) -> int:
    """Von Neumann rank: least ``k`` with ``x`` a subset of ``V_k``."""
    # x is a subset of V_k iff every member is below |V_k| = 2^0_k.
    need = x.bit_length()
    k, size = 0, 0
    while size < need:
        k += 1
        size = 1 << size
    return k


def transitive_closure(x: int) -> int:
    """All hereditary members of ``x``; ``x`` itself is not included."""
    seen = 0
    todo = [x]
    while todo:
        for m in members(todo.pop()):
            if not mem(m, seen):
                seen |= 1 << m
                todo.append(m)
    return seen


def is_transitive(x: int) -> bool:
    return all(subset(m, x) for m in members(x))


def minimal_member(x: int) -> int | None:
    """A member of ``x`` sharing no member with ``x``; ``None`` for the empty set."""
    for m in members(x):
        if m & x == 0:
            return m
    return None


def format_code(x: int, hex_: bool = False) -> str:
    return hex(x) if hex_ else str(x)


def parse_code(text: str) -> int:
    """Parse a decimal or ``0x``-prefixed hexadecimal code."""
    t = text.strip().lower()
    if t.startswith("0x"):
        v = int(t[2:], 16)
    else:
        if not t.isdigit():
            raise ValueError(f"not a code: {text!r}")
        v = int(t)
    return v


def pretty(x: int, depth: int = 4) -> str:
    """Nested-brace rendering; subtrees below ``depth`` print as ``...``."""
    if x == 0:
        return "{}"
    if depth <= 0:
        return "..."
    return "{" + ", ".join(pretty(m, depth - 1) for m in members(x)) + "}"
