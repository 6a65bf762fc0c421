"""Ordinals and ZF-style cardinals on Ackermann codes.

Ordinal arithmetic follows the sup-recursions (sup of a set of ordinals is
its union).  Cardinals are the sets ``{y in V_k : y ~ x}`` for the least
level ``V_k`` holding a set equinumerous with ``x``.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations
from typing import Callable

from .hfcore import (
    DEFAULT_BUDGET,
    OVERFLOW,
    Budget,
    PartialNat,
    is_transitive,
    kuratowski_pair,
    level_size,
    members,
    powerset,
)


class NotAnOrdinal(ValueError):
    pass


class NotACardinal(ValueError):
    pass


def popcount(x: int) -> int:
    return bin(x).count("1")


# ---------------------------------------------------------------- ordinals

def is_ordinal(x: int) -> bool:
    """Transitive set whose members are all transitive."""
    return is_transitive(x) and all(is_transitive(m) for m in members(x))


def ord_succ(a: int, budget: Budget = DEFAULT_BUDGET) -> PartialNat:
    """``a U {a}``."""
    if a + 1 > budget.max_bits:
        return OVERFLOW
    return a | (1 << a)


def on(n: int, budget: Budget = DEFAULT_BUDGET) -> PartialNat:
    """Code of the von Neumann ordinal ``n``: ``on(k+1) = on(k) + 2**on(k)``."""
    x = 0
    for _ in range(n):
        nxt = ord_succ(x, budget)
        if nxt is OVERFLOW:
            return OVERFLOW
        x = nxt
    return x


def on_inv(x: int) -> int:
    if not is_ordinal(x):
        raise NotAnOrdinal(f"{x} does not code an ordinal")
    return popcount(x)


def _check_ord(*xs: int) -> None:
    for x in xs:
        if not is_ordinal(x):
            raise NotAnOrdinal(f"{x} does not code an ordinal")


def ord_add(a: int, b: int, budget: Budget = DEFAULT_BUDGET) -> PartialNat:
    """``a + b = sup({a} U {S(a + c) : c < b})``."""
    _check_ord(a, b)
    memo: dict[int, int] = {}
    # members of an ordinal are ordinals, listed in increasing order
    for c in [0, *members(b)]:
        if c in memo:
            continue
        acc = a
        for d in members(c):
            s = ord_succ(memo[d], budget)
            if s is OVERFLOW:
                return OVERFLOW
            acc |= s
        memo[c] = acc
    acc = a
    for c in members(b):
        s = ord_succ(memo[c], budget)
        if s is OVERFLOW:
            return OVERFLOW
        acc |= s
    return acc


def ord_mul(a: int, b: int, budget: Budget = DEFAULT_BUDGET) -> PartialNat:
    """``a * b = sup{a * c + a : c < b}``."""
    _check_ord(a, b)
    memo: dict[int, int] = {}

    def at(c: int) -> PartialNat:
        acc = 0
        for d in members(c):
            s = ord_add(memo[d], a, budget)
            if s is OVERFLOW:
                return OVERFLOW
            acc |= s
        return acc

    for c in [*members(b), b]:
        v = at(c)
        if v is OVERFLOW:
            return OVERFLOW
        memo[c] = v
    return memo[b]


def ord_exp2(a: int, budget: Budget = DEFAULT_BUDGET) -> PartialNat:
    """``2^a = sup({S(0)} U {2^c + 2^c : c < a})``."""
    _check_ord(a)
    memo: dict[int, int] = {}
    for c in [*members(a), a]:
        acc = 1  # S(0)
        for d in members(c):
            s = ord_add(memo[d], memo[d], budget)
            if s is OVERFLOW:
                return OVERFLOW
            acc |= s
        memo[c] = acc
    return memo[a]


def _via_on(op: Callable[..., int], *args: int, budget: Budget) -> PartialNat:
    # Internal oracle: natural arithmetic re-encoded through on.
    return on(op(*(on_inv(x) for x in args)), budget)


def ord_add_oracle(a: int, b: int, budget: Budget = DEFAULT_BUDGET) -> PartialNat:
    return _via_on(lambda m, n: m + n, a, b, budget=budget)


def ord_mul_oracle(a: int, b: int, budget: Budget = DEFAULT_BUDGET) -> PartialNat:
    return _via_on(lambda m, n: m * n, a, b, budget=budget)


def ord_exp2_oracle(a: int, budget: Budget = DEFAULT_BUDGET) -> PartialNat:
    n = on_inv(a)
    # 2**n itself may be astronomically large; on() of it overflows long before.
    if n > 64:
        return OVERFLOW
    return on(2 ** n, budget)


# --------------------------------------------------------------- cardinals

def card_nat(x: int) -> int:
    return popcount(x)


def _size_level(n: int, budget: Budget) -> PartialNat:
    """Least ``k`` such that ``V_k`` has an ``n``-element member."""
    k = 1
    while True:
        below = level_size(k - 1, budget)
        if below is OVERFLOW:
            return OVERFLOW
        if n <= below:
            return k
        k += 1


@lru_cache(maxsize=64)
def _card_of_size(n: int, budget: Budget) -> PartialNat:
    k = _size_level(n, budget)
    if k is OVERFLOW:
        return OVERFLOW
    width = level_size(k - 1, budget)  # members of V_k are subsets of V_{k-1}
    if width is OVERFLOW:
        return OVERFLOW
    top = sum(1 << i for i in range(width - n, width))  # largest member code
    if top + 1 > budget.max_bits:
        return OVERFLOW
    bits = bytearray((top >> 3) + 1)
    for combo in combinations(range(width), n):
        y = 0
        for i in combo:
            y |= 1 << i
        bits[y >> 3] |= 1 << (y & 7)
    return int.from_bytes(bits, "little")


def zf_card(x: int, budget: Budget = DEFAULT_BUDGET) -> PartialNat:
    """``|x|``: all sets equinumerous with ``x`` in the least level holding one."""
    return _card_of_size(popcount(x), budget)


def k_iso(n: int, budget: Budget = DEFAULT_BUDGET) -> PartialNat:
    """Cardinal code representing the number ``n``."""
    return _card_of_size(n, budget)


def representative(c: int) -> int:
    """Least member of a cardinal code."""
    if c == 0:
        raise NotACardinal("the empty set is not a cardinal")
    return (c & -c).bit_length() - 1


def is_cardinal(c: int, budget: Budget = DEFAULT_BUDGET) -> bool:
    if c == 0:
        return False
    return zf_card(representative(c), budget) == c


def find_injection(a: int, b: int) -> dict[int, int] | None:
    """Some injection from the members of ``a`` into those of ``b``, if any."""
    src = list(members(a))
    dst = list(members(b))
    image = next(permutations(dst, len(src)), None)
    if image is None:
        return None
    return dict(zip(src, image))


def card_le(c: int, d: int) -> bool:
    """Injection from some member of ``c`` into some member of ``d``."""
    return find_injection(representative(c), representative(d)) is not None


def disjoint_union(x: int, y: int, budget: Budget = DEFAULT_BUDGET) -> PartialNat:
    """``x x {0} U y x {1}`` built from Kuratowski pairs."""
    acc = 0
    for tag, s in ((0, x), (1, y)):
        for m in members(s):
            p = kuratowski_pair(m, tag, budget)
            if p is OVERFLOW or p + 1 > budget.max_bits:
                return OVERFLOW
            acc |= 1 << p
    return acc


def product(x: int, y: int, budget: Budget = DEFAULT_BUDGET) -> PartialNat:
    acc = 0
    for a in members(x):
        for b in members(y):
            p = kuratowski_pair(a, b, budget)
            if p is OVERFLOW or p + 1 > budget.max_bits:
                return OVERFLOW
            acc |= 1 << p
    return acc


def _lift(build: Callable[..., PartialNat], *cards: int, budget: Budget) -> PartialNat:
    reps = [representative(c) for c in cards]
    s = build(*reps, budget)
    if s is OVERFLOW:
        return OVERFLOW
    return zf_card(s, budget)


def card_add(c: int, d: int, budget: Budget = DEFAULT_BUDGET) -> PartialNat:
    return _lift(disjoint_union, c, d, budget=budget)


def card_mul(c: int, d: int, budget: Budget = DEFAULT_BUDGET) -> PartialNat:
    return _lift(product, c, d, budget=budget)


def card_exp2(c: int, budget: Budget = DEFAULT_BUDGET) -> PartialNat:
    return _lift(powerset, c, budget=budget)


def l_iso(x: int, budget: Budget = DEFAULT_BUDGET) -> PartialNat:
    """``l(x)``: the sum over members ``y`` of ``2^l(y)`` in cardinal arithmetic."""
    memo: dict[int, PartialNat] = {}

    def go(v: int) -> PartialNat:
        if v in memo:
            return memo[v]
        acc: PartialNat = k_iso(0, budget)
        for y in members(v):
            ly = go(y)
            if ly is OVERFLOW:
                return OVERFLOW
            term = card_exp2(ly, budget)
            if term is OVERFLOW:
                return OVERFLOW
            acc = card_add(acc, term, budget)
            if acc is OVERFLOW:
                return OVERFLOW
        memo[v] = acc
        return acc

    return go(x)
