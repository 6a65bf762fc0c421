"""Finite structures and a Tarskian evaluator for :mod:`hfkit.folang` formulas.

Formulas are compiled once into closures over an assignment dict.  Quantifiers
are expanded exhaustively, except that an existential (or the antecedent of a
universal implication) that pins its variable down with an equation only tries
the values that equation allows.  That shortcut never changes the verdict.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

from . import folang as fl
from . import hfcore as hc
from . import ordcard as oc
from .folang import (
    And, Atom, BoundedExists, BoundedForAll, Exists, ForAll, Formula, Iff,
    Implies, Not, Num, Or, App, Term, Var,
)
from .hfcore import DEFAULT_BUDGET, OVERFLOW, Budget


class EvalError(ValueError):
    """Unassigned variable, sort outside the structure, or unsupported symbol."""


class ResourceExceeded(RuntimeError):
    """Evaluation needed more steps or bits than allowed."""


# ------------------------------------------------------------- structures

class Structure:
    """Interface the evaluator needs; values are Python ints throughout."""

    max_sort = 0
    graph_names: frozenset[str] = frozenset()  # predicates solvable in their last argument

    def domain(self, sort: int) -> Sequence[int]:
        raise EvalError(f"no sort {sort} domain")

    def in_domain(self, sort: int, v: int) -> bool:
        return v in self.domain(sort)

    def member(self, a: int, b: int) -> bool:
        raise EvalError("membership is not interpreted")

    def members(self, b: int, sort: int) -> Iterable[int]:
        raise EvalError("membership is not interpreted")

    def le(self, a: int, b: int) -> bool:
        raise EvalError("<= is not interpreted")

    def le_range(self, b: int) -> Iterable[int]:
        raise EvalError("<= is not interpreted")

    def num(self, n: int) -> int | None:
        return n

    def apply(self, fn: str, args: tuple[int, ...]) -> int | None:
        raise EvalError(f"function {fn} is not interpreted")

    def defined(self, name: str, param: str | None, args: tuple[int, ...]) -> bool:
        raise EvalError(f"predicate {name} is not interpreted")

    def graph_values(self, name: str, args: tuple[int, ...]) -> list[int] | None:
        """Values ``v`` making ``name(*args, v)`` true, or ``None`` if ``name`` is no graph."""
        return None


def _bits(b: int) -> Iterator[int]:
    return hc.members(b)


class SetStructure(Structure):
    """Sort-0 set structure over Ackermann codes.

    ``domain`` lists the range of unbounded quantifiers.  With ``closed`` set,
    function values outside the domain count as undefined; otherwise any value
    within the budget is allowed (the domain is then a core inside a larger
    ambient universe).
    """

    graph_names = frozenset({"osucc", "oadd", "omul", "oexp2", "cadd", "cmul", "cexp2"})

    def __init__(self, codes: Iterable[int], budget: Budget = DEFAULT_BUDGET,
                 closed: bool = True) -> None:
        self.codes = tuple(codes)
        self._set = frozenset(self.codes)
        self.budget = budget
        self.closed = closed
        self._vminus: dict[int, frozenset[int]] = {0: self._set}

    def domain(self, sort: int) -> Sequence[int]:
        if sort != 0:
            raise EvalError(f"sort {sort} is outside this structure")
        return self.codes

    def in_domain(self, sort: int, v: int) -> bool:
        return sort == 0 and v in self._set

    def member(self, a: int, b: int) -> bool:
        return hc.mem(a, b)

    def members(self, b: int, sort: int) -> Iterable[int]:
        return _bits(b)

    def _ok(self, v: object) -> int | None:
        if v is OVERFLOW or v is None:
            return None
        if self.closed and not self.in_domain(0, v):
            return None
        return v

    def num(self, n: int) -> int | None:
        return self._ok(n)

    def apply(self, fn: str, args: tuple[int, ...]) -> int | None:
        b = self.budget
        if fn == "V":
            return self._ok(hc.vbar(args[0], b))
        if fn == "P":
            return self._ok(hc.powerset(args[0], b))
        if fn == "on":
            return self._ok(oc.on(args[0], b))
        if fn == "card":
            return self._ok(oc.k_iso(args[0], b))
        raise EvalError(f"function {fn} is not interpreted over sets")

    def vminus(self, n: int) -> frozenset[int]:
        if n not in self._vminus:
            prev = self.vminus(n - 1)
            out: set[int] = set()
            for y in prev:
                out.update(m for m in _bits(y) if m in self._set)
            self._vminus[n] = frozenset(out)
        return self._vminus[n]

    def defined(self, name: str, param: str | None, args: tuple[int, ...]) -> bool:
        return _set_predicate(self, name, param, args)

    def graph_values(self, name: str, args: tuple[int, ...]) -> list[int] | None:
        b = self.budget
        if name in _ORD_GRAPHS:
            if not all(oc.is_ordinal(a) for a in args):
                return []
            v = _ORD_GRAPHS[name](*args, b)
        elif name in _CARD_GRAPHS:
            if not all(oc.is_cardinal(a, b) for a in args):
                return []
            v = _CARD_GRAPHS[name](*args, b)
        else:
            return None
        return [] if v is OVERFLOW else [v]


_ORD_GRAPHS = {"osucc": oc.ord_succ, "oadd": oc.ord_add, "omul": oc.ord_mul, "oexp2": oc.ord_exp2}
_CARD_GRAPHS = {"cadd": oc.card_add, "cmul": oc.card_mul, "cexp2": oc.card_exp2}


def _same(v: object, target: int) -> bool:
    return v is not OVERFLOW and v == target


def _set_predicate(s: SetStructure, name: str, param: str | None, a: tuple[int, ...]) -> bool:
    b = s.budget
    if name in ("ord", "nat"):
        return oc.is_ordinal(a[0])
    if name == "hf":
        return True
    if name == "vminus":
        return a[0] in s.vminus(int(param))
    if name == "osucc":
        return oc.is_ordinal(a[0]) and _same(oc.ord_succ(a[0], b), a[1])
    if name in ("oadd", "omul"):
        if not (oc.is_ordinal(a[0]) and oc.is_ordinal(a[1])):
            return False
        op = oc.ord_add if name == "oadd" else oc.ord_mul
        return _same(op(a[0], a[1], b), a[2])
    if name == "oexp2":
        return oc.is_ordinal(a[0]) and _same(oc.ord_exp2(a[0], b), a[1])
    if name == "iscard":
        return oc.is_cardinal(a[0], b)
    if name in ("cadd", "cmul"):
        if not (oc.is_cardinal(a[0], b) and oc.is_cardinal(a[1], b)):
            return False
        op = oc.card_add if name == "cadd" else oc.card_mul
        return _same(op(a[0], a[1], b), a[2])
    if name == "cexp2":
        return oc.is_cardinal(a[0], b) and _same(oc.card_exp2(a[0], b), a[1])
    if name == "inj":
        # an injection exists exactly when the sizes allow one
        return oc.popcount(a[0]) <= oc.popcount(a[1])
    raise EvalError(f"predicate {name} is not interpreted over sets")


@dataclass(frozen=True)
class FiniteModel(Structure):
    """Levels over ``V_{n+1}``: sort ``k+1`` is the full powerset of sort ``k``.

    Sort-0 elements are the codes ``0 .. N_0-1``; a sort-``k+1`` element is a
    bitmask over sort-``k`` elements, so membership is a bit test at every sort.
    """

    n: int
    sorts: int
    sizes: tuple[int, ...]
    budget: Budget = DEFAULT_BUDGET
    closed: bool = True
    core: int | None = None  # sort-0 quantifier range, when smaller than N_0
    _sets: SetStructure = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "max_sort", self.sorts)
        top = self.sizes[0] if self.core is None else self.core
        object.__setattr__(self, "_sets", SetStructure(range(top), self.budget, self.closed))

    def domain(self, sort: int) -> Sequence[int]:
        if not 0 <= sort <= self.sorts:
            raise EvalError(f"sort {sort} is outside this model (max {self.sorts})")
        if sort == 0 and self.core is not None:
            return range(self.core)
        return range(self.sizes[sort])

    def in_domain(self, sort: int, v: int) -> bool:
        if not 0 <= sort <= self.sorts:
            return False
        bound = self.core if (sort == 0 and self.core is not None) else self.sizes[sort]
        return 0 <= v < bound

    def member(self, a: int, b: int) -> bool:
        return hc.mem(a, b)

    def members(self, b: int, sort: int) -> Iterable[int]:
        return _bits(b)

    def num(self, n: int) -> int | None:
        return self._sets.num(n)

    def apply(self, fn: str, args: tuple[int, ...]) -> int | None:
        return self._sets.apply(fn, args)

    def defined(self, name: str, param: str | None, args: tuple[int, ...]) -> bool:
        return self._sets.defined(name, param, args)

    graph_names = SetStructure.graph_names

    def graph_values(self, name: str, args: tuple[int, ...]) -> list[int] | None:
        return self._sets.graph_values(name, args)

    def vbar_table(self) -> dict[int, int]:
        return {x: hc.vbar(x, self.budget) for x in self.domain(0)}


def build_hf_model(n: int, sorts: int, budget: Budget = DEFAULT_BUDGET):
    """Model whose sort 0 is ``V_{n+1}`` and sort ``i+1`` the powerset of sort ``i``.

    Returns ``OVERFLOW`` when some sort would hold more than ``budget.max_bits``
    elements.
    """
    n0 = hc.level_size(n + 1, budget)
    if n0 is OVERFLOW or n0 > budget.max_bits:
        return OVERFLOW
    sizes = [n0]
    for _ in range(sorts):
        prev = sizes[-1]
        if prev + 1 > budget.max_bits:
            return OVERFLOW
        nxt = 1 << prev
        if nxt > budget.max_bits:
            return OVERFLOW
        sizes.append(nxt)
    return FiniteModel(n, sorts, tuple(sizes), budget, closed=False)


def core_model(j: int, budget: Budget = DEFAULT_BUDGET) -> FiniteModel:
    """Quantifiers range over ``V_j`` while ``P`` and ``V`` are computed on all codes.

    Finite levels are not closed under powerset; this makes ``P`` total on the
    quantifier range without changing any bounded quantifier.
    """
    size = hc.level_size(j, budget)
    return FiniteModel(j, 0, (size,), budget, closed=False, core=size)


def collapse(m: FiniteModel) -> FiniteModel:
    """Single-sorted model on the top sort, each element replaced by its set code.

    A sort-0 element is its own code; a higher element is coded by the set of
    the codes of its members.
    """
    if m.sorts == 0:
        return m
    codes: list[int] = list(m.domain(0))
    for k in range(1, m.sorts + 1):
        lower = codes
        codes = []
        for e in m.domain(k):
            c = 0
            for i in _bits(e):
                c |= 1 << lower[i]
            codes.append(c)
    out = build_hf_model(m.n + m.sorts, 0, m.budget)
    if out is OVERFLOW or sorted(codes) != list(out.domain(0)):
        raise EvalError("collapse did not produce a full level")
    return out


def vminus_domain(m: Structure, n: int) -> frozenset[int]:
    """``V^-0`` is the sort-0 domain; ``V^-(n+1)`` collects members of ``V^-n`` elements."""
    cur = frozenset(m.domain(0))
    dom = cur
    for _ in range(n):
        nxt: set[int] = set()
        for y in cur:
            nxt.update(x for x in _bits(y) if x in dom)
        cur = frozenset(nxt)
    return cur


def lex_order(level: int, pivot: str = "max") -> list[int]:
    """Members of the level ``level`` sorted by the lexicographic order it induces.

    ``z1 < z2`` when the decisive element of ``z1 XOR z2`` (taken in the order
    of the level below) lies in ``z2``.  The decisive element is the largest
    one by default; ``pivot="min"`` uses the smallest instead, which breaks the
    requirement ``y <= {y}`` (kept to show the difference).
    """
    if pivot not in ("max", "min"):
        raise ValueError("pivot must be 'max' or 'min'")
    if level != 0 and hc.vbar(level) != level:
        raise ValueError(f"{level} is not a von Neumann level code")
    if level == 0:
        return []
    below = 0
    while hc.powerset(below) != level:
        below = hc.powerset(below)
    pos = {z: i for i, z in enumerate(lex_order(below, pivot))}

    def cmp(z1: int, z2: int) -> int:
        if z1 == z2:
            return 0
        diff = list(_bits(z1 ^ z2))
        pick = (max if pivot == "max" else min)(diff, key=pos.__getitem__)
        return 1 if hc.mem(pick, z1) else -1

    return sorted(_bits(level), key=functools.cmp_to_key(cmp))


# ---------------------------------------------------- arithmetic structures

class NatStructure(Structure):
    """The standard numbers.

    Unbounded quantifiers search ``0..cap``, except that values forced by an
    equation (see the solver) are tried whatever their size.
    """

    def __init__(self, cap: int = 64, budget: Budget = DEFAULT_BUDGET) -> None:
        self.cap = cap
        self.budget = budget

    def domain(self, sort: int) -> Sequence[int]:
        if sort != 0:
            raise EvalError("arithmetic has one sort")
        return range(self.cap + 1)

    def in_domain(self, sort: int, v: int) -> bool:
        # cap only limits blind search; a solved witness may be any number
        return sort == 0 and v >= 0

    def le(self, a: int, b: int) -> bool:
        return a <= b

    def le_range(self, b: int) -> Iterable[int]:
        return range(b + 1)

    def apply(self, fn: str, args: tuple[int, ...]) -> int | None:
        b = self.budget
        if fn == "S":
            v = args[0] + 1
        elif fn == "+":
            v = args[0] + args[1]
        elif fn == "*":
            a0, a1 = args
            if a0.bit_length() + a1.bit_length() > b.max_bits + 1:
                return None
            v = a0 * a1
        elif fn == "exp2":
            if args[0] + 1 > b.max_bits:
                return None
            v = 1 << args[0]
        elif fn == "vack":
            v = hc.vbar(args[0], b)
        elif fn == "pack":
            v = hc.powerset(args[0], b)
        else:
            raise EvalError(f"function {fn} is not interpreted in arithmetic")
        if v is OVERFLOW or not b.fits(v):
            return None
        return v

    def defined(self, name: str, param: str | None, args: tuple[int, ...]) -> bool:
        if name == "lvl":
            return hc.vbar(args[0], self.budget) == args[0]
        if name == "cut":
            a = Fraction(param)
            q = int(args[0] / a) if a != 1 else args[0]
            return hc.in_cut(q, self.budget) is hc.CutVerdict.IN_CUT
        if name == "proves":
            from . import proofkit  # deferred: proofkit depends on this module

            return proofkit.proves(param, args[0], args[1])
        raise EvalError(f"predicate {name} is not interpreted in arithmetic")


def cut_member(x: int, scale: Fraction | int, budget: Budget = DEFAULT_BUDGET) -> bool:
    """``floor(x / scale)`` lies in the budgeted superexponential cut."""
    q = int(Fraction(x) / Fraction(scale))
    return hc.in_cut(q, budget) is hc.CutVerdict.IN_CUT


class OrdinalIndexStructure(Structure):
    """The ordinals of ``V_N`` named by their index ``0..N-1``; ``<`` is membership.

    Isomorphic to the ordinal part of the code model ``V_N``.  Codes past
    ``on(5)`` are too large to build, so ordinal translations of sentences with
    larger numbers are evaluated here.
    """

    def __init__(self, size: int) -> None:
        self.size = size

    def domain(self, sort: int) -> Sequence[int]:
        if sort != 0:
            raise EvalError("ordinal structure has one sort")
        return range(self.size)

    def in_domain(self, sort: int, v: int) -> bool:
        return sort == 0 and 0 <= v < self.size

    def member(self, a: int, b: int) -> bool:
        return a < b

    def members(self, b: int, sort: int) -> Iterable[int]:
        return range(b)

    def _ok(self, v: int) -> int | None:
        return v if 0 <= v < self.size else None

    def num(self, n: int) -> int | None:
        # a numeral here is a set code; only ordinal codes have an index
        if not oc.is_ordinal(n):
            return None
        return self._ok(oc.on_inv(n))

    def apply(self, fn: str, args: tuple[int, ...]) -> int | None:
        if fn == "on":
            return self._ok(args[0])
        raise EvalError(f"function {fn} is not interpreted on ordinal indices")

    def defined(self, name: str, param: str | None, a: tuple[int, ...]) -> bool:
        if name in ("ord", "nat", "hf"):
            return True
        if name == "vminus":
            return a[0] < self.size - int(param)
        if name == "osucc":
            return a[1] == a[0] + 1
        if name == "oadd":
            return a[2] == a[0] + a[1]
        if name == "omul":
            return a[2] == a[0] * a[1]
        if name == "oexp2":
            return a[0] < 64 and a[1] == 1 << a[0]
        raise EvalError(f"predicate {name} is not interpreted on ordinal indices")


def card_structure(cap: int, budget: Budget = DEFAULT_BUDGET) -> SetStructure:
    """Set structure whose quantifier range is the cardinals ``k(0..cap)``."""
    cards = []
    for i in range(cap + 1):
        c = oc.k_iso(i, budget)
        if c is OVERFLOW:
            break
        cards.append(c)
    return SetStructure(cards, budget, closed=False)


# ---------------------------------------------------------------- compiler

Env = dict
Compiled = Callable[[Env], bool]


class _Counter:
    def __init__(self, limit: int | None) -> None:
        self.limit = limit
        self.used = 0

    def tick(self, k: int = 1) -> None:
        self.used += k
        if self.limit is not None and self.used > self.limit:
            raise ResourceExceeded(f"evaluation exceeded {self.limit} steps")


def _compile_term(t: Term, s: Structure) -> Callable[[Env], int | None]:
    if isinstance(t, Var):
        key = _key(t)

        def var(env: Env) -> int | None:
            try:
                return env[key]
            except KeyError:
                raise EvalError(f"unassigned variable {t!r}") from None
        return var
    if isinstance(t, Num):
        val = s.num(t.value)
        return lambda env: val
    if t.fn in fl.CONSTANT_FUNCTIONS and isinstance(t.args[0], Num):
        val = s.apply(t.fn, (t.args[0].value,))
        return lambda env: val
    subs = [_compile_term(a, s) for a in t.args]
    fn = t.fn

    def app(env: Env) -> int | None:
        vals = []
        for c in subs:
            v = c(env)
            if v is None:
                return None
            vals.append(v)
        return s.apply(fn, tuple(vals))
    return app


def _conjuncts(f: Formula) -> list[Formula]:
    if isinstance(f, And):
        return _conjuncts(f.left) + _conjuncts(f.right)
    return [f]


_INVERT = {"S", "+", "*", "exp2"}


def _solver(x: Var, f: Formula, s: Structure,
            blocked: frozenset = frozenset()) -> Callable[[Env], list[int] | None] | None:
    """Compile a function giving a superset of the ``x`` values that can make ``f`` true.

    Looks through conjunctions, disjunctions and inner existentials; returns
    ``None`` when nothing constrains ``x`` usefully.
    """
    if isinstance(f, (Exists, BoundedExists)):
        if f.var == x:
            return None
        return _solver(x, f.body, s, blocked | {f.var})
    if isinstance(f, Or):
        left, right = _solver(x, f.left, s, blocked), _solver(x, f.right, s, blocked)
        if left is None or right is None:
            return None

        def union(env: Env) -> list[int] | None:
            a, b = left(env), right(env)
            if a is None or b is None:
                return None
            return list(dict.fromkeys(a + b))
        return union
    for c in _conjuncts(f):
        if isinstance(c, (Exists, BoundedExists)):
            got = _solver(x, c, s, blocked)
        else:
            got = _solve_atom(x, c, s, blocked)
        if got is not None:
            return got
    return None


def _solve_atom(x: Var, c: Formula, s: Structure, blocked: frozenset):
    if isinstance(c, ForAll) and isinstance(c.body, Iff):
        return _solve_comprehension(x, c, s, blocked)
    if isinstance(c, Atom) and c.pred in fl.DEFINED and c.args and c.args[-1] == x:
        return _solve_graph(x, c, s, blocked)
    if not (isinstance(c, Atom) and c.pred == "="):
        return None
    if (fl.term_vars(c.args[0]) | fl.term_vars(c.args[1])) & blocked:
        return None
    l, r = c.args
    for a, b in ((l, r), (r, l)):
        if a == x and x not in fl.term_vars(b):
            tb = _compile_term(b, s)
            return lambda env: ([] if (v := tb(env)) is None else [v])
    if isinstance(s, NatStructure):
        for a, b in ((l, r), (r, l)):
            if isinstance(b, App) and b.fn in _INVERT and x not in fl.term_vars(a):
                inv = _invert(x, a, b, s)
                if inv is not None:
                    return inv
    return None


def _solve_graph(x: Var, c: Atom, s: Structure, blocked: frozenset):
    # name(a1, .., ak, x) where the structure computes x from the a's
    ins = c.args[:-1]
    used = frozenset().union(*(fl.term_vars(t) for t in ins))
    if x in used or used & blocked or c.pred not in s.graph_names:
        return None
    ts = [_compile_term(t, s) for t in ins]

    def run(env: Env) -> list[int]:
        vals = []
        for t in ts:
            v = t(env)
            if v is None:
                return []
            vals.append(v)
        got = s.graph_values(c.pred, tuple(vals))
        return [] if got is None else got
    return run


def _invert(x: Var, a: Term, b: App, s: Structure):
    """Solve ``a = b`` for ``x`` when ``x`` is a direct argument of ``b``."""
    ta = _compile_term(a, s)
    if b.fn == "S" and b.args[0] == x:
        return lambda env: [] if (v := ta(env)) is None or v < 1 else [v - 1]
    if b.fn == "exp2" and b.args[0] == x:
        return lambda env: ([] if (v := ta(env)) is None or v < 1 or v & (v - 1)
                            else [v.bit_length() - 1])
    if b.fn in ("+", "*"):
        if b.args[0] == x and x not in fl.term_vars(b.args[1]):
            other = b.args[1]
        elif b.args[1] == x and x not in fl.term_vars(b.args[0]):
            other = b.args[0]
        else:
            return None
        to = _compile_term(other, s)
        if b.fn == "+":
            def sub(env: Env) -> list[int]:
                v, o = ta(env), to(env)
                if v is None or o is None or v < o:
                    return []
                return [v - o]
            return sub

        def div(env: Env) -> list[int] | None:
            v, o = ta(env), to(env)
            if v is None or o is None:
                return []
            if o == 0:
                return None if v == 0 else []
            return [v // o] if v % o == 0 else []
        return div
    return None


def _solve_comprehension(x: Var, c: ForAll, s: Structure, blocked: frozenset):
    # forall w (w in x <-> psi): x must be exactly {w : psi}
    w = c.var
    iff = c.body
    for lhs, psi in ((iff.left, iff.right), (iff.right, iff.left)):
        if (isinstance(lhs, Atom) and lhs.pred in ("in", "eps") and lhs.args == (w, x)
                and x not in fl.free_vars(psi) and not (fl.free_vars(psi) & blocked)):
            cpsi = _compile(psi, s)
            wkey = _key(w)
            within = _member_range(w, psi, s)

            def comp(env: Env, cpsi=cpsi, within=within) -> list[int] | None:
                counter = env.get(_COUNTER)
                acc = 0
                local = dict(env)
                for wv in (s.domain(w.sort) if within is None else within(env)):
                    if counter is not None:
                        counter.tick()
                    local[wkey] = wv
                    if cpsi(local):
                        acc |= 1 << wv
                return [acc] if s.in_domain(x.sort, acc) else []
            return comp
    return None


def _member_range(w: Var, psi: Formula, s: Structure):
    """For ``psi = w in t and ...``, the in-domain members of ``t``; else ``None``."""
    for c in _conjuncts(psi):
        if (isinstance(c, Atom) and c.pred in ("in", "eps") and c.args[0] == w
                and w not in fl.term_vars(c.args[1])):
            ct = _compile_term(c.args[1], s)
            sort = fl.term_sort(c.args[1])

            def within(env: Env) -> list[int]:
                t = ct(env)
                if t is None:
                    return []
                return [v for v in s.members(t, sort) if s.in_domain(w.sort, v)]
            return within
    return None


_COUNTER = object()  # env key holding the step counter
_MISSING = object()


def _key(v: Var) -> str:
    # env keys are strings: their hash is cached, unlike a dataclass's
    return v.name if v.sort == 0 else f"{v.name}:{v.sort}"


def _compile(f: Formula, s: Structure) -> Compiled:
    if isinstance(f, Atom):
        return _compile_atom(f, s)
    if isinstance(f, Not):
        b = _compile(f.body, s)
        return lambda env: not b(env)
    if isinstance(f, And):
        l, r = _compile(f.left, s), _compile(f.right, s)
        if _weight(f.right) < _weight(f.left):
            l, r = r, l  # cheaper conjunct first; both are side-effect free
        return lambda env: l(env) and r(env)
    if isinstance(f, Or):
        l, r = _compile(f.left, s), _compile(f.right, s)
        return lambda env: l(env) or r(env)
    if isinstance(f, Implies):
        l, r = _compile(f.left, s), _compile(f.right, s)
        return lambda env: (not l(env)) or r(env)
    if isinstance(f, Iff):
        l, r = _compile(f.left, s), _compile(f.right, s)
        return lambda env: l(env) == r(env)
    return _compile_quantifier(f, s)


def _weight(f: Formula) -> int:
    return sum(1 for g in fl.subformulas(f) if isinstance(g, fl.QUANTIFIERS))


def _compile_atom(a: Atom, s: Structure) -> Compiled:
    ts = [_compile_term(t, s) for t in a.args]

    def values(env: Env):
        out = []
        for t in ts:
            v = t(env)
            if v is None:
                return None
            out.append(v)
        return out

    pred, param = a.pred, a.param
    if pred in ("=", "in", "eps", "<="):
        lt, rt = ts
        test = {"=": int.__eq__, "in": s.member, "eps": s.member, "<=": s.le}[pred]

        def binary(env: Env) -> bool:
            l = lt(env)
            if l is None:
                return False
            r = rt(env)
            return r is not None and test(l, r)
        return binary

    def defined(env: Env) -> bool:
        v = values(env)
        return v is not None and s.defined(pred, param, tuple(v))
    return defined


def _compile_quantifier(f: Formula, s: Structure) -> Compiled:
    x = _key(f.var)
    var = f.var
    body = _compile(f.body, s)
    universal = isinstance(f, (ForAll, BoundedForAll))
    bounded = isinstance(f, (BoundedForAll, BoundedExists))
    bound = _compile_term(f.bound, s) if bounded else None
    rel = f.rel if bounded else None

    # candidate generator: from the body for exists, from the antecedent for forall
    if universal:
        # the body can only fail where every antecedent on the way down holds:
        # forall t1 . A -> forall t2 . B -> C gives candidates from A and B
        g, inner, guards = f.body, frozenset(), []
        while True:
            if isinstance(g, (ForAll, BoundedForAll)) and g.var != var:
                inner |= {g.var}
                g = g.body
            elif isinstance(g, Implies):
                guards.append(g.left)
                g = g.right
            else:
                break
        solve = _solver(var, fl.conj(*guards), s, inner) if guards else None
    else:
        solve = _solver(var, f.body, s)

    def candidates(env: Env) -> Iterable[int] | None:
        if bounded:
            bv = bound(env)
            if bv is None:
                return ()
        if solve is not None:
            got = solve(env)
            if got is not None:
                if bounded:
                    if rel == "<=":
                        return [c for c in got if s.le(c, bv)]
                    return [c for c in got if s.member(c, bv)]
                return [c for c in got if s.in_domain(var.sort, c)]
        if bounded:
            return s.le_range(bv) if rel == "<=" else s.members(bv, var.sort + 1)
        return s.domain(var.sort)

    def run(env: Env) -> bool:
        counter = env.get(_COUNTER)
        cands = candidates(env)
        old = env.get(x, _MISSING)
        try:
            for c in cands:
                if counter is not None:
                    counter.tick()
                env[x] = c
                if body(env) != universal:
                    return not universal
            return universal
        finally:
            # bindings are made in place and undone on the way out
            if old is _MISSING:
                env.pop(x, None)
            else:
                env[x] = old
    return run


@dataclass
class Evaluator:
    """Compiled formula bound to a structure, with an optional step limit."""

    structure: Structure
    max_steps: int | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    def compile(self, f: Formula) -> Compiled:
        key = f
        if key not in self._cache:
            self._cache[key] = _compile(f, self.structure)
        return self._cache[key]

    def eval(self, f: Formula, assignment: dict[Var, int] | None = None) -> bool:
        env: Env = dict(assignment or {})
        for x, val in env.items():
            if not isinstance(x, Var):
                raise EvalError(f"assignment keys must be variables, got {x!r}")
            if x.sort > self.structure.max_sort:
                raise EvalError(f"sort {x.sort} is outside the structure")
        missing = fl.free_vars(f) - set(env)
        env = {_key(k): val for k, val in env.items()}
        if missing:
            raise EvalError(f"unassigned variable(s): {sorted(map(repr, missing))}")
        for g in fl.subformulas(f):
            if isinstance(g, fl.QUANTIFIERS) and g.var.sort > self.structure.max_sort:
                raise EvalError(f"sort {g.var.sort} is outside the structure")
        env[_COUNTER] = _Counter(self.max_steps)
        return self.compile(f)(env)


    def predicate(self, f: Formula, variables: Sequence[Var]) -> Callable[..., bool]:
        """Check ``f`` once and return a fast ``(*values) -> bool`` over ``variables``."""
        missing = fl.free_vars(f) - set(variables)
        if missing:
            raise EvalError(f"unassigned variable(s): {sorted(map(repr, missing))}")
        run = self.compile(f)
        names = tuple(_key(v) for v in variables)
        limit = self.max_steps

        def call(*values: int) -> bool:
            env: Env = dict(zip(names, values))
            env[_COUNTER] = _Counter(limit)
            return run(env)
        return call


def evaluate(s: Structure, f: Formula, assignment: dict[Var, int] | None = None,
             max_steps: int | None = None) -> bool:
    return Evaluator(s, max_steps).eval(f, assignment)


def find_witness(s: Structure, f: Formula, x: Var, assignment: dict[Var, int] | None = None):
    """Least domain element making ``f`` true at ``x``, or ``None``."""
    ev = Evaluator(s)
    base = dict(assignment or {})
    for v in s.domain(x.sort):
        base[x] = v
        if ev.eval(f, base):
            return v
    return None


# ------------------------------------------------------------------ dumps

def dump(m: FiniteModel) -> str:
    lines = [f"sorts {m.sorts}"]
    lines.append("domain 0: " + ",".join(str(c) for c in m.domain(0)))
    for k in range(1, m.sorts + 1):
        lines.append(f"domain {k}: subsets-of {k - 1} ({m.sizes[k]} elements)")
    table = m.vbar_table()
    lines.append("vbar: " + ",".join(f"{a}->{b}" for a, b in table.items()))
    return "\n".join(lines) + "\n"


def parse_dump(text: str, budget: Budget = DEFAULT_BUDGET) -> FiniteModel:
    """Rebuild a model from :func:`dump` output, checking every line."""
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("sorts "):
        raise ValueError("model dump must start with 'sorts k'")
    head = lines[0].split()
    if len(head) != 2 or not head[1].isdigit():
        raise ValueError("bad 'sorts k' header")
    sorts = int(head[1])
    if len(lines) != sorts + 3:
        raise ValueError(f"expected {sorts + 3} lines, found {len(lines)}")
    dom0_line = lines[1]
    if not dom0_line.startswith("domain 0:"):
        raise ValueError("missing 'domain 0:' line")
    try:
        codes = [int(c) for c in dom0_line.split(":", 1)[1].split(",") if c.strip()]
    except ValueError:
        raise ValueError("domain 0 must list integer codes") from None
    size = len(codes)
    n = 0
    while hc.level_size(n + 1, budget) != size:
        n += 1
        if n > 8:
            raise ValueError("domain 0 is not a von Neumann level")
    m = build_hf_model(n, sorts, budget)
    if m is OVERFLOW:
        raise ValueError("model does not fit the budget")
    if codes != list(m.domain(0)):
        raise ValueError("domain 0 is not the expected level")
    for k in range(1, sorts + 1):
        if lines[1 + k] != f"domain {k}: subsets-of {k - 1} ({m.sizes[k]} elements)":
            raise ValueError(f"unexpected line for sort {k}")
    vline = lines[sorts + 2]
    if not vline.startswith("vbar:"):
        raise ValueError("missing vbar table")
    pairs = vline.split(":", 1)[1].replace("→", "->").split(",")
    try:
        table = {int(a): int(b) for a, b in (p.split("->") for p in pairs if p.strip())}
    except ValueError:
        raise ValueError("vbar table must list 'code->code' pairs") from None
    if table != m.vbar_table():
        raise ValueError("vbar table does not match the level")
    return m
