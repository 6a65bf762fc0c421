"""Interpretations as syntax-directed formula translators.

Set-side outputs use graph predicates (``oadd``, ``cadd`` ...) instead of
function symbols, since the target theories only know partial functions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from . import folang as fl
from . import ordcard as oc
from .folang import (
    And, App, Atom, BoundedExists, BoundedForAll, Exists, ForAll, Formula, Iff,
    Implies, Not, Num, Or, Term, Var,
)
from .hfcore import OVERFLOW

KINDS = ("ACK", "CRD", "ON", "NAT", "NAT_minus", "SUM", "HF_rel", "Cut_rel", "R_in_H")


class TranslationError(ValueError):
    pass


@dataclass(frozen=True)
class InterpretationId:
    kind: str
    n: int | None = None
    scale: Fraction | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown interpretation {self.kind!r}")
        if self.kind == "NAT_minus" and (self.n is None or self.n < 0):
            raise ValueError("NAT_minus needs n >= 0")
        if self.kind == "Cut_rel":
            if self.scale is None or self.scale <= 0:
                raise ValueError("cut scale must be positive")
            object.__setattr__(self, "scale", Fraction(self.scale))

    def __str__(self) -> str:
        if self.kind == "NAT_minus":
            return f"NAT-{self.n}"
        if self.kind == "Cut_rel":
            return f"CUT:{self.scale}"
        return {"HF_rel": "HF", "R_in_H": "R_in_H"}.get(self.kind, self.kind)


def parse_interp(text: str) -> InterpretationId:
    """``ACK``, ``CRD``, ``ON``, ``NAT``, ``NAT-3``, ``SUM``, ``HF``, ``CUT:3/2``, ``R_in_H``."""
    t = text.strip()
    up = t.upper()
    if up.startswith("NAT-") or up.startswith("NAT_MINUS:"):
        return InterpretationId("NAT_minus", n=int(t.split("-" if "-" in t else ":", 1)[1]))
    if up.startswith("CUT"):
        _, _, sc = t.partition(":")
        try:
            return InterpretationId("Cut_rel", scale=Fraction(sc or "1"))
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"bad cut scale {sc!r}") from e
    alias = {"HF": "HF_rel", "HF_REL": "HF_rel", "R_IN_H": "R_in_H", "RH": "R_in_H",
             "ACK": "ACK", "CRD": "CRD", "ON": "ON", "NAT": "NAT", "SUM": "SUM"}
    if up not in alias:
        raise ValueError(f"unknown interpretation {text!r}")
    return InterpretationId(alias[up])


# ---------------------------------------------------------------- helpers

class _Fresh:
    def __init__(self, avoid: Iterable[Var]) -> None:
        self.taken = {v.name for v in avoid}

    def __call__(self, stem: str, sort: int = 0) -> Var:
        name = stem
        for i in itertools.count(1):
            if name not in self.taken:
                break
            name = f"{stem}{i}"
        self.taken.add(name)
        return Var(name, sort)


def _eq(a: Term, b: Term) -> Atom:
    return Atom("=", (a, b))


def _in(a: Term, b: Term) -> Atom:
    return Atom("in", (a, b))


def _le(a: Term, b: Term) -> Atom:
    return Atom("<=", (a, b))


def _app(fn: str, *args: Term) -> App:
    return App(fn, tuple(args))


def _pred(name: str, *args: Term, param: str | None = None) -> Atom:
    return Atom(name, tuple(args), param)


def _require(ok: bool, msg: str) -> None:
    if not ok:
        raise TranslationError(msg)


def _relativize(f: Formula, guard: Callable[[Var], Formula | None],
                atom: Callable[[Atom], Formula],
                bounded: Callable[[Formula, Formula], Formula] | None = None) -> Formula:
    """Map atoms, and guard each unbounded quantifier with ``guard(var)``."""

    def go(g: Formula) -> Formula:
        if isinstance(g, Atom):
            return atom(g)
        if isinstance(g, Not):
            return Not(go(g.body))
        if isinstance(g, fl.BINARY):
            return type(g)(go(g.left), go(g.right))
        if isinstance(g, fl.UNBOUNDED):
            body = go(g.body)
            gd = guard(g.var)
            if gd is None:
                return type(g)(g.var, body)
            if isinstance(g, ForAll):
                return ForAll(g.var, Implies(gd, body))
            return Exists(g.var, And(gd, body))
        if bounded is None:
            return type(g)(g.var, g.rel, g.bound, go(g.body))
        return bounded(g, go(g.body))

    return go(f)


# ------------------------------------------------------------------- ACK

def ack_membership(a: Term, b: Term, fresh: _Fresh) -> Formula:
    """``a in_Ack b``: the ``a``-th bit of ``b`` is one."""
    z, w = fresh("z"), fresh("w")
    top = _app("exp2", _app("S", a))
    body = fl.conj(_eq(b, _app("+", _app("*", z, top), w)),
                   Not(_le(top, w)),
                   _le(_app("exp2", a), w))
    return BoundedExists(z, "<=", b, BoundedExists(w, "<=", b, body))


def ack_translate(f: Formula) -> Formula:
    """Sets become their Ackermann codes; V and P become ``vack``/``pack``."""
    for g in fl.subformulas(f):
        if isinstance(g, fl.QUANTIFIERS):
            _require(g.var.sort == 0, "ACK takes sort-0 formulas only")
        if isinstance(g, Atom):
            _require(g.pred in ("=", "in"), f"ACK cannot translate the atom {fl.to_text(g)}")
            for t in g.args:
                _require(fl.term_sort(t) == 0, "ACK takes sort-0 formulas only")
        if isinstance(g, fl.BOUNDED):
            _require(g.rel == "in", "ACK expects set-bounded quantifiers")
    for t in fl.all_terms(f):
        _require(not (isinstance(t, App) and t.fn in fl.ARITH_FUNCTIONS),
                 "ACK input must be in the set signature")
    fresh = _Fresh(fl.all_vars(f))

    def term(t: Term) -> Term:
        if isinstance(t, (Var, Num)):
            return t
        if t.fn in ("on", "card"):
            _require(isinstance(t.args[0], Num), f"{t.fn} takes a numeral")
            val = (oc.on if t.fn == "on" else oc.k_iso)(t.args[0].value)
            _require(val is not OVERFLOW, f"{t.fn}({t.args[0].value}) exceeds the budget")
            return Num(val)
        return _app("vack" if t.fn == "V" else "pack", term(t.args[0]))

    def atom(a: Atom) -> Formula:
        l, r = (term(t) for t in a.args)
        return _eq(l, r) if a.pred == "=" else ack_membership(l, r, fresh)

    def bounded(g: Formula, body: Formula) -> Formula:
        b = term(g.bound)
        guard = ack_membership(g.var, b, fresh)
        if isinstance(g, BoundedForAll):
            return BoundedForAll(g.var, "<=", b, Implies(guard, body))
        return BoundedExists(g.var, "<=", b, And(guard, body))

    return _relativize(f, lambda v: None, atom, bounded)


# ------------------------------------------------------------------- CRD

def _card_num(t: Term) -> Term:
    return _app("card", t) if isinstance(t, Num) else t


def crd_le(a: Term, b: Term, fresh: _Fresh) -> Formula:
    """Some member of ``a`` injects into the members of ``b``."""
    p, q = fresh("p"), fresh("q")
    return BoundedExists(p, "in", a, BoundedForAll(q, "in", b, _pred("inj", p, q)))


def crd_translate(f: Formula) -> Formula:
    """Numbers become ZF cardinals; arithmetic becomes cardinal arithmetic graphs."""
    _require("set" not in fl._signature(f), "CRD takes arithmetic formulas")
    for g in fl.subformulas(f):
        if isinstance(g, Atom):
            _require(g.pred in ("=", "<="), f"CRD cannot translate the atom {fl.to_text(g)}")
    for t in fl.all_terms(f):
        _require(not (isinstance(t, App) and t.fn in ("vack", "pack")),
                 "CRD takes the signature 0, S, +, *, 2^x")
    g = fl.fun_to_pred(f)
    fresh = _Fresh(fl.all_vars(g))

    def atom(a: Atom) -> Formula:
        if a.pred == "<=":
            return crd_le(_card_num(a.args[0]), _card_num(a.args[1]), fresh)
        lhs, rhs = a.args
        if not isinstance(rhs, App):
            return _eq(_card_num(lhs), _card_num(rhs))
        lhs = _card_num(lhs)
        args = [_card_num(t) for t in rhs.args]
        if rhs.fn == "S":
            return _pred("cadd", args[0], _app("card", Num(1)), lhs)
        if rhs.fn == "+":
            return _pred("cadd", args[0], args[1], lhs)
        if rhs.fn == "*":
            return _pred("cmul", args[0], args[1], lhs)
        return _pred("cexp2", args[0], lhs)

    def bounded(q: Formula, body: Formula) -> Formula:
        guard = And(_pred("iscard", q.var), crd_le(q.var, _card_num(q.bound), fresh))
        if isinstance(q, BoundedForAll):
            return ForAll(q.var, Implies(guard, body))
        return Exists(q.var, And(guard, body))

    return _relativize(g, lambda v: _pred("iscard", v), atom, bounded)


# ------------------------------------------------------------ ON and NAT

def _ord_num(t: Term) -> Term:
    if isinstance(t, Num):
        return Num(0) if t.value == 0 else _app("on", t)
    return t


def successor_graph(a: Term, b: Term, fresh: _Fresh) -> Formula:
    """``a = S(b)`` for ordinals, as the bounded form of ``forall u (u in a <-> u in b or u = b)``."""
    u1, u2 = fresh("u"), fresh("u")
    return fl.conj(BoundedForAll(u1, "in", a, Or(_in(u1, b), _eq(u1, b))),
                   BoundedForAll(u2, "in", b, _in(u2, a)),
                   _in(b, a))


def _check_pred_only(f: Formula, what: str) -> None:
    _require(fl.is_pred_only(f), f"{what} takes predicate-only arithmetic formulas")
    for g in fl.subformulas(f):
        if isinstance(g, Atom):
            _require(g.pred in ("=", "<="), f"{what} cannot translate the atom {fl.to_text(g)}")
    for t in fl.all_terms(f):
        _require(not (isinstance(t, App) and t.fn in fl.CONSTANT_FUNCTIONS),
                 f"{what} takes arithmetic numerals only")


def _ordinal_translate(f: Formula, guard: Callable[[Var], Formula], what: str) -> Formula:
    f = fl.fun_to_pred(f)
    _check_pred_only(f, what)
    fresh = _Fresh(fl.all_vars(f))

    def atom(a: Atom) -> Formula:
        if a.pred == "<=":
            x, y = (_ord_num(t) for t in a.args)
            return Or(_in(x, y), _eq(x, y))
        lhs, rhs = a.args
        lhs = _ord_num(lhs)
        if not isinstance(rhs, App):
            return _eq(lhs, _ord_num(rhs))
        args = [_ord_num(t) for t in rhs.args]
        if rhs.fn == "S":
            return successor_graph(lhs, args[0], fresh)
        if rhs.fn == "+":
            return _pred("oadd", args[0], args[1], lhs)
        if rhs.fn == "*":
            return _pred("omul", args[0], args[1], lhs)
        return _pred("oexp2", args[0], lhs)

    def bounded(q: Formula, body: Formula) -> Formula:
        # x <= b splits into x in b and x = b
        b = _ord_num(q.bound)
        at_b = fl.substitute(body, q.var, b)
        if isinstance(q, BoundedForAll):
            return And(BoundedForAll(q.var, "in", b, body), at_b)
        return Or(BoundedExists(q.var, "in", b, body), at_b)

    return _relativize(f, guard, atom, bounded)


def on_translate(f: Formula) -> Formula:
    """Numbers as ordinals; quantifiers relativized to ``ord``."""
    return _ordinal_translate(f, lambda v: _pred("ord", v), "ON")


def nat_translate(f: Formula) -> Formula:
    """Numbers as elements of ``Nat``."""
    return _ordinal_translate(f, lambda v: _pred("nat", v), "NAT")


def nat_minus_translate(n: int, f: Formula) -> Formula:
    """Numbers as elements of ``Nat`` lying in ``V^-n``."""
    _require(n >= 0, "n must be non-negative")
    return _ordinal_translate(
        f, lambda v: And(_pred("nat", v), _pred("vminus", v, param=str(n))), f"NAT-{n}")


# ----------------------------------------------------- relativizations

def _guarded(g: Formula, name: str, param: str | None) -> Formula | None:
    """Body below an existing ``name`` guard for ``g.var``, or ``None``."""
    want = Atom(name, (g.var,), param)
    if isinstance(g, ForAll) and isinstance(g.body, Implies) and g.body.left == want:
        return g.body.right
    if isinstance(g, Exists) and isinstance(g.body, And) and g.body.left == want:
        return g.body.right
    return None


def _guard_quantifiers(f: Formula, name: str, param: str | None, sorts: Iterable[int]) -> Formula:
    sorts = set(sorts)

    def go(g: Formula) -> Formula:
        if isinstance(g, Atom):
            return g
        if isinstance(g, Not):
            return Not(go(g.body))
        if isinstance(g, fl.BINARY):
            return type(g)(go(g.left), go(g.right))
        if isinstance(g, fl.BOUNDED) or g.var.sort not in sorts:
            return type(g)(*_rebuild_args(g, go(g.body)))
        inner = _guarded(g, name, param)
        body = go(inner if inner is not None else g.body)
        guard = Atom(name, (g.var,), param)
        if isinstance(g, ForAll):
            return ForAll(g.var, Implies(guard, body))
        return Exists(g.var, And(guard, body))

    return go(f)


def _rebuild_args(g: Formula, body: Formula) -> tuple:
    if isinstance(g, fl.BOUNDED):
        return (g.var, g.rel, g.bound, body)
    return (g.var, body)


def hf_relativize(f: Formula) -> Formula:
    """Guard every unbounded sort-0 quantifier with ``hf``; idempotent."""
    return _guard_quantifiers(f, "hf", None, {0})


def cut_relativize(f: Formula, scale: Fraction | int | str = 1) -> Formula:
    """Guard every unbounded quantifier with ``cut[scale]``; idempotent."""
    a = Fraction(scale)
    _require(a > 0, "cut scale must be positive")
    _require("set" not in fl._signature(f), "cut relativization takes arithmetic formulas")
    return _guard_quantifiers(f, "cut", str(a), {0})


# ------------------------------------------------------------------- SUM

Pair = tuple[Term, Term]


class _SumBuilder:
    """Builds the pair-interpretations of the predicate-only atoms."""

    def __init__(self, fresh: _Fresh) -> None:
        self.fresh = fresh

    def eq(self, x: Pair, y: Pair) -> Formula:
        z = self.fresh("z")
        (x1, x2), (y1, y2) = x, y
        return Or(BoundedExists(z, "<=", y1, And(_eq(y1, _app("+", x1, z)), _eq(x2, _app("+", y2, z)))),
                  BoundedExists(z, "<=", y2, And(_eq(y2, _app("+", x2, z)), _eq(x1, _app("+", y1, z)))))

    def _two(self, x: Pair, y: Pair, link: Callable[[Var, Var], Formula]) -> Formula:
        (x1, x2), (y1, y2) = x, y
        z1, z2 = self.fresh("z"), self.fresh("z")

        def side(a1, a2, b1, b2):
            return BoundedExists(z1, "<=", b1, BoundedExists(z2, "<=", b1, fl.conj(
                link(z1, z2), _eq(b1, _app("+", a1, z2)), _eq(a2, _app("+", b2, z1)))))

        return Or(side(x1, x2, y1, y2), side(x2, x1, y2, y1))

    def le(self, x: Pair, y: Pair) -> Formula:
        (x1, x2), (y1, y2) = x, y
        # both components below: not covered by the two crossing disjuncts
        return Or(self._two(x, y, lambda a, b: _le(a, b)), And(_le(x1, y1), _le(x2, y2)))

    def succ(self, x: Pair, y: Pair) -> Formula:
        """``S(x) =* y``."""
        return self._two(x, y, lambda a, b: _eq(b, _app("S", a)))

    def _min(self, z: Var, p: Term, r: Term) -> Formula:
        return fl.conj(_le(z, p), _le(z, r), Or(_eq(z, p), _eq(z, r)))

    def _distribute(self, parts: list[Term], y: Pair, tail: Formula | None = None) -> Formula:
        """Split every part ``p`` as ``p = a + b`` with the ``a`` summing to ``y1``, ``b`` to ``y2``.

        The split is the greedy one (each ``a`` as large as the rest of ``y1``
        allows); a splitting exists iff the greedy one works.
        """
        y1, y2 = y
        fresh = self.fresh

        def step(i: int, r: Term, q: Term | None) -> Formula:
            if i == len(parts):
                end = And(_eq(r, Num(0)), _eq(q, y2))
                return end if tail is None else And(end, tail)
            p = parts[i]
            a, b, r2 = fresh("w"), fresh("w"), fresh("r")
            if q is None:
                # first part: the running sum of the b's is b itself
                rest = step(i + 1, r2, b)
            else:
                q2 = fresh("q")
                rest = BoundedExists(q2, "<=", y2, And(_eq(q2, _app("+", q, b)),
                                                       step(i + 1, r2, q2)))
            return BoundedExists(a, "<=", y1, And(self._min(a, p, r),
                   BoundedExists(b, "<=", y2, And(_eq(p, _app("+", a, b)),
                   BoundedExists(r2, "<=", y1, And(_eq(r, _app("+", a, r2)), rest))))))

        return step(0, y1, None)

    def add(self, x: Pair, u: Pair, y: Pair) -> Formula:
        """``x + u =* y`` via splittings of the four components."""
        return self._distribute([x[0], x[1], u[0], u[1]], y)

    def _halve(self, c: Term, k: Callable[[Var, Var], Formula]) -> Formula:
        h, g = self.fresh("h"), self.fresh("h")
        return BoundedExists(h, "<=", c, BoundedExists(g, "<=", c, fl.conj(
            _eq(c, _app("+", h, g)), Or(_eq(g, h), _eq(g, _app("S", h))), k(h, g))))

    def mul(self, x: Pair, u: Pair, y: Pair) -> Formula:
        """``x * u =* y``: components halved, 16 partial products each bounded
        by ``max(y1, y2)`` and distributed between ``y1`` and ``y2``."""
        y1, y2 = y

        def body(m: Term) -> Formula:
            comps = [x[0], x[1], u[0], u[1]]
            halves: list[Var] = []

            def nest(i: int) -> Formula:
                if i < 4:
                    return self._halve(comps[i], lambda h, g: (halves.extend([h, g]), nest(i + 1))[1])
                left, right = halves[:4], halves[4:]
                prods: list[tuple[Var, Term, Term]] = []
                for a in left:
                    for b in right:
                        prods.append((self.fresh("p"), a, b))
                inner = self._distribute([p for p, _, _ in prods], y)
                for p, a, b in reversed(prods):
                    inner = BoundedExists(p, "<=", m, And(_eq(p, _app("*", a, b)), inner))
                return inner

            return nest(0)

        return Or(And(_le(y2, y1), body(y1)), And(_le(y1, y2), body(y2)))

    def exp(self, x: Pair, y: Pair) -> Formula:
        """``2^x =* y``, with ``z' = x1 + x2 - 1`` and ``w = 2^z'`` doubled."""
        (x1, x2), (y1, y2) = x, y
        zero = And(_eq(x1, Num(0)), _eq(x2, Num(0)))
        base = Or(And(_eq(y1, Num(0)), _eq(y2, Num(1))), And(_eq(y1, Num(1)), _eq(y2, Num(0))))

        def body(m: Term) -> Formula:
            z, zp, w = self.fresh("z"), self.fresh("z"), self.fresh("w")
            return BoundedExists(z, "<=", m, And(_eq(z, _app("+", x1, x2)),
                   BoundedExists(zp, "<=", z, And(_eq(z, _app("S", zp)),
                   BoundedExists(w, "<=", m, And(_eq(w, _app("exp2", zp)),
                                                 self.eq((w, w), y)))))))

        return Or(And(zero, base),
                  And(Not(zero), Or(And(_le(y2, y1), body(y1)), And(_le(y1, y2), body(y2)))))


def sum_translate(f: Formula) -> Formula:
    """Each number becomes a pair ``(x_1, x_2)`` standing for ``x_1 + x_2``."""
    f = fl.fun_to_pred(f)
    _check_pred_only(f, "SUM")
    fresh = _Fresh(fl.all_vars(f))
    pairs: dict[Var, Pair] = {}

    def pair_of(v: Var) -> Pair:
        if v not in pairs:
            pairs[v] = (fresh(f"{v.name}_1"), fresh(f"{v.name}_2"))
        return pairs[v]

    for v in sorted(fl.all_vars(f), key=lambda v: v.name):
        pair_of(v)
    sb = _SumBuilder(fresh)

    def bound_pair(t: Term) -> Pair:
        return (t, Num(0)) if isinstance(t, Num) else pairs[t]

    def atom(a: Atom) -> Formula:
        # a numeral n becomes a pair (c, d) pinned by c = n and d = 0, so
        # every emitted graph atom has variable arguments
        nums: list[tuple[Num, Var, Var]] = []

        def pair(t: Term) -> Pair:
            if isinstance(t, Num):
                c, d = fresh("c"), fresh("c")
                nums.append((t, c, d))
                return (c, d)
            return pairs[t]

        core = atom_core(a, pair)
        for n, c, d in reversed(nums):
            core = BoundedExists(c, "<=", n, BoundedExists(d, "<=", Num(0), fl.conj(
                _eq(c, n), _eq(d, Num(0)), core)))
        return core

    def atom_core(a: Atom, pair: Callable[[Term], Pair]) -> Formula:
        if a.pred == "<=":
            return sb.le(pair(a.args[0]), pair(a.args[1]))
        lhs, rhs = a.args
        y = pair(lhs)
        if not isinstance(rhs, App):
            return sb.eq(y, pair(rhs))
        args = [pair(t) for t in rhs.args]
        if rhs.fn == "S":
            return sb.succ(args[0], y)
        if rhs.fn == "+":
            return sb.add(args[0], args[1], y)
        if rhs.fn == "*":
            return sb.mul(args[0], args[1], y)
        return sb.exp(args[0], y)

    def go(g: Formula) -> Formula:
        if isinstance(g, Atom):
            return atom(g)
        if isinstance(g, Not):
            return Not(go(g.body))
        if isinstance(g, fl.BINARY):
            return type(g)(go(g.left), go(g.right))
        v1, v2 = pairs[g.var]
        body = go(g.body)
        if isinstance(g, fl.UNBOUNDED):
            return type(g)(v1, type(g)(v2, body))
        # pairs with v1 <= b1 and v2 <= b2 reach every value up to b1 + b2
        b1, b2 = bound_pair(g.bound)
        return type(g)(v1, "<=", b1, type(g)(v2, "<=", b2, body))

    return go(f)


def sum_pair_vars(f: Formula) -> dict[Var, Pair]:
    """The pair variables ``sum_translate`` assigns to the variables of ``f``."""
    f = fl.fun_to_pred(f)
    fresh = _Fresh(fl.all_vars(f))
    out = {}
    for v in sorted(fl.all_vars(f), key=lambda v: v.name):
        out[v] = (fresh(f"{v.name}_1"), fresh(f"{v.name}_2"))
    return out


# ---------------------------------------------------------------- R in H

def _numeral_value(t: Term) -> int | None:
    n = 0
    while isinstance(t, App) and t.fn == "S":
        n += 1
        t = t.args[0]
    return n + t.value if isinstance(t, Num) else None


_R_GRAPH = {"S": "osucc", "+": "oadd", "*": "omul"}


def r_in_h_translate(f: Formula) -> Formula:
    """Finite ordinals; ``S``, ``+``, ``*`` made total with value 0 where undefined."""
    _require("set" not in fl._signature(f), "R_in_H takes arithmetic formulas")
    for g in fl.subformulas(f):
        if isinstance(g, Atom):
            _require(g.pred in ("=", "<="), f"R_in_H cannot translate the atom {fl.to_text(g)}")
    for t in fl.all_terms(f):
        _require(not (isinstance(t, App) and t.fn not in _R_GRAPH),
                 "R_in_H takes the signature 0, S, +, *")
    fresh = _Fresh(fl.all_vars(f))

    def graph(fn: str, args: list[Term], u: Var) -> Formula:
        name = _R_GRAPH[fn]
        g = _pred(name, *args, u)
        v = fresh("v")
        undefined = Not(Exists(v, And(_pred("nat", v), _pred(name, *args, v))))
        return Or(g, And(undefined, _eq(u, Num(0))))

    def flat(t: Term, defs: list) -> Term:
        n = _numeral_value(t)
        if n is not None:
            return _ord_num(Num(n))
        if isinstance(t, Var):
            return t
        args = [flat(a, defs) for a in t.args]
        u = fresh("u")
        defs.append((u, graph(t.fn, args, u)))
        return u

    def wrap(defs: list, core: Formula, positive: bool) -> Formula:
        for u, g in reversed(defs):
            guard = And(_pred("nat", u), g)
            core = Exists(u, And(guard, core)) if positive else ForAll(u, Implies(guard, core))
        return core

    def atom(a: Atom, positive: bool) -> Formula:
        defs: list = []
        l, r = (flat(t, defs) for t in a.args)
        core = _eq(l, r) if a.pred == "=" else Or(_in(l, r), _eq(l, r))
        return wrap(defs, core, positive)

    def go(g: Formula, positive: bool) -> Formula:
        if isinstance(g, Atom):
            return atom(g, positive)
        if isinstance(g, Not):
            return Not(go(g.body, not positive))
        if isinstance(g, Implies):
            return Implies(go(g.left, not positive), go(g.right, positive))
        if isinstance(g, Iff):
            # the totalized graphs are functional, so either wrapping is exact
            return Iff(go(g.left, True), go(g.right, True))
        if isinstance(g, (And, Or)):
            return type(g)(go(g.left, positive), go(g.right, positive))
        if isinstance(g, fl.UNBOUNDED):
            guard = _pred("nat", g.var)
            body = go(g.body, positive)
            if isinstance(g, ForAll):
                return ForAll(g.var, Implies(guard, body))
            return Exists(g.var, And(guard, body))
        defs: list = []
        b = flat(g.bound, defs)
        le = Or(_in(g.var, b), _eq(g.var, b))
        guard = fl.conj(_pred("nat", g.var), le)
        body = go(g.body, positive)
        inner = (ForAll(g.var, Implies(guard, body)) if isinstance(g, BoundedForAll)
                 else Exists(g.var, And(guard, body)))
        return wrap(defs, inner, positive)

    return go(f, True)


# ---------------------------------------------------------------- dispatch

def translate(iid: InterpretationId | str, f: Formula) -> Formula:
    if isinstance(iid, str):
        iid = parse_interp(iid)
    k = iid.kind
    if k == "ACK":
        return ack_translate(f)
    if k == "CRD":
        return crd_translate(f)
    if k == "ON":
        return on_translate(f)
    if k == "NAT":
        return nat_translate(f)
    if k == "NAT_minus":
        return nat_minus_translate(iid.n, f)
    if k == "SUM":
        return sum_translate(f)
    if k == "HF_rel":
        return hf_relativize(f)
    if k == "Cut_rel":
        return cut_relativize(f, iid.scale)
    return r_in_h_translate(f)
