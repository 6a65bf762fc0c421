"""Many-sorted first-order formulas: AST, parser, printer and fragment classifier.

Concrete syntax (the printer emits exactly this, ASCII only)::

    F ::= forall x[:n] [in t | <= t] . F  |  exists ... . F
        | F <-> F | F -> F | F or F | F and F | not F | (F) | atom
    atom ::= t = t | t in t | t eps_n t | t <= t | name(t, ...) | name[p](t, ...)
    t ::= t + t | t * t | 2^t | S(t) | V(t) | P(t) | f(t) | x[:n] | digits | (t)

Numerals are constants: in arithmetic they denote numbers, in set formulas
they denote Ackermann codes.  ``V`` and ``P`` stand for the rank-level and
powerset functions.  Unicode aliases (``∀ ∃ ∈ ¬ ∧ ∨ → ↔ ≤ ε``) are accepted
on input.
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

# ------------------------------------------------------------------ terms


@dataclass(frozen=True)
class Var:
    name: str
    sort: int = 0

    def __repr__(self) -> str:
        return f"{self.name}:{self.sort}" if self.sort else self.name


@dataclass(frozen=True)
class Num:
    value: int

    def __post_init__(self) -> None:
        if self.value < 0:
            raise ValueError("numerals are natural numbers")


@dataclass(frozen=True)
class App:
    fn: str
    args: tuple["Term", ...]

    def __post_init__(self) -> None:
        if self.fn not in FUNCTIONS:
            raise ValueError(f"unknown function symbol {self.fn!r}")
        if len(self.args) != FUNCTIONS[self.fn]:
            raise ValueError(f"{self.fn} takes {FUNCTIONS[self.fn]} argument(s)")


Term = Union[Var, Num, App]

# Function symbols and arities.  ``on``/``card`` turn a numeral into the
# ordinal/cardinal naming it; ``vack``/``pack`` are the arithmetic images of
# V and P under the Ackermann coding.
FUNCTIONS = {
    "V": 1, "P": 1, "on": 1, "card": 1,
    "S": 1, "+": 2, "*": 2, "exp2": 1, "vack": 1, "pack": 1,
}
SET_FUNCTIONS = {"V", "P", "on", "card"}
ARITH_FUNCTIONS = {"S", "+", "*", "exp2", "vack", "pack"}
GRAPH_FUNCTIONS = {"S", "+", "*", "exp2"}
CONSTANT_FUNCTIONS = {"on", "card"}

# Defined predicates: name -> (arity, signature, takes a [param]).
DEFINED = {
    "ord": (1, "set", False),
    "nat": (1, "set", False),
    "hf": (1, "set", False),
    "vminus": (1, "set", True),
    "osucc": (2, "set", False),
    "oadd": (3, "set", False),
    "omul": (3, "set", False),
    "oexp2": (2, "set", False),
    "iscard": (1, "set", False),
    "cadd": (3, "set", False),
    "cmul": (3, "set", False),
    "cexp2": (2, "set", False),
    "inj": (2, "set", False),
    "lvl": (1, "arith", False),
    "cut": (1, "arith", True),
    "proves": (2, "arith", True),
}

# ---------------------------------------------------------------- formulas


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple[Term, ...]
    param: str | None = None


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class ForAll:
    var: Var
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: Var
    body: "Formula"


@dataclass(frozen=True)
class BoundedForAll:
    var: Var
    rel: str  # "in" or "<="
    bound: Term
    body: "Formula"


@dataclass(frozen=True)
class BoundedExists:
    var: Var
    rel: str
    bound: Term
    body: "Formula"


Formula = Union[Atom, Not, And, Or, Implies, Iff, ForAll, Exists, BoundedForAll, BoundedExists]
BINARY = (And, Or, Implies, Iff)
UNBOUNDED = (ForAll, Exists)
BOUNDED = (BoundedForAll, BoundedExists)
QUANTIFIERS = UNBOUNDED + BOUNDED


class FormulaClass(enum.Enum):
    DELTA0_SET_PV = "Delta0set(P,V)"
    DELTA0_SET_V = "Delta0set(V)"
    PI1_SET = "Pi1set"
    DELTA0_PRED = "Delta0pred"
    PI1_PRED = "Pi1pred"
    SIGMA1 = "Sigma1"
    UNCLASSIFIED = "Unclassified"


class ParseError(ValueError):
    def __init__(self, message: str, pos: int) -> None:
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class SortError(ValueError):
    def __init__(self, message: str, atom: object = None) -> None:
        super().__init__(message)
        self.atom = atom


# ------------------------------------------------------------ constructors

def v(name: str, sort: int = 0) -> Var:
    return Var(name, sort)


def eq(a: Term, b: Term) -> Atom:
    return Atom("=", (a, b))


def member(a: Term, b: Term) -> Atom:
    sa = term_sort(a)
    return Atom("in", (a, b)) if sa == 0 and term_sort(b) == 0 else Atom("eps", (a, b))


def le(a: Term, b: Term) -> Atom:
    return Atom("<=", (a, b))


def conj(*fs: Formula) -> Formula:
    out = fs[0]
    for f in fs[1:]:
        out = And(out, f)
    return out


def disj(*fs: Formula) -> Formula:
    out = fs[0]
    for f in fs[1:]:
        out = Or(out, f)
    return out


def forall(vs: Iterable[Var], body: Formula) -> Formula:
    for x in reversed(list(vs)):
        body = ForAll(x, body)
    return body


def exists(vs: Iterable[Var], body: Formula) -> Formula:
    for x in reversed(list(vs)):
        body = Exists(x, body)
    return body


def S(t: Term) -> App:
    return App("S", (t,))


def numeral(n: int) -> Term:
    """The term ``S(...S(0))`` with ``n`` successors."""
    t: Term = Num(0)
    for _ in range(n):
        t = S(t)
    return t


# ------------------------------------------------------------------ sorts

def term_sort(t: Term) -> int:
    return t.sort if isinstance(t, Var) else 0


def check_sorts(f: Formula) -> None:
    """Raise :class:`SortError` on the first ill-sorted atom or binder."""
    for node in subformulas(f):
        if isinstance(node, Atom):
            _check_atom(node)
        elif isinstance(node, BOUNDED):
            sb, sv = term_sort(node.bound), node.var.sort
            if node.rel == "<=" and (sb or sv):
                raise SortError("<= bound must be sort 0", node)
            if node.rel == "in" and sb not in (sv, sv + 1):
                raise SortError("membership bound has the wrong sort", node)
            if node.rel == "in" and sb == sv and sv != 0:
                raise SortError("'in' relates sort-0 objects only", node)
    for t in all_terms(f):
        if isinstance(t, App):
            for a in t.args:
                if term_sort(a):
                    raise SortError(f"{t.fn} applied to a higher-sort argument", t)
            if t.fn in CONSTANT_FUNCTIONS and not isinstance(t.args[0], Num):
                raise SortError(f"{t.fn} takes a numeral", t)


def _check_atom(a: Atom) -> None:
    ss = [term_sort(t) for t in a.args]
    if a.pred == "=":
        if ss[0] != ss[1]:
            raise SortError("equality between different sorts", a)
    elif a.pred == "in":
        if ss != [0, 0]:
            raise SortError("'in' relates sort-0 objects only", a)
    elif a.pred == "eps":
        if ss[1] != ss[0] + 1:
            raise SortError("eps_n needs sorts n and n+1", a)
    elif any(ss):
        raise SortError(f"{a.pred} takes sort-0 arguments", a)


# ---------------------------------------------------------------- walking

def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, Atom):
        return ()
    if isinstance(f, Not):
        return (f.body,)
    if isinstance(f, BINARY):
        return (f.left, f.right)
    return (f.body,)


def subformulas(f: Formula) -> Iterator[Formula]:
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(reversed(children(g)))


def subterms(t: Term) -> Iterator[Term]:
    yield t
    if isinstance(t, App):
        for a in t.args:
            yield from subterms(a)


def all_terms(f: Formula) -> Iterator[Term]:
    for g in subformulas(f):
        if isinstance(g, Atom):
            for a in g.args:
                yield from subterms(a)
        elif isinstance(g, BOUNDED):
            yield from subterms(g.bound)


def term_vars(t: Term) -> frozenset[Var]:
    return frozenset(s for s in subterms(t) if isinstance(s, Var))


def free_vars(f: Formula) -> frozenset[Var]:
    if isinstance(f, Atom):
        out: set[Var] = set()
        for a in f.args:
            out |= term_vars(a)
        return frozenset(out)
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, BINARY):
        return free_vars(f.left) | free_vars(f.right)
    inner = free_vars(f.body) - {f.var}
    if isinstance(f, BOUNDED):
        inner |= term_vars(f.bound)
    return inner


def all_vars(f: Formula) -> frozenset[Var]:
    out = set(free_vars(f))
    for g in subformulas(f):
        if isinstance(g, QUANTIFIERS):
            out.add(g.var)
    return frozenset(out)


def sorts_used(f: Formula) -> frozenset[int]:
    return frozenset(x.sort for x in all_vars(f)) | {0}


def size(f: Formula) -> int:
    """Node count of formulas and terms."""
    n = 0
    for g in subformulas(f):
        n += 1
        if isinstance(g, Atom):
            n += sum(sum(1 for _ in subterms(a)) for a in g.args)
        elif isinstance(g, BOUNDED):
            n += sum(1 for _ in subterms(g.bound))
    return n


def rebuild(f: Formula, kids: tuple[Formula, ...]) -> Formula:
    if isinstance(f, Not):
        return Not(kids[0])
    if isinstance(f, BINARY):
        return type(f)(kids[0], kids[1])
    if isinstance(f, UNBOUNDED):
        return type(f)(f.var, kids[0])
    if isinstance(f, BOUNDED):
        return type(f)(f.var, f.rel, f.bound, kids[0])
    return f


# ------------------------------------------------------------ substitution

def subst_term(t: Term, x: Var, s: Term) -> Term:
    if t == x:
        return s
    if isinstance(t, App):
        return App(t.fn, tuple(subst_term(a, x, s) for a in t.args))
    return t


def fresh_var(base: Var, avoid: Iterable[Var]) -> Var:
    names = {a.name for a in avoid}
    stem = base.name.rstrip("0123456789") or "v"
    for i in itertools.count(1):
        cand = f"{stem}{i}"
        if cand not in names:
            return Var(cand, base.sort)
    raise AssertionError  # pragma: no cover


def substitute(f: Formula, x: Var, t: Term) -> Formula:
    """Capture-avoiding substitution of ``t`` for the free occurrences of ``x``."""
    if term_sort(t) != x.sort:
        raise SortError(f"cannot substitute a sort-{term_sort(t)} term for {x!r}")
    tv = term_vars(t)

    def go(g: Formula) -> Formula:
        if isinstance(g, Atom):
            return Atom(g.pred, tuple(subst_term(a, x, t) for a in g.args), g.param)
        if isinstance(g, QUANTIFIERS):
            bound = subst_term(g.bound, x, t) if isinstance(g, BOUNDED) else None
            if g.var == x:
                return g if bound is None else type(g)(g.var, g.rel, bound, g.body)
            if x not in free_vars(g.body):
                return g if bound is None else type(g)(g.var, g.rel, bound, g.body)
            var, body = g.var, g.body
            if var in tv:
                nv = fresh_var(var, all_vars(g.body) | tv | {x})
                body = substitute(body, var, nv)
                var = nv
            body = go(body)
            if bound is None:
                return type(g)(var, body)
            return type(g)(var, g.rel, bound, body)
        return rebuild(g, tuple(go(c) for c in children(g)))

    return go(f)


def is_free_for(f: Formula, x: Var, t: Term) -> bool:
    """True iff substituting ``t`` for ``x`` in ``f`` captures nothing."""
    tv = term_vars(t)

    def go(g: Formula, bound: frozenset[Var]) -> bool:
        if isinstance(g, Atom):
            if any(x in term_vars(a) for a in g.args):
                return not (tv & bound)
            return True
        if isinstance(g, QUANTIFIERS):
            if isinstance(g, BOUNDED) and x in term_vars(g.bound) and tv & bound:
                return False
            if g.var == x:
                return True
            return go(g.body, bound | {g.var})
        return all(go(c, bound) for c in children(g))

    return go(f, frozenset())


def canonical(f: Formula) -> Formula:
    """Rename bound variables to positional names; free variables are kept."""
    counter = itertools.count()

    def rn_term(t: Term, env: dict[Var, Var]) -> Term:
        if isinstance(t, Var):
            return env.get(t, t)
        if isinstance(t, App):
            return App(t.fn, tuple(rn_term(a, env) for a in t.args))
        return t

    def go(g: Formula, env: dict[Var, Var]) -> Formula:
        if isinstance(g, Atom):
            return Atom(g.pred, tuple(rn_term(a, env) for a in g.args), g.param)
        if isinstance(g, QUANTIFIERS):
            nv = Var(f"%{next(counter)}", g.var.sort)
            inner = {**env, g.var: nv}
            if isinstance(g, BOUNDED):
                return type(g)(nv, g.rel, rn_term(g.bound, env), go(g.body, inner))
            return type(g)(nv, go(g.body, inner))
        return rebuild(g, tuple(go(c, env) for c in children(g)))

    return go(f, {})


def alpha_eq(f: Formula, g: Formula) -> bool:
    return canonical(f) == canonical(g)


def rename_free(f: Formula, mapping: dict[Var, Term]) -> Formula:
    """Simultaneous capture-avoiding substitution."""
    tmp = {}
    avoid = all_vars(f) | frozenset().union(*(term_vars(t) for t in mapping.values()))
    out = f
    for x in mapping:
        z = fresh_var(Var("q", x.sort), avoid | set(tmp.values()))
        tmp[x] = z
        out = substitute(out, x, z)
    for x, t in mapping.items():
        out = substitute(out, tmp[x], t)
    return out


# ----------------------------------------------------------------- lexing

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+)
  | (?P<eps>eps_\d+|ε_?\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<op><->|->|<=|↔|→|≤|[().,:=+*^\[\]/∀∃∈¬∧∨])
    """,
    re.VERBOSE,
)

_ALIASES = {"∀": "forall", "∃": "exists", "∈": "in", "¬": "not", "∧": "and",
            "∨": "or", "→": "->", "↔": "<->", "≤": "<="}
_KEYWORDS = {"forall", "exists", "in", "not", "and", "or"}


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _lex(text: str) -> list[_Tok]:
    out: list[_Tok] = []
    i = 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if not m:
            raise ParseError(f"unexpected character {text[i]!r}", i)
        kind = m.lastgroup
        tok = m.group(0)
        if kind != "ws":
            if kind == "op" and tok in _ALIASES:
                tok = _ALIASES[tok]
                kind = "ident" if tok in _KEYWORDS else "op"
            if kind == "eps":
                tok = "eps_" + tok.lstrip("epsε_")
            out.append(_Tok(kind, tok, i))
        i = m.end()
    out.append(_Tok("eof", "", len(text)))
    return out


# ---------------------------------------------------------------- parsing

class _Parser:
    def __init__(self, text: str) -> None:
        self.toks = _lex(text)
        self.i = 0
        self.scope: list[Var] = []

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> _Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self) -> _Tok:
        t = self.tok
        self.i += 1
        return t

    def expect(self, text: str) -> _Tok:
        if self.tok.text != text:
            raise ParseError(f"expected {text!r}, found {self.tok.text or 'end of input'!r}", self.tok.pos)
        return self.take()

    def at(self, *texts: str) -> bool:
        return self.tok.text in texts and self.tok.kind in ("op", "ident")

    # formulas
    def formula(self) -> Formula:
        if self.at("forall", "exists"):
            return self.quantifier()
        return self.iff()

    def quantifier(self) -> Formula:
        kind = self.take().text
        var = self.binder_var()
        rel = bound = None
        if self.at("in", "<="):
            rel = self.take().text
            at = self.tok.pos
            bound = self.term()
            if var in term_vars(bound):
                raise ParseError(f"bound variable {var!r} occurs in its own bound", at)
        self.expect(".")
        self.scope.append(var)
        try:
            body = self.formula()
        finally:
            self.scope.pop()
        if bound is None:
            return ForAll(var, body) if kind == "forall" else Exists(var, body)
        cls = BoundedForAll if kind == "forall" else BoundedExists
        return cls(var, rel, bound, body)

    def binder_var(self) -> Var:
        t = self.take()
        if t.kind != "ident" or t.text in _KEYWORDS:
            raise ParseError("expected a variable", t.pos)
        sort = 0
        if self.at(":"):
            self.take()
            n = self.take()
            if n.kind != "num":
                raise ParseError("expected a sort index", n.pos)
            sort = int(n.text)
        return Var(t.text, sort)

    def iff(self) -> Formula:
        left = self.implies()
        if self.at("<->"):
            self.take()
            right = self.implies()
            return Iff(left, right)
        return left

    def implies(self) -> Formula:
        left = self.disj()
        if self.at("->"):
            self.take()
            return Implies(left, self.implies())
        return left

    def disj(self) -> Formula:
        left = self.conj()
        while self.at("or"):
            self.take()
            left = Or(left, self.conj())
        return left

    def conj(self) -> Formula:
        left = self.unary()
        while self.at("and"):
            self.take()
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        if self.at("not"):
            self.take()
            return Not(self.unary())
        if self.at("forall", "exists"):
            return self.quantifier()
        if self.at("("):
            # a parenthesis may open a formula or a term; try formula first
            save = self.i
            self.take()
            first: ParseError | None = None
            try:
                f = self.formula()
                self.expect(")")
                if not self._at_relation():
                    return f
            except ParseError as e:
                first = e
            self.i = save
            try:
                return self.atom()
            except ParseError as e:
                # report whichever reading got further into the text
                if first is not None and first.pos > e.pos:
                    raise first from None
                raise
        return self.atom()

    def _at_relation(self) -> bool:
        return self.at("=", "in", "<=", "+", "*") or self.tok.kind == "eps"

    def atom(self) -> Formula:
        t = self.tok
        if t.kind == "ident" and t.text in DEFINED and self.peek().text in ("(", "["):
            return self.defined_atom()
        pos = t.pos
        left = self.term()
        if self.at("="):
            self.take()
            return self._sorted(Atom("=", (left, self.term())), pos)
        if self.at("in"):
            self.take()
            return self._sorted(member_atom(left, self.term()), pos)
        if self.at("<="):
            self.take()
            return self._sorted(Atom("<=", (left, self.term())), pos)
        if self.tok.kind == "eps":
            n = int(self.take().text[4:])
            right = self.term()
            a = Atom("eps", (left, right))
            if term_sort(left) != n:
                raise SortError(f"eps_{n} expects a sort-{n} left argument", a)
            return self._sorted(a, pos)
        raise ParseError(f"expected a relation, found {self.tok.text or 'end of input'!r}", self.tok.pos)

    def _sorted(self, a: Atom, pos: int) -> Atom:
        _check_atom(a)
        return a

    def defined_atom(self) -> Atom:
        name = self.take().text
        arity, _, has_param = DEFINED[name]
        param = None
        if self.at("["):
            self.take()
            start = self.tok.pos
            parts = []
            while not self.at("]"):
                if self.tok.kind == "eof":
                    raise ParseError("unterminated parameter", start)
                parts.append(self.take().text)
            self.take()
            param = "".join(parts)
        if has_param and param is None:
            raise ParseError(f"{name} needs a [parameter]", self.tok.pos)
        if not has_param and param is not None:
            raise ParseError(f"{name} takes no parameter", self.tok.pos)
        self.expect("(")
        args = [self.term()]
        while self.at(","):
            self.take()
            args.append(self.term())
        self.expect(")")
        if len(args) != arity:
            raise ParseError(f"{name} takes {arity} argument(s)", self.tok.pos)
        return Atom(name, tuple(args), param)

    # terms
    def term(self) -> Term:
        left = self.product()
        while self.at("+"):
            self.take()
            left = App("+", (left, self.product()))
        return left

    def product(self) -> Term:
        left = self.power()
        while self.at("*"):
            self.take()
            left = App("*", (left, self.power()))
        return left

    def power(self) -> Term:
        if self.tok.kind == "num" and self.tok.text == "2" and self.peek().text == "^":
            self.take()
            self.take()
            return App("exp2", (self.power(),))
        return self.primary()

    def primary(self) -> Term:
        t = self.tok
        if t.kind == "num":
            self.take()
            return Num(int(t.text))
        if t.text == "(":
            self.take()
            inner = self.term()
            self.expect(")")
            return inner
        if t.kind == "ident" and t.text not in _KEYWORDS:
            if t.text in FUNCTIONS and self.peek().text == "(":
                self.take()
                self.take()
                args = [self.term()]
                while self.at(","):
                    self.take()
                    args.append(self.term())
                self.expect(")")
                if len(args) != FUNCTIONS[t.text]:
                    raise ParseError(f"{t.text} takes {FUNCTIONS[t.text]} argument(s)", t.pos)
                return App(t.text, tuple(args))
            self.take()
            if self.at(":"):
                self.take()
                n = self.take()
                if n.kind != "num":
                    raise ParseError("expected a sort index", n.pos)
                return Var(t.text, int(n.text))
            for b in reversed(self.scope):
                if b.name == t.text:
                    return b
            return Var(t.text, 0)
        raise ParseError(f"expected a term, found {t.text or 'end of input'!r}", t.pos)


def member_atom(a: Term, b: Term) -> Atom:
    return Atom("in", (a, b))


def parse(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    if p.tok.kind != "eof":
        raise ParseError(f"unexpected {p.tok.text!r}", p.tok.pos)
    check_sorts(f)
    return f


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    if p.tok.kind != "eof":
        raise ParseError(f"unexpected {p.tok.text!r}", p.tok.pos)
    return t


# --------------------------------------------------------------- printing

_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4, Not: 5}
_SYM = {Iff: "<->", Implies: "->", Or: "or", And: "and"}


def print_term(t: Term, shadow: frozenset[str] = frozenset(), level: int = 0) -> str:
    """Levels: 0 sum, 1 product, 2 power operand."""
    if isinstance(t, Var):
        if t.sort or t.name in shadow:
            return f"{t.name}:{t.sort}"
        return t.name
    if isinstance(t, Num):
        return str(t.value)
    if t.fn == "+":
        s = f"{print_term(t.args[0], shadow, 0)} + {print_term(t.args[1], shadow, 1)}"
        return f"({s})" if level > 0 else s
    if t.fn == "*":
        s = f"{print_term(t.args[0], shadow, 1)} * {print_term(t.args[1], shadow, 2)}"
        return f"({s})" if level > 1 else s
    if t.fn == "exp2":
        return "2^" + print_term(t.args[0], shadow, 2)
    return f"{t.fn}(" + ", ".join(print_term(a, shadow) for a in t.args) + ")"


def to_text(f: Formula) -> str:
    """Canonical ASCII rendering; ``parse(to_text(f)) == f``."""
    return _pf(f, 0, {})


def _shadowed(env: dict[str, int]) -> frozenset[str]:
    return frozenset(env)


def _pt(t: Term, env: dict[str, int]) -> str:
    # names whose innermost binder has a different sort must carry their sort
    def needs(x: Var) -> bool:
        return x.name in env and env[x.name] != x.sort

    shadow = frozenset(x.name for x in term_vars(t) if needs(x))
    return print_term(t, shadow)


def _pf(f: Formula, ctx: int, env: dict[str, int]) -> str:
    if isinstance(f, Atom):
        return _patom(f, env)
    if isinstance(f, Not):
        return "not " + _pf(f.body, 5, env)
    if isinstance(f, BINARY):
        p = _PREC[type(f)]
        if isinstance(f, Implies):
            lp, rp = p + 1, p
        elif isinstance(f, Iff):
            lp, rp = p + 1, p + 1
        else:
            lp, rp = p, p + 1
        s = f"{_pf(f.left, lp, env)} {_SYM[type(f)]} {_pf(f.right, rp, env)}"
        return f"({s})" if ctx > p else s
    kind = "forall" if isinstance(f, (ForAll, BoundedForAll)) else "exists"
    var = f.var.name + (f":{f.var.sort}" if f.var.sort else "")
    head = f"{kind} {var}"
    if isinstance(f, BOUNDED):
        head += f" {f.rel} {_pt(f.bound, env)}"
    inner = {**env, f.var.name: f.var.sort}
    s = f"{head} . {_pf(f.body, 0, inner)}"
    return f"({s})" if ctx > 0 else s


def _patom(a: Atom, env: dict[str, int]) -> str:
    if a.pred in DEFINED:
        p = f"[{a.param}]" if a.param is not None else ""
        return f"{a.pred}{p}(" + ", ".join(_pt(t, env) for t in a.args) + ")"
    l, r = (_pt(t, env) for t in a.args)
    if a.pred == "eps":
        return f"{l} eps_{term_sort(a.args[0])} {r}"
    return f"{l} {a.pred} {r}"


# ---------------------------------------------------------- classification

def _atomic(t: Term) -> bool:
    if isinstance(t, (Var, Num)):
        return True
    return t.fn in CONSTANT_FUNCTIONS and isinstance(t.args[0], Num)


def is_pred_atom(a: Atom) -> bool:
    """Graph atoms of the predicate-only arithmetic language."""
    if a.pred in DEFINED:
        return DEFINED[a.pred][1] == "arith" and all(_atomic(t) for t in a.args)
    if a.pred == "<=":
        return all(_atomic(t) for t in a.args)
    if a.pred != "=":
        return False
    l, r = a.args
    if not _atomic(l):
        return False
    if _atomic(r):
        return True
    # graph arguments are variables: the signature has no constant symbols
    return isinstance(r, App) and r.fn in GRAPH_FUNCTIONS and all(isinstance(t, Var) for t in r.args)


def _signature(f: Formula) -> set[str]:
    sig: set[str] = set()
    for g in subformulas(f):
        if isinstance(g, Atom):
            if g.pred in ("in", "eps"):
                sig.add("set")
            elif g.pred == "<=":
                sig.add("arith")
            elif g.pred in DEFINED:
                sig.add(DEFINED[g.pred][1])
        elif isinstance(g, BOUNDED):
            sig.add("set" if g.rel == "in" else "arith")
    for t in all_terms(f):
        if isinstance(t, App):
            sig.add("set" if t.fn in SET_FUNCTIONS else "arith")
    return sig


def is_delta0(f: Formula) -> bool:
    """Every quantifier bounded, and no bound variable occurs in its own bound."""
    for g in subformulas(f):
        if isinstance(g, UNBOUNDED):
            return False
        if isinstance(g, BOUNDED) and g.var in term_vars(g.bound):
            return False
    return True


def _set_bound_ok(t: Term) -> bool:
    return all(isinstance(s, (Var, Num)) or (isinstance(s, App) and s.fn in SET_FUNCTIONS)
               for s in subterms(t))


def is_delta0_set(f: Formula, allow_p: bool = True) -> bool:
    if not is_delta0(f) or "arith" in _signature(f):
        return False
    for g in subformulas(f):
        if isinstance(g, BOUNDED) and (g.rel != "in" or not _set_bound_ok(g.bound)):
            return False
    if not allow_p and any(isinstance(t, App) and t.fn == "P" for t in all_terms(f)):
        return False
    return True


def is_delta0_pred(f: Formula) -> bool:
    if not is_delta0(f) or "set" in _signature(f):
        return False
    for g in subformulas(f):
        if isinstance(g, Atom) and not is_pred_atom(g):
            return False
        if isinstance(g, BOUNDED) and (g.rel != "<=" or not _atomic(g.bound)):
            return False
    return True


def is_pred_only(f: Formula) -> bool:
    """Predicate-only arithmetic, quantifiers unrestricted."""
    if "set" in _signature(f):
        return False
    for g in subformulas(f):
        if isinstance(g, Atom) and not is_pred_atom(g):
            return False
        if isinstance(g, BOUNDED) and (g.rel != "<=" or not _atomic(g.bound)):
            return False
    return True


def _strip(f: Formula, cls: type) -> Formula:
    while isinstance(f, cls):
        f = f.body
    return f


def is_pi1_set(f: Formula) -> bool:
    return is_delta0_set(_strip(f, ForAll))


def is_pi1_pred(f: Formula) -> bool:
    return is_delta0_pred(_strip(f, ForAll))


def is_sigma1(f: Formula) -> bool:
    body = _strip(f, Exists)
    return is_delta0(body) and len(_signature(body) & {"set", "arith"}) <= 1


def classify(f: Formula) -> FormulaClass:
    """Most specific fragment containing ``f``; set classes win ties."""
    if is_delta0_set(f, allow_p=False):
        return FormulaClass.DELTA0_SET_V
    if is_delta0_set(f):
        return FormulaClass.DELTA0_SET_PV
    if is_delta0_pred(f):
        return FormulaClass.DELTA0_PRED
    if is_pi1_set(f):
        return FormulaClass.PI1_SET
    if is_pi1_pred(f):
        return FormulaClass.PI1_PRED
    if is_sigma1(f):
        return FormulaClass.SIGMA1
    return FormulaClass.UNCLASSIFIED


# ---------------------------------------------------------- fun_to_pred

def fun_to_pred(f: Formula) -> Formula:
    """Flatten nested function terms into graph atoms.

    Each non-atomic argument gets a fresh variable defined by a graph atom.
    In positive positions the definitions are existential
    (``exists z . z = t and ...``); in negative positions universal
    (``forall z . z = t -> ...``).  Already predicate-only atoms are kept.
    """
    taken = {x.name for x in all_vars(f)}
    counter = itertools.count(1)

    def fresh() -> Var:
        while True:
            name = f"t{next(counter)}"
            if name not in taken:
                taken.add(name)
                return Var(name)

    def flat(t: Term, defs: list[Atom]) -> Term:
        if _atomic(t):
            return t
        args = tuple(flat_arg(a, defs) for a in t.args)
        z = fresh()
        defs.append(Atom("=", (z, App(t.fn, args))))
        return z

    def flat_arg(t: Term, defs: list[Atom]) -> Term:
        if isinstance(t, Var):
            return t
        if isinstance(t, Num):
            z = fresh()
            defs.append(Atom("=", (z, t)))
            return z
        return flat(t, defs)

    def wrap(defs: list[Atom], core: Formula, positive: bool) -> Formula:
        if not defs:
            return core
        zs = [d.args[0] for d in defs]
        if positive:
            return exists(zs, conj(*defs, core))
        return forall(zs, Implies(conj(*defs), core))

    def atom(a: Atom, positive: bool) -> Formula:
        if is_pred_atom(a) or (a.pred not in ("=", "<=") and a.pred not in DEFINED):
            if is_pred_atom(a) or all(_atomic(t) for t in a.args):
                return a
        defs: list[Atom] = []
        if a.pred == "=":
            l, r = a.args
            if not _atomic(l) and _atomic(r):
                l, r = r, l
            if not _atomic(l):
                l = flat(l, defs)
            if isinstance(r, App) and r.fn in GRAPH_FUNCTIONS:
                r = App(r.fn, tuple(flat_arg(x, defs) for x in r.args))
            else:
                r = flat(r, defs)
            core = Atom("=", (l, r))
        else:
            core = Atom(a.pred, tuple(flat(x, defs) for x in a.args), a.param)
        return wrap(defs, core, positive)

    def go(g: Formula, positive: bool) -> Formula:
        if isinstance(g, Atom):
            return atom(g, positive)
        if isinstance(g, Not):
            return Not(go(g.body, not positive))
        if isinstance(g, Implies):
            return Implies(go(g.left, not positive), go(g.right, positive))
        if isinstance(g, Iff):
            return Iff(go(g.left, True), go(g.right, True))
        if isinstance(g, (And, Or)):
            return type(g)(go(g.left, positive), go(g.right, positive))
        if isinstance(g, UNBOUNDED):
            return type(g)(g.var, go(g.body, positive))
        defs: list[Atom] = []
        b = flat(g.bound, defs)
        inner = type(g)(g.var, g.rel, b, go(g.body, positive))
        return wrap(defs, inner, positive)

    return go(f, True)
