"""Axiom systems: fixed axioms, scheme recognizers and instance streams.

Theories: H, H<w, Hw, Hw<w, EAset, EAsetAlt, EA and R.  Fixed axioms are
stored open and emitted as universal closures; a formula is recognized as a
fixed axiom when it is some universal closure of an alpha-variant.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from . import folang as fl
from .folang import (
    And, App, Atom, Exists, ForAll, Formula, Iff,
    Implies, Not, Num, Or, Var,
)

KINDS = ("H", "H_lt_omega", "H_omega", "H_omega_lt_omega", "EA_set", "EA_set_alt", "EA", "R")
_NAMES = {
    "H": "H", "H<w": "H_lt_omega", "Hw": "H_omega", "Hw<w": "H_omega_lt_omega",
    "EAset": "EA_set", "EAsetAlt": "EA_set_alt", "EA": "EA", "R": "R",
}
_CLI = {v: k for k, v in _NAMES.items()}
HIGHER = ("H_omega", "H_omega_lt_omega")


@dataclass(frozen=True)
class TheoryId:
    kind: str
    max_sort: int = 0

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown theory {self.kind!r}")
        if self.kind in HIGHER and self.max_sort < 1:
            raise ValueError("higher-order theories need max_sort >= 1")
        if self.kind not in HIGHER and self.max_sort != 0:
            raise ValueError(f"{self.kind} is single-sorted")

    @property
    def name(self) -> str:
        base = _CLI[self.kind]
        return f"{base}:{self.max_sort}" if self.kind in HIGHER else base

    @property
    def has_nmb(self) -> bool:
        return self.kind in ("H_lt_omega", "H_omega_lt_omega")

    @property
    def set_theoretic(self) -> bool:
        return self.kind not in ("EA", "R")


def parse_theory(text: str, default_sort: int = 2) -> TheoryId:
    """``Hw<w``, ``Hw<w:3``, ``EA`` ...; higher-order names take ``default_sort``."""
    base, _, sort = text.strip().partition(":")
    if base not in _NAMES:
        raise ValueError(f"unknown theory name {base!r}; expected one of {', '.join(_NAMES)}")
    kind = _NAMES[base]
    if kind in HIGHER:
        return TheoryId(kind, int(sort) if sort else default_sort)
    if sort:
        raise ValueError(f"{base} is single-sorted")
    return TheoryId(kind)


H = TheoryId("H")
H_LT_OMEGA = TheoryId("H_lt_omega")
EA_SET = TheoryId("EA_set")
EA_SET_ALT = TheoryId("EA_set_alt")
EA = TheoryId("EA")
R = TheoryId("R")


def h_omega(max_sort: int = 1) -> TheoryId:
    return TheoryId("H_omega", max_sort)


def h_omega_lt_omega(max_sort: int = 1) -> TheoryId:
    return TheoryId("H_omega_lt_omega", max_sort)


@dataclass(frozen=True)
class AxiomInstance:
    formula: Formula
    scheme: str
    params: tuple[tuple[str, object], ...] = ()

    def param(self, key: str):
        return dict(self.params).get(key)


@dataclass(frozen=True)
class SchemeDescriptor:
    scheme: str
    description: str
    instances: Callable[[], Iterator[AxiomInstance]] = field(compare=False)


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    scheme: str | None = None
    params: tuple[tuple[str, object], ...] = ()
    reason: str | None = None

    def param(self, key: str):
        return dict(self.params).get(key)

    def __bool__(self) -> bool:
        return self.accepted


# ---------------------------------------------------------------- helpers

P = fl.parse
x, y, z, w, u = (Var(c) for c in "xyzwu")
Y1 = Var("Y", 1)


def closure(f: Formula) -> Formula:
    """Universal closure, variables in order of first occurrence."""
    order: list[Var] = []
    for t in _occurrences(f):
        if t not in order:
            order.append(t)
    free = fl.free_vars(f)
    return fl.forall([v for v in order if v in free], f)


def _occurrences(f: Formula) -> Iterator[Var]:
    for g in fl.subformulas(f):
        if isinstance(g, Atom):
            for a in g.args:
                for s in fl.subterms(a):
                    if isinstance(s, Var):
                        yield s
        elif isinstance(g, fl.BOUNDED):
            for s in fl.subterms(g.bound):
                if isinstance(s, Var):
                    yield s


def strip_closure(f: Formula) -> tuple[list[Var], Formula]:
    """Peel a leading block of unbounded universals."""
    vs: list[Var] = []
    while isinstance(f, ForAll):
        vs.append(f.var)
        f = f.body
    return vs, f


def _canon_open(f: Formula) -> Formula:
    order: list[Var] = []
    free = fl.free_vars(f)
    for t in _occurrences(f):
        if t in free and t not in order:
            order.append(t)
    g = fl.canonical(f)
    mapping = {v: Var(f"&{i}", v.sort) for i, v in enumerate(order)}
    return fl.rename_free(g, mapping) if mapping else g


class _Mismatch(Exception):
    def __init__(self, path: str, msg: str) -> None:
        super().__init__(f"{path or 'top'}: {msg}")
        self.path = path


def first_difference(a: Formula, b: Formula, path: str = "") -> str | None:
    """Path to the first node where two formulas differ, or ``None``."""
    if type(a) is not type(b):
        return f"{path or 'top'}: expected {type(b).__name__}, found {type(a).__name__}"
    if isinstance(a, Atom):
        if a != b:
            return f"{path or 'top'}: expected {fl.to_text(b)}, found {fl.to_text(a)}"
        return None
    if isinstance(a, fl.QUANTIFIERS):
        if a.var.sort != b.var.sort:
            return f"{path or 'top'}: quantified sort differs"
        if isinstance(a, fl.BOUNDED) and (a.rel != b.rel or a.bound != b.bound):
            return f"{path or 'top'}: bound differs"
    for i, (ca, cb) in enumerate(zip(fl.children(a), fl.children(b))):
        d = first_difference(ca, cb, f"{path}/{type(a).__name__}[{i}]")
        if d:
            return d
    return None


def _match_closed(f: Formula) -> tuple[list[Var], Formula]:
    vs, body = strip_closure(f)
    if fl.free_vars(f):
        raise _Mismatch("", "formula is not closed")
    if len(set(vs)) != len(vs):
        raise _Mismatch("", "repeated variable in the universal prefix")
    return vs, body


# ------------------------------------------------------------ fixed axioms

EXT = P("forall x . forall y . (x = y <-> forall z . (z in x <-> z in y))")
V_DEF_H = P("forall y . forall x . (y in V(x) <-> exists z in x . forall u . (u in y -> u in V(z)))")
SEP_CLASS = P("forall x . forall Y:1 . exists z . forall w . (w in z <-> w in x and w eps_0 Y:1)")
P_DEF = P("forall x . forall y . (y in P(x) <-> forall u . (u in y -> u in x))")
V_DEF_EA = P("forall y . forall x . (y in V(x) <-> exists z in x . y in P(V(z)))")
REGULARITY = P("forall x . ((forall u . not u in x) or exists y in x . forall z in x . not z in y)")
V_TRANS = P("forall x . (forall u . (u in x -> u in V(x))) and (forall u . (u in V(x) -> u in P(V(x))))")
V_SUCC = P("forall x . ((forall u . not u in x) or exists y . V(x) = V(P(y)))")

EA_FIXED = {
    "EA1": P("forall x . not S(x) = 0"),
    "EA2": P("forall x . forall y . (S(x) = S(y) -> x = y)"),
    "EA3": P("forall x . x + 0 = x"),
    "EA4": P("forall x . forall y . x + S(y) = S(x + y)"),
    "EA5": P("forall x . x * 0 = 0"),
    "EA6": P("forall x . forall y . x * S(y) = x * y + x"),
    "EA7": P("2^0 = S(0)"),
    "EA8": P("forall x . 2^S(x) = 2^x + 2^x"),
    "EA9": P("forall x . (x <= 0 <-> x = 0)"),
    "EA10": P("forall x . forall y . (x <= S(y) <-> x <= y or x = S(y))"),
}


def fixed_axioms(t: TheoryId) -> dict[str, Formula]:
    k = t.kind
    if k in ("H", "H_lt_omega"):
        return {"Ext": EXT, "VDef": V_DEF_H}
    if k in HIGHER:
        return {"Ext": EXT, "Sep": SEP_CLASS, "VDef": V_DEF_H}
    if k == "EA_set":
        return {"Ext": EXT, "PDef": P_DEF, "VDef": V_DEF_EA}
    if k == "EA_set_alt":
        return {"Ext": EXT, "PDef": P_DEF, "VDef": V_DEF_EA, "Reg": REGULARITY,
                "VTrans": V_TRANS, "VSucc": V_SUCC}
    if k == "EA":
        return dict(EA_FIXED)
    return {}


def _is_fixed(f: Formula, template: Formula) -> str | None:
    """``None`` when ``f`` is a universal closure of an alpha-variant of ``template``."""
    if fl.free_vars(f):
        return "top: formula is not closed"
    _, tb = strip_closure(template)
    want = _canon_open(tb)
    vs, body = strip_closure(f)
    best = None
    # any split of the prefix: the leading universals close the matrix
    for cut in range(len(vs), -1, -1):
        mat = fl.forall(vs[cut:], body)
        if fl.free_vars(mat) != set(vs[:cut]) or len(set(vs[:cut])) != cut:
            continue
        d = first_difference(_canon_open(mat), want)
        if d is None:
            return None
        best = best or d
    return best or "top: prefix does not close the matrix"


# ------------------------------------------------------------------- Nmb

def nmb_formula(n: int, var: Var = x, depth: int = 0) -> Formula:
    """``Nmb_n(var)``: ``var`` is the von Neumann ordinal ``n``.

    Bound variables are ``y``/``z`` at depth 0 and ``y<d>``/``z<d>`` below.
    """
    suffix = "" if depth == 0 else str(depth)
    yv, zv = Var("y" + suffix), Var("z" + suffix)
    if n == 0:
        return ForAll(yv, Not(Atom("in", (yv, var))))
    inner = nmb_formula(n - 1, yv, depth + 1)
    succ = ForAll(zv, Iff(Atom("in", (zv, var)), Or(Atom("=", (zv, yv)), Atom("in", (zv, yv)))))
    return Exists(yv, And(inner, succ))


def nmb_axiom(n: int) -> Formula:
    return Exists(x, nmb_formula(n))


def nmb_index(g: Formula, v: Var, path: str = "") -> int:
    """Recover ``n`` from a formula alpha-equivalent to ``Nmb_n(v)``."""
    if isinstance(g, ForAll):
        b = g.body
        if (isinstance(b, Not) and isinstance(b.body, Atom) and b.body.pred == "in"
                and b.body.args == (g.var, v) and g.var != v):
            return 0
        raise _Mismatch(path, "Nmb_0 must read forall y . not y in x")
    if not isinstance(g, Exists) or not isinstance(g.body, And):
        raise _Mismatch(path, "expected exists y . (Nmb(y) and ...)")
    yv = g.var
    inner, succ = g.body.left, g.body.right
    if yv == v or yv.sort or v.sort:
        raise _Mismatch(path, "variable clash in Nmb")
    ok = (isinstance(succ, ForAll) and isinstance(succ.body, Iff)
          and succ.var not in (yv, v) and succ.var.sort == 0)
    if ok:
        zv = succ.var
        want = Iff(Atom("in", (zv, v)), Or(Atom("=", (zv, yv)), Atom("in", (zv, yv))))
        ok = succ.body == want
    if not ok:
        raise _Mismatch(path + "/And[1]", "expected forall z . (z in x <-> z = y or z in y)")
    if fl.free_vars(inner) != {yv}:
        raise _Mismatch(path + "/And[0]", "inner Nmb must only mention its own variable")
    return 1 + nmb_index(inner, yv, path + "/And[0]")


# ---------------------------------------------------------------- schemes

def separation_instance(phi: Formula, var: Var = z, bound: Var = x, target: Var = y) -> Formula:
    """``exists target . forall var . (var in target <-> var in bound and phi)``, closed."""
    if target in fl.free_vars(phi):
        raise ValueError("phi must not mention the separated set")
    body = Exists(target, ForAll(var, Iff(Atom("in", (var, target)),
                                          And(Atom("in", (var, bound)), phi))))
    return closure(body)


def _match_separation(f: Formula) -> dict:
    _, body = _match_closed(f)
    if not isinstance(body, Exists):
        raise _Mismatch("", "expected exists y . forall z . (...)")
    tgt = body.var
    inner = body.body
    if not isinstance(inner, ForAll) or not isinstance(inner.body, Iff):
        raise _Mismatch("/Exists[0]", "expected forall z . (z in y <-> ...)")
    var = inner.var
    lhs, rhs = inner.body.left, inner.body.right
    if lhs != Atom("in", (var, tgt)) or var == tgt or tgt.sort or var.sort:
        raise _Mismatch("/Exists[0]/ForAll[0]/Iff[0]", "expected z in y")
    if not (isinstance(rhs, And) and isinstance(rhs.left, Atom) and rhs.left.pred == "in"
            and rhs.left.args[0] == var and isinstance(rhs.left.args[1], Var)):
        raise _Mismatch("/Exists[0]/ForAll[0]/Iff[1]", "expected z in x and phi")
    bnd = rhs.left.args[1]
    if bnd in (var, tgt) or bnd.sort:
        raise _Mismatch("/Exists[0]/ForAll[0]/Iff[1]/And[0]", "bounding set clashes")
    phi = rhs.right
    if tgt in fl.free_vars(phi):
        raise _Mismatch("/Exists[0]/ForAll[0]/Iff[1]/And[1]", "phi mentions the separated set")
    return {"phi": phi, "var": var}


def adduction_instance(phi: Formula, var: Var = x) -> Formula:
    """The expanded official form of adduction induction for ``phi(var)``."""
    avoid = fl.all_vars(phi) | {var}
    names = iter(_fresh_names(avoid))
    a, b, c, e, d = (Var(next(names)) for _ in range(5))

    def at(v: Var) -> Formula:
        return fl.substitute(phi, var, v)

    base = Exists(a, And(ForAll(e, Not(Atom("in", (e, a)))), at(a)))
    step_guard = ForAll(d, Iff(Atom("in", (d, c)), Or(Atom("in", (d, a)), Atom("=", (d, b)))))
    step = fl.forall([a, b, c], Implies(And(And(at(a), at(b)), step_guard), at(c)))
    return closure(Implies(And(base, step), ForAll(var, phi)))


def _fresh_names(avoid: Iterable[Var]) -> Iterator[str]:
    taken = {v.name for v in avoid}
    for i in itertools.count(1):
        for stem in ("a", "b", "c", "e", "d"):
            cand = f"{stem}{i}"
            if cand not in taken:
                yield cand


def _match_adduction(f: Formula) -> dict:
    _, body = _match_closed(f)
    if not (isinstance(body, Implies) and isinstance(body.left, And)):
        raise _Mismatch("", "expected (base and step) -> forall x . phi")
    base, step = body.left.left, body.left.right
    concl = body.right
    if not isinstance(concl, ForAll):
        raise _Mismatch("/Implies[1]", "expected forall x . phi")
    var, phi = concl.var, concl.body

    def same(g: Formula, v: Var, path: str) -> None:
        if not fl.alpha_eq(g, fl.substitute(phi, var, v)):
            raise _Mismatch(path, f"expected phi({v.name})")

    if not (isinstance(base, Exists) and isinstance(base.body, And)):
        raise _Mismatch("/Implies[0]/And[0]", "expected exists x . (empty(x) and phi(x))")
    a = base.var
    empty = base.body.left
    if not (isinstance(empty, ForAll) and empty.body == Not(Atom("in", (empty.var, a)))
            and empty.var != a):
        raise _Mismatch("/Implies[0]/And[0]/Exists[0]/And[0]", "expected forall y . not y in x")
    if a in fl.free_vars(phi) and a != var:
        raise _Mismatch("/Implies[0]/And[0]", "witness variable clashes with a parameter")
    same(base.body.right, a, "/Implies[0]/And[0]/Exists[0]/And[1]")
    vs: list[Var] = []
    s = step
    while isinstance(s, ForAll) and len(vs) < 3:
        vs.append(s.var)
        s = s.body
    if len(vs) != 3 or len(set(vs)) != 3 or any(v.sort for v in vs):
        raise _Mismatch("/Implies[0]/And[1]", "expected forall x, y, z . (...)")
    a2, b2, c2 = vs
    if set(vs) & (fl.free_vars(phi) - {var}):
        raise _Mismatch("/Implies[0]/And[1]", "step variables clash with parameters")
    if not (isinstance(s, Implies) and isinstance(s.left, And) and isinstance(s.left.left, And)):
        raise _Mismatch("/Implies[0]/And[1]", "expected phi(x) and phi(y) and z = x U {y} -> phi(z)")
    same(s.left.left.left, a2, "/step/phi(x)")
    same(s.left.left.right, b2, "/step/phi(y)")
    g = s.left.right
    ok = isinstance(g, ForAll) and g.var not in vs and g.var.sort == 0
    if ok:
        d = g.var
        ok = g.body == Iff(Atom("in", (d, c2)), Or(Atom("in", (d, a2)), Atom("=", (d, b2))))
    if not ok:
        raise _Mismatch("/step/union", "expected forall w . (w in z <-> w in x or w = y)")
    same(s.right, c2, "/step/phi(z)")
    return {"phi": phi, "var": var}


def induction_instance(phi: Formula, var: Var = x) -> Formula:
    """``phi(0) and forall x . (phi(x) -> phi(S(x))) -> forall x . phi(x)``, closed."""
    base = fl.substitute(phi, var, Num(0))
    step = ForAll(var, Implies(phi, fl.substitute(phi, var, App("S", (var,)))))
    return closure(Implies(And(base, step), ForAll(var, phi)))


def _match_induction(f: Formula) -> dict:
    _, body = _match_closed(f)
    if not (isinstance(body, Implies) and isinstance(body.left, And)
            and isinstance(body.right, ForAll)):
        raise _Mismatch("", "expected phi(0) and step -> forall x . phi")
    var, phi = body.right.var, body.right.body
    if not fl.alpha_eq(body.left.left, fl.substitute(phi, var, Num(0))):
        raise _Mismatch("/Implies[0]/And[0]", "expected phi(0)")
    step = body.left.right
    if not (isinstance(step, ForAll) and isinstance(step.body, Implies)):
        raise _Mismatch("/Implies[0]/And[1]", "expected forall x . (phi(x) -> phi(S(x)))")
    v2 = step.var
    if v2 != var and v2 in fl.free_vars(phi):
        raise _Mismatch("/Implies[0]/And[1]", "step variable clashes with a parameter")
    if not fl.alpha_eq(step.body.left, fl.substitute(phi, var, v2)):
        raise _Mismatch("/Implies[0]/And[1]/ForAll[0]/Implies[0]", "expected phi(x)")
    if not fl.alpha_eq(step.body.right, fl.substitute(phi, var, App("S", (v2,)))):
        raise _Mismatch("/Implies[0]/And[1]/ForAll[0]/Implies[1]", "expected phi(S(x))")
    return {"phi": phi, "var": var}


def _arith_delta0(phi: Formula) -> bool:
    if not fl.is_delta0(phi):
        return False
    for g in fl.subformulas(phi):
        if isinstance(g, Atom) and g.pred in ("in", "eps"):
            return False
        if isinstance(g, fl.BOUNDED) and g.rel != "<=":
            return False
    return not any(isinstance(t, App) and t.fn in fl.SET_FUNCTIONS for t in fl.all_terms(phi))


# ------------------------------------------------------------- R numerals

def numeral_value(t) -> int | None:
    n = 0
    while isinstance(t, App) and t.fn == "S":
        n += 1
        t = t.args[0]
    return n if t == Num(0) else None


def r_instances(bound: int) -> list[AxiomInstance]:
    out: list[AxiomInstance] = []
    N = fl.numeral
    rng = range(bound + 1)
    for n in rng:
        for m in rng:
            out.append(AxiomInstance(Atom("=", (App("+", (N(n), N(m))), N(n + m))), "R1", (("n", n), ("m", m))))
    for n in rng:
        for m in rng:
            out.append(AxiomInstance(Atom("=", (App("*", (N(n), N(m))), N(n * m))), "R2", (("n", n), ("m", m))))
    for n in rng:
        for m in rng:
            if n != m:
                out.append(AxiomInstance(Not(Atom("=", (N(n), N(m)))), "R3", (("n", n), ("m", m))))
    for n in rng:
        out.append(AxiomInstance(r4(n), "R4", (("n", n),)))
        out.append(AxiomInstance(r5(n), "R5", (("n", n),)))
    return out


def r4(n: int) -> Formula:
    return ForAll(x, Implies(Atom("<=", (x, fl.numeral(n))),
                             fl.disj(*(Atom("=", (x, fl.numeral(i))) for i in range(n + 1)))))


def r5(n: int) -> Formula:
    return ForAll(x, Or(Atom("<=", (x, fl.numeral(n))), Atom("<=", (fl.numeral(n), x))))


def _match_r(f: Formula) -> tuple[str, dict]:
    if isinstance(f, Atom) and f.pred == "=" and isinstance(f.args[0], App) and f.args[0].fn in "+*":
        a, b = (numeral_value(t) for t in f.args[0].args)
        c = numeral_value(f.args[1])
        if None in (a, b, c):
            raise _Mismatch("", "expected numerals")
        if f.args[0].fn == "+":
            if a + b != c:
                raise _Mismatch("/Atom[1]", f"{a} + {b} is not {c}")
            return "R1", {"n": a, "m": b}
        if a * b != c:
            raise _Mismatch("/Atom[1]", f"{a} * {b} is not {c}")
        return "R2", {"n": a, "m": b}
    if isinstance(f, Not) and isinstance(f.body, Atom) and f.body.pred == "=":
        a, b = (numeral_value(t) for t in f.body.args)
        if None in (a, b) or a == b:
            raise _Mismatch("/Not[0]", "expected two distinct numerals")
        return "R3", {"n": a, "m": b}
    if isinstance(f, ForAll) and isinstance(f.body, Implies):
        le = f.body.left
        if isinstance(le, Atom) and le.pred == "<=" and le.args[0] == f.var:
            n = numeral_value(le.args[1])
            if n is not None:
                d = first_difference(f, ForAll(f.var, r4(n).body if f.var == x else
                                               fl.substitute(r4(n).body, x, f.var)))
                if d is None:
                    return "R4", {"n": n}
                raise _Mismatch("", d)
    if isinstance(f, ForAll) and isinstance(f.body, Or):
        le = f.body.left
        if isinstance(le, Atom) and le.pred == "<=":
            n = numeral_value(le.args[1])
            if n is not None and fl.alpha_eq(f, r5(n)):
                return "R5", {"n": n}
    raise _Mismatch("", "not an instance of an R axiom")


# ---------------------------------------------------------- recognition

def is_axiom(t: TheoryId, f: Formula) -> Verdict:
    """Scheme id and parameters when ``f`` is an axiom of ``t``; else the first mismatch."""
    reasons: list[str] = []
    for name, tmpl in fixed_axioms(t).items():
        d = _is_fixed(f, tmpl)
        if d is None:
            return Verdict(True, name)
        reasons.append(f"{name}: {d}")
    for scheme, matcher in _schemes(t):
        try:
            params = matcher(f)
        except _Mismatch as e:
            if e.path == _SHAPE_OK:
                # the scheme's shape matched; only its side condition failed
                return Verdict(False, reason=f"{scheme}: {e}")
            reasons.append(f"{scheme}: {e}")
            continue
        if isinstance(params, tuple):
            scheme, params = params
        return Verdict(True, scheme, tuple(sorted(params.items(), key=lambda kv: kv[0])))
    return Verdict(False, reason=_closest(reasons))


def _closest(reasons: list[str]) -> str:
    if not reasons:
        return "theory has no axioms of this shape"
    return max(reasons, key=lambda r: r.count("/"))


def _schemes(t: TheoryId) -> list[tuple[str, Callable[[Formula], dict]]]:
    k = t.kind
    out: list[tuple[str, Callable]] = []
    if k in ("H", "H_lt_omega"):
        out.append(("Sep", _match_separation))
    if k == "EA_set":
        out.append(("Sep", _checked(_match_separation, lambda p: fl.is_delta0_set(p),
                                    "phi is not Delta0(P,V)")))
        out.append(("Adduction", _checked(_match_adduction, lambda p: fl.is_delta0_set(p),
                                          "phi is not Delta0(P,V)")))
    if k == "EA_set_alt":
        out.append(("Sep", _checked(_match_separation,
                                    lambda p: fl.is_delta0_set(p, allow_p=False),
                                    "phi is not Delta0(V)")))
    if k == "EA":
        out.append(("Ind", _checked(_match_induction, _arith_delta0, "phi is not Delta0")))
    if t.has_nmb:
        out.append(("Nmb", _match_nmb_axiom))
    if k == "R":
        out.append(("R", _match_r))
    return out


_SHAPE_OK = "/phi"


def _checked(matcher, test, msg):
    def run(f: Formula) -> dict:
        params = matcher(f)
        if not test(params["phi"]):
            raise _Mismatch(_SHAPE_OK, msg)
        return params
    return run


def _match_nmb_axiom(f: Formula) -> dict:
    if not isinstance(f, Exists) or fl.free_vars(f):
        raise _Mismatch("", "expected exists x . Nmb_n(x)")
    return {"n": nmb_index(f.body, f.var, "/Exists[0]")}


# -------------------------------------------------------------- generation

def _phi_pool(delta0: str | None) -> list[Formula]:
    """Small separation/induction bodies in the variable ``z`` with parameter ``p``."""
    if delta0 == "arith":
        atoms = [fl.parse(s) for s in (
            "z = z", "z = 0", "z <= p", "p <= z", "z = S(p)", "z + z = p", "z * z = z",
            "2^z = p", "z <= S(S(0))")]
        quant = [fl.parse(s) for s in (
            "exists q <= z . q + q = z", "forall q <= z . q <= p",
            "exists q <= p . z = S(q)")]
    else:
        atoms = [fl.parse(s) for s in (
            "z = z", "z in p", "p in z", "z = p", "z in z", "z in V(p)", "z in P(p)",
            "V(z) = z", "P(z) = p")]
        quant = [fl.parse(s) for s in (
            "forall q in z . q in p", "exists q in z . q = p", "exists q in V(z) . z in q",
            "forall q in P(p) . q in z")]
        if delta0 == "setV":
            atoms = [a for a in atoms if not _uses(a, "P")]
            quant = [q for q in quant if not _uses(q, "P")]
    base = atoms + quant
    out = list(base)
    out += [Not(a) for a in base]
    out += [And(a, b) for a, b in itertools.product(atoms, atoms) if a != b]
    out += [Or(a, b) for a, b in itertools.product(atoms, atoms) if a != b]
    if delta0 is None:
        out += [fl.parse("exists q . q in z"), fl.parse("forall q . (q in z -> q in p)")]
    return sorted(out, key=lambda f: (fl.size(f), fl.to_text(f)))


def _uses(f: Formula, fn: str) -> bool:
    return any(isinstance(t, App) and t.fn == fn for t in fl.all_terms(f))


def _sep_stream(kind: str | None) -> Callable[[], Iterator[AxiomInstance]]:
    def gen() -> Iterator[AxiomInstance]:
        for phi in _phi_pool(kind):
            yield AxiomInstance(separation_instance(phi), "Sep", (("phi", phi), ("var", z)))
    return gen


def _add_stream() -> Iterator[AxiomInstance]:
    for phi in _phi_pool("setPV"):
        phi_x = fl.substitute(phi, z, x)
        yield AxiomInstance(adduction_instance(phi_x, x), "Adduction", (("phi", phi_x), ("var", x)))


def _ind_stream() -> Iterator[AxiomInstance]:
    for phi in _phi_pool("arith"):
        phi_x = fl.substitute(phi, z, x)
        yield AxiomInstance(induction_instance(phi_x, x), "Ind", (("phi", phi_x), ("var", x)))


def _nmb_stream() -> Iterator[AxiomInstance]:
    for n in itertools.count():
        yield AxiomInstance(nmb_axiom(n), "Nmb", (("n", n),))


def core_axioms(t: TheoryId, bound: int = 3) -> list:
    """Fixed axioms as instances, schemes as descriptors; numeral instances up to ``bound``."""
    out: list = [AxiomInstance(f, name) for name, f in fixed_axioms(t).items()]
    k = t.kind
    if k in ("H", "H_lt_omega"):
        out.append(SchemeDescriptor("Sep", "separation for any first-order phi", _sep_stream(None)))
    if k == "EA_set":
        out.append(SchemeDescriptor("Sep", "Delta0(P,V) separation", _sep_stream("setPV")))
        out.append(SchemeDescriptor("Adduction", "Delta0(P,V) adduction induction", _add_stream))
    if k == "EA_set_alt":
        out.append(SchemeDescriptor("Sep", "Delta0(V) separation", _sep_stream("setV")))
    if k == "EA":
        out.append(SchemeDescriptor("Ind", "Delta0 induction", _ind_stream))
    if t.has_nmb:
        out += [AxiomInstance(nmb_axiom(n), "Nmb", (("n", n),)) for n in range(bound + 1)]
        out.append(SchemeDescriptor("Nmb", "existence of each finite ordinal", _nmb_stream))
    if k == "R":
        out += r_instances(bound)
    return out


def instances(t: TheoryId, limit: int, bound: int = 3) -> list[AxiomInstance]:
    """Fixed axioms followed by up to ``limit`` instances of each scheme."""
    out: list[AxiomInstance] = []
    for item in core_axioms(t, bound):
        if isinstance(item, AxiomInstance):
            out.append(item)
        else:
            out += list(itertools.islice(item.instances(), limit))
    seen: set = set()
    uniq = []
    for a in out:
        if a.formula not in seen:
            seen.add(a.formula)
            uniq.append(a)
    return uniq
