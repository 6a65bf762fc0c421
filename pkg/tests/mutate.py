"""Every one-symbol mutation of a formula: one node changed, everything else kept."""

from __future__ import annotations

from typing import Iterator

from hfkit import folang as fl
from hfkit.folang import (
    And, App, Atom, BoundedExists, BoundedForAll, Exists, ForAll, Iff, Implies, Not, Num, Or, Var,
)

_CONNECTIVES = (And, Or, Implies, Iff)
_FLIP = {ForAll: Exists, Exists: ForAll, BoundedForAll: BoundedExists, BoundedExists: BoundedForAll}
_FN_SWAP = {"V": ["P"], "P": ["V"], "S": ["exp2"], "exp2": ["S"], "+": ["*"], "*": ["+"]}
_PRED_SWAP = {"=": ["in", "<="], "in": ["="], "<=": ["="], "eps": ["="]}


def _term_mutants(t: fl.Term, names: list[Var]) -> Iterator[fl.Term]:
    if isinstance(t, Var):
        for v in names:
            if v != t and v.sort == t.sort:
                yield v
    elif isinstance(t, Num):
        yield Num(t.value + 1)
        if t.value:
            yield Num(t.value - 1)
    else:
        for fn in _FN_SWAP.get(t.fn, []):
            if fl.FUNCTIONS[fn] == len(t.args):
                yield App(fn, t.args)
        for i, a in enumerate(t.args):
            for m in _term_mutants(a, names):
                yield App(t.fn, t.args[:i] + (m,) + t.args[i + 1:])


def mutants(f: fl.Formula, names: list[Var] | None = None) -> Iterator[fl.Formula]:
    """Yield formulas differing from ``f`` in exactly one symbol."""
    if names is None:
        names = sorted(fl.all_vars(f), key=lambda v: (v.sort, v.name))
    if isinstance(f, Atom):
        for p in _PRED_SWAP.get(f.pred, []):
            if p != "eps":
                yield Atom(p, f.args, f.param)
        for i, a in enumerate(f.args):
            for m in _term_mutants(a, names):
                yield Atom(f.pred, f.args[:i] + (m,) + f.args[i + 1:], f.param)
        yield Not(f)
        return
    if isinstance(f, Not):
        yield f.body
        for m in mutants(f.body, names):
            yield Not(m)
        return
    if isinstance(f, _CONNECTIVES):
        for c in _CONNECTIVES:
            if c is not type(f):
                yield c(f.left, f.right)
        yield type(f)(f.right, f.left)
        for m in mutants(f.left, names):
            yield type(f)(m, f.right)
        for m in mutants(f.right, names):
            yield type(f)(f.left, m)
        return
    flip = _FLIP[type(f)]
    for v in names:
        if v != f.var and v.sort == f.var.sort:
            yield (type(f)(v, f.rel, f.bound, f.body) if isinstance(f, fl.BOUNDED)
                   else type(f)(v, f.body))
    if isinstance(f, fl.BOUNDED):
        yield flip(f.var, f.rel, f.bound, f.body)
        for m in _term_mutants(f.bound, names):
            yield type(f)(f.var, f.rel, m, f.body)
        for m in mutants(f.body, names):
            yield type(f)(f.var, f.rel, f.bound, m)
    else:
        yield flip(f.var, f.body)
        for m in mutants(f.body, names):
            yield type(f)(f.var, m)


def well_formed(f: fl.Formula) -> bool:
    """Sort-correct, and no bounded variable inside its own bound."""
    try:
        fl.check_sorts(f)
    except ValueError:
        return False
    return not any(isinstance(g, fl.BOUNDED) and g.var in fl.term_vars(g.bound)
                   for g in fl.subformulas(f))


def _body(f: fl.Formula) -> fl.Formula:
    while isinstance(f, fl.ForAll):
        f = f.body
    return f


_SET_D0 = {fl.FormulaClass.DELTA0_SET_V, fl.FormulaClass.DELTA0_SET_PV}


def _phi_allowed(kind: str, phi: fl.Formula) -> bool:
    cls = fl.classify(phi)
    if kind == "EA_set":
        return cls in _SET_D0
    if kind == "EA_set_alt":
        return cls is fl.FormulaClass.DELTA0_SET_V
    if kind == "EA":
        return fl.is_delta0(phi) and not any(
            isinstance(g, fl.Atom) and g.pred in ("in", "eps") for g in fl.subformulas(phi))
    return True


def regenerates(t, f: fl.Formula, verdict) -> bool:
    """Does some generator call reproduce ``f`` (up to closure and alpha) for ``verdict``?

    Independent of the recognizers: it only runs the generators with every
    choice of variables drawn from ``f`` itself.
    """
    from hfkit import axioms as ax

    if fl.free_vars(f):
        return False
    s, params = verdict.scheme, dict(verdict.params)
    target = _body(f)
    fixed = ax.fixed_axioms(t)
    if s in fixed:
        return fl.alpha_eq(target, _body(fixed[s])) or fl.alpha_eq(f, fixed[s])
    pool = sorted(fl.all_vars(f), key=lambda v: (v.sort, v.name))
    phi = params.get("phi")
    if phi is not None and not _phi_allowed(t.kind, phi):
        return False
    if s == "Sep":
        for var in pool:
            for bound in pool:
                for tgt in pool:
                    if len({var, bound, tgt}) < 3 or tgt in fl.free_vars(phi):
                        continue
                    g = ax.separation_instance(phi, var, bound, tgt)
                    if fl.alpha_eq(_body(g), target):
                        return True
        return False
    if s == "Adduction":
        return fl.alpha_eq(_body(ax.adduction_instance(phi, params["var"])), target)
    if s == "Ind":
        return fl.alpha_eq(_body(ax.induction_instance(phi, params["var"])), target)
    if s == "Nmb":
        return fl.alpha_eq(ax.nmb_axiom(params["n"]), f)
    if s.startswith("R"):
        n = max(params.values()) + 1
        return any(a.scheme == s and fl.alpha_eq(a.formula, f) for a in ax.r_instances(n))
    return False


_AXIOM_SCHEMES = ("Ext", "VDef", "Sep", "Nmb")


def justification_mutants(p):
    """Proofs equal to ``p`` except for one changed justification."""
    from hfkit import proofkit as pk

    def swap(i, j):
        lines = list(p.lines)
        lines[i] = pk.ProofLine(lines[i].formula, j)
        return pk.Proof(p.theory, tuple(lines))

    n = len(p.lines)
    for i, ln in enumerate(p.lines):
        j = ln.justification
        alts = []
        if isinstance(j, pk.ModusPonens):
            alts += [pk.ModusPonens(j.major, j.minor)]
            alts += [pk.ModusPonens(k, j.major) for k in range(1, n + 1) if k != j.minor]
            alts += [pk.ModusPonens(j.minor, k) for k in range(1, n + 1) if k != j.major]
        elif isinstance(j, pk.Generalization):
            alts += [pk.Generalization(k, j.var) for k in range(1, n + 1) if k != j.line]
            alts += [pk.Generalization(j.line, Var(j.var.name + "1", j.var.sort))]
        elif isinstance(j, pk.TheoryAxiom):
            alts += [pk.TheoryAxiom(s, j.params) for s in _AXIOM_SCHEMES if s != j.scheme]
            alts += [pk.TheoryAxiom(j.scheme, tuple((k, str(int(v) + 1)) for k, v in j.params))
                     if j.params else pk.LogicalAxiom(j.scheme)]
        else:
            alts += [pk.LogicalAxiom(s) for s in pk.LOGICAL_SCHEMES if s != j.scheme]
            alts += [pk.TheoryAxiom(j.scheme)]
        for a in alts:
            yield i + 1, swap(i, a)
