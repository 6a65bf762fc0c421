"""Seeded generators of well-sorted formulas for round-trip and agreement sweeps."""

from __future__ import annotations

import random

from hfkit import folang as fl
from hfkit.folang import (
    And, App, Atom, BoundedExists, BoundedForAll, Exists, ForAll, Iff, Implies, Not, Num, Or, Var,
)

SET_VARS = [Var("x"), Var("y"), Var("z"), Var("u")]
HIGH_VARS = [Var("X", 1), Var("Y", 1), Var("Z", 2)]
ARITH_VARS = [Var("a"), Var("b"), Var("c")]


def set_term(rng: random.Random, depth: int) -> fl.Term:
    if depth <= 0 or rng.random() < 0.6:
        return rng.choice(SET_VARS)
    return App(rng.choice(["V", "P"]), (set_term(rng, depth - 1),))


def arith_term(rng: random.Random, depth: int) -> fl.Term:
    if depth <= 0 or rng.random() < 0.5:
        return rng.choice(ARITH_VARS + [Num(rng.randrange(4))])
    fn = rng.choice(["S", "+", "*", "exp2"])
    arity = 2 if fn in ("+", "*") else 1
    return App(fn, tuple(arith_term(rng, depth - 1) for _ in range(arity)))


def _set_atom(rng: random.Random) -> fl.Formula:
    k = rng.randrange(4)
    if k == 0:
        return Atom("=", (set_term(rng, 2), set_term(rng, 2)))
    if k == 1:
        return fl.member(set_term(rng, 2), set_term(rng, 2))
    if k == 2:
        lo, hi = rng.choice([(SET_VARS, HIGH_VARS[:2]), (HIGH_VARS[:2], HIGH_VARS[2:])])
        return Atom("eps", (rng.choice(lo), rng.choice(hi)))
    v = rng.choice(HIGH_VARS)
    return Atom("=", (v, rng.choice([w for w in HIGH_VARS if w.sort == v.sort])))


def _arith_atom(rng: random.Random) -> fl.Formula:
    return Atom(rng.choice(["=", "<="]), (arith_term(rng, 2), arith_term(rng, 2)))


def formula(rng: random.Random, depth: int, arith: bool = False) -> fl.Formula:
    if depth <= 0 or rng.random() < 0.2:
        return _arith_atom(rng) if arith else _set_atom(rng)
    k = rng.randrange(7)
    sub = lambda: formula(rng, depth - 1, arith)  # noqa: E731
    if k == 0:
        return Not(sub())
    if k == 1:
        return rng.choice([And, Or, Implies, Iff])(sub(), sub())
    if k in (2, 3):
        pool = ARITH_VARS if arith else SET_VARS + HIGH_VARS
        return rng.choice([ForAll, Exists])(rng.choice(pool), sub())
    if arith:
        v = rng.choice(ARITH_VARS)
        bound = rng.choice([w for w in ARITH_VARS if w != v] + [Num(rng.randrange(9))])
        return rng.choice([BoundedForAll, BoundedExists])(v, "<=", bound, sub())
    bound = set_term(rng, 1)
    v = rng.choice([w for w in SET_VARS if w not in fl.term_vars(bound)])
    return rng.choice([BoundedForAll, BoundedExists])(v, "in", bound, sub())


def formulas(seed: int, count: int, depth: int = 6) -> list[fl.Formula]:
    rng = random.Random(seed)
    return [formula(rng, depth, arith=rng.random() < 0.5) for _ in range(count)]
