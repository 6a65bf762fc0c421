"""The eight end-to-end acceptance checks, each timed against its limit.

Run under pytest, or directly with ``python3 tests/test_acceptance.py`` for
one pass/fail line per check.
"""

from __future__ import annotations

import itertools
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hfkit import axioms as ax, folang as fl, hfcore as hc, interp as I  # noqa: E402
from hfkit import model as md, ordcard as oc, proofkit as pk  # noqa: E402
from hfkit.proofkit import AuditVerdict  # noqa: E402

import gen  # noqa: E402
import mutate  # noqa: E402

CORPUS = Path(__file__).parent.parent / "corpus"
RESULTS: list[str] = []


# ------------------------------------------------------------------ 1

def vcl_suite():
    vb = [hc.vbar(x) for x in range(1 << 10)]
    for x in range(1 << 10):
        v = vb[x]
        assert hc.subset(x, v)
        assert hc.is_transitive(v)
        assert hc.vbar(v) == v
    for x in range(1 << 8):
        v = vb[x]
        for y in hc.members(v):
            bits = list(hc.members(y))
            for r in range(len(bits) + 1):
                for sub in itertools.combinations(bits, r):
                    assert hc.mem(sum(1 << b for b in sub), v)
            assert hc.mem(hc.vbar(y), v)
    levels = sorted(set(vb))
    for a, b in itertools.product(levels, repeat=2):
        assert [hc.mem(a, b), a == b, hc.mem(b, a)].count(True) == 1
    for x in range(1, 1 << 16):
        m = hc.minimal_member(x)
        assert hc.mem(m, x) and m & x == 0
    return f"{len(levels)} distinct levels"


# ------------------------------------------------------------------ 2

def v_levels():
    for z in range(1, 5):
        assert hc.powerset(hc.superexp(0, z) - 1) == hc.superexp(0, z + 1) - 1
    for x in range(1 << 12):
        assert hc.vbar(x) <= 1 << x
    return "z = 1..4, x < 4096"


# ------------------------------------------------------------------ 3

def ordinals():
    a = 0
    for n in range(6):
        assert oc.on(n) == a
        assert oc.on(n) == sum(1 << oc.on(i) for i in range(n))
        assert oc.popcount(oc.on(n)) == n and oc.on_inv(oc.on(n)) == n
        a = oc.ord_succ(a)
    ons = [oc.on(n) for n in range(6)]
    count = 0
    for p, q in itertools.product(range(6), repeat=2):
        if p + q <= 5:
            assert oc.ord_add(ons[p], ons[q]) == ons[p + q]
            count += 1
        if p * q <= 5:
            assert oc.ord_mul(ons[p], ons[q]) == ons[p * q]
            count += 1
    for p in range(3):
        assert oc.ord_exp2(ons[p]) == ons[2 ** p]
        count += 1
    return f"{count} operations"


# ------------------------------------------------------------------ 4

def cardinals():
    ks = [oc.k_iso(n) for n in range(6)]
    for n in range(6):
        assert ks[n] == oc.zf_card(oc.on(n))
        assert oc.l_iso(n) == ks[n]
    for p, q in itertools.product(range(5), repeat=2):
        if p + q <= 4:
            assert oc.card_add(ks[p], ks[q]) == ks[p + q]
        if p * q <= 4:
            assert oc.card_mul(ks[p], ks[q]) == ks[p * q]
    for p in range(3):
        assert oc.card_exp2(ks[p]) == ks[2 ** p]
    return f"k(5) has {ks[5].bit_length()} bits"


# ------------------------------------------------------------------ 5

def _pairs_fn(src):
    f = fl.parse(src)
    g = I.sum_translate(f)
    pv = I.sum_pair_vars(f)
    flat = [c for v in sorted(pv, key=lambda v: v.name) for c in pv[v]]
    return md.Evaluator(md.NatStructure(cap=64)).predicate(g, flat)


def sum_grid():
    checked = 0
    exhaustive = [("x = y", 2, 12, lambda a, b: a == b),
                  ("x <= y", 2, 12, lambda a, b: a <= b),
                  ("x = S(y)", 2, 12, lambda a, b: a == b + 1),
                  ("x = y + z", 3, 8, lambda a, b, c: a == b + c)]
    for src, arity, lim, rel in exhaustive:
        fn = _pairs_fn(src)
        for v in itertools.product(range(lim + 1), repeat=2 * arity):
            assert fn(*v) == rel(*(v[2 * i] + v[2 * i + 1] for i in range(arity))), (src, v)
            checked += 1
    rng = random.Random(20261015)

    def split(n):
        k = rng.randrange(n + 1)
        return [k, n - k]

    mul = _pairs_fn("x = y * z")
    for _ in range(1000):
        b, c = rng.randrange(13), rng.randrange(13)
        a = b * c if rng.random() < 0.5 else rng.randrange(145)
        v = split(a) + split(b) + split(c)
        assert mul(*v) == (a == b * c), v
        checked += 1
    exp = _pairs_fn("x = 2^y")
    for _ in range(1000):
        b = rng.randrange(9)
        a = 2 ** b if rng.random() < 0.5 else rng.randrange(257)
        v = split(a) + split(b)
        assert exp(*v) == (a == 2 ** b), v
        checked += 1
    return f"{checked} instances"


# ------------------------------------------------------------------ 6

def _corpus():
    return {f.stem: pk.parse_proof(f.read_text()) for f in sorted(CORPUS.glob("*.prf"))}


def models():
    seps = [ax.closure(ln.formula) for p in _corpus().values() for ln in p.lines
            if isinstance(ln.justification, pk.TheoryAxiom) and ln.justification.scheme == "Sep"]
    assert seps
    for n in range(4):
        m = md.build_hf_model(n, 1)
        for f in [ax.EXT, ax.V_DEF_H, ax.REGULARITY, ax.V_TRANS, ax.V_SUCC] + seps:
            assert md.evaluate(m, f), (n, fl.to_text(f))
        for k in range(n + 3):
            assert md.evaluate(m, ax.nmb_axiom(k)) == (k <= n), (n, k)
        assert md.evaluate(m, fl.Not(pk.CONTRADICTION))
    for k, level in ((1, 1), (2, 3), (3, 15), (4, 65535)):
        assert md.lex_order(level) == sorted(hc.members(level))
    return f"{len(seps)} corpus separation instances"


# ------------------------------------------------------------------ 7

def _to_bounded(f, n):
    if isinstance(f, fl.UNBOUNDED):
        cls = fl.BoundedForAll if isinstance(f, fl.ForAll) else fl.BoundedExists
        return cls(f.var, "<=", fl.Num(n), _to_bounded(f.body, n))
    kids = fl.children(f)
    return fl.rebuild(f, tuple(_to_bounded(k, n) for k in kids)) if kids else f


def _sentence(rng, top):
    f = _to_bounded(gen.formula(rng, 3, arith=True), rng.randrange(top + 1))
    for v in sorted(fl.free_vars(f), key=lambda w: w.name):
        cls = fl.BoundedExists if rng.random() < 0.5 else fl.BoundedForAll
        f = cls(v, "<=", fl.Num(rng.randrange(top + 1)), f)
    return fl.fun_to_pred(f)


def _max_numeral(f):
    return max((t.value for t in fl.all_terms(f) if isinstance(t, fl.Num)), default=0)


def translators():
    rng = random.Random(64)
    nat = md.NatStructure(cap=64)
    ords = md.OrdinalIndexStructure(1 << 12)
    codes = md.SetStructure(range(1 << 12), closed=False)
    n = at_codes = true = 0
    while n < 200:
        f = _sentence(rng, 64)
        if fl.free_vars(f) or fl.classify(f) is not fl.FormulaClass.DELTA0_PRED:
            continue
        want = md.evaluate(nat, f)
        on = I.on_translate(f)
        assert md.evaluate(ords, on) == want, fl.to_text(f)
        assert md.evaluate(nat, I.sum_translate(f)) == want, fl.to_text(f)
        n += 1
        true += want
    while at_codes < 50:
        f = _sentence(rng, 4)
        if fl.free_vars(f) or fl.classify(f) is not fl.FormulaClass.DELTA0_PRED or _max_numeral(f) > 4:
            continue
        assert md.evaluate(codes, I.on_translate(f)) == md.evaluate(nat, f), fl.to_text(f)
        at_codes += 1
    assert 0 < true < n
    return f"{n} sentences ({true} true), {at_codes} more at set codes"


# ------------------------------------------------------------------ 8

def audit():
    corpus = _corpus()
    assert len(corpus) >= 10
    mutants = 0
    for name, p in corpus.items():
        rep = pk.consistency_audit(p)
        assert rep.verdict is AuditVerdict.CERTIFIED, (name, rep.render())
        c = pk.godel_encode(p)
        assert c >= 2 * len(pk.sorts_used(p))
        for ln in p.lines:
            assert c >= pk.godel_encode(ln.formula) >= 2 * pk.symbol_length(ln.formula)
        for _, q in mutate.justification_mutants(p):
            assert pk.first_failure(pk.check_proof(q)) is not None
            assert pk.consistency_audit(q).verdict is AuditVerdict.CHECK_FAILED
            mutants += 1
    assert mutants >= 50
    return f"{len(corpus)} proofs, {mutants} mutants rejected"


CRITERIA = [
    (1, "Ackermann/vcl suite", vcl_suite, 30),
    (2, "V-level identities", v_levels, 5),
    (3, "on/ordinal coherence", ordinals, 5),
    (4, "bi-interpretation instances", cardinals, 60),
    (5, "SUM grid", sum_grid, 30),
    (6, "model suite", models, 60),
    (7, "translator soundness corpus", translators, 60),
    (8, "audit end-to-end", audit, 120),
]


def run_one(num, title, fn, limit):
    t = time.perf_counter()
    try:
        detail, err = fn(), None
    except AssertionError as e:
        detail, err = None, e
    dt = time.perf_counter() - t
    ok = err is None and dt < limit
    why = detail if err is None else f"assertion failed: {err}"
    line = f"criterion {num} {'PASS' if ok else 'FAIL'}: {title}: {why} ({dt:.1f}s, limit {limit}s)"
    return ok, line, err, dt


@pytest.mark.parametrize("num,title,fn,limit", CRITERIA, ids=[f"c{c[0]}" for c in CRITERIA])
def test_criterion(num, title, fn, limit):
    ok, line, err, dt = run_one(num, title, fn, limit)
    RESULTS.append(line)
    print(line)
    if err is not None:
        raise err
    assert dt < limit, line


if __name__ == "__main__":
    results = [run_one(*c) for c in CRITERIA]
    for _, line, _, _ in results:
        print(line)
    sys.exit(0 if all(r[0] for r in results) else 1)
