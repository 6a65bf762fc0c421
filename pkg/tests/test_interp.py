import itertools
import random
from fractions import Fraction

import pytest

from hfkit import folang as fl, hfcore as hc, interp as I, model as md, ordcard as oc
from hfkit.folang import FormulaClass, Var

import gen

P = fl.parse
x, y, z = Var("x"), Var("y"), Var("z")
NAT = md.NatStructure(cap=64)
SETS = md.SetStructure(range(1 << 12), closed=False)


# ------------------------------------------------------------------ ACK

def test_ack_membership_shape():
    got = I.ack_translate(P("x in y"))
    assert got == P("exists z <= y . exists w <= y . "
                    "y = z * 2^S(x) + w and not 2^S(x) <= w and 2^x <= w")
    assert I.ack_translate(P("x = y")) == P("x = y")


def test_ack_closed_instance():
    assert md.evaluate(NAT, I.ack_translate(P("0 in 1")))
    assert not md.evaluate(NAT, I.ack_translate(P("1 in 1")))


def test_ack_rejects_higher_sorts():
    with pytest.raises(I.TranslationError):
        I.ack_translate(P("x eps_0 X:1"))


@pytest.mark.parametrize("src,xs,ys", [
    ("y = V(x)", range(8), range(1 << 8)),
    ("y = P(x)", range(6), range(1 << 8)),
    ("x in V(y)", range(20), range(6)),
])
def test_ack_function_graphs_agree(src, xs, ys):
    f = P(src)
    g = I.ack_translate(f)
    for a, b in itertools.product(xs, ys):
        env = {x: a, y: b}
        assert md.evaluate(NAT, g, env) == md.evaluate(SETS, f, env), (src, a, b)


def _delta0_set(rng):
    """Small Delta0(set) formulas over x, y with variable bounds only."""
    for _ in range(1000):
        f = gen.formula(rng, 3)
        if (fl.classify(f) is FormulaClass.DELTA0_SET_V and fl.free_vars(f) <= {x, y, z}
                and not any(isinstance(t, fl.App) for t in fl.all_terms(f))
                and fl.sorts_used(f) == {0}):
            return f
    raise AssertionError("generator produced no candidate")


def test_ack_agrees_with_direct_evaluation_on_delta0():
    rng = random.Random(31)
    for _ in range(60):
        f = _delta0_set(rng)
        g = I.ack_translate(f)
        for vals in itertools.product(range(12), repeat=3):
            env = dict(zip((x, y, z), vals))
            env = {k: v for k, v in env.items() if k in fl.free_vars(f)}
            assert md.evaluate(NAT, g, env) == md.evaluate(SETS, f, env), fl.to_text(f)


# ------------------------------------------------------------------ CRD

def test_crd_le_is_injection_existence():
    assert I.crd_translate(P("x <= y")) == P("exists p in x . forall q in y . inj(p, q)")


def test_crd_closed_instances():
    c = md.card_structure(4)
    assert md.evaluate(c, I.crd_translate(P("0 = 0")))
    assert c.apply("card", (0,)) == oc.k_iso(0)
    assert md.evaluate(c, I.crd_translate(P("1 + 1 = 2")))
    assert not md.evaluate(c, I.crd_translate(P("1 + 1 = 3")))
    assert oc.card_add(2, 2) == 8 == oc.k_iso(2)


@pytest.mark.parametrize("src", ["2 * 2 = 4", "2^2 = 4", "S(3) = 4", "3 <= 4", "not 4 <= 3"])
def test_crd_arithmetic_at_desk_scale(src):
    assert md.evaluate(md.card_structure(4), I.crd_translate(P(src)))


@pytest.mark.parametrize("a", range(4))
def test_ack_crd_coherence_through_l(a):
    # x in y goes to arithmetic and back to cardinals; numerals land on l(n)
    for b in range(6):
        c = md.card_structure(max(b, 2 ** (a + 1)))
        assert c.apply("card", (a,)) == oc.l_iso(a)
        g = I.crd_translate(I.ack_translate(P(f"{a} in {b}")))
        assert md.evaluate(c, g) == hc.mem(a, b), (a, b)
        e = I.crd_translate(I.ack_translate(P(f"{a} = {b}")))
        assert md.evaluate(c, e) == (a == b)


# ------------------------------------------------------------ ON and NAT

def test_on_successor_graph():
    got = I.on_translate(P("x = S(y)"))
    assert got == P("(forall u in x . u in y or u = y) and (forall u1 in y . u1 in x) and y in x")


def test_nat_relativizes_quantifiers():
    got = I.nat_translate(P("forall x . exists y . y = S(x)"))
    assert isinstance(got, fl.ForAll) and got.body.left == P("nat(x)")
    assert I.nat_minus_translate(2, P("forall x . x = x")) == \
        P("forall x . nat(x) and vminus[2](x) -> x = x")


def test_on_closed_instances():
    assert md.evaluate(SETS, I.on_translate(P("4 = 2 + 2")))
    assert not md.evaluate(SETS, I.on_translate(P("3 = 2 + 2")))
    assert oc.ord_add(oc.on(2), oc.on(2)) == oc.on(4)


def test_on_rejects_functional_nesting_only_after_flattening():
    # nested terms are flattened first; set atoms are refused
    assert md.evaluate(SETS, I.on_translate(P("S(S(0)) = 2")))
    with pytest.raises(I.TranslationError):
        I.on_translate(P("x in y"))


# -------------------------------------------------------- relativizations

def test_hf_relativize_examples():
    assert I.hf_relativize(P("forall x . x = x")) == P("forall x . hf(x) -> x = x")
    f = P("forall x . exists y . x in y")
    once = I.hf_relativize(f)
    assert fl.alpha_eq(I.hf_relativize(once), once)


def _set_sentences():
    from test_folang import golden
    out = [P(t) for t in golden()]
    rng = random.Random(23)
    out += [fl.exists(sorted(fl.free_vars(f), key=lambda v: v.name), f)
            for f in (gen.formula(rng, 4) for _ in range(300))]
    return [f for f in out if not fl.free_vars(f) and fl.sorts_used(f) == {0}
            and "arith" not in fl._signature(f)
            and not any(isinstance(a, fl.Atom) and a.pred in fl.DEFINED for a in fl.subformulas(f))]


def test_hf_relativize_is_invisible_in_finite_models():
    m = md.build_hf_model(2, 0)
    sentences = _set_sentences()
    assert len(sentences) >= 100
    for f in sentences:
        assert md.evaluate(m, I.hf_relativize(f)) == md.evaluate(m, f), fl.to_text(f)


def test_cut_relativize_examples():
    assert I.cut_relativize(P("forall x . x = x"), 1) == P("forall x . cut[1](x) -> x = x")
    two = I.cut_relativize(P("exists x . x = 5"), 2)
    assert md.evaluate(NAT, two)
    for n in range(12):
        assert md.evaluate(NAT, P("cut[2](x)"), {x: n}) == \
            (hc.in_cut(n // 2) is hc.CutVerdict.IN_CUT)
    with pytest.raises(I.TranslationError):
        I.cut_relativize(P("x = x"), 0)


def test_cut_relativization_keeps_true_sentences():
    rng = random.Random(5)
    kept = 0
    while kept < 40:
        f = gen.formula(rng, 3, arith=True)
        f = fl.forall(sorted(fl.free_vars(f), key=lambda v: v.name), f)
        f = fl.fun_to_pred(f)
        f = _bound_all(f, 6)
        if not md.evaluate(NAT, f):
            continue
        for scale in (1, 2, Fraction(3, 2)):
            assert md.evaluate(NAT, I.cut_relativize(f, scale)), fl.to_text(f)
        kept += 1


def _bound_all(f, n):
    if isinstance(f, fl.UNBOUNDED):
        cls = fl.BoundedForAll if isinstance(f, fl.ForAll) else fl.BoundedExists
        return cls(f.var, "<=", fl.Num(n), _bound_all(f.body, n))
    kids = fl.children(f)
    return fl.rebuild(f, tuple(_bound_all(k, n) for k in kids)) if kids else f


# ------------------------------------------------------------------ SUM

def test_sum_equality_is_the_two_disjunct_form():
    assert I.sum_translate(P("x = y")) == P(
        "(exists z <= y_1 . y_1 = x_1 + z and x_2 = y_2 + z) or "
        "(exists z <= y_2 . y_2 = x_2 + z and x_1 = y_1 + z)")


def _pairs(src):
    f = P(src)
    g = I.sum_translate(f)
    pv = I.sum_pair_vars(f)
    vs = sorted(pv, key=lambda v: v.name)
    flat = [c for v in vs for c in pv[v]]
    return md.Evaluator(NAT).predicate(g, flat), vs


def test_sum_examples():
    eq, _ = _pairs("x = y")
    assert eq(1, 2, 3, 0)
    succ, vs = _pairs("x = S(y)")
    assert [v.name for v in vs] == ["x", "y"]
    assert succ(1, 0, 0, 0)
    assert not succ(2, 0, 0, 0)


@pytest.mark.parametrize("src,arity,lim,rel", [
    ("x = y", 2, 6, lambda a, b: a == b),
    ("x <= y", 2, 6, lambda a, b: a <= b),
    ("x = S(y)", 2, 6, lambda a, b: a == b + 1),
    ("x = y + z", 3, 3, lambda a, b, c: a == b + c),
    ("x = y * z", 3, 2, lambda a, b, c: a == b * c),
    ("x = 2^y", 2, 4, lambda a, b: a == 2 ** b),
])
def test_sum_small_grid(src, arity, lim, rel):
    fn, _ = _pairs(src)
    for vals in itertools.product(range(lim + 1), repeat=2 * arity):
        sums = [vals[2 * i] + vals[2 * i + 1] for i in range(arity)]
        assert fn(*vals) == rel(*sums), (src, vals)


def test_sum_keeps_pi1_pred():
    for src in ("forall x . forall y . x <= y or y <= x",
                "forall x . forall y <= x . exists z <= x . x = y + z",
                "forall x . x <= x"):
        f = P(src)
        assert fl.classify(f) is FormulaClass.PI1_PRED
        assert fl.classify(I.sum_translate(f)) is FormulaClass.PI1_PRED


def test_sum_output_is_predicate_only():
    rng = random.Random(17)
    for _ in range(200):
        f = fl.fun_to_pred(gen.formula(rng, 3, arith=True))
        assert fl.is_pred_only(I.sum_translate(f))


# ------------------------------------------------------------------ R_in_H

def test_r_in_h_examples():
    m = md.build_hf_model(2, 0)
    assert md.evaluate(m, I.r_in_h_translate(P("0 = 0")))
    assert md.evaluate(m, I.r_in_h_translate(P("S(0) + S(0) = S(S(0))")))
    assert oc.ord_add(oc.on(1), oc.on(1)) == oc.on(2)


def test_r_in_h_totalizes_to_zero():
    m = md.build_hf_model(2, 0)  # V_3: on(2) is the top ordinal
    f = I.r_in_h_translate(P("S(x) = 0"))
    assert md.evaluate(m, f, {x: oc.on(2)})
    assert not md.evaluate(m, f, {x: oc.on(1)})


def test_translate_dispatch_by_name():
    assert I.translate("ON", P("x <= y")) == I.on_translate(P("x <= y"))
    assert I.translate("Cut:3/2", P("forall x . x = x")) == I.cut_relativize(P("forall x . x = x"), "3/2")
    with pytest.raises(ValueError):
        I.parse_interp("FOO")
