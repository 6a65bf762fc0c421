"""Regenerate the proof corpus: every formula goes through the printer."""
from pathlib import Path
from hfkit import axioms as ax, folang as fl
from hfkit.folang import Implies, And, Or, Not, ForAll, Iff, Var
from hfkit.proofkit import Proof, ProofLine, TheoryAxiom as TA, LogicalAxiom as LA, ModusPonens as MP, Generalization as G, format_proof

x, y, z, X, Y = Var("x"), Var("y"), Var("z"), Var("X", 1), Var("Y", 1)
HLT, HW = ax.H_LT_OMEGA, ax.h_omega_lt_omega(2)
P = fl.parse
out = {}

def proof(name, theory, lines, note):
    out[name] = (note, Proof(theory, tuple(ProofLine(f, j) for f, j in lines)))

N = ax.nmb_axiom
comp1 = P("exists X:1 . forall y . y eps_0 X:1 <-> y = y")
proof("nmb2_pair", HW, [
    (N(2), TA("Nmb", (("n", "2"),))),
    (comp1, LA("Comprehension")),
    (Implies(N(2), Implies(comp1, And(N(2), comp1))), LA("Taut")),
    (Implies(comp1, And(N(2), comp1)), MP(1, 3)),
    (And(N(2), comp1), MP(2, 4)),
], "Nmb_2 together with a sort-1 comprehension instance")

proof("refl_gen", HLT, [
    (P("x = x"), LA("EqRefl")),
    (P("forall x . x = x"), G(1, x)),
], "reflexivity, generalized")

ext = ax.fixed_axioms(HLT)["Ext"]
e1 = P("forall y . x = y <-> (forall z . z in x <-> z in y)")
e2 = P("x = x <-> (forall z . z in x <-> z in x)")
proof("ext_self", HLT, [
    (ext, TA("Ext")),
    (Implies(ext, e1), LA("Inst")),
    (e1, MP(1, 2)),
    (Implies(e1, e2), LA("Inst")),
    (e2, MP(3, 4)),
    (ForAll(x, e2), G(5, x)),
], "extensionality instantiated at x = x")

alt = Or(N(3), N(0))
proof("nmb3_weaken", HLT, [
    (N(3), TA("Nmb", (("n", "3"),))),
    (Implies(N(3), alt), LA("Taut")),
    (alt, MP(1, 2)),
], "Nmb_3 weakened to a disjunction")

sep = P("forall x . exists y . forall z . z in y <-> z in x and not z = z")
sep1 = P("exists y . forall z . z in y <-> z in x and not z = z")
proof("sep_empty", HLT, [
    (sep, TA("Sep")),
    (Implies(sep, sep1), LA("Inst")),
    (sep1, MP(1, 2)),
    (ForAll(x, sep1), G(3, x)),
], "separating the empty subset of an arbitrary set")

hoext = P("forall X:1 . forall Y:1 . (forall z . z eps_0 X:1 <-> z eps_0 Y:1) -> X:1 = Y:1")
h1 = P("forall Y:1 . (forall z . z eps_0 Z:1 <-> z eps_0 Y:1) -> Z:1 = Y:1")
h2 = P("(forall z . z eps_0 Z:1 <-> z eps_0 Z:1) -> Z:1 = Z:1")
proof("ho_ext_inst", HW, [
    (hoext, LA("HOExt")),
    (Implies(hoext, h1), LA("Inst")),
    (h1, MP(1, 2)),
    (Implies(h1, h2), LA("Inst")),
    (h2, MP(3, 4)),
    (ForAll(Var("Z", 1), h2), G(5, Var("Z", 1))),
], "higher-order extensionality at sort 1, instantiated twice")

comp3 = P("exists X:1 . forall y . y eps_0 X:1 <-> not y in y")
proof("nmb3_comp", HW, [
    (N(3), TA("Nmb", (("n", "3"),))),
    (comp3, LA("Comprehension")),
    (Implies(comp3, Implies(N(3), And(comp3, N(3)))), LA("Taut")),
    (Implies(N(3), And(comp3, N(3))), MP(2, 3)),
    (And(comp3, N(3)), MP(1, 4)),
], "Nmb_3 with a sort-1 comprehension instance")

comp2 = P("exists X:2 . forall Y:1 . Y:1 eps_1 X:2 <-> (exists z . z eps_0 Y:1)")
dual2 = P("(exists X:2 . forall Y:1 . Y:1 eps_1 X:2 <-> (exists z . z eps_0 Y:1)) <-> "
          "not (forall X:2 . not (forall Y:1 . Y:1 eps_1 X:2 <-> (exists z . z eps_0 Y:1)))")
neg2 = P("not (forall X:2 . not (forall Y:1 . Y:1 eps_1 X:2 <-> (exists z . z eps_0 Y:1)))")
proof("comp_sort2", HW, [
    (comp2, LA("Comprehension")),
    (dual2, LA("ExistsDual")),
    (Implies(dual2, Implies(comp2, neg2)), LA("Taut")),
    (Implies(comp2, neg2), MP(2, 3)),
    (neg2, MP(1, 4)),
], "sort-2 comprehension in dual form")

vdef = ax.fixed_axioms(HLT)["VDef"]
v1 = P("forall x . y in V(x) <-> (exists z in x . forall u . u in y -> u in V(z))")
v2 = P("y in V(y) <-> (exists z in y . forall u . u in y -> u in V(z))")
proof("vdef_diag", HLT, [
    (vdef, TA("VDef")),
    (Implies(vdef, v1), LA("Inst")),
    (v1, MP(1, 2)),
    (Implies(v1, v2), LA("Inst")),
    (v2, MP(3, 4)),
], "the V axiom on the diagonal")

a = P("x = x")
proof("self_implication", HLT, [
    (P("(x = x -> ((x = x -> x = x) -> x = x)) -> ((x = x -> (x = x -> x = x)) -> (x = x -> x = x))"), LA("S")),
    (P("x = x -> ((x = x -> x = x) -> x = x)"), LA("K")),
    (P("(x = x -> (x = x -> x = x)) -> (x = x -> x = x)"), MP(2, 1)),
    (P("x = x -> (x = x -> x = x)"), LA("K")),
    (P("x = x -> x = x"), MP(4, 3)),
    (P("forall x . x = x -> x = x"), G(5, x)),
], "A -> A from K and S")

proof("exists_intro", HLT, [
    (a, LA("EqRefl")),
    (P("x = x -> (exists y . y = y)"), LA("ExistsIntro")),
    (P("exists y . y = y"), MP(1, 2)),
], "something exists")

proof("eq_subst", HLT, [
    (P("x = y -> (x in z -> y in z)"), LA("EqSubst")),
    (P("forall z . x = y -> (x in z -> y in z)"), G(1, z)),
    (P("forall y . forall z . x = y -> (x in z -> y in z)"), G(2, y)),
    (P("forall x . forall y . forall z . x = y -> (x in z -> y in z)"), G(3, x)),
], "Leibniz substitution for membership, closed")

proof("contrapos_nmb1", HLT, [
    (N(1), TA("Nmb", (("n", "1"),))),
    (Implies(Implies(Not(N(0)), Not(N(1))), Implies(N(1), N(0))), LA("Contrapos")),
    (Implies(N(1), Or(N(1), N(0))), LA("Taut")),
    (Or(N(1), N(0)), MP(1, 3)),
], "Nmb_1 with a contraposition instance")

d = P("forall x . (exists y . y = y) -> x = x")
proof("dist_demo", HLT, [
    (P("x = x"), LA("EqRefl")),
    (P("x = x -> ((exists y . y = y) -> x = x)"), LA("K")),
    (P("(exists y . y = y) -> x = x"), MP(1, 2)),
    (d, G(3, x)),
    (P("(forall x . (exists y . y = y) -> x = x) -> ((exists y . y = y) -> (forall x . x = x))"), LA("Dist")),
    (P("(exists y . y = y) -> (forall x . x = x)"), MP(4, 5)),
], "moving a quantifier past a closed antecedent")

proof("bounded_unfold", HLT, [
    (P("(forall z in x . z = z) <-> (forall z . z in x -> z = z)"), LA("BoundedDef")),
    (P("z = z"), LA("EqRefl")),
    (P("z = z -> (z in x -> z = z)"), LA("K")),
    (P("z in x -> z = z"), MP(2, 3)),
    (P("forall z . z in x -> z = z"), G(4, z)),
    (P("((forall z in x . z = z) <-> (forall z . z in x -> z = z)) -> ((forall z . z in x -> z = z) -> (forall z in x . z = z))"), LA("Taut")),
    (P("(forall z . z in x -> z = z) -> (forall z in x . z = z)"), MP(1, 6)),
    (P("forall z in x . z = z"), MP(5, 7)),
], "a bounded universal through its unfolding")

proof("nmb1_sep_class", HW, [
    (N(1), TA("Nmb", (("n", "1"),))),
    (ax.fixed_axioms(HW)["Sep"], TA("Sep")),
    (P("exists X:1 . forall y . y eps_0 X:1 <-> (exists z . z in y)"), LA("Comprehension")),
    (Implies(N(1), Implies(ax.fixed_axioms(HW)["Sep"], And(N(1), ax.fixed_axioms(HW)["Sep"]))), LA("Taut")),
    (Implies(ax.fixed_axioms(HW)["Sep"], And(N(1), ax.fixed_axioms(HW)["Sep"])), MP(1, 4)),
    (And(N(1), ax.fixed_axioms(HW)["Sep"]), MP(2, 5)),
], "class separation alongside Nmb_1")

body2 = N(2).body
neg = Not(ForAll(x, Not(body2)))
proof("nmb2_dual", HLT, [
    (N(2), TA("Nmb", (("n", "2"),))),
    (Iff(N(2), neg), LA("ExistsDual")),
    (Implies(Iff(N(2), neg), Implies(N(2), neg)), LA("Taut")),
    (Implies(N(2), neg), MP(2, 3)),
    (neg, MP(1, 4)),
], "Nmb_2 in dual form, sort 0 only")

root = Path(__file__).resolve().parent.parent / "corpus"
for name, (note, p) in out.items():
    (root / f"{name}.prf").write_text(f"# {note}\n" + format_proof(p))
print(len(out))
