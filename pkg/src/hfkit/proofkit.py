"""Hilbert-style proofs: file format, Goedel codes, checking and the consistency audit.

The calculus has modus ponens (``mp i j``: line ``i`` is ``A``, line ``j`` is
``A -> B``), generalization (``gen i x``), theory axioms (``axiom Scheme
k=v``) and the logical schemes in :data:`LOGICAL_SCHEMES`.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Union

from . import axioms as ax
from . import folang as fl
from . import model as md
from .folang import (
    And, App, Atom, BoundedExists, BoundedForAll, Exists, ForAll, Formula, Iff,
    Implies, Not, Num, Term, Var,
)
from .hfcore import DEFAULT_BUDGET, OVERFLOW, Budget


class ProofParseError(ValueError):
    def __init__(self, msg: str, line: int | None = None) -> None:
        super().__init__(f"line {line}: {msg}" if line is not None else msg)
        self.line = line


class DecodeError(ValueError):
    pass


# ------------------------------------------------------------ justifications

@dataclass(frozen=True)
class TheoryAxiom:
    scheme: str
    params: tuple[tuple[str, str], ...] = ()

    def __str__(self) -> str:
        extra = "".join(f" {k}={v}" for k, v in self.params)
        return f"axiom {self.scheme}{extra}"


@dataclass(frozen=True)
class LogicalAxiom:
    scheme: str

    def __str__(self) -> str:
        return f"logic {self.scheme}"


@dataclass(frozen=True)
class ModusPonens:
    minor: int
    major: int

    def __str__(self) -> str:
        return f"mp {self.minor} {self.major}"


@dataclass(frozen=True)
class Generalization:
    line: int
    var: Var

    def __str__(self) -> str:
        return f"gen {self.line} {self.var!r}"


Justification = Union[TheoryAxiom, LogicalAxiom, ModusPonens, Generalization]


@dataclass(frozen=True)
class ProofLine:
    formula: Formula
    justification: Justification


@dataclass(frozen=True)
class Proof:
    theory: ax.TheoryId
    lines: tuple[ProofLine, ...]

    def __post_init__(self) -> None:
        if not self.lines:
            raise ValueError("a proof needs at least one line")

    @property
    def conclusion(self) -> Formula:
        return self.lines[-1].formula


_VAR = re.compile(r"^([A-Za-z_][A-Za-z0-9_']*)(?::(\d+))?$")


def parse_justification(text: str, line: int | None = None) -> Justification:
    parts = text.split()
    if not parts:
        raise ProofParseError("missing justification", line)
    head, rest = parts[0], parts[1:]
    try:
        if head == "axiom" and rest:
            params = []
            for p in rest[1:]:
                k, eq, v = p.partition("=")
                if not eq or not k or not v:
                    raise ProofParseError(f"bad axiom parameter {p!r}", line)
                params.append((k, v))
            return TheoryAxiom(rest[0], tuple(params))
        if head == "logic" and len(rest) == 1:
            return LogicalAxiom(rest[0])
        if head == "mp" and len(rest) == 2:
            return ModusPonens(int(rest[0]), int(rest[1]))
        if head == "gen" and len(rest) == 2:
            m = _VAR.match(rest[1])
            if not m:
                raise ProofParseError(f"bad variable {rest[1]!r}", line)
            return Generalization(int(rest[0]), Var(m.group(1), int(m.group(2) or 0)))
    except ValueError as e:
        if isinstance(e, ProofParseError):
            raise
        raise ProofParseError(f"bad justification {text!r}", line) from e
    raise ProofParseError(f"bad justification {text!r}", line)


def parse_proof(text: str, default_sort: int = 2) -> Proof:
    """Read the line format ``k. formula ; justification`` under a ``theory`` header."""
    theory = None
    lines: list[ProofLine] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        if theory is None:
            if not s.startswith("theory "):
                raise ProofParseError("expected a 'theory <name>' header", lineno)
            try:
                theory = ax.parse_theory(s[len("theory "):], default_sort)
            except ValueError as e:
                raise ProofParseError(str(e), lineno) from e
            continue
        m = re.match(r"^(\d+)\.\s*(.*)$", s)
        if not m:
            raise ProofParseError("expected '<index>. <formula> ; <justification>'", lineno)
        if int(m.group(1)) != len(lines) + 1:
            raise ProofParseError(f"expected line index {len(lines) + 1}", lineno)
        body, sep, just = m.group(2).rpartition(";")
        if not sep:
            raise ProofParseError("missing ';' before the justification", lineno)
        try:
            f = fl.parse(body)
        except (fl.ParseError, fl.SortError) as e:
            raise ProofParseError(f"formula: {e}", lineno) from e
        lines.append(ProofLine(f, parse_justification(just, lineno)))
    if theory is None:
        raise ProofParseError("empty proof file")
    if not lines:
        raise ProofParseError("a proof needs at least one line")
    return Proof(theory, tuple(lines))


def format_proof(p: Proof) -> str:
    out = [f"theory {p.theory.name}"]
    for i, ln in enumerate(p.lines, 1):
        out.append(f"{i}. {fl.to_text(ln.formula)} ; {ln.justification}")
    return "\n".join(out) + "\n"


# -------------------------------------------------------------- Goedel codes
#
# Each character is one byte (two base-16 digits).  A length prefix keeps the
# code above 256**len >= 2*len, and a proof's byte string strictly contains the
# byte strings of its formulas, so it is numerically larger than each.

def _formula_bytes(f: Formula) -> bytes:
    text = fl.to_text(f).encode("ascii")
    return b"F" + str(len(text)).encode() + b":" + text


def symbol_length(f: Formula) -> int:
    return len(fl.to_text(f))


def godel_encode(obj: Formula | Proof) -> int:
    if isinstance(obj, Proof):
        parts = [b"P", obj.theory.name.encode(), b"|", str(len(obj.lines)).encode(), b":"]
        for ln in obj.lines:
            j = str(ln.justification).encode()
            parts += [_formula_bytes(ln.formula), b"J", str(len(j)).encode(), b":", j]
        data = b"".join(parts)
    else:
        data = _formula_bytes(obj)
    return int.from_bytes(data, "big")


class _Reader:
    def __init__(self, data: bytes) -> None:
        self.data = data
        self.i = 0

    def tag(self, t: bytes) -> None:
        if self.data[self.i:self.i + len(t)] != t:
            raise DecodeError(f"byte {self.i}: expected {t.decode()!r}")
        self.i += len(t)

    def number(self, end: bytes) -> int:
        j = self.data.find(end, self.i)
        if j < 0 or not self.data[self.i:j].isdigit():
            raise DecodeError(f"byte {self.i}: expected a decimal length")
        n = int(self.data[self.i:j])
        self.i = j + len(end)
        return n

    def chunk(self, n: int) -> bytes:
        if self.i + n > len(self.data):
            raise DecodeError(f"byte {self.i}: length {n} runs past the end")
        out = self.data[self.i:self.i + n]
        self.i += n
        return out

    def formula(self) -> Formula:
        self.tag(b"F")
        n = self.number(b":")
        raw = self.chunk(n)
        try:
            return fl.parse(raw.decode("ascii"))
        except (UnicodeDecodeError, fl.ParseError, fl.SortError) as e:
            raise DecodeError(f"formula text does not parse: {e}") from e


def godel_decode(code: int) -> Formula | Proof:
    if code <= 0:
        raise DecodeError("codes are positive")
    r = _Reader(code.to_bytes((code.bit_length() + 7) // 8, "big"))
    head = r.data[:1]
    if head == b"F":
        f = r.formula()
        if r.i != len(r.data):
            raise DecodeError("trailing bytes after the formula")
        return f
    if head != b"P":
        raise DecodeError(f"unknown object tag {head!r}")
    r.tag(b"P")
    j = r.data.find(b"|", r.i)
    if j < 0:
        raise DecodeError("missing theory separator")
    try:
        theory = ax.parse_theory(r.data[r.i:j].decode("ascii"))
    except (ValueError, UnicodeDecodeError) as e:
        raise DecodeError(f"bad theory name: {e}") from e
    r.i = j + 1
    count = r.number(b":")
    if count < 1:
        raise DecodeError("a proof needs at least one line")
    lines = []
    for k in range(1, count + 1):
        f = r.formula()
        r.tag(b"J")
        n = r.number(b":")
        try:
            just = parse_justification(r.chunk(n).decode("ascii"), k)
        except (ProofParseError, UnicodeDecodeError) as e:
            raise DecodeError(f"line {k}: {e}") from e
        lines.append(ProofLine(f, just))
    if r.i != len(r.data):
        raise DecodeError("trailing bytes after the last line")
    return Proof(theory, tuple(lines))


def sorts_used(p: Proof) -> frozenset[int]:
    out: set[int] = {0}
    for ln in p.lines:
        out |= fl.sorts_used(ln.formula)
        if isinstance(ln.justification, Generalization):
            out.add(ln.justification.var.sort)
    return frozenset(out)


# ----------------------------------------------------------- the calculus

def _language_error(t: ax.TheoryId, f: Formula) -> str | None:
    if t.set_theoretic:
        fns = {"V", "P"} if t.kind in ("EA_set", "EA_set_alt") else {"V"}
        preds = {"=", "in", "eps"} if t.kind in ax.HIGHER else {"=", "in"}
        top = t.max_sort
    else:
        fns = {"S", "+", "*"} if t.kind == "R" else {"S", "+", "*", "exp2"}
        preds = {"=", "<="}
        top = 0
    for g in fl.subformulas(f):
        if isinstance(g, Atom) and g.pred not in preds:
            return f"predicate {g.pred} is outside the language of {t.name}"
        if isinstance(g, fl.QUANTIFIERS) and g.var.sort > top:
            return f"sort {g.var.sort} is outside {t.name}"
        if isinstance(g, fl.BOUNDED) and g.rel != ("in" if t.set_theoretic else "<="):
            return "bounded quantifier of the wrong kind"
    for s in fl.all_terms(f):
        if isinstance(s, App) and s.fn not in fns:
            return f"function {s.fn} is outside the language of {t.name}"
        if isinstance(s, Num) and (t.set_theoretic or s.value != 0):
            return "numerals are outside the language"
        if isinstance(s, Var) and s.sort > top:
            return f"sort {s.sort} is outside {t.name}"
    return None


def _same(a: Formula, b: Formula) -> bool:
    return fl.alpha_eq(a, b)


def _k(t, f):
    if isinstance(f, Implies) and isinstance(f.right, Implies) and _same(f.left, f.right.right):
        return None
    return "not of the form A -> (B -> A)"


def _s(t, f):
    try:
        (a, (b, c)), ((a2, b2), (a3, c2)) = (
            (f.left.left, (f.left.right.left, f.left.right.right)),
            ((f.right.left.left, f.right.left.right), (f.right.right.left, f.right.right.right)))
        shapes = (isinstance(f, Implies) and isinstance(f.left, Implies)
                  and isinstance(f.left.right, Implies) and isinstance(f.right, Implies)
                  and isinstance(f.right.left, Implies) and isinstance(f.right.right, Implies))
    except AttributeError:
        shapes = False
    if shapes and _same(a, a2) and _same(a, a3) and _same(b, b2) and _same(c, c2):
        return None
    return "not of the form (A -> (B -> C)) -> ((A -> B) -> (A -> C))"


def _contrapos(t, f):
    ok = (isinstance(f, Implies) and isinstance(f.left, Implies) and isinstance(f.right, Implies)
          and isinstance(f.left.left, Not) and isinstance(f.left.right, Not)
          and _same(f.left.left.body, f.right.right) and _same(f.left.right.body, f.right.left))
    return None if ok else "not of the form (not A -> not B) -> (B -> A)"


MAX_PRIMES = 12


def _taut(t, f):
    primes: list[Formula] = []
    keys: dict[Formula, int] = {}

    def skel(g: Formula):
        if isinstance(g, Not):
            return ("not", skel(g.body))
        if isinstance(g, fl.BINARY):
            return (type(g).__name__, skel(g.left), skel(g.right))
        c = fl.canonical(g)
        if c not in keys:
            keys[c] = len(primes)
            primes.append(c)
        return keys[c]

    tree = skel(f)
    if len(primes) > MAX_PRIMES:
        return f"more than {MAX_PRIMES} prime subformulas"

    def val(node, row: int) -> bool:
        if isinstance(node, int):
            return bool(row >> node & 1)
        if node[0] == "not":
            return not val(node[1], row)
        a, b = val(node[1], row), val(node[2], row)
        return {"And": a and b, "Or": a or b, "Implies": (not a) or b, "Iff": a == b}[node[0]]

    for row in range(1 << len(primes)):
        if not val(tree, row):
            return "not a propositional tautology"
    return None


def _match_term(a: Term, b: Term, x: Var, found: list) -> bool:
    if a == x:
        if found and found[0] != b:
            return False
        if not found:
            found.append(b)
        return True
    if isinstance(a, App):
        return (isinstance(b, App) and a.fn == b.fn
                and all(_match_term(p, q, x, found) for p, q in zip(a.args, b.args)))
    return a == b


def _find_instance(phi: Formula, x: Var, psi: Formula) -> Term | None | bool:
    """The ``t`` with ``psi = phi[t/x]``; ``True`` when ``x`` is not free; ``False`` on mismatch."""
    found: list[Term] = []

    def go(a: Formula, b: Formula) -> bool:
        if type(a) is not type(b):
            return False
        if isinstance(a, Atom):
            return (a.pred == b.pred and a.param == b.param and len(a.args) == len(b.args)
                    and all(_match_term(p, q, x, found) for p, q in zip(a.args, b.args)))
        if isinstance(a, fl.QUANTIFIERS):
            if a.var.sort != b.var.sort:
                return False
            if isinstance(a, fl.BOUNDED):
                if a.rel != b.rel or not _match_term(a.bound, b.bound, x, found):
                    return False
            if a.var == x:
                return _same(a, b)
            return a.var == b.var and go(a.body, b.body)
        return all(go(p, q) for p, q in zip(fl.children(a), fl.children(b)))

    if not go(phi, psi):
        return False
    return found[0] if found else True


def _instance_error(t: ax.TheoryId, phi: Formula, x: Var, psi: Formula) -> str | None:
    got = _find_instance(phi, x, psi)
    if got is False:
        return "not an instance of the quantified formula"
    if got is True:
        return None if _same(phi, psi) else "not an instance of the quantified formula"
    if fl.term_sort(got) != x.sort:
        return "instantiating term has the wrong sort"
    if not fl.is_free_for(phi, x, got):
        return "instantiating term is not free for the variable"
    if not _same(fl.substitute(phi, x, got), psi):
        return "not an instance of the quantified formula"
    return None


def _inst(t, f):
    if isinstance(f, Implies) and isinstance(f.left, ForAll):
        return _instance_error(t, f.left.body, f.left.var, f.right)
    return "not of the form forall x . A -> A[t/x]"


def _exists_intro(t, f):
    if isinstance(f, Implies) and isinstance(f.right, Exists):
        return _instance_error(t, f.right.body, f.right.var, f.left)
    return "not of the form A[t/x] -> exists x . A"


def _dist(t, f):
    ok = (isinstance(f, Implies) and isinstance(f.left, ForAll) and isinstance(f.left.body, Implies)
          and isinstance(f.right, Implies) and isinstance(f.right.right, ForAll)
          and f.left.var == f.right.right.var
          and _same(f.left.body.left, f.right.left) and _same(f.left.body.right, f.right.right.body))
    if not ok:
        return "not of the form forall x (A -> B) -> (A -> forall x . B)"
    if f.left.var in fl.free_vars(f.right.left):
        return "the variable is free in the antecedent"
    return None


def _exists_dual(t, f):
    ok = (isinstance(f, Iff) and isinstance(f.left, Exists) and isinstance(f.right, Not)
          and isinstance(f.right.body, ForAll) and isinstance(f.right.body.body, Not)
          and f.left.var == f.right.body.var and _same(f.left.body, f.right.body.body.body))
    return None if ok else "not of the form exists x . A <-> not forall x . not A"


def _bounded_def(t, f):
    if not (isinstance(f, Iff) and isinstance(f.left, fl.BOUNDED)):
        return "not of the form (Q x rel t . A) <-> Q x (x rel t * A)"
    q, r = f.left, f.right
    guard = fl.member(q.var, q.bound) if q.rel == "in" else Atom("<=", (q.var, q.bound))
    want = (ForAll(q.var, Implies(guard, q.body)) if isinstance(q, BoundedForAll)
            else Exists(q.var, And(guard, q.body)))
    return None if r == want else "right side is not the unfolded bounded quantifier"


def _eq_refl(t, f):
    if isinstance(f, Atom) and f.pred == "=" and f.args[0] == f.args[1]:
        return None
    return "not of the form t = t"


def _leibniz(a: Formula, b: Formula, s: Term, u: Term) -> bool:
    """``b`` arises from ``a`` by replacing some free occurrences of ``s`` with ``u``."""
    danger = fl.term_vars(s) | fl.term_vars(u)

    def term(p: Term, q: Term, bound: frozenset) -> bool:
        if p == q:
            return True
        if p == s and q == u and not (danger & bound):
            return True
        if isinstance(p, App) and isinstance(q, App) and p.fn == q.fn:
            return all(term(x, y, bound) for x, y in zip(p.args, q.args))
        return False

    def go(p: Formula, q: Formula, bound: frozenset) -> bool:
        if type(p) is not type(q):
            return False
        if isinstance(p, Atom):
            return (p.pred == q.pred and p.param == q.param and len(p.args) == len(q.args)
                    and all(term(x, y, bound) for x, y in zip(p.args, q.args)))
        if isinstance(p, fl.QUANTIFIERS):
            if p.var != q.var:
                return False
            if isinstance(p, fl.BOUNDED) and (p.rel != q.rel or not term(p.bound, q.bound, bound)):
                return False
            return go(p.body, q.body, bound | {p.var})
        return all(go(x, y, bound) for x, y in zip(fl.children(p), fl.children(q)))

    return go(a, b, frozenset())


def _eq_subst(t, f):
    ok = (isinstance(f, Implies) and isinstance(f.left, Atom) and f.left.pred == "="
          and isinstance(f.right, Implies))
    if ok and _leibniz(f.right.left, f.right.right, *f.left.args):
        return None
    return "not of the form s = t -> (A -> A[t//s])"


def _higher_only(t: ax.TheoryId) -> str | None:
    return None if t.kind in ax.HIGHER else f"{t.name} is first-order"


def _ho_ext(t, f):
    err = _higher_only(t)
    if err:
        return err
    _, body = ax.strip_closure(f)
    if fl.free_vars(f):
        return "higher-order extensionality must be closed"
    ok = (isinstance(body, Implies) and isinstance(body.left, ForAll)
          and isinstance(body.left.body, Iff) and isinstance(body.right, Atom)
          and body.right.pred == "=")
    if ok:
        x, y = body.right.args
        z = body.left.var
        ok = (isinstance(x, Var) and isinstance(y, Var) and x != y and x.sort >= 1
              and y.sort == x.sort and z.sort == x.sort - 1 and z not in (x, y)
              and body.left.body == Iff(Atom("eps", (z, x)), Atom("eps", (z, y))))
    return None if ok else "not of the form forall z (z eps x <-> z eps y) -> x = y"


def _comprehension(t, f):
    err = _higher_only(t)
    if err:
        return err
    if fl.free_vars(f):
        return "comprehension instances must be closed"
    _, body = ax.strip_closure(f)
    ok = isinstance(body, Exists) and isinstance(body.body, ForAll) and isinstance(body.body.body, Iff)
    if ok:
        xv, yv = body.var, body.body.var
        iff = body.body.body
        ok = (xv.sort >= 1 and yv.sort == xv.sort - 1
              and iff.left == Atom("eps", (yv, xv)) and xv not in fl.free_vars(iff.right))
    return None if ok else "not of the form exists X forall y (y eps X <-> phi), X not free in phi"


# Priority order.  A line must cite the first scheme that accepts it, so every
# logical axiom has exactly one correct justification; Taut comes last.
LOGICAL_SCHEMES: dict[str, Callable[[ax.TheoryId, Formula], str | None]] = {
    "K": _k,
    "S": _s,
    "Contrapos": _contrapos,
    "EqRefl": _eq_refl,
    "EqSubst": _eq_subst,
    "Inst": _inst,
    "ExistsIntro": _exists_intro,
    "Dist": _dist,
    "ExistsDual": _exists_dual,
    "BoundedDef": _bounded_def,
    "HOExt": _ho_ext,
    "Comprehension": _comprehension,
    "Taut": _taut,
}


def logical_scheme(t: ax.TheoryId, f: Formula) -> str | None:
    """The canonical scheme of a logical axiom, or ``None``."""
    return next((name for name, check in LOGICAL_SCHEMES.items() if check(t, f) is None), None)


@dataclass(frozen=True)
class LineVerdict:
    index: int
    ok: bool
    reason: str | None = None
    scheme: str | None = None


def _check_line(p: Proof, i: int) -> LineVerdict:
    ln = p.lines[i - 1]
    f, j = ln.formula, ln.justification
    t = p.theory
    err = _language_error(t, f)
    if err:
        return LineVerdict(i, False, err)
    try:
        fl.check_sorts(f)
    except fl.SortError as e:
        return LineVerdict(i, False, str(e))
    if isinstance(j, TheoryAxiom):
        v = ax.is_axiom(t, f)
        if not v.accepted:
            return LineVerdict(i, False, f"not an axiom of {t.name}: {v.reason}")
        if v.scheme != j.scheme:
            return LineVerdict(i, False, f"claimed {j.scheme}, recognized {v.scheme}")
        for k, val in j.params:
            if str(v.param(k)) != val:
                return LineVerdict(i, False, f"parameter {k}={val} does not match")
        return LineVerdict(i, True, scheme=v.scheme)
    if isinstance(j, LogicalAxiom):
        check = LOGICAL_SCHEMES.get(j.scheme)
        if check is None:
            return LineVerdict(i, False, f"unknown logical scheme {j.scheme!r}")
        err = check(t, f)
        if err:
            return LineVerdict(i, False, f"{j.scheme}: {err}")
        for name, earlier in LOGICAL_SCHEMES.items():
            if name == j.scheme:
                break
            if earlier(t, f) is None:
                return LineVerdict(i, False, f"an instance of {name}; cite it as 'logic {name}'")
        return LineVerdict(i, True, scheme=j.scheme)
    if isinstance(j, ModusPonens):
        for k in (j.minor, j.major):
            if not 1 <= k < i:
                return LineVerdict(i, False, f"cites line {k}, which does not precede it")
        a, b = p.lines[j.minor - 1].formula, p.lines[j.major - 1].formula
        if isinstance(b, Implies) and b.left == a and b.right == f:
            return LineVerdict(i, True)
        return LineVerdict(i, False, f"line {j.major} is not line {j.minor} -> this line")
    if not 1 <= j.line < i:
        return LineVerdict(i, False, f"cites line {j.line}, which does not precede it")
    if f == ForAll(j.var, p.lines[j.line - 1].formula):
        return LineVerdict(i, True)
    return LineVerdict(i, False, f"not the generalization of line {j.line} over {j.var!r}")


def check_proof(p: Proof) -> list[LineVerdict]:
    return [_check_line(p, i) for i in range(1, len(p.lines) + 1)]


def first_failure(verdicts: Iterable[LineVerdict]) -> LineVerdict | None:
    return next((v for v in verdicts if not v.ok), None)


CONTRADICTION = fl.parse("exists x . not x = x")


def is_prf_cnt(p: Proof) -> bool:
    return p.conclusion == CONTRADICTION and first_failure(check_proof(p)) is None


def proves(theory: str, code: int, conclusion: int) -> bool:
    """``code`` is a checked proof in ``theory`` whose last line has code ``conclusion``."""
    try:
        obj = godel_decode(code)
    except DecodeError:
        return False
    if not isinstance(obj, Proof):
        return False
    try:
        if obj.theory != ax.parse_theory(theory, obj.theory.max_sort or 2):
            return False
    except ValueError:
        return False
    if godel_encode(obj.conclusion) != conclusion:
        return False
    return first_failure(check_proof(obj)) is None


def con_pred_sentence(t: ax.TheoryId) -> Formula:
    """``forall p . not PrfCnt(p)`` over the predicate-only signature.

    The Sigma_1 skeleton ``exists c (c = K and proves(p, c))`` is flattened and
    its witness bounded by ``p``: a proof's code exceeds each of its formulas'.
    """
    p, c = Var("p"), Var("c")
    k = Num(godel_encode(CONTRADICTION))
    skeleton = Exists(c, And(Atom("=", (c, k)), Atom("proves", (p, c), t.name)))
    flat = fl.fun_to_pred(skeleton)
    body = BoundedExists(c, "<=", p, flat.body)
    return ForAll(p, Not(body))


# --------------------------------------------------------------- the audit

class AuditVerdict(enum.Enum):
    CERTIFIED = "CertifiedConsistentFragment"
    CHECK_FAILED = "CheckFailed"
    RESOURCE_EXCEEDED = "ResourceExceeded"


AUDITABLE = ("H", "H_lt_omega", "H_omega", "H_omega_lt_omega")
STEP_FACTOR = 16  # evaluation steps allowed per budget bit


@dataclass
class AuditReport:
    theory: str
    n: int | None
    sorts: tuple[int, ...]
    model_sizes: tuple[int, ...] | None
    axiom_verdicts: list[tuple[int, str, bool]] = field(default_factory=list)
    line_verdicts: list[tuple[int, bool, str | None]] = field(default_factory=list)
    contradiction_false: bool | None = None
    verdict: AuditVerdict = AuditVerdict.CHECK_FAILED
    failed_line: int | None = None
    reason: str | None = None

    def as_dict(self) -> dict:
        return {
            "theory": self.theory,
            "n": self.n,
            "sorts": list(self.sorts),
            "model_sizes": list(self.model_sizes) if self.model_sizes else None,
            "axioms": [{"line": i, "scheme": s, "satisfied": ok} for i, s, ok in self.axiom_verdicts],
            "lines": [{"line": i, "ok": ok, "reason": r} for i, ok, r in self.line_verdicts],
            "contradiction_false": self.contradiction_false,
            "verdict": self.verdict.value,
            "failed_line": self.failed_line,
            "reason": self.reason,
        }

    def render(self) -> str:
        out = [f"theory: {self.theory}",
               f"nmb index n: {self.n if self.n is not None else 'none'}",
               f"sorts: {', '.join(map(str, self.sorts))}"]
        if self.model_sizes:
            out.append("model: " + ", ".join(f"sort {k} has {s} elements"
                                              for k, s in enumerate(self.model_sizes)))
        for i, s, ok in self.axiom_verdicts:
            out.append(f"axiom line {i} ({s}): {'satisfied' if ok else 'FAILS'}")
        for i, ok, r in self.line_verdicts:
            out.append(f"line {i}: {'ok' if ok else 'FAILS'}" + (f" ({r})" if r else ""))
        if self.contradiction_false is not None:
            out.append(f"exists x . not x = x is false: {self.contradiction_false}")
        tail = self.verdict.value
        if self.verdict is AuditVerdict.CHECK_FAILED and self.failed_line is not None:
            tail += f"(line {self.failed_line})"
        if self.reason:
            tail += f": {self.reason}"
        out.append(f"verdict: {tail}")
        return "\n".join(out)


def _nmb_index(p: Proof, verdicts: list[LineVerdict]) -> int | None:
    best = None
    for ln, v in zip(p.lines, verdicts):
        if isinstance(ln.justification, TheoryAxiom) and v.scheme == "Nmb":
            n = ax.is_axiom(p.theory, ln.formula).param("n")
            best = n if best is None else max(best, n)
    return best


def consistency_audit(p: Proof, b: Budget = DEFAULT_BUDGET) -> AuditReport:
    """Check ``p``, then evaluate every line in the finite model the proof's axioms fix."""
    if p.theory.kind not in AUDITABLE:
        raise ValueError(f"the audit covers H-family theories, not {p.theory.name}")
    verdicts = check_proof(p)
    sorts = tuple(sorted(sorts_used(p)))
    n = _nmb_index(p, verdicts)
    rep = AuditReport(p.theory.name, n, sorts, None)
    bad = first_failure(verdicts)
    if bad is not None:
        rep.line_verdicts = [(v.index, v.ok, v.reason) for v in verdicts]
        rep.failed_line, rep.reason = bad.index, f"proof check: {bad.reason}"
        return rep
    m = md.build_hf_model(n or 0, max(sorts), b)
    if m is OVERFLOW:
        rep.verdict = AuditVerdict.RESOURCE_EXCEEDED
        rep.reason = f"model for n={n or 0} with {max(sorts)} higher sort(s) exceeds the budget"
        return rep
    rep.model_sizes = m.sizes
    ev = md.Evaluator(m, STEP_FACTOR * b.max_bits)
    try:
        for i, ln in enumerate(p.lines, 1):
            ok = ev.eval(ax.closure(ln.formula))
            j = ln.justification
            if isinstance(j, (TheoryAxiom, LogicalAxiom)):
                rep.axiom_verdicts.append((i, verdicts[i - 1].scheme or str(j), ok))
            rep.line_verdicts.append((i, ok, None if ok else "false in the model"))
            if not ok:
                rep.failed_line, rep.reason = i, "line is false in the model"
                return rep
        rep.contradiction_false = not ev.eval(CONTRADICTION)
    except md.ResourceExceeded as e:
        rep.verdict = AuditVerdict.RESOURCE_EXCEEDED
        rep.reason = str(e)
        return rep
    if not rep.contradiction_false:
        rep.reason = "the model satisfies exists x . not x = x"
        return rep
    rep.verdict = AuditVerdict.CERTIFIED
    return rep
