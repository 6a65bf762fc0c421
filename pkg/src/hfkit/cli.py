"""``hfkit`` command line.

Exit codes: 0 accepted or certified, 1 rejected or check failed, 2 resource
limit, 3 parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Callable

from . import folang as fl
from . import hfcore as hc
from . import interp as it
from . import model as md
from . import ordcard as oc
from . import proofkit as pk
from .hfcore import OVERFLOW, Budget

EXIT_OK, EXIT_REJECTED, EXIT_RESOURCE, EXIT_PARSE = 0, 1, 2, 3
MIN_BUDGET_BITS = 64


class CliError(Exception):
    def __init__(self, msg: str, code: int = EXIT_PARSE) -> None:
        super().__init__(msg)
        self.code = code


@dataclass(frozen=True)
class CliConfig:
    budget_bits: int = 1 << 20
    max_sort: int = 2
    structured: bool = False

    def __post_init__(self) -> None:
        if self.budget_bits < MIN_BUDGET_BITS:
            raise CliError(f"--budget-bits must be at least {MIN_BUDGET_BITS}")
        if self.max_sort < 0:
            raise CliError("--max-sort must be non-negative")

    @property
    def budget(self) -> Budget:
        return Budget(self.budget_bits)


@dataclass
class Result:
    text: str
    data: object
    code: int = EXIT_OK


# Each entry: arity and a function of (budget, *codes).
SET_OPS: dict[str, tuple[int, Callable]] = {
    "mem": (2, lambda b, x, y: hc.mem(x, y)),
    "insert": (2, lambda b, x, y: hc.insert(x, y, b)),
    "union": (2, lambda b, x, y: hc.union(x, y)),
    "subset": (2, lambda b, x, y: hc.subset(x, y)),
    "singleton": (1, lambda b, x: hc.singleton(x, b)),
    "pair": (2, lambda b, x, y: hc.kuratowski_pair(x, y, b)),
    "powerset": (1, lambda b, x: hc.powerset(x, b)),
    "superexp": (2, lambda b, x, y: hc.superexp(x, y, b)),
    "level": (1, lambda b, k: hc.level_code(k, b)),
    "level_size": (1, lambda b, k: hc.level_size(k, b)),
    "vbar": (1, lambda b, x: hc.vbar(x, b)),
    "rank": (1, lambda b, x: hc.rank(x)),
    "in_cut": (1, lambda b, x: hc.in_cut(x, b).value),
    "tc": (1, lambda b, x: hc.transitive_closure(x)),
    "members": (1, lambda b, x: list(hc.members(x))),
    "pretty": (1, lambda b, x: hc.pretty(x)),
    "on": (1, lambda b, n: oc.on(n, b)),
    "on_inv": (1, lambda b, x: oc.on_inv(x)),
    "is_ordinal": (1, lambda b, x: oc.is_ordinal(x)),
    "oadd": (2, lambda b, x, y: oc.ord_add(x, y, b)),
    "omul": (2, lambda b, x, y: oc.ord_mul(x, y, b)),
    "oexp2": (1, lambda b, x: oc.ord_exp2(x, b)),
    "k": (1, lambda b, n: oc.k_iso(n, b)),
    "l": (1, lambda b, x: oc.l_iso(x, b)),
    "card": (1, lambda b, x: oc.zf_card(x, b)),
    "is_cardinal": (1, lambda b, x: oc.is_cardinal(x, b)),
    "cadd": (2, lambda b, x, y: oc.card_add(x, y, b)),
    "cmul": (2, lambda b, x, y: oc.card_mul(x, y, b)),
    "cexp2": (1, lambda b, x: oc.card_exp2(x, b)),
}


def _show(v: object) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return " ".join(map(str, v))
    return str(v)


def cmd_set(cfg: CliConfig, expr: str) -> Result:
    parts = expr.split()
    if not parts or parts[0] not in SET_OPS:
        raise CliError(f"unknown set operation; known: {', '.join(sorted(SET_OPS))}")
    arity, fn = SET_OPS[parts[0]]
    if len(parts) != arity + 1:
        raise CliError(f"{parts[0]} takes {arity} argument(s)")
    try:
        args = [hc.parse_code(a) for a in parts[1:]]
    except ValueError as e:
        raise CliError(str(e)) from e
    v = fn(cfg.budget, *args)
    if v is OVERFLOW:
        return Result("overflow", {"op": parts[0], "args": args, "value": None}, EXIT_RESOURCE)
    return Result(_show(v), {"op": parts[0], "args": args, "value": v})


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise CliError(f"cannot read {path}: {e.strerror}") from e


def _formula(text: str) -> fl.Formula:
    try:
        return fl.parse(text.strip())
    except (fl.ParseError, fl.SortError) as e:
        raise CliError(f"formula: {e}") from e


def cmd_translate(cfg: CliConfig, interp: str, path: str) -> Result:
    f = _formula(_read(path))
    try:
        iid = it.parse_interp(interp)
        g = it.translate(iid, f)
    except ValueError as e:
        raise CliError(str(e), EXIT_REJECTED) from e
    text = fl.to_text(g)
    return Result(text, {"interpretation": str(iid), "formula": text})


def cmd_classify(cfg: CliConfig, path: str) -> Result:
    f = _formula(_read(path))
    c = fl.classify(f)
    return Result(c.value, {"class": c.value, "delta0": fl.is_delta0(f),
                            "predicate_only": fl.is_pred_only(f)})


def cmd_model(cfg: CliConfig, n: int, sorts: int) -> Result:
    if sorts > cfg.max_sort:
        raise CliError(f"{sorts} sorts exceeds --max-sort {cfg.max_sort}", EXIT_REJECTED)
    m = md.build_hf_model(n, sorts, cfg.budget)
    if m is OVERFLOW:
        return Result("overflow", {"n": n, "sorts": sorts, "dump": None}, EXIT_RESOURCE)
    text = md.dump(m)
    return Result(text.rstrip("\n"), {"n": n, "sorts": sorts, "sizes": list(m.sizes), "dump": text})


def cmd_eval(cfg: CliConfig, dump_path: str, formula: str) -> Result:
    try:
        m = md.parse_dump(_read(dump_path), cfg.budget)
    except ValueError as e:
        raise CliError(f"model dump: {e}") from e
    f = _formula(formula)
    try:
        v = md.Evaluator(m, pk.STEP_FACTOR * cfg.budget_bits).eval(f)
    except md.ResourceExceeded as e:
        return Result(f"ResourceExceeded: {e}", {"value": None, "reason": str(e)}, EXIT_RESOURCE)
    except md.EvalError as e:
        raise CliError(str(e), EXIT_REJECTED) from e
    return Result(_show(v), {"value": v}, EXIT_OK if v else EXIT_REJECTED)


def _proof(cfg: CliConfig, path: str) -> pk.Proof:
    try:
        return pk.parse_proof(_read(path), cfg.max_sort)
    except pk.ProofParseError as e:
        raise CliError(f"{path}: {e}") from e


def cmd_check(cfg: CliConfig, path: str) -> Result:
    p = _proof(cfg, path)
    verdicts = pk.check_proof(p)
    bad = pk.first_failure(verdicts)
    lines = [f"line {v.index}: " + ("ok" if v.ok else f"REJECTED ({v.reason})") for v in verdicts]
    lines.append("accepted" if bad is None else f"rejected at line {bad.index}")
    data = {"theory": p.theory.name, "accepted": bad is None,
            "lines": [{"line": v.index, "ok": v.ok, "reason": v.reason} for v in verdicts]}
    return Result("\n".join(lines), data, EXIT_OK if bad is None else EXIT_REJECTED)


def cmd_audit(cfg: CliConfig, path: str) -> Result:
    p = _proof(cfg, path)
    try:
        rep = pk.consistency_audit(p, cfg.budget)
    except ValueError as e:
        raise CliError(str(e), EXIT_REJECTED) from e
    code = {pk.AuditVerdict.CERTIFIED: EXIT_OK, pk.AuditVerdict.CHECK_FAILED: EXIT_REJECTED,
            pk.AuditVerdict.RESOURCE_EXCEEDED: EXIT_RESOURCE}[rep.verdict]
    return Result(rep.render(), rep.as_dict(), code)


def cmd_encode(cfg: CliConfig, path: str) -> Result:
    text = _read(path)
    body = [ln for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    obj = _proof(cfg, path) if body and body[0].strip().startswith("theory ") else _formula(text)
    c = pk.godel_encode(obj)
    kind = "proof" if isinstance(obj, pk.Proof) else "formula"
    return Result(str(c), {"kind": kind, "code": str(c)})


def cmd_decode(cfg: CliConfig, path: str) -> Result:
    raw = _read(path).strip()
    try:
        code = hc.parse_code(raw)
        obj = pk.godel_decode(code)
    except (ValueError, pk.DecodeError) as e:
        raise CliError(f"decode: {e}") from e
    if isinstance(obj, pk.Proof):
        text = pk.format_proof(obj).rstrip("\n")
        return Result(text, {"kind": "proof", "text": text + "\n"})
    text = fl.to_text(obj)
    return Result(text, {"kind": "formula", "text": text})


def _default_budget() -> int:
    env = os.environ.get("HFKIT_BUDGET_BITS")
    if env is None:
        return 1 << 20
    try:
        return int(env)
    except ValueError:
        raise CliError(f"HFKIT_BUDGET_BITS is not an integer: {env!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage errors share the parse-error exit code
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="hfkit", description="Hereditarily finite sets, weak arithmetic and proof audits.")
    ap.add_argument("--budget-bits", type=int, default=None,
                    help="bit budget for intermediate values (default 2^20 or $HFKIT_BUDGET_BITS)")
    ap.add_argument("--max-sort", type=int, default=2, help="highest sort for higher-order theories")
    ap.add_argument("--format", choices=("text", "structured"), default="text")
    sub = ap.add_subparsers(dest="cmd", required=True)
    s = sub.add_parser("set", help="evaluate a set operation, e.g. 'vbar 16'")
    s.add_argument("expr")
    s = sub.add_parser("translate", help="translate a formula file under an interpretation")
    s.add_argument("--via", required=True, metavar="INTERP",
                   help="ACK, CRD, ON, NAT, NAT-n, SUM, HF, CUT:a/b or RH")
    s.add_argument("file")
    s = sub.add_parser("classify", help="classify a formula file")
    s.add_argument("file")
    s = sub.add_parser("model", help="dump build_hf_model(n, sorts)")
    s.add_argument("n", type=int)
    s.add_argument("sorts", type=int)
    s = sub.add_parser("eval", help="evaluate a closed formula in a dumped model")
    s.add_argument("dump")
    s.add_argument("formula")
    for name, helptext in (("check", "check a proof file"), ("audit", "run the consistency audit"),
                           ("encode", "Goedel code of a proof or formula file"),
                           ("decode", "decode a file holding a Goedel code")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("file")
    return ap


def run(argv: list[str] | None = None) -> tuple[Result | None, str | None, int]:
    args = build_parser().parse_args(argv)
    try:
        cfg = CliConfig(args.budget_bits if args.budget_bits is not None else _default_budget(),
                        args.max_sort, args.format == "structured")
        cmd = args.cmd
        if cmd == "set":
            r = cmd_set(cfg, args.expr)
        elif cmd == "translate":
            r = cmd_translate(cfg, args.via, args.file)
        elif cmd == "classify":
            r = cmd_classify(cfg, args.file)
        elif cmd == "model":
            r = cmd_model(cfg, args.n, args.sorts)
        elif cmd == "eval":
            r = cmd_eval(cfg, args.dump, args.formula)
        else:
            r = {"check": cmd_check, "audit": cmd_audit, "encode": cmd_encode,
                 "decode": cmd_decode}[cmd](cfg, args.file)
    except CliError as e:
        return None, str(e), e.code
    out = json.dumps(r.data, sort_keys=True) if cfg.structured else r.text
    return r, out, r.code


def main(argv: list[str] | None = None) -> int:
    r, out, code = run(argv)
    if r is None:
        print(f"hfkit: {out}", file=sys.stderr)
    else:
        print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
