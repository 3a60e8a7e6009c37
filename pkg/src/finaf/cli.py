"""Command-line front end: solve finite framework files, emit gadget
truncations, stream anytime verdict traces, and dump search trees.

Exit status: 0 answered, 1 input error, 2 ran out of budget / unknown.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .apx import emit_apx, parse_apx
from .core import ALL_SEMANTICS, InputError, ResourceLimitError
from .decide import Budget, anytime_process
from .finitary import (
    FinitaryAF,
    StageSet,
    gadget_chain_w,
    gadget_fig1,
    gadget_fig2,
    gadget_stars,
    gadget_tree_cf,
    gadget_unistb,
    full_tree,
    parse_stage_set,
    spine_tree,
    truncate,
    truncation_names,
)
from .oracle import PROBLEM_TAGS, DecisionProblem, decide_finite, enumerate_extensions
from .trees import TREE_KINDS, TreeSpec, children, ins_out_sets

GADGETS = ("fig1", "stars", "fig2", "chain_w", "unistb", "tree_cf")

_ENV_BUDGET = "FINAF_BUDGET"


def _default_budget() -> int:
    raw = os.environ.get(_ENV_BUDGET)
    if raw is None:
        return Budget().tree_nodes
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"{_ENV_BUDGET} must be an integer, got {raw!r}") from None
    return value


def _parse_per_index(text: str, what: str) -> dict[int, StageSet]:
    """Parse "1:0,5;2:all" into an index -> stage-set table."""
    table: dict[int, StageSet] = {}
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if ":" not in chunk:
            raise InputError(f"{what} entries look like INDEX:SET, got {chunk!r}")
        left, right = chunk.split(":", 1)
        try:
            idx = int(left)
        except ValueError:
            raise InputError(f"{what} index must be an integer, got {left!r}") from None
        table[idx] = parse_stage_set(right)
    return table


def _build_gadget(args) -> FinitaryAF:
    gid = args.target
    if gid == "fig1":
        if args.stage_set is None:
            raise InputError("fig1 needs --stage-set")
        return gadget_fig1(parse_stage_set(args.stage_set))
    if gid == "stars":
        if args.count is None:
            raise InputError("stars needs --count")
        try:
            return gadget_stars(int(args.count))
        except ValueError:
            return gadget_stars(parse_stage_set(args.count))
    if gid == "fig2":
        table = _parse_per_index(args.card, "--card") if args.card else {}
        for idx in table:
            if idx < 1:
                raise InputError(f"--card indexes start at 1, got {idx}")
        default = StageSet.from_elements([0])

        def card(i: int) -> StageSet:
            return table.get(i, default)

        return gadget_fig2(card)
    if gid == "chain_w":
        if args.w is None:
            raise InputError("chain_w needs --w")
        return gadget_chain_w(parse_stage_set(args.w))
    if gid == "unistb":
        table = _parse_per_index(args.exp, "--exp") if args.exp else {}
        empty = StageSet.empty()

        def exp(i: int) -> StageSet:
            return table.get(i, empty)

        return gadget_unistb(exp)
    if gid == "tree_cf":
        shape = args.shape
        if shape is None:
            raise InputError("tree_cf needs --shape (spine, spines:K or full:B)")
        if shape == "spine":
            return gadget_tree_cf(spine_tree(1))
        if shape.startswith("spines:"):
            return gadget_tree_cf(spine_tree(int(shape.split(":", 1)[1])))
        if shape.startswith("full:"):
            return gadget_tree_cf(full_tree(int(shape.split(":", 1)[1])))
        raise InputError(f"unknown tree shape {shape!r}")
    raise InputError(f"unknown gadget {gid!r}; expected one of {GADGETS}")


def _resolve_name(token: str, names: list[str] | None, faf: FinitaryAF | None) -> int:
    if names is not None and token in names:
        return names.index(token)
    if faf is not None:
        try:
            return faf.index_of(token, search_limit=10_000)
        except InputError:
            pass
    if token.isdigit():
        return int(token)
    raise InputError(f"unknown argument name {token!r}")


def _problem(args, names=None, faf=None) -> DecisionProblem:
    tag = args.problem
    if tag in ("cred", "skep"):
        if args.arg is None:
            raise InputError(f"problem {tag!r} needs --arg")
        return DecisionProblem(tag, _resolve_name(args.arg, names, faf))
    if args.arg is not None:
        raise InputError(f"problem {tag!r} takes no --arg")
    return DecisionProblem(tag)


def _set_text(members, name) -> str:
    return "{" + ",".join(name(i) for i in sorted(members)) + "}"


def cmd_solve(args) -> int:
    with open(args.file, encoding="utf-8") as fh:
        af, names = parse_apx(fh.read())
    sigma = args.semantics
    extensions = enumerate_extensions(af, sigma)
    problem = answer = None
    if args.problem is not None:
        problem = _problem(args, names=names)
        answer = decide_finite(af, problem, sigma)

    def name(i: int) -> str:
        return names[i]

    problem_text = None
    if problem is not None:
        problem_text = problem.tag
        if problem.argument is not None:
            problem_text += f"({names[problem.argument]})"
    if args.format == "json":
        print(json.dumps({
            "semantics": sigma,
            "problem": problem_text,
            "answer": answer,
            "extensions": [sorted(names[i] for i in ext) for ext in extensions],
        }, sort_keys=True))
    elif args.format == "csv":
        exts = " ".join("+".join(names[i] for i in sorted(ext)) or "-" for ext in extensions)
        print("semantics,problem,answer,extensions")
        print(f"{sigma},{problem_text or ''},{'' if answer is None else str(answer).lower()},{exts}")
    else:
        print(f"semantics: {sigma}")
        if problem_text is not None:
            print(f"problem: {problem_text}")
            print(f"answer: {str(answer).lower()}")
        ext_text = " ".join(_set_text(e, name) for e in extensions) or "(none)"
        print(f"extensions: {ext_text}")
    return 0


def cmd_gadget(args) -> int:
    faf = _build_gadget(args)
    n = args.n
    if n is None or n < 0:
        raise InputError("gadget emission needs --n >= 0")
    af = truncate(faf, n)
    names = truncation_names(faf, n)
    print(f"% {faf.description}, first {n} arguments")
    for start in range(0, n, 8):
        block = " ".join(f"{i}={names[i]}" for i in range(start, min(start + 8, n)))
        print(f"% index map: {block}")
    sys.stdout.write(emit_apx(af, names))
    return 0


def cmd_trace(args) -> int:
    faf = _build_gadget(args)
    problem = _problem(args, faf=faf)
    if args.stages < 1:
        raise InputError("--stages must be >= 1")
    budget = Budget(tree_nodes=args.budget)
    process = anytime_process(faf, problem, args.semantics, budget)
    last = None
    for _ in range(args.stages):
        last = process.advance()
        record = {
            "stage": last.stage,
            "answer": last.answer,
            "class": last.cls,
            "evidence": last.evidence,
        }
        if args.format == "json":
            print(json.dumps(record, sort_keys=True))
        elif args.format == "csv":
            if last.stage == 0:
                print("stage,answer,class,evidence")
            print(f"{last.stage},{last.answer},{last.cls},\"{last.evidence}\"")
        else:
            print(f"stage {last.stage}: {last.answer} [{last.cls}] {last.evidence}")
    match = None if args.expect is None else (last.answer == args.expect)
    if args.format == "json":
        print(json.dumps({"final": {
            "stage": last.stage, "answer": last.answer, "class": last.cls,
            "expected": args.expect, "match": match,
        }}, sort_keys=True))
    elif args.format == "csv":
        print(f"final,{last.answer},{last.cls},expected={args.expect} match={match}")
    else:
        note = "" if match is None else f" (expected {args.expect}: {'match' if match else 'MISMATCH'})"
        print(f"final: {last.answer} at stage {last.stage} [{last.cls}]{note}")
    if match is False:
        return 3
    return 0 if last.answer != "unknown" else 2


def cmd_tree(args) -> int:
    names = None
    if args.target in GADGETS:
        framework = _build_gadget(args)
        name = framework.name_of
    else:
        with open(args.target, encoding="utf-8") as fh:
            af, names = parse_apx(fh.read())
        framework = af
        name = lambda i: names[i]
    include = frozenset(
        _resolve_name(t, names, framework if names is None else None)
        for t in (args.include.split(",") if args.include else [])
    )
    exclude = frozenset(
        _resolve_name(t, names, framework if names is None else None)
        for t in (args.exclude.split(",") if args.exclude else [])
    )
    spec = TreeSpec(framework, args.kind, include, exclude)
    if args.depth < 0:
        raise InputError("--depth must be >= 0")
    label_cap = args.label_cap
    if args.kind == "inf-na" and label_cap is None:
        raise InputError("the inf-na tree needs --label-cap")

    budget = args.budget
    emitted = 0
    rows: list[tuple[tuple[int, ...], frozenset, frozenset]] = []
    stack: list[tuple[int, ...]] = [()]
    while stack:
        code = stack.pop()
        emitted += 1
        if emitted > budget:
            raise ResourceLimitError(f"node budget {budget} exhausted", partial=len(rows))
        ins, outs, _, _ = ins_out_sets(spec, code)
        rows.append((code, ins, outs))
        if len(code) < args.depth:
            for child in reversed(children(spec, code, label_cap=label_cap)):
                stack.append(child)

    def render(sets):
        return _set_text(sets, name)

    if args.format == "dot":
        print("digraph tree {")
        ids = {code: f"n{i}" for i, (code, _, _) in enumerate(rows)}
        for code, ins, outs in rows:
            text = ".".join(map(str, code)) or "root"
            print(f'  {ids[code]} [label="{text}\\nIn={render(ins)} Out={render(outs)}"];')
            if code:
                print(f"  {ids[code[:-1]]} -> {ids[code]};")
        print("}")
    else:
        for code, ins, outs in rows:
            text = ".".join(map(str, code)) or "root"
            pad = "  " * len(code)
            print(f"{pad}[{text}] In={render(ins)} Out={render(outs)}")
    return 0


def _add_gadget_options(sp) -> None:
    sp.add_argument("--stage-set", help="fig1: stage set (none, all, 1,4,9 or 2+3k)")
    sp.add_argument("--count", help="stars: star count (integer) or member stage set")
    sp.add_argument("--card", help="fig2: per-index cardinality sets, e.g. 1:0,5;2:all")
    sp.add_argument("--exp", help="unistb: per-index expansion sets, e.g. 0:all")
    sp.add_argument("--w", help="chain_w: member stage set")
    sp.add_argument("--shape", help="tree_cf: spine, spines:K or full:B")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="finaf",
        description="Argumentation-framework solving, gadgets, anytime traces and tree dumps.",
    )
    parser.add_argument(
        "--seed", type=int, default=0,
        help="reserved for reproducibility; all current commands are deterministic",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("solve", help="solve a finite framework file")
    sp.add_argument("file")
    sp.add_argument("--semantics", required=True, choices=ALL_SEMANTICS)
    sp.add_argument("--problem", choices=PROBLEM_TAGS)
    sp.add_argument("--arg")
    sp.add_argument("--format", choices=("text", "json", "csv"), default="text")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("gadget", help="emit a gadget truncation as APX text")
    sp.add_argument("target", metavar="gadget", choices=GADGETS)
    _add_gadget_options(sp)
    sp.add_argument("--n", "-n", type=int, help="truncation size")
    sp.set_defaults(func=cmd_gadget)

    sp = sub.add_parser("trace", help="stream anytime verdicts for a gadget")
    sp.add_argument("target", metavar="gadget", choices=GADGETS)
    _add_gadget_options(sp)
    sp.add_argument("--semantics", required=True, choices=ALL_SEMANTICS)
    sp.add_argument("--problem", required=True, choices=PROBLEM_TAGS)
    sp.add_argument("--arg")
    sp.add_argument("--stages", type=int, required=True, help="number of stages to run")
    sp.add_argument("--budget", type=int, default=None, help="per-stage tree-node budget")
    sp.add_argument("--format", choices=("text", "json", "csv"), default="text")
    sp.add_argument("--expect", choices=("accept", "reject", "unknown"))
    sp.set_defaults(func=cmd_trace)

    sp = sub.add_parser("tree", help="dump a search tree")
    sp.add_argument("target", metavar="file-or-gadget")
    _add_gadget_options(sp)
    sp.add_argument("--kind", required=True, choices=TREE_KINDS)
    sp.add_argument("--include", help="comma-separated argument names forced in")
    sp.add_argument("--exclude", help="comma-separated argument names forced out")
    sp.add_argument("--depth", type=int, required=True)
    sp.add_argument("--budget", type=int, default=None, help="node budget for the dump")
    sp.add_argument("--label-cap", type=int, help="label bound for the inf-na tree")
    sp.add_argument("--format", choices=("text", "dot"), default="text")
    sp.set_defaults(func=cmd_tree)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "budget", None) is None and hasattr(args, "budget"):
            args.budget = _default_budget()
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ResourceLimitError as exc:
        print(f"unknown: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
