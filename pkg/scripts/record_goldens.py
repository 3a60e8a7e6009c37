#!/usr/bin/env python3
"""Record reference verdicts and stabilization stages for the gadget suite.

Each entry is re-run from scratch until its verdict stream has been constant
for a comfortable tail, then frozen into tests/golden/gadget_verdicts.json.
The test suite replays every entry to twice its recorded stage and insists
the verdict never moves again.
"""

import json
import sys
from pathlib import Path

import finaf

STAGE_FLOOR = 8
OUT = Path(__file__).resolve().parent.parent / "tests" / "golden" / "gadget_verdicts.json"


def build_framework(gadget: str, config: str) -> finaf.FinitaryAF:
    if gadget == "fig1":
        return finaf.gadget_fig1(finaf.parse_stage_set(config))
    if gadget == "stars":
        if config.isdigit():
            return finaf.gadget_stars(int(config))
        return finaf.gadget_stars(finaf.parse_stage_set(config))
    if gadget == "fig2":
        if config == "all-finite":
            return finaf.gadget_fig2(lambda i: finaf.StageSet.from_elements([0]))
        if config == "first-infinite":
            return finaf.gadget_fig2(
                lambda i: finaf.StageSet.always() if i == 1 else finaf.StageSet.from_elements([0])
            )
    if gadget == "unistb":
        if config == "all-empty":
            return finaf.gadget_unistb(lambda i: finaf.StageSet.empty())
        if config == "exp0-infinite":
            return finaf.gadget_unistb(
                lambda i: finaf.StageSet.always() if i == 0 else finaf.StageSet.empty()
            )
    raise ValueError(f"no recipe for {gadget!r} / {config!r}")


def make_problem(tag: str, argument: int | None) -> finaf.DecisionProblem:
    if argument is None:
        return finaf.DecisionProblem(tag)
    return finaf.DecisionProblem(tag, argument)


PLAN = [
    ("fig1", "1,2", "inf-ad", "exists", None, "accept"),
    ("fig1", "all", "inf-ad", "exists", None, "reject"),
    ("fig1", "all", "ad", "ne", None, "reject"),
    ("stars", "all", "inf-stb", "exists", None, "accept"),
    ("stars", "4", "inf-stb", "exists", None, "reject"),
    ("fig2", "all-finite", "inf-ad", "uni", None, "accept"),
    ("fig2", "first-infinite", "inf-ad", "uni", None, "reject"),
    ("unistb", "exp0-infinite", "inf-stb", "uni", None, "reject"),
] + [
    # b_i sits at index 2i + 1
    ("unistb", "all-empty", "stb", "cred", 2 * i + 1, "accept")
    for i in range(6)
]

HORIZON_CAP = 1536


def record_entry(gadget, config, sigma, tag, argument, expected):
    faf = build_framework(gadget, config)
    proc = finaf.anytime_process(faf, make_problem(tag, argument), sigma)
    # late verdict moves ride on stage-gated candidate supplies, so the
    # confirmation tail has to dwarf the last observed flip; a run that has
    # not yet reached the known ground-truth verdict just has not converged
    horizon = 96
    while True:
        proc.run_until(horizon)
        answers = [v.answer for v in proc.history]
        last_flip = max(
            (i for i in range(1, len(answers)) if answers[i] != answers[i - 1]),
            default=0,
        )
        needed = max(4 * last_flip + 64, 96)
        if answers[-1] != expected:
            needed = max(needed, 2 * horizon)
        if horizon >= needed:
            break
        if needed > HORIZON_CAP:
            raise RuntimeError(
                f"{gadget}/{config} {tag} {sigma}: no convergence to "
                f"{expected} within {HORIZON_CAP} stages (got {answers[-1]})"
            )
        horizon = needed
    final = answers[-1]
    if final != expected:
        raise RuntimeError(
            f"{gadget}/{config} {tag} {sigma}: stabilized on {final}, expected {expected}"
        )
    stage = max(last_flip, STAGE_FLOOR)
    assert all(a == final for a in answers[stage:])
    return {
        "gadget": gadget,
        "config": config,
        "sigma": sigma,
        "problem": tag,
        "argument": argument,
        "answer": final,
        "stage": stage,
        "stable_through": horizon,
        "class": proc.cls,
    }


def main() -> int:
    budget = finaf.Budget()
    entries = [record_entry(*item) for item in PLAN]
    OUT.parent.mkdir(parents=True, exist_ok=True)
    payload = {
        "budget": {"tree_nodes": budget.tree_nodes, "checks": budget.checks},
        "entries": entries,
    }
    OUT.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    for e in entries:
        arg = "" if e["argument"] is None else f"({e['argument']})"
        print(f"{e['gadget']}/{e['config']:15s} {e['problem']}{arg} {e['sigma']:7s}"
              f" -> {e['answer']:6s} @ {e['stage']:3d} (stable to {e['stable_through']})")
    print(f"wrote {OUT}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
