"""The seven acceptance gates, one test and one pass/fail line each."""

import itertools
import json
import random
import time
from pathlib import Path

import finaf
from finaf import (
    EXISTS,
    NE,
    UNI,
    DecisionProblem,
    FiniteAF,
    anytime_process,
    cred,
    cred_cf_fast,
    decide_finite,
    embed_finite,
    enumerate_extensions,
    extensions_via_tree,
    gadget_fig1,
    gadget_stars,
    grounded,
    parse_stage_set,
    skep,
    truncate,
    truncation_names,
    y_set_probe,
)
from finaf.apx import default_names, emit_apx, parse_apx
from finaf.cli import main as cli_main

from conftest import assert_class_law, build_recorded_framework, random_finite_af

GOLDEN = Path(__file__).parent / "golden" / "gadget_verdicts.json"

PAIRS4 = [(i, j) for i in range(4) for j in range(4)]


def af_from_mask(n: int, mask: int) -> FiniteAF:
    pairs = [(i, j) for i in range(n) for j in range(n)]
    return FiniteAF(n, frozenset(p for k, p in enumerate(pairs) if mask >> k & 1))


def all_afs(n: int):
    pairs = [(i, j) for i in range(n) for j in range(n)]
    for mask in range(1 << len(pairs)):
        yield FiniteAF(n, frozenset(p for k, p in enumerate(pairs) if mask >> k & 1))


def stream(proc, hi):
    proc.run_until(hi)
    return [v.answer for v in proc.history]


def report(capsys, line):
    # bypass capture so the verdict line lands in the test runner output
    with capsys.disabled():
        print(line)


def test_criterion_1_exhaustive_oracle_consistency(capsys):
    t0 = time.monotonic()
    for mask in range(1 << 16):
        af = af_from_mask(4, mask)
        fams = {s: enumerate_extensions(af, s) for s in ("cf", "ad", "co", "stb")}
        assert set(fams["stb"]) <= set(fams["co"]) <= set(fams["ad"]) <= set(fams["cf"])
        g = grounded(af)
        assert g in fams["co"]
        assert all(g <= e for e in fams["co"])
        skeptical = frozenset.intersection(*fams["co"])
        assert skeptical == g
    elapsed = time.monotonic() - t0
    assert elapsed < 120
    report(capsys, f"CRITERION 1 (exhaustive oracle consistency, 65536 AFs, {elapsed:.1f}s): PASS")


def test_criterion_2_tree_bijection(capsys):
    t0 = time.monotonic()
    rng = random.Random(20260814)
    for _ in range(500):
        af = random_finite_af(rng, max_args=5)
        for kind in ("ad", "stb", "co"):
            oracle = enumerate_extensions(af, kind)
            filters = [((), ())] + [((a,), ()) for a in range(af.n_args)] + [
                ((), (a,)) for a in range(af.n_args)]
            for inc, exc in filters:
                got = extensions_via_tree(af, kind, include=inc, exclude=exc)
                want = [e for e in oracle if set(inc) <= e and not (set(exc) & e)]
                assert sorted(got, key=sorted) == sorted(want, key=sorted)
    elapsed = time.monotonic() - t0
    assert elapsed < 300
    report(capsys, f"CRITERION 2 (tree bijection, 500 seeded AFs, {elapsed:.1f}s): PASS")


def test_criterion_3_characterization_equivalences(capsys):
    t0 = time.monotonic()
    checked = 0
    for n in range(5):
        for af in all_afs(n):
            emb = embed_finite(af)
            L = max(2 * n, 2 * len(af.attacks), 1)
            for a in range(n):
                want_cf = decide_finite(af, cred(a), "cf")
                assert cred_cf_fast(emb, a) == want_cf
                assert decide_finite(af, cred(a), "na") == want_cf
                skna = stream(skep_proc := finaf.skep_na_anytime(emb, a), L + 4)
                want = "accept" if decide_finite(af, skep(a), "na") else "reject"
                assert skna[L:] == [want] * 5, (af, a)
                assert_class_law(skep_proc.cls, skna)
            unna = stream(uni_proc := finaf.uni_na_anytime(emb), L + 4)
            want = "accept" if decide_finite(af, UNI, "na") else "reject"
            assert unna[L:] == [want] * 5, af
            assert_class_law(uni_proc.cls, unna)
            checked += 1
    elapsed = time.monotonic() - t0
    assert elapsed < 600
    report(capsys, f"CRITERION 3 (characterization equivalences, {checked} AFs, {elapsed:.1f}s): PASS")


def load_golden():
    payload = json.loads(GOLDEN.read_text())
    return payload["entries"]


def test_criterion_4_gadget_ground_truth(capsys):
    t0 = time.monotonic()
    for entry in load_golden():
        faf = build_recorded_framework(entry["gadget"], entry["config"])
        problem = (DecisionProblem(entry["problem"]) if entry["argument"] is None
                   else DecisionProblem(entry["problem"], entry["argument"]))
        proc = anytime_process(faf, problem, entry["sigma"])
        answers = stream(proc, 2 * entry["stage"])
        assert answers[entry["stage"]] == entry["answer"], entry
        assert set(answers[entry["stage"]:]) == {entry["answer"]}, entry
        assert proc.cls == entry["class"]
    # the unbounded star field keeps exactly its centers stable, at any size
    stars = gadget_stars(parse_stage_set("all"))
    for n in (4, 9, 15, 21):
        tr = truncate(stars, n)
        centers = frozenset(
            m for m in range(n) if truncation_names(stars, n)[m].startswith("c"))
        assert enumerate_extensions(tr, "stb") == [centers]
        assert decide_finite(tr, UNI, "stb")
    elapsed = time.monotonic() - t0
    assert elapsed < 600
    report(capsys, f"CRITERION 4 (gadget ground truth at golden stages, {elapsed:.1f}s): PASS")


def test_criterion_5_class_laws(capsys):
    t0 = time.monotonic()
    traces = []
    for entry in load_golden():
        faf = build_recorded_framework(entry["gadget"], entry["config"])
        problem = (DecisionProblem(entry["problem"]) if entry["argument"] is None
                   else DecisionProblem(entry["problem"], entry["argument"]))
        proc = anytime_process(faf, problem, entry["sigma"])
        traces.append((proc.cls, stream(proc, 2 * entry["stage"])))
    rng = random.Random(5)
    problems = [EXISTS, NE, UNI] + [cred(a) for a in range(5)] + [skep(a) for a in range(5)]
    for _ in range(300):
        af = random_finite_af(rng, max_args=4)
        sigma = rng.choice(finaf.FINITE_SEMANTICS)
        usable = [p for p in problems if p.argument is None or p.argument < af.n_args]
        problem = rng.choice(usable)
        emb = embed_finite(af, pad="guarded" if sigma == "stb" else "spiky")
        proc = anytime_process(emb, problem, sigma)
        traces.append((proc.cls, stream(proc, max(2 * af.n_args, 2 * len(af.attacks), 1) + 6)))
    monitored = 0
    for cls, answers in traces:
        if cls in ("sigma1", "pi1"):
            monitored += 1
        assert_class_law(cls, answers)
    assert monitored >= 100
    elapsed = time.monotonic() - t0
    report(capsys, f"CRITERION 5 (class laws over {len(traces)} traces, {elapsed:.1f}s): PASS")


def test_criterion_6_witness_probe_growth(capsys):
    t0 = time.monotonic()
    configs = [
        (gadget_fig1(parse_stage_set("1,2")), "ad", "inf-ad"),
        (gadget_fig1(parse_stage_set("all")), "ad", "inf-ad"),
        (gadget_stars(parse_stage_set("all")), "stb", "inf-stb"),
        (gadget_stars(4), "stb", "inf-stb"),
    ]
    for faf, sigma, inf_sigma in configs:
        sizes = {s: len(y_set_probe(faf, sigma, stage=s)) for s in (20, 40, 80, 160)}
        grows = all(sizes[2 * s] >= sizes[s] + 1 for s in (20, 40, 80))
        verdict = anytime_process(faf, EXISTS, inf_sigma).run_until(170).answer
        assert grows == (verdict == "accept"), (faf.description, sizes, verdict)
    elapsed = time.monotonic() - t0
    report(capsys, f"CRITERION 6 (probe growth matches existence verdicts, {elapsed:.1f}s): PASS")


def test_criterion_7_cli_round_trip(tmp_path, capsys):
    t0 = time.monotonic()
    rng = random.Random(77)
    for k in range(100):
        af = random_finite_af(rng, max_args=5)
        names = default_names(af.n_args)
        text = emit_apx(af, names)
        parsed, parsed_names = parse_apx(text)
        assert (parsed, parsed_names) == (af, names)
        assert emit_apx(parsed, parsed_names) == text
        path = tmp_path / f"af{k}.apx"
        path.write_text(text)
        sigma = ("cf", "na", "ad", "co", "stb")[k % 5]
        assert cli_main(["solve", str(path), "--semantics", sigma, "--format", "json"]) == 0
        out = capsys.readouterr().out
        expected = {
            "semantics": sigma,
            "problem": None,
            "answer": None,
            "extensions": [sorted(names[i] for i in e)
                           for e in enumerate_extensions(af, sigma)],
        }
        assert out == json.dumps(expected, sort_keys=True) + "\n"
    # gadget emissions, re-ingested and solved, match the in-memory answers
    gadget_args = [
        (["gadget", "fig1", "--stage-set", "1,2", "-n", "8"],
         gadget_fig1(parse_stage_set("1,2")), 8),
        (["gadget", "stars", "--count", "3", "-n", "7"], gadget_stars(3), 7),
        (["gadget", "chain_w", "--w", "all", "-n", "6"],
         finaf.gadget_chain_w(parse_stage_set("all")), 6),
    ]
    for argv, faf, n in gadget_args:
        assert cli_main(argv) == 0
        emitted = capsys.readouterr().out
        path = tmp_path / f"{argv[1]}.apx"
        path.write_text(emitted)
        parsed, parsed_names = parse_apx(emitted)
        assert parsed == truncate(faf, n)
        assert parsed_names == truncation_names(faf, n)
        assert cli_main(["solve", str(path), "--semantics", "stb",
                         "--problem", "exists", "--format", "json"]) == 0
        out = capsys.readouterr().out
        exts = enumerate_extensions(truncate(faf, n), "stb")
        expected = {
            "semantics": "stb",
            "problem": "exists",
            "answer": bool(exts),
            "extensions": [sorted(parsed_names[i] for i in e) for e in exts],
        }
        assert out == json.dumps(expected, sort_keys=True) + "\n"
    elapsed = time.monotonic() - t0
    report(capsys, f"CRITERION 7 (CLI round-trip, 100 AFs + gadget truncations, {elapsed:.1f}s): PASS")
