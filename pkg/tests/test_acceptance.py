"""Acceptance criteria, one test per criterion.

Each test prints a single ``[PASS]``/``[FAIL]`` line; the lines are repeated in
the pytest terminal summary.  Run directly with ``python tests/test_acceptance.py``
for the lines alone.
"""

import itertools
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from partialpi import harness  # noqa: E402
from partialpi.corpus import builtin_corpus, find  # noqa: E402
from partialpi.perm import Group, Permutation, parse_permutation  # noqa: E402
from partialpi.pi import factor_condition, satisfies_partial_pi  # noqa: E402
from partialpi.series import chief_series_iter, jordan_holder_factor_orders  # noqa: E402
from partialpi.subgroups import (  # noqa: E402
    as_subgroup,
    cyclic,
    derived_subgroup,
    maximal_subgroups_of_p_group,
    prime_divisors,
    sylow_subgroup,
)

RESULTS: dict[int, str] = {}


def record(n: int, ok: bool, text: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {text}"
    RESULTS[n] = line
    print(line)


def fresh(name: str) -> Group:
    """Build a corpus group from scratch so timings include every cache fill."""
    e = find(builtin_corpus(), name)
    return Group([parse_permutation(g, e.degree) for g in e.generators], name=name)


def test_criterion_1_psl27_example():
    t0 = time.perf_counter()
    G = fresh("PSL27")
    (r,) = harness.run_check("R1", G, "PSL27", p=2)
    dt = time.perf_counter() - t0
    w = r.witness
    ok = (
        G.order == 168
        and w["normalizer_order"] == 8
        and w["normalizer_is_P"]
        and w["maximals_in_normalizer"] == [True, True, True]
        and w["derived_order"] == 2
        and not w["derived_holds"]
        and 21 in w["derived_factor_indices"]
        and not w["p_nilpotent"]
        and r.status == harness.VERIFIED
        and dt < 30
    )
    record(1, ok, f"PSL27 p=2: |G|=168, N_G(P)=P of order 8, 3/3 maximals hold in N_G(P), "
                  f"P' of order 2 fails with index 21, not 2-nilpotent ({dt:.2f}s < 30s)")
    assert ok


def test_criterion_2_a5_example():
    t0 = time.perf_counter()
    G = fresh("A5")
    (r,) = harness.run_check("R2", G, "A5", p=3)
    found = harness.search_counterexamples("T3", builtin_corpus(), ["gcd-condition"])
    dt = time.perf_counter() - t0
    hits = sorted({(x.group, x.params["p"]) for x in found})
    all_gcd = all(not harness.gcd_condition(find(builtin_corpus(), g).expected_order, p) for g, p in hits)
    w = r.witness
    ok = (
        w["normalizer_order"] == 6
        and all(w["maximals_in_normalizer"])
        and w["derived_order"] == 1
        and w["derived_holds"]
        and not w["p_nilpotent"]
        and r.status == harness.VERIFIED
        and ("A5", 3) in hits
        and all_gcd
        and dt < 10
    )
    record(2, ok, f"A5 p=3: maximals hold in N_G(P) (order 6), P'=1 holds, not 3-nilpotent; "
                  f"dropping the gcd condition flags (A5, 3) among {len(hits)} gcd-excluded instances ({dt:.2f}s < 10s)")
    assert ok


def test_criterion_3_t3_iff():
    t0 = time.perf_counter()
    reports = harness.run_suite(builtin_corpus(), ["T3"])
    dt = time.perf_counter() - t0
    s = harness.summarize(reports)
    fwd = sum(1 for r in reports if r.params.get("direction") == "hypotheses=>p-nilpotent")
    bwd = sum(1 for r in reports if r.params.get("direction") == "p-nilpotent=>hypotheses")
    ok = s["counterexample"] == 0 and s["skipped"] == 0 and fwd == bwd > 0 and dt < 600
    record(3, ok, f"T3 both directions over the builtin corpus: {fwd} (group, p) instances, "
                  f"{s['verified']} verified, {s['vacuous']} vacuous, 0 counterexamples required, "
                  f"got {s['counterexample']} ({dt:.1f}s < 600s)")
    assert ok


def test_criterion_4_l8():
    reports = harness.run_suite(builtin_corpus(), ["L8"])
    s = harness.summarize(reports)
    slices = {(r.group, r.params["p"]) for r in reports if r.hypothesis_met}
    ok = s["counterexample"] == 0 and s["skipped"] == 0 and s["verified"] > 0
    record(4, ok, f"L8 over {len(slices)} p-nilpotent (group, p) slices, {s['verified']} sampled "
                  f"p-subgroups, failures {s['counterexample']}")
    assert ok


def _exhaustive(G, H, series):
    return any(all(factor_condition(G, H, st.lower, st.upper) for st in s.steps) for s in series)


def _subgroups_to_test(G):
    out = {}
    for p in prime_divisors(G.order):
        P = sylow_subgroup(G, p)
        for H in [P, derived_subgroup(P)] + maximal_subgroups_of_p_group(P, p):
            out[H.key] = H
    for x in range(0, G.order, max(1, G.order // 6)):
        H = cyclic(G, x)
        out[H.key] = H
    return list(out.values())


def test_criterion_5_oracle_equivalence():
    pairs = agree = groups = 0
    for e in builtin_corpus():
        G = as_subgroup(e.group())
        series = list(itertools.islice(chief_series_iter(G), 501))
        if len(series) > 500:
            continue
        groups += 1
        for H in _subgroups_to_test(G):
            pairs += 1
            agree += satisfies_partial_pi(G, H).holds == _exhaustive(G, H, series)
    ok = pairs >= 200 and agree == pairs
    record(5, ok, f"memoized verdict equals all-chief-series verdict on {agree}/{pairs} pairs "
                  f"over {groups} groups (need >= 200 pairs)")
    assert ok


def test_criterion_6_jordan_holder():
    groups = bad = 0
    for e in builtin_corpus():
        G = as_subgroup(e.group())
        series = list(itertools.islice(chief_series_iter(G), 201))
        if len(series) > 200:
            continue
        groups += 1
        ref = jordan_holder_factor_orders(series[0])
        bad += any(jordan_holder_factor_orders(s) != ref for s in series)
    ok = bad == 0 and groups > 0
    record(6, ok, f"factor-order multisets identical across all chief series for {groups - bad}/{groups} groups")
    assert ok


def test_criterion_7_ground_truth():
    want = {"A5": 60, "S5": 120, "PSL27": 168, "D8": 8, "SL23": 24}
    orders_ok = True
    for name, n in want.items():
        e = find(builtin_corpus(), name)
        gens = [oracles.parse_cycles(g, e.degree) for g in e.generators]
        orders_ok &= fresh(name).order == n == len(oracles.closure(gens, e.degree))
    rng = random.Random(2026)
    tested = mismatches = groups = 0
    for e in builtin_corpus():
        if e.expected_order > 2000:
            continue
        groups += 1
        G = e.group()
        members = oracles.closure([oracles.parse_cycles(g, e.degree) for g in e.generators], e.degree)
        pool = sorted(members)
        for k in range(200):
            if k % 2:
                img = list(range(e.degree))
                rng.shuffle(img)
                x = tuple(img)
            else:
                x = pool[rng.randrange(len(pool))]
            tested += 1
            mismatches += (Permutation([v + 1 for v in x]) in G) != (x in members)
    ok = orders_ok and mismatches == 0
    record(7, ok, f"orders 60/120/168/8/24 match closure: {orders_ok}; BSGS membership agrees on "
                  f"{tested - mismatches}/{tested} elements over {groups} groups")
    assert ok


def test_criterion_8_suites():
    checks = ["T1", "T2", "T3", "T4", "T5", "C1", "L1", "L2", "L3", "L4", "L5", "L6", "L7"]
    reports = harness.run_suite(builtin_corpus(), checks)
    table = harness.breakdown(reports)
    print(f"{'check':<6}{'verified':>10}{'vacuous':>9}{'counterex':>11}{'skipped':>9}{'instances':>11}")
    for cid in checks:
        row = table[cid]
        print(f"{cid:<6}{row['verified']:>10}{row['vacuous']:>9}{row['counterexample']:>11}"
              f"{row['skipped']:>9}{row['nonvacuous_instances']:>11}")
    s = harness.summarize(reports)
    inst = {c: table[c]["nonvacuous_instances"] for c in ("T3", "T4", "C1")}
    ok = s["counterexample"] == 0 and s["skipped"] == 0 and all(v >= 10 for v in inst.values())
    record(8, ok, f"{len(checks)} suites: {s['verified']} verified, {s['vacuous']} vacuous, "
                  f"{s['counterexample']} counterexamples; non-vacuous instances T3={inst['T3']} "
                  f"T4={inst['T4']} C1={inst['C1']} (need >= 10 each)")
    assert ok


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
