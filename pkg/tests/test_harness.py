import json
import random

import pytest

from conftest import G_, entry
from partialpi import harness
from partialpi.corpus import builtin_corpus
from partialpi.harness import (
    COUNTEREXAMPLE,
    SKIPPED,
    VACUOUS,
    VERIFIED,
    run_check,
    run_entry,
    run_suite,
    sample_p_subgroups,
    search_counterexamples,
    summarize,
    t5_hypothesis,
)
from partialpi.perm import set_element_cap, element_cap
from partialpi.subgroups import all_normal_subgroups, is_p_power


def test_r1_report():
    (r,) = run_check("R1", entry("PSL27").group(), "PSL27", p=2)
    assert r.status == VERIFIED
    w = r.witness
    assert w["normalizer_is_P"] and w["normalizer_order"] == 8
    assert w["maximals_in_normalizer"] == [True, True, True]
    assert w["derived_order"] == 2 and not w["derived_holds"]
    assert 21 in w["derived_factor_indices"]
    assert not w["p_nilpotent"] and not w["p_soluble"]


def test_r2_report():
    (r,) = run_check("R2", entry("A5").group(), "A5", p=3)
    assert r.status == VERIFIED
    w = r.witness
    assert w["normalizer_order"] == 6 and all(w["maximals_in_normalizer"])
    assert w["derived_holds"] and not w["p_nilpotent"] and not w["gcd_condition"]


def test_worked_examples_only_on_their_groups():
    assert run_check("R1", entry("S4").group(), "S4") == []
    assert run_check("R2", entry("S4").group(), "S4") == []


def test_t3_odd_order_p2_vacuous():
    for name in ["C15", "F21", "He3", "Z3^3"]:
        (r,) = run_check("T3", entry(name).group(), name, p=2)
        assert r.status == VACUOUS and r.conclusion_holds is None


def test_t3_gcd_failure_vacuous():
    (r,) = run_check("T3", entry("A5").group(), "A5", p=3)
    assert r.status == VACUOUS


def test_report_status_invariant():
    reports = run_entry(entry("S4")) + run_entry(entry("PSL27"))
    for r in reports:
        if r.status == COUNTEREXAMPLE:
            assert r.hypothesis_met and r.conclusion_holds is False
        if r.status == VACUOUS:
            assert r.hypothesis_met is False and r.conclusion_holds is None
        if r.status == VERIFIED:
            assert r.hypothesis_met and r.conclusion_holds
        assert set(r.to_dict()) == {
            "check_id", "group", "params", "hypothesis_met", "conclusion_holds", "status", "witness", "elapsed_ms"
        }


def test_search_drop_gcd_flags_a5():
    found = search_counterexamples("T3", builtin_corpus(), ["gcd-condition"])
    hits = {(r.group, r.params["p"]) for r in found}
    assert ("A5", 3) in hits
    # every flagged instance is one the gcd condition would have excluded
    for r in found:
        G = entry(r.group).group()
        assert not harness.gcd_condition(G.order, r.params["p"])


def test_search_drop_derived_flags_psl27():
    found = search_counterexamples("T3", builtin_corpus(), ["pprime-subgroup-condition"])
    assert ("PSL27", 2) in {(r.group, r.params["p"]) for r in found}


def test_search_drop_nothing_finds_nothing():
    assert search_counterexamples("T3", builtin_corpus(), []) == []


def test_bad_check_and_drop():
    with pytest.raises(ValueError):
        run_check("T9", entry("S3").group())
    with pytest.raises(ValueError):
        run_check("T3", entry("S3").group(), drop=["nonsense"])
    with pytest.raises(ValueError):
        search_counterexamples("L1", builtin_corpus(), ["gcd-condition"])


def test_sampling_policy():
    G = G_("S4")
    sample = sample_p_subgroups(G, 2)
    sylows = [d for d, _ in sample if d.startswith("sylow")]
    assert len(sylows) == 3
    for _, H in sample:
        assert is_p_power(H.order, 2)
    assert len(sample_p_subgroups(G_("S6"), 2)) <= harness.SAMPLE_LIMIT
    assert sample_p_subgroups(G, 5) == []
    reports = run_check("L8", entry("D16").group(), "D16", p=2)
    assert reports and all(r.params["sampled"] for r in reports)


def test_skipped_cap_reported():
    old = element_cap()
    try:
        set_element_cap(100)
        reports = run_check("T3", entry("PSL27").group(), "PSL27", p=2)
    finally:
        set_element_cap(old)
    assert [r.status for r in reports] == [SKIPPED]


def test_t5_conjugate_sylows_agree():
    rng = random.Random(4)
    for name in ["S4", "GL23", "S3xS3", "C2xA4", "F20", "SL23", "A5"]:
        G = G_(name)
        for N in all_normal_subgroups(G):
            ref, _ = t5_hypothesis(G, N)
            for _ in range(3):
                got, _ = t5_hypothesis(G, N, conjugator=rng.randrange(G.order))
                assert got == ref


def test_determinism():
    entries = [entry(n) for n in ["S4", "PSL27", "D12", "F21"]]

    def strip(rs):
        out = []
        for r in rs:
            d = r.to_dict()
            d.pop("elapsed_ms")
            out.append(json.dumps(d, sort_keys=True))
        return out

    assert strip(run_suite(entries)) == strip(run_suite(entries))


def test_parallel_matches_serial():
    entries = [entry(n) for n in ["S3", "S4", "A4", "D8"]]
    a = [r.to_dict() for r in run_suite(entries, ["T3", "L6"])]
    b = [r.to_dict() for r in run_suite(entries, ["T3", "L6"], jobs=2)]
    for d in a + b:
        d.pop("elapsed_ms")
    assert a == b


@pytest.mark.parametrize("check", ["T1", "T2", "T4", "T5", "C1", "L1", "L2", "L3", "L4", "L5", "L6", "L7", "L8"])
def test_checks_no_counterexample_sample(check):
    for name in ["S4", "SL23", "GL23", "PSL27", "A5", "S3xS3", "D24", "He3", "F20"]:
        reports = run_check(check, entry(name).group(), name)
        assert summarize(reports)["counterexample"] == 0
