import json

from partialpi.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_info(capsys):
    code, out, _ = run(capsys, "info", "builtin", "PSL27")
    d = json.loads(out)
    assert code == 0 and d["order"] == 168 and d["pi"] == [2, 3, 7]
    assert d["profile"]["p_nilpotent"]["2"] is False


def test_check_pi(capsys):
    code, out, _ = run(capsys, "check-pi", "--corpus", "builtin", "--group", "PSL27", "--subgroup", "derived-of-sylow:2")
    d = json.loads(out)
    assert code == 0 and d["holds"] is False and d["subgroup_order"] == 2
    code, out, _ = run(
        capsys, "check-pi", "--corpus", "builtin", "--group", "A5",
        "--subgroup", "sylow:3", "--ambient", "normalizer-of-sylow:3",
    )
    d = json.loads(out)
    assert code == 0 and d["holds"] is True and d["ambient_order"] == 6 and d["witness"]
    code, out, _ = run(capsys, "check-pi", "--corpus", "builtin", "--group", "S4", "--subgroup", "cyclic:(1 2)(3 4)")
    assert code == 0 and json.loads(out)["subgroup_order"] == 2


def test_check_pi_bad_subgroup(capsys):
    code, _, err = run(capsys, "check-pi", "--corpus", "builtin", "--group", "A5", "--subgroup", "cyclic:(1 2)")
    assert code == 2 and "not an element" in err
    code, _, _ = run(capsys, "check-pi", "--corpus", "builtin", "--group", "A5", "--subgroup", "cyclic:(1 2")
    assert code == 2


def test_verify_with_report(capsys, tmp_path):
    rep = tmp_path / "r.jsonl"
    code, out, _ = run(capsys, "verify", "--corpus", "builtin", "--checks", "T3,R1,R2", "--report", str(rep))
    assert code == 0
    assert out.startswith("sampling policy:")
    lines = [json.loads(x) for x in rep.read_text().splitlines()]
    summary = lines[-1]["summary"]
    assert set(summary) == {"verified", "vacuous", "counterexample", "skipped"}
    assert summary["counterexample"] == 0 and summary["verified"] > 0
    assert sum(summary.values()) == len(lines) - 1
    assert {x["check_id"] for x in lines[:-1]} == {"T3", "R1", "R2"}


def test_verify_primes_and_cap(capsys, tmp_path):
    corpus = tmp_path / "c.json"
    corpus.write_text(
        '[\n{"name": "PSL27", "degree": 7, "generators": ["(1 2 3 4 5 6 7)", "(1 2)(3 6)"], "expected_order": 168}\n]\n'
    )
    code, _, _ = run(capsys, "verify", "--corpus", str(corpus), "--checks", "T3", "--primes", "2", "--cap", "100")
    assert code == 3
    code, _, _ = run(capsys, "verify", "--corpus", str(corpus), "--checks", "T3", "--primes", "2", "--cap", "20000")
    assert code == 0


def test_verify_bad_inputs(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('[{"name": "X", "degree": 3, "generators": ["(1 4)"]}]')
    assert run(capsys, "verify", "--corpus", str(bad))[0] == 2
    assert run(capsys, "verify", "--corpus", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "verify", "--corpus", "builtin", "--checks", "T9")[0] == 2
    assert run(capsys, "info", "builtin", "NoSuchGroup")[0] == 2


def test_search_modes(capsys):
    code, out, _ = run(capsys, "search", "--corpus", "builtin", "--check", "T3", "--drop", "gcd-condition")
    assert code == 0
    hits = [json.loads(x) for x in out.splitlines()[:-1]]
    assert any(h["group"] == "A5" and h["params"]["p"] == 3 for h in hits)
    code, out, _ = run(capsys, "search", "--corpus", "builtin", "--check", "T3", "--drop", "none")
    assert code == 0 and json.loads(out)["counterexamples"] == 0


def test_search_expected_not_found(capsys, tmp_path):
    corpus = tmp_path / "c.json"
    corpus.write_text('[{"name": "C6", "degree": 6, "generators": ["(1 2 3 4 5 6)"]}]')
    code, _, _ = run(capsys, "search", "--corpus", str(corpus), "--check", "T3", "--drop", "gcd-condition")
    assert code == 1
