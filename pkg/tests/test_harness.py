import json

import pytest

from fitdef.group import trivial_subgroup
from fitdef.harness import (
    CHECK_IDS,
    Config,
    ConfigError,
    CorpusEntry,
    default_corpus,
    entry_from_text,
    load_corpus,
    replay,
    run_check,
    run_suite,
)
from fitdef.harness import checks
from fitdef.io import format_cayley_table
from fitdef.families import parse_family_spec

SPEC_IDS = {
    "lemma1", "lemma2", "lemma3", "thm1-fitting", "thm1-radical", "thm2",
    "thm3-profile", "engel", "identities", "product-example",
}


def entry(spec):
    return CorpusEntry(spec, ("family", spec))


def test_check_ids_cover_the_contract():
    assert SPEC_IDS <= set(CHECK_IDS)
    assert set(CHECK_IDS) - SPEC_IDS == {"oracle"}


def test_config_parsing(tmp_path):
    c = Config.from_text("# budgets\nseed = 7\nmax_order_oracle = 30  # small\ntimings = yes\nreport_path = out.json\n")
    assert (c.seed, c.max_order_oracle, c.timings, c.report_path) == (7, 30, True, "out.json")
    assert Config() == Config.from_text("")
    for bad in ("nonsense = 1", "seed 1", "seed = x", "timings = maybe"):
        with pytest.raises(ConfigError):
            Config.from_text(bad)


def test_default_corpus_contents():
    names = [e.name for e in default_corpus()]
    assert len(names) == len(set(names)) == 28
    assert "product(quaternion8,alternating:5)" in names


def test_load_corpus(tmp_path):
    (tmp_path / "z6.family").write_text("cyclic:6\n")
    (tmp_path / "s3.perm").write_text("3\n1 0 2\n1 2 0\n")
    (tmp_path / "z2.table").write_text("2\n0 1\n1 0\n")
    (tmp_path / "notes.txt").write_text("ignored")
    corpus = load_corpus(tmp_path)
    assert [e.name for e in corpus] == ["s3", "z2", "z6"]
    assert [e.group.order for e in corpus] == [6, 2, 6]
    with pytest.raises(FileNotFoundError):
        load_corpus(tmp_path / "missing")


def test_entry_from_text(tmp_path):
    assert entry_from_text("symmetric:3").group.order == 6
    with pytest.raises(FileNotFoundError):
        entry_from_text("no-such-thing")


def test_tags():
    assert entry("quaternion8").compute_tags() == ["nilpotent", "soluble"]
    assert entry("alternating:5").compute_tags() == ["trivial-radical"]
    assert entry("cyclic:4").compute_tags() == ["abelian", "nilpotent", "soluble"]


def test_run_check_examples():
    r = run_check(entry("symmetric:3"), "thm1-fitting")
    assert r.status == "pass" and r.details["defined_size"] == 3
    r = run_check(entry("alternating:5"), "thm1-radical")
    assert r.status == "pass" and r.details["defined_size"] == 1
    with pytest.raises(KeyError):
        run_check(entry("cyclic:2"), "nope")


def test_trivial_group_checks():
    for check in CHECK_IDS:
        status = run_check(entry("cyclic:1"), check).status
        assert status == ("skipped" if check == "product-example" else "pass")


def test_budgets_skip_with_reason():
    r = run_check(entry("symmetric:5"), "lemma1")
    assert r.status == "skipped" and "max_order_normal_pairs" in r.reason
    r = run_check(entry("symmetric:4"), "oracle", Config(oracle_budget=4))
    assert r.status == "skipped" and "budget" in r.reason


def test_product_example_details():
    r = run_check(entry("product(quaternion8,alternating:5)"), "product-example")
    assert r.status == "pass"
    assert r.details["fitting_order"] == r.details["radical_order"] == 8
    assert sorted(c["order"] for c in r.details["centralizers"]) == [24, 32, 40, 40]  # 8 * |C_A5(s)|, two classes of 5-cycles
    assert not any(c["equals_whole_group"] for c in r.details["centralizers"])


def test_corrupted_table_is_an_error_and_suite_continues(tmp_path):
    (tmp_path / "bad.table").write_text("3\n0 1 2\n1 1 0\n2 0 1\n")
    (tmp_path / "good.family").write_text("cyclic:3\n")
    result = run_suite(load_corpus(tmp_path), Config(), ["identities", "oracle"])
    statuses = {(e["group"], c["check"]): c["status"] for e in result.entries for c in e["checks"]}
    assert statuses[("bad", "identities")] == "error"
    assert statuses[("good", "oracle")] == "pass"
    assert result.exit_code == 2


def test_empty_corpus():
    result = run_suite([], Config())
    assert result.exit_code == 0
    assert result.summary == {"groups": 0, "checks": 0, "pass": 0, "fail": 0, "skipped": 0, "error": 0}


def test_report_shape_and_stability():
    corpus = [entry(s) for s in ("symmetric:3", "quaternion8", "cyclic:1")]
    a = run_suite(corpus, Config()).to_json()
    b = run_suite(list(reversed(corpus)), Config()).to_json()
    assert a == b
    doc = json.loads(a)
    assert set(doc) == {"version", "tool_version", "config", "entries", "summary"}
    assert [e["group"] for e in doc["entries"]] == sorted(e.name for e in corpus)
    for e in doc["entries"]:
        assert [c["check"] for c in e["checks"]] == sorted(CHECK_IDS)
    counts = {}
    for e in doc["entries"]:
        for c in e["checks"]:
            counts[c["status"]] = counts.get(c["status"], 0) + 1
    assert all(doc["summary"][k] == v for k, v in counts.items())
    assert doc["summary"]["checks"] == sum(counts.values())


def test_timings_only_when_requested():
    r = run_check(entry("symmetric:3"), "identities", Config(timings=True))
    assert "seconds" in r.details
    assert "seconds" not in run_check(entry("symmetric:3"), "identities").details


def test_parallel_matches_serial():
    corpus = [entry(s) for s in ("symmetric:3", "dihedral:4", "klein4")]
    assert run_suite(corpus, Config(jobs=2)).to_json() == run_suite(corpus, Config()).to_json()


def test_failures_carry_replayable_witnesses(monkeypatch):
    e = entry("symmetric:3")
    assert not replay(e.group, run_check(e, "lemma1"))
    monkeypatch.setattr(checks, "commutator_subgroup_pairs", lambda G, H, K: trivial_subgroup(G))
    r = run_check(e, "lemma1")
    assert r.status == "fail" and r.details["witness"]["all_pairs_order"] == 1
    assert replay(e.group, r)
    assert run_suite([e], Config(), ["lemma1"]).exit_code == 1


def test_replay_rejects_false_witness():
    G = parse_family_spec("quaternion8")
    fake = {
        "check": "thm2",
        "status": "fail",
        "details": {"witness": {"p": 2, "truth": False, "fitting_class": 2}},
    }
    assert not replay(G, fake)
    fake = {
        "check": "identities",
        "status": "fail",
        "details": {"witness": {"identity": "[x,y]^z = [x^z,y^z]", "triple": [{"index": 1}, {"index": 2}, {"index": 3}]}},
    }
    assert not replay(G, fake)


def test_cayley_file_entry_roundtrip(tmp_path):
    G = parse_family_spec("quaternion8")
    (tmp_path / "q8.table").write_text(format_cayley_table(G))
    r = run_check(load_corpus(tmp_path)[0], "thm1-fitting")
    assert r.status == "pass" and r.details["subgroup_order"] == 8
