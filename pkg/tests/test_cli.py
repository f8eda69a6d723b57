"""CLI dispatch, exit codes, formats, determinism, cache coherence."""

import json

import pytest

from eigencones.cache import JsonlStore
from eigencones.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_roots_json(capsys):
    code, out, _ = run(capsys, "roots", "--group", "C3")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema_version"] == 1
    assert doc["config"]["group"] == "C3"
    assert len(doc["root_system"]["positive_roots"]) == 9


def test_roots_table(capsys):
    code, out, _ = run(capsys, "roots", "--group", "G2", "--format", "table")
    assert code == 0
    assert out.splitlines()[0] == "G2: 6 positive roots"


def test_group_parsing_errors(capsys):
    code, _, err = run(capsys, "roots", "--group", "C")
    assert code == 2 and "rank" in err
    code, _, err = run(capsys, "roots", "--group", "C3", "--rank", "2")
    assert code == 2
    code, _, err = run(capsys, "roots", "--group", "E6")
    assert code == 2


def test_cosets_csv(capsys):
    code, out, _ = run(capsys, "cosets", "--group", "G2", "--parabolic", "1",
                       "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "word,length,dual"
    assert lines[1] == "e,0,12121"
    assert len(lines) == 7


def test_multiply(capsys):
    code, out, _ = run(capsys, "multiply", "--group", "C2", "--parabolic", "1",
                       "--words", "1,21")
    assert code == 0
    doc = json.loads(out)
    assert doc["product"] == {"e": 1}  # dual pair lands on [pt]


def test_multiply_cache_roundtrip(tmp_path, capsys):
    args = ("multiply", "--group", "C2", "--parabolic", "2",
            "--words", "2,212", "--cache-dir", str(tmp_path))
    code1, out1, _ = run(capsys, *args)
    assert code1 == 0
    files = list(tmp_path.glob("*.jsonl"))
    assert len(files) == 1
    # second run reads the cache and must produce identical bytes
    code2, out2, _ = run(capsys, *args)
    assert (code2, out2) == (code1, out1)
    # deleting the cache never changes the result
    files[0].unlink()
    code3, out3, _ = run(capsys, *args)
    assert (code3, out3) == (code1, out1)


def test_cache_rejects_stale_version(tmp_path):
    store = JsonlStore(tmp_path)
    store.save_structure_constants("C", 2, 1, {("e", "e"): {"e": 1}})
    assert store.load_structure_constants("C", 2, 1) == {("e", "e"): {"e": 1}}
    path = next(tmp_path.glob("*.jsonl"))
    rec = json.loads(path.read_text())
    rec["cache_version"] = 0
    path.write_text(json.dumps(rec) + "\n")
    assert store.load_structure_constants("C", 2, 1) is None


def test_inequalities_csv(capsys):
    code, out, _ = run(capsys, "inequalities", "--group", "A1", "--n", "3",
                       "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "parabolic,words,normals,scale,multiplicity"
    assert len(lines) == 4


def test_inequalities_tuple_cap(capsys):
    code, _, err = run(capsys, "inequalities", "--group", "C3", "--n", "3",
                       "--tuple-cap", "5")
    assert code == 3
    assert "cap" in err


def test_membership_exit_codes(capsys):
    code, out, _ = run(capsys, "membership", "--group", "A1", "--n", "3",
                       "--weights", "1,1,2")
    assert code == 0
    assert json.loads(out)["verdict"] == "in-cone"
    code, out, _ = run(capsys, "membership", "--group", "A1", "--n", "3",
                       "--weights", "1,1,3")
    assert code == 1
    doc = json.loads(out)
    assert doc["verdict"] == "not-in-cone"
    assert doc["violated"]


def test_membership_semicolon_weights(capsys):
    code, out, _ = run(capsys, "membership", "--group", "C2", "--n", "3",
                       "--weights", "1,0;0,1;1,1")
    assert code in (0, 1)
    assert json.loads(out)["config"]["weights"] == "1,0;0,1;1,1"


def test_membership_bad_weights(capsys):
    code, _, err = run(capsys, "membership", "--group", "C2", "--n", "3",
                       "--weights", "1,0,0,1")
    assert code == 2


def test_verify_thm_main(capsys):
    code, out, _ = run(capsys, "verify", "thm-main", "--case", "sl2-in-g2",
                       "--n", "3", "--format", "table")
    assert code == 0
    assert out.splitlines()[0] == "thm-main: ok"


def test_verify_needs_case(capsys):
    code, _, err = run(capsys, "verify", "thm-main")
    assert code == 2 and "--case" in err


def test_verify_thm_proj(capsys):
    code, out, _ = run(capsys, "verify", "thm-proj", "--r", "2", "--s", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["report"]["ok"]
    assert doc["report"]["violations"] == []


def test_tables_orbits(capsys):
    code, out, _ = run(capsys, "tables", "orbits", "--r", "3")
    assert code == 0
    assert "k=2: 3 6 4 7" in out


def test_tables_orbits_needs_r(capsys):
    code, _, err = run(capsys, "tables", "orbits")
    assert code == 2


def test_tables_index(capsys):
    code, out, _ = run(capsys, "tables", "index", "--group", "C2",
                       "--parabolic", "2", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "word,index_set,dim,codim"
    assert lines[1] == "e,1 2,0,3"


def test_tables_g2f4_structure(capsys):
    code, out, _ = run(capsys, "tables", "g2f4", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert set(doc["table1"]) == {"Q1", "Q2"}
    assert set(doc["table3"]) == {"P1", "P4"}
    assert len(doc["table2"]["Q1"]) == 6


def test_output_deterministic(capsys):
    a = run(capsys, "inequalities", "--group", "G2", "--n", "3")
    b = run(capsys, "inequalities", "--group", "G2", "--n", "3")
    assert a == b
