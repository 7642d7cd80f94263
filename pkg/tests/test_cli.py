"""End-to-end runs of the command line entry point, in process."""

import json

from ncmoduli.cli import main

CLASSICAL = [
    {"cycle": ["a1", "b1", "a2", "b2"], "coeff": "1"},
    {"cycle": ["a1", "b2", "a2", "b1"], "coeff": "-1"},
]

LINEAR_QUINTUPLE = [
    [[["0", "0"], ["0", "1"]], [["0", "0"], ["-1", "0"]]],
    [[["0", "-1"], ["0", "0"]], [["1", "0"], ["0", "0"]]],
]


def _write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def _run(capsys, argv):
    code = main(argv)
    return code, capsys.readouterr().out


def test_classify_potential_classical(tmp_path, capsys):
    src = _write(tmp_path, "phi.json", CLASSICAL)
    code, out = _run(capsys, ["classify-potential", "-i", src])
    assert code == 0
    doc = json.loads(out)
    assert doc["f"] == ["2", "1", "1/2", "1/4"]
    assert doc["stability"] == "semistable"
    assert doc["weighted_point"] == {
        "weights": [1, 2, 3, 4],
        "coords": ["2", "1", "1/2", "1/4"],
    }


def test_output_is_byte_deterministic(tmp_path, capsys):
    src = _write(tmp_path, "phi.json", CLASSICAL)
    _, first = _run(capsys, ["classify-potential", "-i", src])
    _, second = _run(capsys, ["classify-potential", "-i", src])
    assert first == second
    assert first.endswith("\n")


def test_hilbert_series(tmp_path, capsys):
    src = _write(tmp_path, "phi.json", CLASSICAL)
    code, out = _run(capsys, ["hilbert", "-i", src, "--max-length", "8"])
    assert code == 0
    assert json.loads(out) == {"dims": [1, 0, 4, 0, 9, 0, 16, 0, 25]}


def test_classify_quintuple_linear_reference(tmp_path, capsys):
    src = _write(tmp_path, "q.json", LINEAR_QUINTUPLE)
    code, out = _run(capsys, ["classify-quintuple", "-i", src])
    assert code == 0
    doc = json.loads(out)
    assert doc["stability"] == "stable"
    assert doc["geometric"] is True
    assert doc["failing_slot"] is None
    assert doc["invariants"] == {"f2": "4", "f4": "4", "g4": "1", "f6": "4"}


def test_map_potential(tmp_path, capsys):
    src = _write(tmp_path, "phi.json", CLASSICAL)
    code, out = _run(capsys, ["map-potential", "-i", src])
    assert code == 0
    doc = json.loads(out)
    assert doc["covering_identities_ok"] is True
    assert doc["quintuple_invariants"] == {
        "f2": "1",
        "f4": "1/4",
        "g4": "1/16",
        "f6": "1/16",
    }


def test_unstable_potential_has_no_weighted_point(tmp_path, capsys):
    src = _write(
        tmp_path, "nil.json", [{"cycle": ["a1", "b1", "a1", "b1"], "coeff": "1"}]
    )
    code, out = _run(capsys, ["classify-potential", "-i", src])
    assert code == 0
    doc = json.loads(out)
    assert doc["f"] == ["0", "0", "0", "0"]
    assert doc["weighted_point"] is None
    assert doc["stability"] == "unstable"


def test_zero_potential_exits_3(tmp_path):
    src = _write(tmp_path, "zero.json", [])
    assert main(["classify-potential", "-i", src]) == 3


def test_malformed_json_exits_2(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert main(["classify-potential", "-i", str(path)]) == 2


def test_wrong_schema_exits_2(tmp_path):
    src = _write(tmp_path, "phi.json", [{"cycle": ["a1"], "weight": "1"}])
    assert main(["classify-potential", "-i", src]) == 2


def test_hilbert_length_cap_exits_3(tmp_path):
    src = _write(tmp_path, "phi.json", CLASSICAL)
    assert main(["hilbert", "-i", src, "--max-length", "12"]) == 3


def test_dt_count_needs_four_primes(tmp_path):
    src = _write(tmp_path, "phi.json", CLASSICAL)
    assert main(["dt-count", "--potential", src, "--primes", "5"]) == 3


def test_dt_count_classical_report(tmp_path, capsys):
    src = _write(tmp_path, "phi.json", CLASSICAL)
    code, out = _run(
        capsys, ["dt-count", "--potential", src, "--primes", "2,3,5,7"]
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["counts"] == {"2": 12, "3": 36, "5": 150, "7": 392}
    assert doc["polynomial"] == ["0", "0", "1", "1"]
    assert doc["matches_classical"] is True


def test_elliptic_check(tmp_path, capsys):
    cfg = {"lambda": "-3", "p1": ["-1", "1", "2"], "p2": ["1", "-1", "-2"]}
    src = _write(tmp_path, "cfg.json", cfg)
    code, out = _run(capsys, ["elliptic", "check", "-i", src])
    assert code == 0
    doc = json.loads(out)
    assert doc["p1_on_curve"] is True
    assert doc["p2_on_curve"] is True
    assert doc["admissible"] is True


def test_elliptic_check_flags_two_torsion(tmp_path, capsys):
    cfg = {"lambda": "-3", "p1": ["-1", "1", "2"], "p2": ["1", "1", "0"]}
    src = _write(tmp_path, "cfg.json", cfg)
    code, out = _run(capsys, ["elliptic", "check", "-i", src])
    assert code == 0
    doc = json.loads(out)
    assert doc["p2_on_curve"] is True
    assert doc["admissible"] is False


def test_elliptic_orbit_test_round_trip(tmp_path, capsys):
    base = {"lambda": "-3", "p1": ["-1", "1", "2"], "p2": ["1", "-1", "-2"]}
    # translate p1 by t1: (l0(x - y) : l1 x - l0 y : l0(l0 - l1) z)
    # with l0 = -3, l1 = 1: (-3*(-2) : -1 + 3 : -3*(-4)*2) = (6 : 2 : 24),
    # normalized (1 : 1/3 : 2/3)
    moved = dict(base, p1=["1", "1/3", "2/3"])
    src = _write(tmp_path, "pair.json", {"first": base, "second": moved})
    code, out = _run(capsys, ["elliptic", "orbit-test", "-i", src])
    assert code == 0
    doc = json.loads(out)
    assert doc["equivalent"] is True
    assert doc["witness"] == {
        "lambda_word": [],
        "translate_first": "t1",
        "translate_second": None,
        "flip": False,
    }


def test_elliptic_orbit_test_negative(tmp_path, capsys):
    base = {"lambda": "-3", "p1": ["-1", "1", "2"], "p2": ["1", "-1", "-2"]}
    # a configuration over 7/3, outside the six-element parameter orbit of -3
    other = {"lambda": "7/3", "p1": ["3", "1", "2"], "p2": ["25/9", "1", "-40/27"]}
    src = _write(tmp_path, "pair.json", {"first": base, "second": other})
    code, out = _run(capsys, ["elliptic", "orbit-test", "-i", src])
    assert code == 0
    doc = json.loads(out)
    assert doc["equivalent"] is False
    assert doc["witness"] is None


def test_acceptance_json_mode(tmp_path, capsys):
    out_path = tmp_path / "acceptance.json"
    code = main(["--samples", "5", "acceptance", "--json", "-o", str(out_path)])
    assert code == 0
    entries = json.loads(out_path.read_text())
    assert [e["index"] for e in entries] == list(range(1, 9))
    assert all(e["passed"] for e in entries)


def test_acceptance_table_mode(capsys):
    code, out = _run(capsys, ["--samples", "5", "acceptance"])
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 8
    assert all(line.startswith("criterion ") and "[pass]" in line for line in lines)
