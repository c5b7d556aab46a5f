"""Command-line behaviour: exit codes, output formats, round trips."""

from __future__ import annotations

import csv
import json

from pgx.cli import main
from pgx.invariants import InvariantTuple

D8_TUPLE = "2,1,1,1,1,1,0,0,1,0,1,1"
D8_SPEC = '{"p":2,"M":2,"N1":2,"N2":2,"r1":1,"r2":1,"t1":1,"t2":2}'
Q8_SPEC = '{"p":2,"M":2,"N1":2,"N2":2,"r1":1,"r2":1,"t1":1,"t2":1}'


def test_enumerate_csv_small(capsys):
    rc = main(["enumerate", "--p", "2", "--max-order-exp", "3", "--format", "csv"])
    assert rc == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "p,m,n1,n2,sigma1,sigma2,o1,o2,op1,op2,u1,u2"
    assert len(lines) == 3


def test_enumerate_csv_round_trip(capsys):
    assert main(["enumerate", "--p", "2", "--max-order-exp", "5"]) == 0
    out = capsys.readouterr().out
    lines = out.strip().splitlines()
    for line in lines[1:]:
        assert InvariantTuple.from_positional(line).to_positional() == line


def test_enumerate_empty_is_success(capsys):
    assert main(["enumerate", "--p", "3", "--max-order-exp", "2"]) == 0
    assert capsys.readouterr().out.strip().splitlines()[1:] == []


def test_enumerate_rejects_composite(capsys):
    assert main(["enumerate", "--p", "4", "--max-order-exp", "3"]) == 2
    assert "p must be prime" in capsys.readouterr().err


def test_enumerate_jsonl_round_trip(capsys):
    rc = main(["enumerate", "--p", "2", "--max-order-exp", "5", "--format", "jsonl"])
    assert rc == 0
    out = capsys.readouterr().out
    assert out
    reprint = "".join(
        InvariantTuple.from_json(line).to_json() + "\n" for line in out.splitlines()
    )
    assert reprint == out


def test_enumerate_missing_flags(capsys):
    assert main(["enumerate", "--p", "2"]) == 2
    capsys.readouterr()


def test_validate_valid_tuple(capsys):
    assert main(["validate", "3,3,3,2,1,1,2,0,1,2,1,7"]) == 0
    out = capsys.readouterr().out.strip()
    assert json.loads(out) == {"valid": True, "violations": []}
    assert main(["validate", out_to_json_tuple("3,3,3,2,1,1,2,0,1,2,1,7")]) == 0
    capsys.readouterr()


def out_to_json_tuple(positional: str) -> str:
    return InvariantTuple.from_positional(positional).to_json()


def test_validate_invalid_tuple(capsys):
    assert main(["validate", "2,2,1,1,1,1,1,0,0,0,1,1"]) == 1
    report = json.loads(capsys.readouterr().out)
    assert report["valid"] is False
    assert {"2", "3"} <= set(report["violations"])


def test_validate_malformed(capsys):
    assert main(["validate", "2,2,1,1"]) == 2
    assert main(["validate", '{"p":2}']) == 2
    capsys.readouterr()


def test_construct_d8(capsys):
    assert main(["construct", "--tuple", D8_TUPLE]) == 0
    assert capsys.readouterr().out.strip() == D8_SPEC


def test_construct_with_table(capsys):
    assert main(["construct", "--tuple", D8_TUPLE, "--table"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == D8_SPEC
    assert len(lines) == 1 + 64
    for line in lines[1:]:
        i, j, k = (int(v) for v in line.split(","))
        assert 0 <= i < 8 and 0 <= j < 8 and 0 <= k < 8


def test_construct_rejects_invalid(capsys):
    assert main(["construct", "--tuple", "2,2,1,1,1,1,1,0,0,0,1,1"]) == 2
    assert main(["construct", "--tuple", "bogus"]) == 2
    capsys.readouterr()


def test_inv_round_trip(capsys):
    assert main(["inv", D8_SPEC, "--threads", "1"]) == 0
    out = json.loads(capsys.readouterr().out)
    tup = InvariantTuple.from_json(json.dumps(out["tuple"]))
    assert tup.to_positional() == D8_TUPLE
    assert len(out["b1"]) == 3 and len(out["b2"]) == 3


def test_inv_thread_count_does_not_change_output(capsys):
    outs = []
    for n in ("1", "4"):
        assert main(["inv", "2,4,4,2,3,3,2,2", "--threads", n]) == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]


def test_inv_malformed(capsys):
    assert main(["inv", "2,8,4"]) == 2
    assert main(["inv", '{"p":2,"M":0}']) == 2
    capsys.readouterr()


def test_iso_negative(capsys):
    assert main(["iso", "--a", D8_SPEC, "--b", Q8_SPEC]) == 1
    out = json.loads(capsys.readouterr().out)
    assert out == {"isomorphic": False, "witness": None}


def test_iso_positive_self(capsys):
    assert main(["iso", "--a", D8_SPEC, "--b", D8_SPEC]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["isomorphic"] is True
    assert len(out["witness"]) == 2


def test_iso_malformed(capsys):
    assert main(["iso", "--a", "bogus", "--b", D8_SPEC]) == 2
    capsys.readouterr()


def test_selftest_small_universe(capsys):
    rc = main(["selftest", "--p", "2", "--max-order-exp", "5"])
    lines = capsys.readouterr().out.strip().splitlines()
    assert rc == 0
    assert len(lines) == 8
    for number, line in enumerate(lines[:7], start=1):
        assert line.startswith(f"criterion {number} (")
        assert "PASS" in line
    assert lines[7] == "7 criteria: 7 passed, 0 failed"


def test_selftest_flag_pairing(capsys):
    assert main(["selftest", "--p", "2"]) == 2
    assert main(["selftest", "--p", "9", "--max-order-exp", "3"]) == 2
    capsys.readouterr()


def test_report_writes_csv_and_png(tmp_path, capsys):
    out_dir = str(tmp_path / "rep")
    assert main(["report", "--p", "2", "--max-order-exp", "6", "--out-dir", out_dir]) == 0
    csv_path, png_path = capsys.readouterr().out.strip().splitlines()
    with open(csv_path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["exponent", "order", "classes"]
    assert len(rows) == 7
    assert [r[0] for r in rows[1:]] == [str(e) for e in range(1, 7)]
    total = sum(int(r[2]) for r in rows[1:])
    assert total == 53
    with open(png_path, "rb") as fh:
        assert fh.read(8) == b"\x89PNG\r\n\x1a\n"


def test_report_rejects_composite(capsys):
    assert main(["report", "--p", "6", "--max-order-exp", "3"]) == 2
    capsys.readouterr()
