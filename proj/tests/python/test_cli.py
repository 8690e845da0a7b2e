"""End-to-end checks of the rbd binary; the path comes from RBD_CLI."""

import json
import os
import subprocess

import pytest

RBD = os.environ.get("RBD_CLI", "rbd")

SIGMA = "4\n(1001,1100,0101)(1110,0110,0111,1111)(1010,0010,0011,1011)\n"


def rbd(*args, stdin=None):
    return subprocess.run([RBD, *map(str, args)], input=stdin, capture_output=True, text=True, timeout=300)


@pytest.fixture
def sigma_file(tmp_path):
    p = tmp_path / "sigma.txt"
    p.write_text(SIGMA)
    return p


def test_identity_block7_is_empty(tmp_path):
    p = tmp_path / "id.txt"
    p.write_text("6\n\n")
    r = rbd("decompose", p, "--format", "cycles")
    assert r.returncode == 0
    rep = json.loads(r.stdout)
    assert rep["blocks"] == []
    assert rep["verified"] is True


def test_worked_instance_seven_blocks(sigma_file, tmp_path):
    out = tmp_path / "rep.json"
    r = rbd("decompose", sigma_file, "--format", "cycles", "-o", out)
    assert r.returncode == 0, r.stderr
    rep = json.loads(out.read_text())
    assert len(rep["blocks"]) <= 7
    assert rep["verified"] is True
    v = rbd("verify", sigma_file, out, "--format", "cycles")
    assert v.returncode == 0
    assert json.loads(v.stdout)["digest_matches"] is True


def test_odd_input_rejected(tmp_path):
    p = tmp_path / "odd.txt"
    p.write_text("4\n(0000,0001)\n")
    r = rbd("decompose", p, "--format", "cycles")
    assert r.returncode == 3
    assert "odd permutation" in r.stderr


def test_malformed_input_is_exit_2(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("2\n0 1 1 3\n")
    r = rbd("decompose", p)
    assert r.returncode == 2
    assert "position 2" in r.stderr


def test_even10_width_precondition(tmp_path):
    p = tmp_path / "r8.txt"
    p.write_text(rbd("random", "--n", 8, "--even", "--seed", 3).stdout)
    assert rbd("decompose", p, "--mode", "even10").returncode == 3


def test_tampered_report_fails_verification(sigma_file, tmp_path):
    out = tmp_path / "rep.json"
    assert rbd("decompose", sigma_file, "--format", "cycles", "-o", out).returncode == 0
    rep = json.loads(out.read_text())
    rep["blocks"] = rep["blocks"][:-1]
    out.write_text(json.dumps(rep))
    assert rbd("verify", sigma_file, out, "--format", "cycles").returncode == 1


@pytest.mark.parametrize("fmt", ["images", "cycles"])
def test_random_is_reproducible_and_round_trips(fmt, tmp_path):
    a = rbd("random", "--n", 7, "--even", "--seed", 42, "--format", fmt)
    b = rbd("random", "--n", 7, "--even", "--seed", 42, "--format", fmt)
    assert a.returncode == 0 and a.stdout == b.stdout
    assert rbd("random", "--n", 7, "--even", "--seed", 43, "--format", fmt).stdout != a.stdout
    p = tmp_path / "p.txt"
    p.write_text(a.stdout)
    # cuboid parses the file back; the emitted text is canonical
    assert rbd("cuboid", p, "--format", fmt).returncode == 0


def test_batch_directory_is_ordered_and_deterministic(tmp_path):
    d = tmp_path / "batch"
    d.mkdir()
    for i, n in enumerate([10, 6, 8, 11, 7]):
        (d / f"p{i}.txt").write_text(rbd("random", "--n", n, "--even", "--seed", i).stdout)
    (d / "z_odd.txt").write_text("3\n1 0 2 3 4 5 6 7\n")
    one = rbd("decompose", d, "--jobs", 1)
    four = rbd("decompose", d, "--jobs", 4)
    assert one.stdout == four.stdout
    assert one.returncode == 3
    rep = json.loads(one.stdout)
    assert [e["file"] for e in rep] == ["p0.txt", "p1.txt", "p2.txt", "p3.txt", "p4.txt", "z_odd.txt"]
    assert all(e["verified"] and len(e["blocks"]) <= 7 for e in rep[:5])
    assert "odd permutation" in rep[5]["error"]


def test_even10_mode(tmp_path):
    p = tmp_path / "r.txt"
    p.write_text(rbd("random", "--n", 10, "--even", "--seed", 9).stdout)
    r = rbd("decompose", p, "--mode", "even10", "--images")
    assert r.returncode == 0
    rep = json.loads(r.stdout)
    assert len(rep["blocks"]) <= 10
    assert all(b["concurrent_parity"] == "even" and len(b["images"]) == 512 for b in rep["blocks"])


def test_cuboid_dump(sigma_file):
    r = rbd("cuboid", sigma_file, "--format", "cycles", "--json")
    c = json.loads(r.stdout)
    assert c["counts"]["a"] == [1, 0, 1, 2] and c["counts"]["b"] == [1, 0, 1, 2]
    assert "type 1" in rbd("cuboid", sigma_file, "--format", "cycles").stdout


@pytest.mark.parametrize("lemma,extra", [("taxonomy", []), ("badcase", ["--samples", 40]), ("new1tight", ["--n", 3])])
def test_oracles_pass(lemma, extra):
    r = rbd("oracle", "--lemma", lemma, *extra)
    assert r.returncode == 0, r.stdout
    assert json.loads(r.stdout)["holds"] is True


def test_usage_error_is_exit_2():
    assert rbd("decompose").returncode == 2
    assert rbd("oracle", "--lemma", "nope").returncode == 2
