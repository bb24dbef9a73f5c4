import struct

import numpy as np
import pytest

from frobtrace import archive as ar
from frobtrace.cli import RunConfig, run
from frobtrace.curves import CurveModel, TraceArchive, trace_sweep


def test_registry_matches_table():
    j1, j2, j3 = (ar.get_curve(k) for k in ("J1", "J2", "J3"))
    assert (j1.genus, j1.f, j1.bad_primes) == (2, (1, -1, 0, 0, 0, 1), {2, 19, 151})
    assert (j2.genus, j2.f) == (3, (-35, -12, 0, 0, 0, 0, 0, 4))
    assert (j3.genus, j3.f) == (4, (-39, -8, 0, 0, 0, 0, 0, 0, 0, 4))
    with pytest.raises(KeyError):
        ar.get_curve("J9")


def test_curve_spec_file(tmp_path):
    spec = tmp_path / "c.txt"
    spec.write_text("# Table 1 curve\ngenus=2\nf=1,-1,0,0,0,1\nbad=2,19,151\nlabel=J1\n")
    c = ar.load_curve(str(spec))
    assert c == ar.get_curve("J1")
    with pytest.raises(ValueError):
        ar.parse_curve_spec("genus=2\n")
    with pytest.raises(ValueError):
        ar.parse_curve_spec("genus=1\nf=1,1,0,1\ncolour=red\n")


def test_archive_layout(j1):
    arch = trace_sweep(j1, 10)
    raw = ar.to_bytes(arch)
    assert raw[:4] == b"FRTR"
    assert struct.unpack_from("<HBB", raw, 4) == (1, 2, 6)
    assert struct.unpack_from("<6q", raw, 8) == (1, -1, 0, 0, 0, 1)
    assert struct.unpack_from("<QQ", raw, 56) == (10, 3)
    recs = struct.unpack_from("<QqQqQq", raw, 72)
    assert recs == (3, -3, 5, -5, 7, int(arch.a1[2]))
    assert len(raw) == 72 + 48


def test_archive_roundtrip(tmp_path, j1_small):
    path = tmp_path / "a.frtr"
    ar.write_archive(j1_small, path)
    back = ar.read_archive(path)
    assert back.curve == j1_small.curve and back.x_max == j1_small.x_max
    assert np.array_equal(back.primes, j1_small.primes)
    assert np.array_equal(back.a1, j1_small.a1)


def test_archive_rejects_garbage(j1):
    with pytest.raises(ar.ArchiveFormatError):
        ar.from_bytes(b"NOPE" + bytes(40))
    raw = ar.to_bytes(trace_sweep(j1, 10))
    with pytest.raises(ar.ArchiveFormatError):
        ar.from_bytes(raw[:-3])
    with pytest.raises(ar.ArchiveFormatError):
        ar.from_bytes(raw, CurveModel(1, (1, 1, 0, 1)))


def test_unknown_curve_archive_gets_plain_model():
    curve = CurveModel(1, (1, 1, 0, 1), "E")
    back = ar.from_bytes(ar.to_bytes(TraceArchive(curve, 5, [5], [-3])))
    assert back.curve.f == curve.f and back.curve.label == ""


def test_sweep_then_nu_hist(tmp_path, capsys):
    out = tmp_path / "a.frtr"
    assert run(["sweep", "--curve", "J1", "--xmax", "10", "--out", str(out)]) == 0
    assert run(["nu-hist", "--in", str(out)]) == 0
    text = capsys.readouterr().out
    assert "records=3" in text
    assert "nu,count\n0,1\n1,2\n# frobtrace" in text


def test_euler_command(capsys):
    assert run(["euler", "--g", "2", "--t", "0", "--L", "100000"]) == 0
    line = capsys.readouterr().out.strip()
    partial = float(line.split("partial=")[1].split()[0])
    assert abs(partial - 1.3547) < 1e-3 and "interval=[" in line


def test_group_count_command(tmp_path, capsys):
    out = tmp_path / "g.csv"
    assert run(["group-count", "--g", "1", "--m", "5", "--enumerate", "--out", str(out)]) == 0
    rows = out.read_text().splitlines()
    assert rows[0] == "t,count,closed_form,group_order"
    assert rows[1] == "0,100,100,480"
    assert rows[-1].startswith("# frobtrace 0.1.0 config=")


def test_exit_codes(tmp_path, capsys):
    assert run(["frobnicate"]) == 1
    assert run(["euler", "--g", "2"]) == 1
    assert run(["euler", "--g", "7", "--t", "0"]) == 1
    assert run(["group-count", "--g", "2", "--m", "5", "--enumerate"]) == 2
    assert run(["nu-hist", "--in", str(tmp_path / "missing.frtr")]) == 3
    bad = tmp_path / "bad.frtr"
    bad.write_bytes(b"junk")
    assert run(["pi", "--in", str(bad), "--t", "0"]) == 3
    assert run(["verify", "everything"]) == 1
    err = capsys.readouterr().err
    assert "budget exceeded" in err and "I/O error" in err and "everything" in err


def test_workers_env(monkeypatch, tmp_path):
    monkeypatch.setenv("FROBTRACE_WORKERS", "zero")
    assert run(["centralizer"]) == 1
    monkeypatch.setenv("FROBTRACE_WORKERS", "2")
    a, b = tmp_path / "a.frtr", tmp_path / "b.frtr"
    assert run(["sweep", "--curve", "J1", "--xmax", "5000", "--out", str(a)]) == 0
    assert run(["--workers", "1", "sweep", "--curve", "J1", "--xmax", "5000", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_csv_outputs_deterministic(tmp_path, j1_small):
    arc = tmp_path / "a.frtr"
    ar.write_archive(j1_small, arc)
    for cmd in (["pi", "--t", "0"], ["ek"], ["moments"]):
        one, two = tmp_path / "1.csv", tmp_path / "2.csv"
        assert run(cmd + ["--in", str(arc), "--out", str(one)]) == 0
        assert run(cmd + ["--in", str(arc), "--out", str(two)]) == 0
        assert one.read_bytes() == two.read_bytes()
        assert one.read_text().splitlines()[-1].startswith("# frobtrace")


def test_mc_density_csv(tmp_path):
    out = tmp_path / "d.csv"
    assert run(["mc-density", "--g", "2", "--samples", "20000", "--x", "0", "0.5",
                "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "x,phi,stderr" and len(lines) == 4


def test_misc_commands(capsys):
    assert run(["density", "--g", "2", "--points", "5"]) == 0
    assert run(["kloosterman", "--ell", "7", "--r", "2", "3"]) == 0
    assert run(["constant", "--g", "1", "--t", "1", "--L", "1000"]) == 0
    assert run(["constant", "--g", "2", "--t", "1", "--image", "none"]) == 1
    assert run(["centralizer", "--n-max", "4"]) == 0
    out = capsys.readouterr().out
    assert "n4=12/14" in out and "pass=True" in out


@pytest.mark.parametrize("suite", ["formulas", "appendixA", "kloosterman", "density", "histogram-small"])
def test_verify_suites(suite, capsys):
    assert run(["verify", suite]) == 0
    assert "FAIL" not in capsys.readouterr().out


def test_config_hash_ignores_workers():
    a = RunConfig("pi", {"t": 0}, workers=1)
    b = RunConfig("pi", {"t": 0}, workers=8)
    assert a.config_hash() == b.config_hash() != RunConfig("pi", {"t": 1}).config_hash()
