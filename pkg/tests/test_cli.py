import pytest

from ppmlab.cli import main
from ppmlab.sequence import prefix_through
from ppmlab.tables import BOUNDED_EXAMPLE_ROWS


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen(tmp_path, capsys):
    out = tmp_path / "s.txt"
    code, stdout, _ = run(capsys, "gen", "--n-max", 2, "--out", out)
    assert code == 0 and out.read_text() == "0100110110"
    assert "2\t2\t8" in stdout
    run(capsys, "gen", "--n-max", 6, "--out", out)
    assert len(out.read_text()) == 642
    run(capsys, "gen", "--n-max", 0, "--out", out)
    assert out.read_text() == ""
    run(capsys, "gen", "--n-max", 6, "--packed", "--out", out)
    assert len(out.read_bytes()) == 642 // 8 + 1


def test_gen_to_stdout(capsys):
    code, stdout, stderr = run(capsys, "gen", "--n-max", 2)
    assert stdout == "0100110110" and "total\t10" in stderr


def test_compress_dump_model(tmp_path, capsys):
    src = tmp_path / "x.txt"
    src.write_text("0100110110\n")
    dump = tmp_path / "model.tsv"
    code, stdout, _ = run(capsys, "compress", "--algo", "ppm_k", "--k", 3, src, "--dump-model", dump)
    assert code == 0 and "input_bits=10" in stdout
    lines = dump.read_text().splitlines()
    assert len(lines) == len(BOUNDED_EXAMPLE_ROWS)
    for line, (ctx, ev, cnt, p) in zip(lines, BOUNDED_EXAMPLE_ROWS):
        assert line == "%s\t%s\t%d\t%d/%d" % ("-1" if ctx is None else ctx, ev, cnt,
                                             p.numerator, p.denominator)
    dec = tmp_path / "y.txt"
    assert run(capsys, "decompress", str(src) + ".ppm", "--out", dec)[0] == 0
    assert dec.read_text() == "0100110110"


def test_compress_lz78(tmp_path, capsys):
    src = tmp_path / "e.txt"
    src.write_text("0100011011")
    code, stdout, _ = run(capsys, "compress", "--algo", "lz78", src)
    assert code == 0 and "phrases=6" in stdout and "output_bits=17" in stdout
    code, stdout, _ = run(capsys, "decompress", str(src) + ".lz")
    assert stdout == "0100011011"
    run(capsys, "compress", "--algo", "lz78", "--pointer-code", "gamma", src, "--out", tmp_path / "g")
    assert run(capsys, "decompress", tmp_path / "g")[1] == "0100011011"


def test_compress_empty(tmp_path, capsys):
    src = tmp_path / "empty.txt"
    src.write_text("")
    code, stdout, _ = run(capsys, "compress", "--algo", "ppm_star", src)
    assert code == 0 and "output_bits=0" in stdout and "ratio=n/a" in stdout
    assert run(capsys, "decompress", str(src) + ".ppm") == (0, "", "")


def test_packed_round_trip(tmp_path, capsys):
    x = prefix_through(7).data
    src = tmp_path / "s.bin"
    run(capsys, "gen", "--n-max", 7, "--packed", "--out", src)
    code, stdout, _ = run(capsys, "compress", "--algo", "ppm_star", "--packed", "--bits", len(x),
                          src, "--out", tmp_path / "c")
    assert code == 0 and "input_bits=%d" % len(x) in stdout
    run(capsys, "decompress", tmp_path / "c", "--out", tmp_path / "d")
    assert (tmp_path / "d").read_text() == x


def test_usage_errors(tmp_path, capsys):
    src = tmp_path / "x.txt"
    src.write_text("01")
    for argv in (["compress", "--algo", "ppm_k", src],
                 ["compress", "--algo", "bogus", src],
                 ["verify", "nosuchsuite"],
                 ["gen", "--n-max", 40],
                 ["compress", str(tmp_path / "missing")],
                 []):
        with pytest.raises(SystemExit) as e:
            main([str(a) for a in argv])
        assert e.value.code == 2
    capsys.readouterr()


def test_corrupt_code_file(tmp_path, capsys):
    bad = tmp_path / "bad.ppm"
    bad.write_bytes(b"garbage!")
    code, _, stderr = run(capsys, "decompress", bad)
    assert code == 1 and "error" in stderr


def test_trace_and_dump(tmp_path, capsys):
    src = tmp_path / "x.txt"
    src.write_text("01001101100")
    code, stdout, _ = run(capsys, "trace", "--algo", "ppm_star", src)
    assert code == 0
    assert stdout.splitlines()[-1] == "10\t0\t110:$:1/2 10:0:1/4"
    assert stdout.splitlines()[1] == "0\t0\t-1:0:1/2"
    src.write_text("0100110110")
    code, stdout, _ = run(capsys, "dump-model", "--algo", "ppm_k", "--k", 3, src)
    assert stdout.startswith("Order k = 3")


def test_ratio_curve_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(capsys, "ratio-curve", "--n-max", 7, "--out", a)
    run(capsys, "ratio-curve", "--n-max", 7, "--jobs", 2, "--out", b)
    assert a.read_bytes() == b.read_bytes()
    lines = a.read_text().splitlines()
    assert lines[0] == "prefix_len,zone,algo,k,output_bits,ratio"
    assert "10,2,lz78,,17,1.700000" in lines
    code, stdout, _ = run(capsys, "ratio-curve", "--n-max", 5, "--algo", "ppm_star",
                          "--ideal-length-only", "--points", "0,10,98")
    rows = stdout.splitlines()[1:]
    assert [r.split(",")[0] for r in rows] == ["10", "98"]


def test_verify(capsys):
    code, stdout, _ = run(capsys, "verify", "tables")
    assert code == 0 and "tables: passed" in stdout
    code, stdout, _ = run(capsys, "verify", "enumeration", "--n-max", 8)
    assert code == 0 and stdout.count("PASS") == 8


def test_verify_failure_exit(monkeypatch, capsys):
    from ppmlab import harness
    monkeypatch.setitem(harness.SUITES, "tables", lambda res, **_: res.check(False, "forced"))
    code, stdout, _ = run(capsys, "verify", "tables")
    assert code == 1 and "FAIL  forced" in stdout
