import json

import pytest

from trispec.cli import main


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    try:
        code = main(list(argv))
    except SystemExit as exc:   # argparse rejections
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


def test_spectrum_text(capsys):
    code, out, _ = run(capsys, "spectrum", "--graph", "Dhc")
    assert code == 0
    assert "eigenvalues 2 0.61803398875 0.61803398875 -1.61803398875 -1.61803398875" in out
    assert "trace 0  direct 0" in out


def test_spectrum_json(capsys):
    code, out, _ = run(capsys, "spectrum", "--graph", "A_", "--format", "json")
    doc = json.loads(out)
    assert doc["eigenvalues"] == [1.0, -1.0]
    code, out, _ = run(capsys, "spectrum", "--graph", "D??", "--format", "json")
    doc = json.loads(out)
    assert doc["eigenvalues"] == [0.0] * 5 and doc["rank"] == 0


def test_spectrum_file(capsys, tmp_path):
    f = tmp_path / "g.g6"
    f.write_text("Dhc\nA_\n")
    code, out, _ = run(capsys, "spectrum", "--file", str(f), "--format", "json")
    assert [d["graph6"] for d in json.loads(out)] == ["Dhc", "A_"]


def test_spectrum_parse_error(capsys):
    code, out, err = run(capsys, "spectrum", "--graph", "D?")
    assert code == 2 and out == "" and err


@pytest.mark.parametrize("argv, expected", [
    (("--cycle", "5"), "Dhc"),
    (("--path", "2"), "A_"),
    (("--kbip", "2,3"), "D]o"),
])
def test_construct(capsys, argv, expected):
    code, out, _ = run(capsys, "construct", *argv)
    assert (code, out.strip()) == (0, expected)


def test_construct_family_sizes(capsys):
    from trispec.graph6 import parse_graph6
    _, k23, _ = run(capsys, "construct", "--kbip", "2,3")
    _, s, _ = run(capsys, "construct", "--skst", "0,1")
    a, b = parse_graph6(k23.strip()), parse_graph6(s.strip())
    assert (b.order, b.size) == (a.order + 1, a.size + 1)
    _, y, _ = run(capsys, "construct", "--yn", "6")
    y = parse_graph6(y.strip())
    assert (y.order, y.size) == (6, 5)
    _, bl, _ = run(capsys, "construct", "--blowup", "P2K1", "--sizes", "3,4,2")
    bl = parse_graph6(bl.strip())
    assert (bl.order, bl.size) == (9, 12)


@pytest.mark.parametrize("argv", [
    ("--yn", "5"), ("--star-clique", "0,2"), ("--blowup", "P3"), ("--blowup", "P2K1"),
    ("--blowup", "P2K1", "--sizes", "1,2"), ("--kbip", "x,2"), ("--skst", "-1,0"),
])
def test_construct_errors(capsys, argv):
    code, out, err = run(capsys, "construct", *argv)
    assert code == 2 and out == ""


def test_check_examples(capsys, monkeypatch, tmp_path):
    f = tmp_path / "c5.g6"
    f.write_text("Dhc\n")
    code, out, _ = run(capsys, "check", "--check", "tf-sum", "--graphs", str(f))
    assert code == 0 and out.startswith("Dhc holds")
    code, out, _ = run(capsys, "check", "--check", "erdos-size", "--graphs", "-",
                       stdin="Dhc\n", monkeypatch=monkeypatch)
    assert "Dhc equality" in out and "C5PlusIsolated" in out
    code, _, err = run(capsys, "check", "--check", "bogus", "--graphs", str(f))
    assert code == 2 and "unknown" in err


def test_check_violation_exit(capsys, monkeypatch):
    code, out, _ = run(capsys, "check", "--check", "aes:1", "--graphs", "-",
                       stdin="C~\n", monkeypatch=monkeypatch)
    assert code == 1 and "violated" in out


def test_check_json(capsys, tmp_path):
    f = tmp_path / "g.g6"
    f.write_text("Dhc\nC~\n")
    code, out, _ = run(capsys, "check", "--check", "classical", "--graphs", str(f),
                       "--format", "json", "--no-timing")
    doc = json.loads(out)
    assert code == 0 and doc["totals"]["classical"]["equality"] == 1


def test_scan(capsys):
    code, out, _ = run(capsys, "scan", "--order", "5", "--filters", "triangle-free",
                       "--checks", "tf-sum", "--format", "json")
    assert code == 0 and json.loads(out)["totals"]["tf-sum"]["violated"] == 0
    code, out, _ = run(capsys, "scan", "--order", "3", "--checks", "classical")
    assert code == 0 and "violated=0" in out
    code, out, err = run(capsys, "scan", "--order", "9")
    assert code == 2 and out == ""
    code, _, _ = run(capsys, "scan", "--orders", "5..3")
    assert code == 2
    code, _, _ = run(capsys, "scan", "--order", "4", "--checks", "bogus")
    assert code == 2


def test_scan_json_is_reproducible(capsys):
    argv = ("scan", "--orders", "1..4", "--checks", "tf-sum,classical,efgw",
            "--format", "json", "--no-timing")
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv, "--jobs", "2")
    assert first == second


def test_majorize(capsys):
    code, out, _ = run(capsys, "majorize", "--x", "3,1", "--y", "2,2", "--p", "1.5",
                       "--format", "json")
    doc = json.loads(out)
    assert doc["weak"] is True and doc["norm"] == "strict"
    assert doc["transfer_matrix"] == [[0.5, 0.5], [0.5, 0.5]]
    code, out, _ = run(capsys, "majorize", "--x", "2,2", "--y", "3,1")
    assert code == 0 and out.startswith("weak=false")
    for bad in (("--x", "1,a", "--y", "1,1"), ("--x", "1,1", "--y", "1"),
                ("--x", "1,1", "--y", "-1,0"), ("--x", "1", "--y", "1", "--p", "1")):
        assert run(capsys, "majorize", *bad)[0] == 2


def test_decompose(capsys, tmp_path):
    f = tmp_path / "m.txt"
    f.write_text("2\n1 0\n0 1\n")
    code, out, _ = run(capsys, "decompose", "--matrix", str(f), "--format", "json")
    doc = json.loads(out)
    assert doc["terms"] == [{"weight": 1.0, "mapping": {"0": 0, "1": 1}}]
    f.write_text("2\n1 0.5\n0 1\n")
    assert run(capsys, "decompose", "--matrix", str(f))[0] == 2
    f.write_text("2\n1 0\n0\n")
    assert run(capsys, "decompose", "--matrix", str(f))[0] == 2


def test_lambda1_skst(capsys):
    assert run(capsys, "lambda1-skst", "--s", "0", "--t", "0")[1].strip() == "2.000000000000"
    out = run(capsys, "lambda1-skst", "--s", "0", "--t", "1")[1].strip()
    assert out == "2.391382380631"
    value = float(run(capsys, "lambda1-skst", "--s", "1", "--t", "1")[1])
    assert 2 < value < 3
    assert run(capsys, "lambda1-skst", "--s", "-1", "--t", "1")[0] == 2


def test_unknown_flag(capsys):
    with pytest.raises(SystemExit) as info:
        main(["spectrum", "--graph", "Dhc", "--bogus"])
    assert info.value.code == 2
