import csv
import io
import json

import pytest

from fenbc import cli


def write(tmp_path, text, name="g.txt"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_p3(tmp_path, capsys):
    code, out, _ = run(["compute", "--input", write(tmp_path, "a b\nb c\n"), "--algo", "auto"], capsys)
    assert code == 0 and out == "a\t0\nb\t2\nc\t0\n"


@pytest.mark.parametrize("algo", ["fen", "brandes", "oracle"])
def test_compute_algorithms_agree(tmp_path, capsys, algo):
    text = "# square with a tail\nx y\ny z\nz w\nw x\n\nw tail  # comment\n"
    code, out, _ = run(["compute", "--input", write(tmp_path, text), "--algo", algo], capsys)
    assert code == 0
    assert out == "x\t2\ny\t1\nz\t2\nw\t7\ntail\t0\n"


def test_compute_duplicate_warning(tmp_path, capsys):
    code, out, err = run(["compute", "--input", write(tmp_path, "a b\nb a\nb c\n")], capsys)
    assert code == 0 and "1 duplicate edge" in err and out.count("\n") == 3


def test_compute_self_loop(tmp_path, capsys):
    code, _, err = run(["compute", "--input", write(tmp_path, "a a\n")], capsys)
    assert code == 2 and "self-loop at line 1" in err


def test_compute_malformed_line(tmp_path, capsys):
    code, _, err = run(["compute", "--input", write(tmp_path, "a b\n\nc d e\n")], capsys)
    assert code == 2 and "line 3" in err


def test_compute_unreadable(tmp_path, capsys):
    code, _, err = run(["compute", "--input", str(tmp_path / "missing.txt")], capsys)
    assert code == 2 and "cannot read" in err


def test_compute_output_file_is_stable(tmp_path, capsys):
    src = write(tmp_path, "".join(f"v{i} v{(i + 1) % 9}\n" for i in range(9)) + "v0 v4\n")
    a, b = tmp_path / "a.tsv", tmp_path / "b.tsv"
    assert cli.main(["compute", "--input", src, "--output", str(a)]) == 0
    assert cli.main(["compute", "--input", src, "--output", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().splitlines()[0].startswith("v0\t")


def test_compute_json_and_report(tmp_path, capsys):
    rep = tmp_path / "r.json"
    code, out, _ = run(["compute", "--input", write(tmp_path, "a b\nb c\nc a\nc d\n"), "--json", "--report", str(rep)], capsys)
    assert code == 0 and json.loads(out) == [["a", 0.0], ["b", 0.0], ["c", 4.0], ["d", 0.0]]
    report = json.loads(rep.read_text())
    assert (report["n"], report["m"], report["k"]) == (4, 4, 1)
    assert sum(report["phases"].values()) <= report["seconds"] + 1e-3


def test_twelve_significant_digits():
    from fenbc.graph import build_graph

    g = build_graph([("a", "b")])
    assert cli.format_scores(g, [1 / 3, 0.0]) == "a\t0.333333333333\nb\t0\n"


def test_bench_shape(capsys):
    code, out, _ = run(["bench", "--family", "tree_plus_k", "--n", "200,400", "--k", "8", "--algos", "fen,brandes", "--reps", "2"], capsys)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["family", "n", "m", "k", "algo", "rep", "seconds", "max_rel_err_vs_brandes"]
    assert len(rows) == 1 + 2 * 2 * 2
    assert {r[4] for r in rows[1:]} == {"fen", "brandes"}
    assert all(float(r[7]) <= 1e-9 for r in rows[1:])


def test_bench_cycle_fen_only(capsys):
    code, out, _ = run(["bench", "--family", "cycle", "--n", "1e5", "--algos", "fen", "--reps", "1"], capsys)
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and len(rows) == 2
    assert rows[1][1] == "100000" and rows[1][7] == "" and float(rows[1][6]) < 1.0


def test_bench_csv_file(tmp_path, capsys):
    dest = tmp_path / "b.csv"
    code, _, _ = run(["bench", "--family", "theta", "--arms", "2,3,4", "--algos", "fen", "--reps", "1", "--csv", str(dest)], capsys)
    assert code == 0 and dest.read_text().count("\n") == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["--reps", "0"],
        ["--k", "1000", "--n", "10"],
        ["--algos", "fen,magic"],
    ],
)
def test_bench_errors(capsys, argv):
    base = ["bench", "--family", "tree_plus_k", "--n", "50", "--k", "2"]
    code, _, err = run(base + argv, capsys)
    assert code == 2 and err.startswith("error:")


def test_selftest_healthy(capsys):
    code, out, _ = run(["selftest", "--cases", "30"], capsys)
    assert code == 0 and "30 cases passed" in out


@pytest.mark.parametrize("name", ["tie_denominator", "drop_xv_factor2", "skip_shared_guard"])
def test_selftest_catches_mutation(capsys, name):
    code, out, _ = run(["selftest", "--cases", "30", "--mutation", name], capsys)
    lines = out.splitlines()
    assert code == 1 and lines[0].startswith("selftest: FAILED")
    assert all(len(line.split()) == 2 for line in lines[1:]) and len(lines) > 2


def test_selftest_seed_env_and_flag(monkeypatch):
    monkeypatch.setenv(cli.SEED_ENV, "17")
    args = cli.build_parser().parse_args(["selftest"])
    assert cli._seed(args) == 17
    args = cli.build_parser().parse_args(["selftest", "--seed", "3"])
    assert cli._seed(args) == 3


def test_selftest_reproducer_is_deterministic(monkeypatch, capsys):
    monkeypatch.setenv(cli.SEED_ENV, "5")
    outs = [run(["selftest", "--cases", "10", "--mutation", "tie_denominator"], capsys)[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_selftest_cases_differ_by_seed():
    a = cli.selftest_case(7, 0).edges().tolist()
    b = cli.selftest_case(7, 1).edges().tolist()
    assert a != b and cli.selftest_case(7, 0).edges().tolist() == a


def test_max_rel_err_zero_reference():
    assert cli.max_rel_err([0.0, 2.0], [0.0, 2.0]) == 0
    assert cli.max_rel_err([1e-3, 4.0], [0.0, 4.0]) == pytest.approx(1e-3 / 4)


def test_threads_flag(tmp_path, capsys):
    src = write(tmp_path, "a b\nb c\nc d\nd a\n")
    code, out, _ = run(["--threads", "2", "compute", "--input", src, "--algo", "brandes"], capsys)
    assert code == 0 and out == "a\t1\nb\t1\nc\t1\nd\t1\n"
