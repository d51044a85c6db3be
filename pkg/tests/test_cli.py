import pytest

from gridset.branchdecomp import read_decomposition
from gridset.cli import EXIT_PARSE, main
from gridset.ingest import load_case, read_report


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_case14(capsys, tmp_path):
    out_file = tmp_path / "r.report"
    code, out, _ = run(capsys, "solve", "case14", "--solver", "bd", "--out", str(out_file))
    assert code == 0
    assert out.splitlines()[0] == "|D| = 4, exact"
    assert read_report(out_file.read_text()).cardinality == 4


def test_solve_case300(capsys, tmp_path):
    code, out, _ = run(capsys, "solve", "case300", "--out", str(tmp_path / "r"))
    first = out.splitlines()[0]
    assert code == 0 and first.endswith("exact=false")
    assert 87 <= int(first.split()[2].rstrip(",")) <= 96


def test_solve_greedy_case9(capsys, tmp_path):
    code, out, _ = run(capsys, "solve", "case9", "--solver", "greedy", "--out", str(tmp_path / "r"))
    assert code == 0 and out.startswith("|D| = 3")


def test_default_output_name(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    run(capsys, "solve", "case9")
    assert (tmp_path / "case9.bd.report").is_file()


def test_bw_case118(capsys, tmp_path):
    out_file = tmp_path / "c.bd"
    code, out, _ = run(capsys, "bw", "case118", "--out", str(out_file))
    assert code == 0 and out.strip() == "planar: yes, bw = 4"
    bd = read_decomposition(out_file.read_text(), load_case("case118").graph())
    assert bd.width == 4


def test_bw_case24(capsys, tmp_path):
    code, out, _ = run(capsys, "bw", "case24", "--out", str(tmp_path / "c.bd"))
    assert code == 0 and out.startswith("planar: no, bw = ")


def test_bw_two_edge_path(capsys, tmp_path):
    src = tmp_path / "p.txt"
    src.write_text("1 2\n2 3\n")
    code, out, _ = run(capsys, "bw", str(src), "--out", str(tmp_path / "p.bd"))
    assert code == 0 and out.strip() == "planar: yes, bw = 1"


def test_compare_case30(capsys):
    code, out, _ = run(capsys, "compare", "case30")
    assert code == 0 and out.strip() == "30 41 yes 3 10 10 10"


def test_compare_case39(capsys):
    _, out, _ = run(capsys, "compare", "case39")
    cells = out.split()
    assert cells[:6] == ["39", "46", "yes", "3", "13", "13"]
    assert 13 <= int(cells[6]) <= 16


def test_compare_case57(capsys):
    _, out, _ = run(capsys, "compare", "case57", "--header")
    header, row = out.splitlines()
    cells = row.split()
    assert header.startswith("|V|")
    assert cells[:3] == ["57", "78", "no"]
    assert cells[4] == cells[5] == "17"
    assert 17 <= int(cells[6]) <= 23


def test_explicit_edge_order_file(capsys, tmp_path):
    g = load_case("case57").graph()
    order = tmp_path / "order.txt"
    order.write_text("".join(f"{a} {b}\n" for a, b in g.label_edges() if (a, b) != (49, 50)))
    code, out, _ = run(capsys, "solve", "case57", "--edge-order", f"explicit:{order}",
                       "--out", str(tmp_path / "r"))
    assert code == 0
    assert "removed: 49-50" in out


def test_render_case57(capsys, tmp_path):
    rep = tmp_path / "r.report"
    svg = tmp_path / "c.svg"
    run(capsys, "solve", "case57", "--out", str(rep))
    code, _, _ = run(capsys, "render", "case57", str(rep), "--out", str(svg))
    assert code == 0
    assert svg.read_text().count('class="pmu"') == 17


def test_unknown_case_is_parse_error(capsys):
    code, _, err = run(capsys, "solve", "no_such_case")
    assert code == EXIT_PARSE and "error" in err


def test_bad_case_file(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("1 x\n")
    code, _, err = run(capsys, "bw", str(bad))
    assert code == EXIT_PARSE and "line 1" in err


def test_solver_failure_exit_code(capsys, tmp_path):
    big = tmp_path / "big.txt"
    big.write_text("".join(f"{i} {i + 1}\n" for i in range(40)))
    code, _, err = run(capsys, "solve", str(big), "--solver", "brute", "--out", str(tmp_path / "r"))
    assert code == 2 and "refuses" in err


def test_usage_error():
    with pytest.raises(SystemExit):
        main(["solve"])
