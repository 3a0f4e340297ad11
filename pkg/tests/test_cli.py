import json

import pytest

from foldmin.cli import (
    ParseError,
    build_parser,
    corpus_generate,
    main,
    parse_input,
    print_input,
)
from foldmin.presentations import CoxeterPresentation, OneRelatorPresentation

COX = """
# comment line
type coxeter
generators a b c
m a b 7
m a c 7
m b c inf
k 2
subgroup
gen a b c
gen c b a
"""

ONEREL = """
type one-relator
generators x y
relator x y x' y'
exponent 12
k 2
subgroup
gen x x
gen y y
"""


def test_parse_minimal():
    parsed = parse_input(COX)
    assert isinstance(parsed.presentation, CoxeterPresentation)
    assert parsed.k == 2
    assert parsed.generators == [(1, 2, 3), (3, 2, 1)]
    assert parsed.presentation.exponents.get(1, 2) is None


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_input("type coxeter\ngenerators a b\nm a a 4\n")
    with pytest.raises(ParseError):
        parse_input("type coxeter\ngenerators a b\nm a b 4\ngen a'\n")
    with pytest.raises(ParseError):
        parse_input("type one-relator\ngenerators a b\nrelator a a\nexponent 3\ngen a\n")
    with pytest.raises(ParseError):
        parse_input("type coxeter\ngenerators a b\nm a b 1\n")
    with pytest.raises(ParseError):
        parse_input("type nonsense\ngenerators a\n")
    with pytest.raises(ParseError):
        parse_input("generators a b\n")
    with pytest.raises(ParseError):
        parse_input("type coxeter\ngenerators a b\nm a b 4\nk 1\ngen a\ngen b\n")


def test_round_trip():
    for text in (COX, ONEREL):
        parsed = parse_input(text)
        printed = print_input(parsed)
        again = parse_input(printed)
        assert print_input(again) == printed
        assert again.generators == parsed.generators
        assert again.k == parsed.k


def test_cli_certify_exit_codes(tmp_path, capsys):
    f = tmp_path / "in.txt"
    f.write_text(COX)
    code = main(["certify", str(f)])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["status"] == "FreeCertified"

    # unmet threshold: exit 3
    low = COX.replace("7", "5")
    f.write_text(low)
    assert main(["certify", str(f)]) == 3
    capsys.readouterr()

    # parse error: exit 2
    f.write_text("type coxeter\n")
    assert main(["certify", str(f)]) == 2
    capsys.readouterr()


def test_cli_minimize_outputs(tmp_path, capsys):
    f = tmp_path / "in.txt"
    f.write_text(ONEREL)
    js = tmp_path / "report.json"
    dot = tmp_path / "graph.dot"
    trace = tmp_path / "trace.json"
    code = main(["minimize", str(f), "--json", str(js), "--dot", str(dot),
                 "--trace", str(trace), "--seed", "5"])
    assert code == 0
    report = json.loads(js.read_text())
    assert report["status"] == "FreeCertified"
    assert report["seed"] == 5
    assert "digraph" in dot.read_text()
    assert isinstance(json.loads(trace.read_text()), list)
    capsys.readouterr()


def test_cli_determinism(tmp_path, capsys):
    f = tmp_path / "in.txt"
    f.write_text(COX)
    outs = []
    dots = []
    for t in range(2):
        js = tmp_path / f"r{t}.json"
        dot = tmp_path / f"g{t}.dot"
        assert main(["minimize", str(f), "--json", str(js), "--dot", str(dot),
                     "--seed", "7"]) == 0
        outs.append(js.read_bytes())
        dots.append(dot.read_bytes())
    capsys.readouterr()
    assert outs[0] == outs[1]
    assert dots[0] == dots[1]


def test_cli_wp(tmp_path, capsys):
    f = tmp_path / "in.txt"
    f.write_text(ONEREL)
    assert main(["wp", str(f), "--word", "x y x' y' " * 12]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["trivial"] is True
    assert main(["wp", str(f), "--word", "x"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["trivial"] is False and out["reduced"] == "x"


def test_cli_separate(tmp_path, capsys):
    f = tmp_path / "in.txt"
    f.write_text("""
type coxeter
generators a b c
m a b 18
m a c 18
m b c 18
k 2
subgroup
gen a b c a
gen b c b a
element a
""")
    code = main(["separate", str(f)])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["status"] == "SeparableCertified"

    f.write_text("type coxeter\ngenerators a b\nm a b 18\nk 2\nsubgroup\ngen a b\n")
    assert main(["separate", str(f)]) == 2  # missing element line
    capsys.readouterr()


def test_cli_rpp(tmp_path, capsys):
    f = tmp_path / "in.txt"
    f.write_text(COX)
    assert main(["rpp", str(f)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["holds"] is True


def test_cli_corpus_deterministic(capsys):
    assert main(["corpus", "--type", "coxeter", "--n", "3", "--m", "7",
                 "--k", "2", "--trials", "6", "--seed", "1", "--json"]) == 0
    first = capsys.readouterr().out
    assert main(["corpus", "--type", "coxeter", "--n", "3", "--m", "7",
                 "--k", "2", "--trials", "6", "--seed", "1", "--json"]) == 0
    second = capsys.readouterr().out
    assert first == second
    table = json.loads(first)
    assert sum(table["statuses"].values()) == 6


def test_corpus_generate_seeded():
    a = corpus_generate("one-relator", 2, 12, 2, (2, 6), 5, seed=3)
    b = corpus_generate("one-relator", 2, 12, 2, (2, 6), 5, seed=3)
    c = corpus_generate("one-relator", 2, 12, 2, (2, 6), 5, seed=4)
    assert [x.generators for x in a] == [y.generators for y in b]
    assert [x.generators for x in a] != [z.generators for z in c]
    assert all(isinstance(x.presentation, OneRelatorPresentation) for x in a)


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        build_parser().parse_args(["--version"])
    assert exc.value.code == 0


def test_cli_wp_artin(tmp_path, capsys):
    f = tmp_path / "artin.txt"
    f.write_text("""
type artin
generators a b c
m a b 5
m a c 5
m b c 5
k 1
subgroup
gen a b
""")
    assert main(["wp", str(f), "--word", "a b a b a b' a' b' a' b'"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["trivial"] is True  # the defining relation at length 5
    assert main(["wp", str(f), "--word", "a b c"]) == 2  # three generators
    capsys.readouterr()


def test_console_script_installed():
    import subprocess

    proc = subprocess.run(["foldmin", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "foldmin" in proc.stdout


def test_cli_witnessed_verdict_serializes_witnesses(tmp_path, capsys):
    f = tmp_path / "in.txt"
    f.write_text("type coxeter\ngenerators a b\nm a b 6\nk 1\nsubgroup\ngen a b a b\n")
    code = main(["certify", str(f)])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["witnesses"], "expected a torsion witness in the report"
    w = out["witnesses"][0]
    assert w["kind"] in ("RotationPowerTorsion", "GeneratorConjugate")
    assert isinstance(w["label"], str) and w["label"]
