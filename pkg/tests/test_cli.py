import io
import subprocess
import sys
from contextlib import redirect_stderr, redirect_stdout

import pytest

from twodescent import cli
from twodescent.base import bundled_base
from twodescent.textio import descent_tables, key_str, load_text, parse
from twodescent.transport import two_group_context

from conftest import DATA, FIXTURES


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = cli.main([str(a) for a in argv])
    return code, out.getvalue(), err.getvalue()


def trivial_document(base):
    """A descent object whose every component is an identity."""
    ctx = two_group_context(bundled_base(base)[1])
    lines = ["twodescent 1", "", f"[cover {base}]", f"builtin = {base}", "",
             "[crossed-module S3xZ2->S3]", "builtin = S3xZ2->S3", "",
             f"[descent {base}-trivial]", f"cover = {base}", "structure = S3xZ2->S3"]
    ident = {0: "*", 1: "012", 2: "[012;012.0]"}
    for key, cells, _, level in descent_tables(ctx):
        lines += [f"{key} {key_str(c)} = {ident[level]}" for c in cells]
    return "\n".join(lines) + "\n"


@pytest.fixture
def trivial_torus(tmp_path):
    p = tmp_path / "trivial.2d"
    p.write_text(trivial_document("torus3"), encoding="utf-8")
    return p


def test_validate_ok_and_violations():
    code, out, _ = run("validate", "--in", DATA / "C6.2d")
    assert code == 0 and "# descent C6-cocycle: ok" in out
    code, out, _ = run("validate", "--in", FIXTURES / "torus3-bad-f.2d")
    assert code == 1
    assert any(l.startswith("(3)@Ψ=(") for l in out.splitlines())


def test_report_file(tmp_path):
    rep = tmp_path / "r.txt"
    code, out, _ = run("validate", "--in", FIXTURES / "C6-bad-f.2d", "--report", rep)
    assert code == 1 and out == ""
    text = rep.read_text(encoding="utf-8")
    assert "violation(s)" in text and "(3)@" in text


def test_parse_and_typing_errors_exit_2(tmp_path):
    bad = tmp_path / "bad.2d"
    bad.write_text("twodescent 1\n\n[cover x\n", encoding="utf-8")
    code, _, err = run("validate", "--in", bad)
    assert code == 2 and "line 3" in err
    bad.write_text("twodescent 1\n\n[choice c]\ncover = nowhere\n", encoding="utf-8")
    code, _, err = run("validate", "--in", bad)
    assert code == 2 and "unknown reference" in err
    code, _, err = run("validate", "--in", tmp_path / "missing.2d")
    assert code == 2


def test_print_is_identity():
    text = (DATA / "octahedron.2d").read_text(encoding="utf-8")
    code, out, _ = run("print", "--in", DATA / "octahedron.2d")
    assert code == 0 and out == text


def test_extract_writes_parseable_descent(tmp_path):
    out = tmp_path / "ex.2d"
    code, rep, _ = run("extract", "--in", DATA / "C6.2d", "--name", "C6-tf", "--out", out)
    assert code == 0 and "# descent Ex-C6-tf: ok" in rep
    doc = parse(out.read_text(encoding="utf-8"))
    assert [s.kind for s in doc.sections] == ["descent"]
    # the extracted object loads against the source document's cover
    src = (DATA / "C6.2d").read_text(encoding="utf-8")
    ws = load_text(src + "\n" + doc.sections[0].render() + "\n")
    assert ws.get("Ex-C6-tf", "descent")


def test_reconstruct_reports_normalized_functor():
    for name, expect in (("C6-normalized", "true"), ("C6-cocycle", None)):
        code, out, _ = run("reconstruct", "--in", DATA / "C6.2d", "--name", name, "--choice", "C6-hub")
        assert code == 0
        sec = next(s for s in parse(out.split("\n\n# ")[0].rstrip("\n") + "\n").sections)
        nd, nf = sec.get("normalized-descent"), sec.get("normalized-functor")
        if expect:
            assert nd == nf == expect
        else:
            assert nd in ("true", "false") and nf in ("true", "false")


@pytest.mark.parametrize("direction", ["ex-rec", "rec-ex"])
def test_roundtrip_commands(direction, tmp_path):
    out = tmp_path / "o.2d"
    code, rep, err = run("roundtrip", direction, "--in", DATA / "grid2.2d", "--out", out)
    assert code == 0, rep + err
    kinds = {s.kind for s in parse(out.read_text(encoding="utf-8")).sections}
    assert kinds == {"rho" if direction == "ex-rec" else "eta"}


def test_roundtrip_on_invalid_input_reports_the_input():
    code, out, _ = run("roundtrip", "ex-rec", "--in", FIXTURES / "C6-bad-f.2d")
    assert code == 1 and "(input)" in out


def test_holonomy_of_trivial_data_is_the_identity(trivial_torus):
    code, out, _ = run("holonomy", "--in", trivial_torus, "--face", "sq11")
    assert code == 0
    (sec,) = parse(out).sections
    assert sec.get("value") == "(012,012.0)"
    code, out, _ = run("holonomy", "--in", trivial_torus, "--path", "h00 v10 h01^-1 v00^-1")
    assert parse(out).sections[0].get("value") == "012"
    code, out, _ = run("holonomy", "--in", trivial_torus, "--path", "", "--start", "p00")
    assert parse(out).sections[0].get("value") == "012"


def test_holonomy_errors():
    code, _, err = run("holonomy", "--in", DATA / "C6.2d", "--path", "e0")
    assert code == 2 and "--name" in err
    code, _, err = run("holonomy", "--in", DATA / "C6.2d", "--name", "C6-tf", "--face", "nope")
    assert code == 2


def test_refine_and_axioms():
    code, out, _ = run("refine", "--in", DATA / "C6-refinement.2d", "--refinement", "collapse")
    assert code == 0 and "# descent whole-cocycle@C6-three: ok" in out
    code, out, _ = run("axioms", "--in", DATA / "point-monoidal.2d")
    assert code == 0 and "# delooping matF2: ok" in out
    code, out, _ = run("axioms", "--in", FIXTURES / "octahedron-bad-f.2d")
    assert code == 1


def test_output_is_deterministic():
    a = run("roundtrip", "ex-rec", "--in", DATA / "C6x3.2d")
    b = run("roundtrip", "ex-rec", "--in", DATA / "C6x3.2d")
    assert a == b


def test_entry_point_runs_as_a_process():
    r = subprocess.run([sys.executable, "-m", "twodescent.cli", "validate", "--in",
                        str(FIXTURES / "octahedron-bad-f.2d")], capture_output=True, text=True)
    assert r.returncode == 1 and "(3)@Ψ=" in r.stdout
