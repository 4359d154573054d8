import io
import subprocess
import sys

from skewmon.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), stdout=out)
    return code, out.getvalue()


def test_normalize():
    code, out = run("normalize", "((X * I) * Y)")
    assert code == 0
    assert "nf    [X,Y]" in out and "nfrev rev[X,Y]" in out


def test_canonical_map():
    code, out = run("canonical-map", "I")
    assert code == 0 and out.splitlines()[0] == "lam_I . rho_I"
    code, out = run("canonical-map", "--rev", "(I * X)")
    assert code == 0 and ": (I * X) => (I * X)" in out


def test_check_map():
    assert run("check-map", "(id_I * lam_X)") == (0, "ok: (I * (I * X)) => (I * X)\n")


def test_parse_and_typing_errors_exit_2(capsys):
    assert run("normalize", "(X *")[0] == 2
    assert "offset 4" in capsys.readouterr().err
    assert run("check-map", "lam_X . rho_X")[0] == 2
    assert "ill-typed" in capsys.readouterr().err
    assert run("eval", "id_X")[0] == 2
    assert "unbound variable X" in capsys.readouterr().err


def test_decide_writes_checkable_proof(tmp_path):
    proof = tmp_path / "p.sexp"
    code, out = run("decide", "lam_I . rho_I", "id_I", "--proof-out", str(proof))
    assert code == 0 and out.startswith("EQUAL")
    code, out = run("check-proof", str(proof))
    assert code == 0
    assert out == "KERNEL OK: lam_I . rho_I == id_I\n"


def test_decide_other_verdicts():
    code, out = run("decide", "id_(I * I)", "rho_I . lam_I")
    assert code == 0 and out.startswith("NOT EQUAL")
    code, out = run("decide", "id_X", "id_X")
    assert code == 1 and out.startswith("UNDECIDED")


def test_check_proof_rejects(tmp_path):
    bad = tmp_path / "bad.sexp"
    bad.write_text("(Trans (LawA) (LawA))\n")
    code, out = run("check-proof", str(bad))
    assert code == 1 and out.startswith("KERNEL REJECTED")
    bad.write_text("(Trans (LawA)")
    assert run("check-proof", str(bad))[0] == 2


def test_search():
    code, out = run("search", "(I * X)", "X")
    assert code == 0
    assert out.splitlines() == ["FOUND 1 step", "lam@", "map: lam_X"]
    code, out = run("search", "X", "(I * X)", "--max-term-size", "8", "--max-steps", "12")
    assert code == 1 and out.startswith("EXHAUSTED")
    code, out = run("search", "X", "Y")
    assert code == 1 and out.startswith("NF-MISMATCH")


def test_eval_models(tmp_path):
    v = tmp_path / "v.txt"
    v.write_text("X = pointed 2\nX = nat 1\n")
    code, out = run("eval", "lam_X", "--valuation", str(v))
    assert code == 0 and out.splitlines()[-1] == "table 0 0 1"
    code, out = run("eval", "rho_X", "--model", "nat", "--n", "3", "--valuation", str(v))
    assert code == 0 and "= 1 <= 3 =" in out


def test_separate(tmp_path):
    code, out = run("separate", "lam_(I * X)", "(id_I * lam_X)")
    assert code == 0 and out.startswith("SEPARATED at element 1")
    v = tmp_path / "v.txt"
    v.write_text("X = pointed 1\n")
    code, out = run("separate", "id_X", "id_X", "--valuation", str(v))
    assert code == 1 and out.startswith("INDISTINGUISHABLE")


def test_demo_passes_and_is_deterministic():
    code, first = run("demo")
    assert code == 0
    assert first.count("SEPARATED") == 3
    assert first.count("NF-EQUAL, SEARCH EXHAUSTED (bound 12)") == 2
    assert first.count("KERNEL OK") == 7
    assert "UNEXPECTED" not in first
    assert run("demo")[1] == first


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "skewmon", "normalize", "(I * I)"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.startswith("nf    []")
