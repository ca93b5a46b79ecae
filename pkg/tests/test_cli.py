import json
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import rf
from fieldpatch.cli import codec, main
from fieldpatch.exactalg import QQ, Field, Poly, RatFunc, TruncLaurent
from fieldpatch.trings import ExactXT, FMatrix, RingId, TElem, TMatrix, XMatrix

GEN = RingId.generic(QQ)


def invoke(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def write_input(tmp_path, data, name="in.json"):
    p = tmp_path / name
    p.write_text(json.dumps(data) if not isinstance(data, str) else data)
    return str(p)


# --- codec ------------------------------------------------------------------------------------------
small_poly = st.lists(st.integers(-5, 5), min_size=1, max_size=4).map(lambda cs: Poly(QQ, cs))


@given(small_poly, small_poly.filter(lambda p: not p.is_zero()))
def test_ratfunc_round_trip(num, den):
    r = RatFunc(num, den)
    assert codec.dec_ratfunc(QQ, json.loads(json.dumps(codec.enc_ratfunc(r)))) == r


@given(st.integers(-3, 2), st.lists(st.integers(-5, 5), min_size=1, max_size=5), st.one_of(st.none(), st.integers(3, 8)))
def test_laurent_round_trip(low, cs, prec):
    s = TruncLaurent(QQ, low, cs, prec)
    back = codec.dec_laurent(QQ, codec.enc_laurent(s))
    assert back.agrees(s) and back.prec == s.prec


@given(st.lists(small_poly, min_size=1, max_size=5))
def test_telem_round_trip(polys):
    e = TElem(GEN, [RatFunc(p) for p in polys])
    assert codec.dec_telem(QQ, json.loads(json.dumps(codec.enc_telem(e)))) == e


def test_matrix_round_trips():
    t = ExactXT.t(QQ)
    X = XMatrix(QQ, [[1, t / ExactXT.from_coeff(rf([0, 1]))], [0, 1]])
    assert codec.dec_xmatrix(QQ, codec.enc_xmatrix(X)) == X
    A = TMatrix.identity(GEN, 2, 3)
    assert codec.dec_tmatrix(QQ, codec.enc_tmatrix(A)) == A
    F = FMatrix.of(X) * FMatrix.of(A).inverse()
    back = codec.dec_fmatrix(QQ, codec.enc_fmatrix(F))
    assert back.evaluate(GEN, 3).agrees_to(F.evaluate(GEN, 3), 3)


def test_exact_and_char_p_scalars():
    e = ExactXT.from_t_coeffs([RatFunc.const(QQ, 1)], [RatFunc.x(QQ), RatFunc.const(QQ, -1)])
    assert codec.dec_exact(QQ, codec.enc_exact(e)) == e
    F7 = Field(7)
    assert codec.dec_scalar(F7, codec.enc_scalar(F7, F7(-1))) == F7(6)
    assert codec.dec_scalar(QQ, "3/6") == QQ("1/2")


# --- commands -----------------------------------------------------------------------------------------
@pytest.mark.parametrize("argv", [
    ["split"],
    ["factor", "--seed", "3"],
    ["wprep"],
    ["unitfact"],
    ["solve", "two-patch"],
    ["solve", "multi"],
    ["solve", "local-global"],
    ["patch-alg"],
    ["rrbasis", "--seed", "2"],
    ["demo", "quaternion", "--prec-t", "6"],
])
def test_commands_succeed(capsys, argv):
    code, rep = invoke(capsys, *argv)
    assert code == 0 and rep["status"] == "ok"
    assert rep["checks"] and all(c["residual_is_zero"] for c in rep["checks"])
    assert {"version", "command", "char", "prec_t", "prec_x", "seed"} <= set(rep)


def test_split_from_input(capsys, tmp_path):
    path = write_input(tmp_path, {"a": {"num": [1, 0, 1], "den": [0, 1]}})
    code, rep = invoke(capsys, "split", "--input", path)
    assert code == 0
    assert codec.dec_ratfunc(QQ, rep["result"]["b"]) == rf([0, 1])
    assert codec.dec_ratfunc(QQ, rep["result"]["c"]) == rf([1], [0, 1])


def test_reconstruct_success_and_check_failure(capsys, tmp_path):
    elem = {"shift": 0, "coeffs": [{"num": [1], "den": [0] * (j + 1) + [1]} for j in range(8)]}
    code, rep = invoke(capsys, "reconstruct", "--input", write_input(tmp_path, {"elem": elem}))
    assert code == 0
    bad = {"shift": 0, "coeffs": [[c, 1] for c in (1, 2, 5, -3, 7, 11, 4, -9)]}
    code, rep = invoke(capsys, "reconstruct", "--input", write_input(tmp_path, {"elem": bad}, "bad.json"),
                       "--bounds", "1,1")
    assert code == 1 and rep["status"] == "failed"
    assert rep["first_failure"].startswith("reconstruction within bounds")


def test_garbled_input_exits_2(capsys, tmp_path):
    path = write_input(tmp_path, "{not json")
    assert main(["split", "--input", path]) == 2
    capsys.readouterr()
    code, rep = invoke(capsys, "split", "--input", write_input(tmp_path, {"a": {"num": "oops"}}, "b.json"))
    assert code == 2 and rep["status"] == "malformed"


def test_bad_characteristic_and_char_2_demo(capsys):
    assert main(["split", "--char", "4"]) == 2
    capsys.readouterr()
    code, rep = invoke(capsys, "demo", "quaternion", "--char", "2")
    assert code == 2 and "UnsupportedCharacteristic" in rep["error"]


def test_singular_factor_input_rejected(capsys, tmp_path):
    A = {"exact": [[1, 1], [1, 1]]}
    code, rep = invoke(capsys, "factor", "--input", write_input(tmp_path, {"matrix": A}))
    assert code == 2 and "SingularAtPrecision" in rep["error"]


def test_output_is_deterministic(capsys, tmp_path):
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    for out in (out1, out2):
        assert main(["solve", "multi", "--seed", "5", "--output", str(out)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_module_entry_point_selftest(tmp_path):
    out = tmp_path / "self.json"
    proc = subprocess.run([sys.executable, "-m", "fieldpatch", "selftest", "--prec-t", "6", "--output", str(out)],
                          capture_output=True, text=True, timeout=300)
    assert proc.returncode == 0, proc.stderr
    rep = json.loads(out.read_text())
    assert rep["status"] == "ok" and len(rep["checks"]) > 50
