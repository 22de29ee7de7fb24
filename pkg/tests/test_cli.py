import random

import pytest

from conftest import S
from fieldpatch import generators as gen
from fieldpatch import matrices as mx
from fieldpatch.charts import cayley_chart
from fieldpatch.cli import EXIT_GUARD, EXIT_OK, EXIT_PRECONDITION, EXIT_USAGE, EXIT_VERIFY, run
from fieldpatch.errors import GuardFailure, VerificationFailure
from fieldpatch.patching import Tensor, TensorObject
from fieldpatch.rational import RationalF
from fieldpatch.scalars import QQ
from fieldpatch.textio import fmt


def r(c):
    return RationalF.const(QQ, c)


Q3 = [[r(1), r(0), r(0)], [r(0), r(-1), r(0)], [r(0), r(0), RationalF.x(QQ)]]


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else fmt(obj) + "\n", encoding="utf-8")
        return str(p)

    return write


def test_factor_gl_and_verify(files, tmp_path, capsys):
    g0 = files("g0.pk", gen.rand_gl_input(QQ, random.Random(1), 2, 12))
    cert = str(tmp_path / "g0.cert")
    assert run(["factor-gl", "--in", g0, "--cert", cert]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("g1 matrix(2,2)")
    assert run(["verify", "--cert", cert]) == EXIT_OK
    assert capsys.readouterr().out.rstrip().endswith("verified")


def test_tampered_certificate_fails_verification(files, tmp_path, capsys):
    g0 = files("g0.pk", gen.rand_gl_input(QQ, random.Random(2), 2, 12))
    cert = tmp_path / "g0.cert"
    run(["factor-gl", "--in", g0, "--cert", str(cert)])
    text = cert.read_text().splitlines()
    text = [ln.replace("trace ", "trace 5 ", 1) if ln.startswith("trace ") else ln for ln in text]
    cert.write_text("\n".join(text) + "\n")
    capsys.readouterr()
    assert run(["verify", "--cert", str(cert)]) == EXIT_VERIFY
    assert "NOT verified" in capsys.readouterr().out


def test_singular_residue_is_a_precondition_error(files, capsys):
    N = 6
    g0 = mx.identity(QQ, 2, N)
    g0[1][1] = S(QQ, {(1, 0): 1}, N=N)
    assert run(["factor-gl", "--tprec", "6", "--in", files("g0.pk", g0)]) == EXIT_PRECONDITION
    assert "SingularResidue" in capsys.readouterr().err


def test_usage_errors(tmp_path, capsys):
    assert run(["bogus"]) == EXIT_USAGE
    assert run(["verify", "--cert", str(tmp_path / "missing.cert")]) == EXIT_USAGE
    assert run(["selftest", "--field", "fp:4"]) == EXIT_USAGE
    assert run(["split"]) == EXIT_USAGE


def test_exit_code_mapping():
    assert GuardFailure.exit_code == EXIT_GUARD
    assert VerificationFailure.exit_code == EXIT_VERIFY


def test_split_expand_reconstruct(files, tmp_path, capsys):
    a = files("a.pk", S(QQ, {(1, -1): 1, (1, 1): 2}, N=4))
    assert run(["split", "--in", a]) == EXIT_OK
    v, w = capsys.readouterr().out.splitlines()
    assert v.startswith("v series(V") and w.startswith("w series(W")
    f = files("f.pk", RationalF(RationalF.x(QQ).num, (r(1) - RationalF.x(QQ) * RationalF.t(QQ)).num))
    e1, e2 = str(tmp_path / "e1"), str(tmp_path / "e2")
    assert run(["expand", "--in", f, "--target", "F1", "--out", e1]) == EXIT_OK
    assert run(["expand", "--in", f, "--target", "F2", "--out", e2]) == EXIT_OK
    pair = files("pair.pk", "vector(2) [ " + open(e1).read().strip() + " ; " + open(e2).read().strip() + " ]")
    assert run(["reconstruct", "--in", pair, "--degx", "2", "--degt", "2"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == open(f).read().strip()


def test_factor_group_and_isotropy(files, tmp_path, capsys):
    chart = files("so.chart", cayley_chart(Q3))
    z = gen.product_perturbation(cayley_chart(Q3), random.Random(4), 12, 10)
    zf = files("z.pk", z)
    cert = str(tmp_path / "z.cert")
    assert run(["factor-group", "--chart", chart, "--in", zf, "--cert", cert]) == EXIT_OK
    assert run(["verify", "--cert", cert]) == EXIT_OK
    capsys.readouterr()
    args = ["isotropy-demo", "--gram", files("q.pk", Q3), "--witness", files("y0.pk", [r(1), r(1), r(0)]),
            "--perturb", zf, "--degx", "4", "--degt", "4", "--cert", str(tmp_path / "iso.cert")]
    assert run(args) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("witness ") and lines[1] == "q(y) " + r(0).to_text()


def test_patch_object(files, capsys):
    obj = TensorObject(2, (Tensor.gram([[r(1), r(0)], [r(0), RationalF.x(QQ)]]),))
    pp = files("pp.pk", gen.product_problem(QQ, random.Random(5), obj, 12))
    assert run(["patch-object", "--in", pp, "--degx", "4", "--degt", "4"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "object " + fmt(obj.tensors[0])


def test_selftest_finite_field(capsys):
    args = ["selftest", "--field", "fp:5", "--tprec", "12", "--uprec", "10", "--seed", "7", "--count", "3"]
    assert run(args) == EXIT_OK
    first = capsys.readouterr().out
    assert first.rstrip().splitlines()[-1].startswith("total: 27/27")
    assert run(args) == EXIT_OK
    assert capsys.readouterr().out == first
