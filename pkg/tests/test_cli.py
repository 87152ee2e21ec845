import io
import json

import numpy as np
import pytest

from mpcommute import ComplexMatrix, TupleSpec, cli, verify_penrose
from mpcommute.fileio import ParseError, dumps, loads, matrix_to_doc, read_matrix, read_tuple, tuple_to_doc, write_doc
from mpcommute.gen import random_fixed_rank
from mpcommute.laws import ClassificationResult, PowerSpec
from mpcommute.report import Check, VerdictReport


def run(*argv):
    out = io.StringIO()
    code = cli.main([str(a) for a in argv], out)
    return code, out.getvalue()


@pytest.fixture
def write(tmp_path):
    def _write(name, doc):
        path = tmp_path / name
        path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
        return path

    return _write


def diag_doc(*values):
    return matrix_to_doc(ComplexMatrix.diag(values))


class TestPinv:
    def test_diagonal(self, write, tmp_path):
        out_path = tmp_path / "out.json"
        code, text = run("pinv", write("a.json", diag_doc(2, 0)), out_path)
        assert code == 0
        assert read_matrix(out_path) == ComplexMatrix.diag([0.5, 0])
        assert "r1:" in text and "r4:" in text and "penrose: pass" in text

    def test_identity(self, write, tmp_path):
        code, _ = run("pinv", write("a.json", diag_doc(1, 1, 1)), tmp_path / "o.json")
        assert code == 0 and read_matrix(tmp_path / "o.json") == ComplexMatrix.identity(3)

    def test_rectangular(self, write, tmp_path):
        a = random_fixed_rank(5, 3, 2, 4)
        code, _ = run("pinv", write("a.json", matrix_to_doc(a)), tmp_path / "o.json")
        b = read_matrix(tmp_path / "o.json")
        assert code == 0 and b.shape == (3, 5) and verify_penrose(a, b).passed

    def test_numeric_failure(self, write, tmp_path, monkeypatch):
        from mpcommute.errors import ConvergenceFailure

        def boom(*a, **k):
            raise ConvergenceFailure("no convergence")

        monkeypatch.setattr(cli, "moore_penrose", boom)
        assert run("pinv", write("a.json", diag_doc(1)), tmp_path / "o.json")[0] == 3


class TestCheck:
    def test_diagonal_pair(self, write):
        doc = {"entries": [diag_doc(1, 2), diag_doc(3, 4)]}
        assert run("check", write("t.json", doc))[0] == 0

    def test_witness(self, write):
        code, text = run("check", write("t.json", tuple_to_doc(TupleSpec.of(ComplexMatrix.unit(2, 1, 2), ComplexMatrix.unit(2, 2, 1)))))
        assert code == 1 and "witness: 1 2" in text

    def test_singleton_and_bare_matrix(self, write):
        assert run("check", write("t.json", {"entries": [diag_doc(1, 2)]}))[0] == 0
        assert run("check", write("m.json", diag_doc(1, 2)))[0] == 0


class TestVerifyRol:
    def test_exit_codes(self, write, tmp_path):
        assert run("gen", "tensor-dc", 2, 2, "--seed", 1, "-o", tmp_path / "t.json")[0] == 0
        assert run("verify-rol", tmp_path / "t.json")[0] == 0
        assert run("gen", "witness", "-o", tmp_path / "w.json")[0] == 0
        assert run("verify-rol", tmp_path / "w.json")[0] == 1
        assert run("verify-rol", write("s.json", {"entries": [diag_doc(3, 0)]}))[0] == 0


class TestClassify:
    def test_exit_codes(self, tmp_path, write):
        run("gen", "commuting-normals", 4, 2, "--seed", 5, "-o", tmp_path / "c.json")
        assert run("classify", tmp_path / "c.json")[0] == 0
        run("gen", "witness", 3, "-o", tmp_path / "w.json")
        code, text = run("classify", tmp_path / "w.json")
        assert code == 1 and "verdict: NotDoublyCommuting" in text
        assert run("classify", write("s.json", {"entries": [diag_doc(1)]}))[0] == 2

    def test_discrepancy_exit(self, tmp_path, monkeypatch):
        run("gen", "commuting-normals", 3, 2, "-o", tmp_path / "c.json")
        ok = VerdictReport.of([Check("x", 0.0, 1.0)])
        bad = VerdictReport.of([Check("y", 2.0, 1.0)])
        monkeypatch.setattr(cli, "classify_tuple", lambda t, tol: ClassificationResult(ok, bad))
        code, text = run("classify", tmp_path / "c.json")
        assert code == 4 and "discrepancy" in text


class TestPowers:
    def test_diagonal(self, write):
        doc = {"entries": [diag_doc(2, 0), diag_doc(1j, 3)], "exponents": [2, 3]}
        assert run("powers", write("p.json", doc))[0] == 0

    def test_generated(self, tmp_path):
        run("gen", "commuting-normals", 5, 3, "--seed", 2, "--exponents", 2, 0, 1, "-o", tmp_path / "p.json")
        code, text = run("powers", tmp_path / "p.json")
        assert code == 0 and "stage identity: pass" in text

    def test_non_normal(self, write):
        doc = {"entries": [matrix_to_doc(ComplexMatrix([[1, 1], [0, 0]]))], "exponents": [2]}
        code, text = run("powers", write("p.json", doc))
        assert code == 1
        assert "warning: premise not met: a1 normal" in text
        assert "stage identity: fail" in text

    def test_missing_exponents(self, write):
        assert run("powers", write("p.json", {"entries": [diag_doc(1)]}))[0] == 2


class TestGen:
    def test_fixed_rank_zero(self, tmp_path):
        assert run("gen", "fixed-rank", 4, 4, 0, "-o", tmp_path / "z.json")[0] == 0
        assert read_matrix(tmp_path / "z.json") == ComplexMatrix.zeros(4)

    def test_stdout_and_determinism(self):
        a = run("gen", "unitary", 3, "--seed", 7)
        b = run("gen", "unitary", 3, "--seed", 7)
        assert a == b and a[0] == 0
        assert loads(a[1])["rows"] == 3

    def test_pipelines(self, tmp_path):
        run("gen", "tensor-dc", 2, 2, "-o", tmp_path / "t.json")
        run("gen", "witness", "-o", tmp_path / "w.json")
        assert run("check", tmp_path / "t.json")[0] == 0
        assert run("check", tmp_path / "w.json")[0] == 1

    @pytest.mark.parametrize(
        "argv",
        [
            ["gen", "bogus"],
            ["gen", "unitary"],
            ["gen", "unitary", "x"],
            ["gen", "fixed-rank", 2, 2, 3],
            ["gen", "tensor-dc", 5],
            ["gen", "witness", 1],
            ["gen", "commuting-normals", 3, 2, "--exponents", 1],
            ["gen", "commuting-normals", 3, 2, "--exponents", -1, 1],
            ["gen", "unitary", 2, "--seed", -1],
            [],
            ["nope"],
        ],
    )
    def test_usage_errors(self, argv):
        assert run(*argv)[0] == 2


class TestParsing:
    @pytest.mark.parametrize(
        "text",
        [
            "not json",
            '{"rows": 1, "cols": 1, "data": [[NaN, 0]]}',
            '{"rows": 1, "cols": 1, "data": [[Infinity, 0]]}',
            '{"rows": 2, "cols": 1, "data": [[1, 0]]}',
            '{"rows": 1, "cols": 1, "data": [[1]]}',
            '{"rows": 1, "cols": 1, "data": [["1", 0]]}',
            '{"rows": 0, "cols": 1, "data": []}',
            '{"entries": []}',
            '{"entries": [{"rows": 1, "cols": 2, "data": [[1, 0], [2, 0]]}]}',
        ],
    )
    def test_bad_files(self, write, text):
        assert run("check", write("bad.json", text))[0] == 2

    @pytest.mark.parametrize(
        "extra",
        [
            {"perm": [1, 1]},
            {"perm": [0, 1]},
            {"perm": [1]},
            {"marks": ["plain", "transpose"]},
            {"exponents": [1, -2]},
            {"exponents": [1, 1.5]},
        ],
    )
    def test_bad_tuple_fields(self, write, extra):
        doc = {"entries": [diag_doc(1, 2), diag_doc(3, 4)], **extra}
        assert run("check", write("bad.json", doc))[0] == 2

    def test_mismatched_dims(self, write):
        assert run("check", write("bad.json", {"entries": [diag_doc(1, 2), diag_doc(1, 2, 3)]}))[0] == 2

    def test_missing_file(self, tmp_path):
        assert run("check", tmp_path / "nope.json")[0] == 2

    def test_bad_tolerance(self, write):
        assert run("check", write("t.json", diag_doc(1)), "--tol-eq", -1)[0] == 2


class TestRoundTrip:
    def test_values_identical(self, tmp_path):
        rng = np.random.default_rng(0)
        a = ComplexMatrix(rng.normal(size=(3, 4)) * 10.0 ** rng.integers(-300, 300, size=(3, 4)) + 1j / 3)
        write_doc(tmp_path / "a.json", matrix_to_doc(a))
        assert np.array_equal(read_matrix(tmp_path / "a.json").array, a.array)

    def test_tuple_fields(self, tmp_path):
        t = TupleSpec.of(np.eye(2), np.diag([1, 2])).with_marks(["dagger", "adjoint"]).with_perm([1, 0])
        write_doc(tmp_path / "t.json", tuple_to_doc(t, PowerSpec((3, 0))))
        back, powers = read_tuple(tmp_path / "t.json")
        assert back == t and powers == PowerSpec((3, 0))
        doc = loads(dumps(tuple_to_doc(t)))
        assert doc["perm"] == [2, 1] and doc["marks"] == ["dagger", "adjoint"]

    def test_loads_rejects_nan(self):
        with pytest.raises(ParseError):
            loads("[NaN]")


class TestReport:
    def test_json_report(self, tmp_path):
        run("gen", "witness", "-o", tmp_path / "w.json")
        code, _ = run("classify", tmp_path / "w.json", "--report", tmp_path / "r.json")
        doc = json.loads((tmp_path / "r.json").read_text())
        assert code == 1
        assert doc["command"] == "classify"
        assert doc["result"]["verdict"] == "NotDoublyCommuting"
        assert doc["result"]["discrepancy"] is False

    def test_tolerance_flags_change_verdict(self, write):
        # a 1e-6 perturbation of a commuting pair is only accepted at loose tolerance
        b = np.array([[1, 1e-6], [0, 2]])
        path = write("t.json", {"entries": [diag_doc(1, 2), matrix_to_doc(ComplexMatrix(b))]})
        assert run("check", path)[0] == 1
        assert run("check", path, "--tol-eq", 1e-3)[0] == 0
