import json
import subprocess
import sys

import numpy as np
import pytest

from symhorn import fileio
from symhorn.cli import main
from symhorn.sampling import make_generator, random_pd


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def fields(out):
    parsed = {}
    for line in out.splitlines():
        if ": " in line:
            key, value = line.split(": ", 1)
            parsed[key] = value
    return parsed


@pytest.fixture
def matrix_file(tmp_path):
    def write(A, name="a.txt", fmt="text"):
        path = tmp_path / name
        fileio.write_matrix(path, A, fmt)
        return str(path)

    return write


def test_file_round_trip(tmp_path):
    A = make_generator(0).standard_normal((4, 4))
    for fmt in ("text", "structured"):
        path = tmp_path / f"m.{fmt}"
        fileio.write_matrix(path, A, fmt)
        np.testing.assert_array_equal(fileio.read_matrix(path), A)
        fileio.write_vector(path, A[0], fmt)
        np.testing.assert_array_equal(fileio.read_vector(path), A[0])


@pytest.mark.parametrize(
    "text",
    ["", "matrix 2 2\n1 2 3\n", "matrix two 2\n", "vector 2\n1 2\n", "matrix 2 2\n1 x 3 4\n", "{bad json"],
)
def test_malformed_matrix_text(text):
    with pytest.raises(fileio.FileFormatError):
        fileio.parse_matrix(text)


def test_structured_declared_n_checked():
    with pytest.raises(fileio.FileFormatError):
        fileio.parse_matrix(json.dumps({"n": 2, "matrix": [[1, 0], [0, 1]]}))


def test_eigs(capsys, matrix_file):
    code, out, _ = run(capsys, "eigs", "--input", matrix_file(np.eye(4)))
    assert code == 0 and out.strip() == "1 1"
    code, out, _ = run(capsys, "eigs", "--input", matrix_file([[2.0, 1.0], [1.0, 2.0]]))
    assert code == 0 and float(out) == pytest.approx(np.sqrt(3.0), rel=1e-15)


def test_eigs_errors(capsys, tmp_path, matrix_file):
    bad = tmp_path / "bad.txt"
    bad.write_text("matrix 2 2\n1 2\n")
    assert run(capsys, "eigs", "--input", str(bad))[0] == 2
    assert run(capsys, "eigs", "--input", matrix_file(np.diag([1.0, -1.0])))[0] == 2
    assert run(capsys, "eigs", "--input", str(tmp_path / "missing.txt"))[0] == 2
    assert run(capsys, "eigs")[0] == 2
    assert run(capsys, "nonsense")[0] == 2


def test_williamson(capsys, matrix_file, tmp_path):
    out_path = str(tmp_path / "m.txt")
    code, out, _ = run(capsys, "williamson", "--input", matrix_file(np.diag([2.0, 3.0, 2.0, 3.0])), "--out", out_path)
    f = fields(out)
    assert code == 0
    np.testing.assert_allclose(fileio.parse_values(f["d"]), [2.0, 3.0], rtol=1e-14)
    assert float(f["form_residual"]) < 1e-14
    np.testing.assert_allclose(fileio.read_vector(out_path + ".d"), [2.0, 3.0], rtol=1e-14)
    M = fileio.read_matrix(out_path)
    np.testing.assert_allclose(M.T @ np.diag([2.0, 3.0, 2.0, 3.0]) @ M, np.diag([2.0, 3.0, 2.0, 3.0]), atol=1e-13)

    A = random_pd(8, make_generator(7))
    code, out, _ = run(capsys, "williamson", "--input", matrix_file(A, "r.txt"))
    f = fields(out)
    assert code == 0
    assert float(f["form_residual"]) <= 1e-8 * np.linalg.norm(A)

    assert run(capsys, "williamson", "--input", matrix_file(np.diag([1.0, -2.0]), "n.txt"))[0] == 2


def test_majorize(capsys, tmp_path):
    assert run(capsys, "majorize", "--x", "2,4", "--y", "1,3", "--relation", "super")[0] == 0
    code, out, _ = run(capsys, "majorize", "--x", "5,5", "--y", "6,5", "--relation", "super")
    assert code == 1 and fields(out)["first_violation_index"] == "2"
    assert run(capsys, "majorize", "--x", "2,2", "--y", "3,1", "--relation", "exact")[0] == 0
    assert run(capsys, "majorize", "--x", "5,5", "--y", "6,3", "--relation", "sub")[0] == 1
    assert run(capsys, "majorize", "--x", "1,2", "--y", "1,2,3")[0] == 2
    vec = tmp_path / "x.txt"
    fileio.write_vector(vec, [2.0, 4.0])
    assert run(capsys, "majorize", "--x", str(vec), "--y", "1,3")[0] == 0


def test_construct_closed_forms(capsys, tmp_path):
    out_path = tmp_path / "a.txt"
    code, out, _ = run(capsys, "construct", "--x", "2", "--y", "1", "--mean", "geometric", "--out", str(out_path))
    assert code == 0
    np.testing.assert_allclose(fileio.read_matrix(out_path), [[4, np.sqrt(3)], [np.sqrt(3), 1]], atol=1e-12)
    assert fields(out)["z"] == "1"

    code, out, _ = run(capsys, "construct", "--x", "2", "--y", "1", "--mean", "arithmetic")
    assert code == 0
    A = fileio.parse_matrix(out[out.index("matrix"):])
    b = 2 + np.sqrt(3)
    np.testing.assert_allclose(A, np.diag([b, 1 / b]), rtol=1e-12, atol=1e-15)

    code, out, _ = run(capsys, "construct", "--x", "0.5", "--y", "1")
    assert code == 1 and fields(out)["first_violation_index"] == "1"
    assert run(capsys, "construct", "--x", "-1", "--y", "1")[0] == 2


def test_sample(capsys, tmp_path):
    code, out, _ = run(capsys, "sample", "--values", "1", "--spread", "0")
    assert code == 0
    A = fileio.parse_matrix(out[out.index("matrix"):])
    np.testing.assert_allclose(A, np.eye(2), atol=1e-15)

    p1, p2 = tmp_path / "s1.txt", tmp_path / "s2.txt"
    for p in (p1, p2):
        code, out, _ = run(capsys, "sample", "--values", "2,3", "--seed", "1", "--out", str(p))
        assert code == 0
    assert p1.read_text() == p2.read_text()
    np.testing.assert_allclose(fileio.parse_values(fields(out)["spectrum"]), [2, 3], rtol=1e-7)


def test_verify_pipeline(capsys, tmp_path):
    a_path = tmp_path / "a.txt"
    assert run(capsys, "construct", "--x", "3,1.5,2", "--y", "1,2,0.5", "--out", str(a_path))[0] == 0
    code, out, _ = run(capsys, "verify", "--input", str(a_path), "--x", "3,1.5,2", "--y", "1,2,0.5")
    f = fields(out)
    assert code == 0
    for kind in ("geometric", "arithmetic", "symplectic_diag"):
        assert f[f"forward_{kind}"] == "true"
    assert run(capsys, "eigs", "--input", str(a_path))[0] == 0

    s_path = tmp_path / "a.json"
    assert run(capsys, "construct", "--x", "3,1.5", "--y", "1,2", "--mean", "arithmetic",
               "--format", "structured", "--out", str(s_path))[0] == 0
    assert json.loads(s_path.read_text())["n"] == 2
    assert run(capsys, "verify", "--input", str(s_path), "--x", "3,1.5", "--y", "1,2", "--mean", "arithmetic")[0] == 0

    i_path = tmp_path / "i.txt"
    fileio.write_matrix(i_path, np.eye(2))
    assert run(capsys, "verify", "--input", str(i_path), "--x", "2", "--y", "1")[0] == 1
    assert run(capsys, "verify", "--input", str(i_path), "--x", "2,1", "--y", "1,1")[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "symhorn", "majorize", "--x", "2,4", "--y", "1,3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "holds: true" in proc.stdout
