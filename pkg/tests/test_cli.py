import json
import re
import subprocess
import sys

import jsonschema
import pytest

from quadembed.cli import plot, report
from quadembed.cli.main import main


def _validate(path):
    data = json.loads(path.read_text())
    jsonschema.validate(data, report.load_schema())
    return data


@pytest.mark.parametrize("field", ["Q", "Fp:2", "Fp:3"])
def test_verify_paper(tmp_path, field, capsys):
    out = tmp_path / "r.json"
    assert main(["verify-paper", "--field", field, "--json", str(out)]) == 0
    data = _validate(out)
    assert data["field"] == field
    assert data["summary"]["fail"] == 0
    assert {r["status"] for r in data["records"]} <= {"pass", "skipped"}


def test_verify_paper_filter(capsys, tmp_path):
    out = tmp_path / "r.json"
    assert main(["verify-paper", "--filter", "shastri*", "--json", str(out)]) == 0
    names = [r["name"] for r in _validate(out)["records"]]
    assert names and all(n.startswith("shastri") for n in names)


@pytest.mark.parametrize(
    "argv,code",
    [
        (["equiv", "nu", "--p", "t^3", "--q", "t^3"], 0),
        (["equiv", "nu", "--p", "t^2", "--q", "t^3"], 1),
        (["equiv", "pr", "--r", "1", "--s", "1+t"], 1),
        (["equiv", "pr", "--r", "t", "--s", "t"], 0),
        (["equiv", "jac", "--f", "2*s", "--g", "t"], 1),
        (["equiv", "jac", "--f", "2*s", "--g", "1/2*t"], 0),
        (["equiv", "jac", "--f", "s^2", "--g", "t"], 1),
        (["equiv", "nu", "--p", "t +* 1", "--q", "t"], 5),
        (["equiv", "nu", "--field", "Fp:4", "--p", "t", "--q", "t"], 5),
        (["construct", "rho-lambda", "--lambda", "0"], 5),
        (["construct", "rho-lambda", "--lambda", "3"], 0),
        (["construct", "shastri-sl2"], 0),
        (["construct", "charp-line", "--field", "Fp:2", "--p", "2", "--q", "3", "--a", "1", "--b", "1"], 0),
        (["lift", "--f", "t", "--g", "s"], 0),
        (["lift", "--f", "s", "--g", "t + s^2", "--via", "rho1"], 0),
        (["lift", "--f", "2*s", "--g", "t"], 1),
    ],
)
def test_exit_codes(argv, code, capsys):
    assert main(argv) == code


def test_parse_error_has_caret(capsys):
    main(["equiv", "nu", "--p", "t +* 1", "--q", "t"])
    err = capsys.readouterr().err
    assert "^" in err


def test_equiv_json(tmp_path, capsys):
    out = tmp_path / "e.json"
    assert main(["equiv", "jac", "--f", "2*s", "--g", "1/2*t", "--json", str(out)]) == 0
    data = _validate(out)
    assert data["result"]["outcome"] == "Extends"


def test_plot_byte_stable(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    a.mkdir()
    b.mkdir()
    assert main(["plot-trefoil", "--out", str(a)]) == 0
    assert main(["plot-trefoil", "--out", str(b)]) == 0
    names = sorted(p.name for p in a.iterdir())
    assert len(names) == 3
    for n in names:
        assert (a / n).read_bytes() == (b / n).read_bytes()


def test_plot_marker_and_endpoint(tmp_path, capsys):
    assert main(["plot-trefoil", "--out", str(tmp_path), "--samples", "2"]) == 0
    first = sorted(tmp_path.iterdir())[0].read_text()
    m = re.search(r'data-t="0" data-x="([^"]+)" data-y="([^"]+)"', first)
    assert m and float(m.group(1)) == 0.0 and float(m.group(2)) == -1.0
    x, _ = plot.PROJECTIONS[0].point(2.1)
    assert x == pytest.approx(2.1**3 - 3 * 2.1)


def test_plot_bad_samples(tmp_path, capsys):
    assert main(["plot-trefoil", "--out", str(tmp_path), "--samples", "1"]) == 5


def test_plot_io_error(capsys):
    assert main(["plot-trefoil", "--out", "/proc/quadembed-no-such-dir"]) == 6


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "quadembed.cli", "equiv", "nu", "--p", "t", "--q", "t"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
