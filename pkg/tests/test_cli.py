import io
import json
import subprocess
import sys

import pytest

from negmultinom.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_moment_text():
    code, out, _ = call("moment", "--kind", "central", "--r", "2", "--x", "0.25,0.25", "--p", "2,0")
    assert code == 0 and float(out) == pytest.approx(1.5)


def test_moment_exact():
    code, out, _ = call("moment", "--kind", "noncentral", "--r", "2", "--x", "1/4,1/4", "--p", "2,0", "--exact")
    assert (code, out.strip()) == (0, "5/2")
    # (r+1)^(2) y1 y2 = 12 * 1/4; exact values always print as num/den
    code, out, _ = call("moment", "--kind", "factorial", "--r", "3", "--x", "1/4,1/4", "--p", "1,1", "--exact")
    assert (code, out.strip()) == (0, "3/1")


def test_pmf_json_round_trip():
    code, out, _ = call("pmf", "--r", "2", "--x", "1/4,1/4", "--k", "0,0", "--exact", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["schema_version"] == 1 and data["value"] == "1/4"
    code, out, _ = call("pmf", "--r", "2", "--x", "0.25,0.25", "--k", "1,0", "--log", "--format", "json")
    assert json.loads(out)["value"] == pytest.approx(-1.3862943611198906 - 1.3862943611198906 + 0.6931471805599453)


def test_derive():
    code, out, _ = call("derive", "--kind", "central", "--p", "1,1")
    assert (code, out.strip()) == (0, "r * y1*y2")
    code, out, _ = call("derive", "--kind", "noncentral", "--p", "2", "--format", "json")
    data = json.loads(out)
    assert data["basis"] == "falling_factorial"
    assert data["terms"] == [{"k": 1, "y": [1], "coeff": 1}, {"k": 2, "y": [2], "coeff": 1}]


def test_derive_golden():
    code, out, _ = call("derive", "--kind", "noncentral", "--p", "8", "--golden", "--format", "json")
    g = json.loads(out)["golden"]
    assert code == 0 and g["explained"] and len(g["mismatches"]) == 1
    assert all(t["annotated"] for t in g["mismatches"][0])


def test_sample_lines_and_determinism():
    argv = ("sample", "--r", "2", "--x", "0.25,0.25", "--n", "50", "--seed", "7")
    c1, o1, _ = call(*argv)
    c2, o2, _ = call(*argv)
    assert c1 == c2 == 0 and o1 == o2
    lines = o1.splitlines()
    assert len(lines) == 50 and all(len(l.split(",")) == 2 for l in lines)


def test_verify_json():
    code, out, _ = call("verify", "--r", "2", "--x", "0.25,0.25", "--p", "1,1", "--mc-n", "20000", "--seed", "1")
    data = json.loads(out)
    assert code == 0
    assert set(data) == {"schema_version", "kind", "p", "formula", "truncated", "truncated_bound",
                         "mc", "mc_se", "pass"}
    assert data["pass"]


@pytest.mark.parametrize(
    "argv,code",
    [
        (("moment", "--kind", "central", "--r", "0", "--x", "0.2", "--p", "2"), 3),
        (("moment", "--kind", "central", "--r", "1", "--x", "0.6,0.5", "--p", "2,0"), 3),
        (("moment", "--kind", "central", "--r", "1", "--x", "-0.1", "--p", "2"), 3),
        (("moment", "--kind", "central", "--r", "1", "--x", "0.1,0.1", "--p", "2"), 3),
        (("pmf", "--r", "5/2", "--x", "1/4", "--k", "1", "--exact"), 4),
        (("moment", "--kind", "bogus", "--r", "1", "--x", "0.1", "--p", "2"), 2),
        (("derive", "--kind", "central", "--p", "5", "--golden"), 3),
        (("verify", "--r", "1", "--x", "0.999", "--p", "6", "--mc-n", "10"), 5),
    ],
)
def test_exit_codes(argv, code):
    got, out, err = call(*argv)
    assert got == code
    if code != 2:
        assert err.startswith("negmultinom:")


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "negmultinom", "derive", "--kind", "central", "--p", "2"],
        capture_output=True, text=True, check=True,
    )
    assert proc.stdout.strip() == "r * y1 + r * y1^2"
