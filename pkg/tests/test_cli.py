import csv
import json

import pytest

from hexablock.cli import EXIT_GUARD, EXIT_IO, EXIT_OK, EXIT_PARSE, EXIT_SUITE, EXIT_VERIFY, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, [json.loads(line) for line in out.splitlines()], err


def test_member_examples(capsys):
    code, out, _ = run(capsys, "member", "--json", '{"x1": 0, "x2": 0, "x3": 0.5}')
    assert code == EXIT_OK and out[0]["member"] is True
    assert all(m["member"] for m in out[0]["methods"].values())
    code, out, _ = run(capsys, "member", "--json", '{"x1": 0, "x2": 0.5, "x3": 0.5}')
    assert out[0]["member"] is False
    code, out, _ = run(capsys, "member", "--domain", "hexa", "--json", '{"a": [0, 0.99], "x1": 0, "x2": 0, "x3": 0}')
    assert out[0]["member"] is True


def test_classify_and_u(capsys):
    _, out, _ = run(capsys, "classify", "--json", '{"x1": 0, "x2": 0.5, "x3": 0.5}')
    assert out[0]["class"] == "boundary"
    _, out, _ = run(capsys, "u", "--json", '{"x1": 0.3, "x2": 0, "x3": 0}')
    assert out[0]["e_minus_u"] == pytest.approx(0.91)


def test_json_from_file_and_stdin(capsys, tmp_path, monkeypatch):
    f = tmp_path / "p.json"
    f.write_text('{"x1": 0, "x2": 0, "x3": 0.2}')
    code, out, _ = run(capsys, "member", "--json", f"@{f}")
    assert code == EXIT_OK and out[0]["member"]
    monkeypatch.setattr("sys.stdin", __import__("io").StringIO('{"x1": 2, "x2": 0, "x3": 0}'))
    code, out, _ = run(capsys, "member", "--json", "-")
    assert code == EXIT_OK and not out[0]["member"]


@pytest.mark.parametrize(
    "argv",
    [
        ("member", "--json", "{not json"),
        ("member", "--json", '{"x1": 0, "x2": 0}'),
        ("member", "--json", '{"x1": true, "x2": 0, "x3": 0}'),
        ("member",),
        ("mu", "--json", "[1, 2, 3]"),
        ("frobnicate",),
        ("slice", "--grid", "8", "--out", "x.csv"),
        ("slice", "--plane", "a,q", "--out", "x.csv"),
    ],
)
def test_parse_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_PARSE and "error" in err


def test_unknown_suite(capsys):
    assert run(capsys, "verify", "no-such-suite")[0] == EXIT_SUITE


def test_sampler_guard(capsys):
    assert run(capsys, "sample", "--domain", "hexa", "--radius", "50", "--n", "3")[0] == EXIT_GUARD


def test_io_errors(capsys, tmp_path):
    assert run(capsys, "member", "--json", f"@{tmp_path / 'missing.json'}")[0] == EXIT_IO
    assert run(capsys, "slice", "--out", str(tmp_path / "no" / "dir" / "s.csv"))[0] == EXIT_IO


def test_sample_deterministic(capsys):
    a = run(capsys, "sample", "--domain", "hexa", "--seed", "3", "--n", "5")
    b = run(capsys, "sample", "--domain", "hexa", "--seed", "3", "--n", "5")
    c = run(capsys, "sample", "--domain", "hexa", "--seed", "4", "--n", "5")
    assert a == b and a[1] != c[1] and len(a[1]) == 5


def test_mu_structures(capsys):
    code, out, _ = run(capsys, "mu", "--json", "[0.3, 0, 0, 0.4]")
    assert code == EXIT_OK
    vals = {r["structure"]: r["value"] for r in out}
    assert set(vals) == {"scalar", "diagonal", "upper", "full"}
    assert all(v == pytest.approx(0.4, abs=1e-8) for v in vals.values())


def test_auto_round_trip(capsys):
    t = '{"xi1": [0, 1], "xi2": 1, "z1": 0.3, "z2": [0, -0.2], "flip": true, "omega": 1}'
    p = '{"a": 0.1, "x1": 0.2, "x2": -0.1, "x3": 0.05}'
    _, inv, _ = run(capsys, "auto", "inverse", "--auto", t)
    _, comp, _ = run(capsys, "auto", "compose", "--auto", t, "--auto", json.dumps(inv[0]))
    _, img, _ = run(capsys, "auto", "apply", "--auto", json.dumps(comp[0]), "--json", p)
    src = json.loads(p)
    for k in ("a", "x1", "x2", "x3"):
        assert complex(*img[0]["image"][k]) == pytest.approx(src[k], abs=1e-10)
    assert complex(*img[0]["multiplier"]) == pytest.approx(1, abs=1e-10)


def test_slice_rows(capsys, tmp_path):
    out = tmp_path / "slice.csv"
    code, _, _ = run(capsys, "slice", "--plane", "a,x3", "--out", str(out))
    assert code == EXIT_OK
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 4096
    assert list(rows[0]) == ["s", "t", "member", "stratum", "e_minus_u"]
    for row in rows:
        s, t = float(row["s"]), float(row["t"])
        if row["member"] == "true":
            assert float(row["e_minus_u"]) > s * s
        if s == 0:
            assert (row["member"] == "true") == (abs(t) < 1)


def test_verify_exit_codes(capsys):
    code, out, err = run(capsys, "verify", "hessian")
    assert code == EXIT_OK and out[0]["cases_passed"] == out[0]["cases_run"]
    code, out, _ = run(capsys, "verify", "ball-slice", "--n", "200", "--seed", "1")
    assert code == EXIT_VERIFY and out[0]["cases_passed"] < out[0]["cases_run"]
