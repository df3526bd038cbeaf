import csv
import json

import pytest

from ultracoh import cli, report as rpt, suites


def test_commutators_example(tmp_path):
    code = cli.main(["run", "commutators", "--n", "2", "--p", "3", "--N", "6", "--j", "1",
                     "--samples", "200", "--seed", "7", "--out", str(tmp_path), "--no-figures"])
    assert code == 0
    rep = rpt.read_report(tmp_path / "commutators.json")
    st = rep["stable"]
    assert st["seed"] == 7 and st["params"]["samples"] == 200
    assert all(a["passed"] for a in st["assertions"])


def test_kostant_example(tmp_path, capsys):
    code = cli.main(["run", "lie-kostant", "--algebra", "sl3", "--weight", "0,0",
                     "--out", str(tmp_path), "--no-figures"])
    assert code == 0
    assert "dims: [1, 2, 2, 1]" in capsys.readouterr().out
    rep = rpt.read_report(tmp_path / "lie-kostant.json")
    assert rep["stable"]["payload"]["dims"] == [1, 2, 2, 1]


def test_malformed_spec_exit_2(tmp_path):
    spec = tmp_path / "bad.json"
    spec.write_text(json.dumps({"p": "three"}))
    assert cli.main(["run", "banach", "--spec", str(spec), "--out", str(tmp_path)]) == 2
    spec.write_text("{not json")
    assert cli.main(["run", "banach", "--spec", str(spec), "--out", str(tmp_path)]) == 2


def test_unknown_suite_and_keys(tmp_path):
    with pytest.raises(SystemExit) as exc:
        cli.main(["run", "no-such-suite"])
    assert exc.value.code == 2
    spec = tmp_path / "s.json"
    spec.write_text(json.dumps({"suite": "koszul"}))
    assert cli.main(["run", "banach", "--spec", str(spec), "--out", str(tmp_path)]) == 2
    spec.write_text(json.dumps({"samples": 3}))
    assert cli.main(["run", "banach", "--spec", str(spec), "--out", str(tmp_path)]) == 2


def test_precision_exhaustion_exit_3(tmp_path):
    spec = tmp_path / "prec.json"
    low = {"lead": 0, "coeffs": [], "prec": 1}
    spec.write_text(json.dumps({
        "suite": "procyclic", "p": 3, "N": 8,
        "action": {"generators": [[[{"lead": 0, "coeffs": [1, 0, 0, 1]}, low], [0, 1]]]}}))
    assert cli.main(["run", "procyclic", "--spec", str(spec), "--out", str(tmp_path)]) == 3


def test_assertion_failure_exit_1(tmp_path, monkeypatch):
    def failing(prm, res):
        """Always fails."""
        res.checks.check("impossible", False, {"why": "test"})
    monkeypatch.setitem(suites.SUITES, "always-fails", (failing, {"seed": 0}))
    assert cli.main(["run", "always-fails", "--out", str(tmp_path)]) == 1
    rep = rpt.read_report(tmp_path / "always-fails.json")
    a = rep["stable"]["assertions"][0]
    assert not a["passed"] and a["failures"] == [{"why": "test"}]


def test_flags_override_spec(tmp_path):
    spec = tmp_path / "s.json"
    spec.write_text(json.dumps({"suite": "banach", "maps": 50, "seed": 4}))
    assert cli.main(["run", "banach", "--spec", str(spec), "--maps", "5", "--out", str(tmp_path),
                     "--no-figures"]) == 0
    st = rpt.read_report(tmp_path / "banach.json")["stable"]
    assert st["params"]["maps"] == 5 and st["seed"] == 4


def test_determinism_json(tmp_path):
    texts = []
    for k in range(2):
        out = tmp_path / str(k)
        assert cli.main(["run", "koszul", "--seed", "3", "--out", str(out)]) == 0
        rep = json.loads((out / "koszul.json").read_text())
        texts.append(rpt.stable_text(rep))
    assert texts[0] == texts[1]


def test_determinism_csv_and_rows_per_degree(tmp_path):
    files = []
    for k in range(2):
        out = tmp_path / str(k)
        assert cli.main(["run", "lie-kostant", "--algebra", "sl3", "--weight", "1,1",
                         "--out", str(out), "--format", "csv", "--no-figures"]) == 0
        files.append({p.name: p.read_bytes() for p in out.glob("*.csv")
                      if not p.name.endswith("-volatile.csv")})
    assert files[0] == files[1]
    rows = list(csv.reader((tmp_path / "0" / "lie-kostant-dims.csv").open(encoding="utf-8")))
    assert rows[0] == ["algebra", "weight", "degree", "dim", "weyl_count"]
    assert [r[2] for r in rows[1:]] == ["0", "1", "2", "3"]


def test_json_round_trip(tmp_path):
    assert cli.main(["run", "procyclic", "--actions", "5", "--out", str(tmp_path),
                     "--no-figures"]) == 0
    path = tmp_path / "procyclic.json"
    rep = rpt.read_report(path)
    assert rpt.dumps(rep) == path.read_text(encoding="utf-8")


def test_env_output_dir(tmp_path, monkeypatch):
    monkeypatch.setenv(cli.OUT_ENV, str(tmp_path / "envout"))
    assert cli.main(["run", "lie-hs", "--algebra", "heisenberg", "--subalgebra", "center",
                     "--no-figures", "--quiet"]) == 0
    assert (tmp_path / "envout" / "lie-hs.json").exists()


def test_figures_written(tmp_path):
    assert cli.main(["run", "commutators", "--samples", "20", "--out", str(tmp_path)]) == 0
    rep = rpt.read_report(tmp_path / "commutators.json")
    figs = rep["volatile"]["figures"]
    assert figs and all(f.endswith(".png") for f in figs)
    assert (tmp_path / "commutators-commutator_levels.png").stat().st_size > 0


def test_custom_lie_structure_constants(tmp_path):
    # 2-dim nonabelian algebra [x, y] = y with the ideal spanned by y
    c = [[[0, 0], [0, 1]], [[0, -1], [0, 0]]]
    spec = tmp_path / "lie.json"
    spec.write_text(json.dumps({"structure_constants": c, "h_basis": [[0, 1]]}))
    assert cli.main(["run", "lie-hs", "--spec", str(spec), "--out", str(tmp_path),
                     "--no-figures"]) == 0
    inst = rpt.read_report(tmp_path / "lie-hs.json")["stable"]["payload"]["instances"][0]
    assert inst["abutment"] == [1, 1, 0]


def test_homotopy_custom_spec(tmp_path):
    spec = tmp_path / "h.json"
    spec.write_text(json.dumps({"p": 2, "level": {"l": 0, "m": 3},
                                "action": {"generators": [[[{"lead": 0, "coeffs": [1, 1]},
                                                            {"lead": 1, "coeffs": [1]}],
                                                           [0, {"lead": 0, "coeffs": [1, 1]}]]]},
                                "homotopy": {"i": 1}, "degrees": [1]}))
    assert cli.main(["run", "homotopy", "--spec", str(spec), "--out", str(tmp_path),
                     "--no-figures"]) == 0
    st = rpt.read_report(tmp_path / "homotopy.json")["stable"]
    assert st["payload"]["reading"] == "term1-args=tail,term2-sign=plain"


def test_suites_listing(capsys):
    assert cli.main(["suites"]) == 0
    out = capsys.readouterr().out
    for name in ("banach", "commutators", "procyclic", "koszul", "homotopy", "main-theorem",
                 "lie-kostant", "lie-hs", "lie-conjecture", "cochains"):
        assert name in out
