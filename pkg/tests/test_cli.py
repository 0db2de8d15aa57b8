import json

import pytest

from wittquot import suites
from wittquot.cli import main
from wittquot.derlie import Derivation
from wittquot.invariants import RegularityFlags
from wittquot.serialize import derivation_from_json, derivation_to_json
from wittquot.slices import delta_eps
from wittquot.special import sigma_embed
from wittquot.suites import SUITES, run_suite, run_trial, validate
from wittquot.truncpoly import ambient

B2, B3 = ambient(5, 2), ambient(5, 3)


def _strip(doc):
    doc = dict(doc)
    doc.pop("elapsed_ms")
    return json.dumps(doc, sort_keys=True)


@pytest.mark.parametrize("name", list(SUITES))
def test_every_suite_passes_small(name):
    rep = run_suite(name, trials=3, seed=11)
    assert rep.ok, [c.as_dict() for c in rep.failures]
    assert rep.checks


def test_dimensions_example():
    rep = run_suite("dimensions", 5, 3)
    assert [c.name for c in rep.checks] == ["dim W_n = 375", "dim S_n = 248", "dim S~_n = 251"]
    assert rep.ok


def test_phig_delta_example():
    rep = run_suite("phig-delta", 5, 3, seed=1, trials=25)
    phig = [c for c in rep.checks if c.anchor == suites.A_PHIG]
    assert len(phig) == 25 and all(c.status == "pass" for c in phig)


def test_charpoly_shape_example():
    rep = run_suite("charpoly-shape", 5, 2, seed=7, trials=100)
    shape = [c for c in rep.checks if c.anchor == suites.A_SHAPE]
    assert len(shape) == 100 and rep.ok


def test_reports_are_deterministic_and_schedule_independent():
    a = run_suite("invariance", trials=4, seed=5)
    b = run_suite("invariance", trials=4, seed=5)
    c = run_suite("invariance", trials=4, seed=5, jobs=2)
    assert _strip(a.as_dict()) == _strip(b.as_dict()) == _strip(c.as_dict())
    assert _strip(a.as_dict()) != _strip(run_suite("invariance", trials=4, seed=6).as_dict())


def test_report_schema():
    doc = run_suite("omega-fiber", trials=2).as_dict()
    assert doc["schema"] == 1 and doc["suite"] == "omega-fiber"
    assert set(doc["params"]) >= {"p", "n", "seed", "trials"}
    assert all(set(c) <= {"name", "anchor", "status", "witness"} for c in doc["checks"])
    assert isinstance(doc["elapsed_ms"], int)


def test_failure_carries_replayable_witness(monkeypatch):
    monkeypatch.setattr(suites, "restricted_cayley_hamilton", lambda x: Derivation.partial(x.amb, 1))
    rep = run_suite("charpoly-shape", trials=2, seed=3)
    assert not rep.ok
    w = rep.failures[0].witness
    assert w["suite"] == "charpoly-shape" and w["seed"] == 3 and w["trial"] == 0
    x = derivation_from_json(w["x"])
    _, params = validate("charpoly-shape", 5, 2, 3, 2)
    ctx = suites.TrialContext("charpoly-shape", params, 0)
    assert Derivation.random(B2, ctx.rng) == x


def test_crash_is_reported_as_failure(monkeypatch):
    def boom(x):
        raise RuntimeError("kaput")

    monkeypatch.setattr(suites, "restricted_cayley_hamilton", boom)
    checks, _ = run_trial("charpoly-shape", validate("charpoly-shape", 5, 2, 0, 1)[1], 0)
    assert checks[-1].status == "fail" and "kaput" in checks[-1].witness["detail"]


def test_anomalies_do_not_fail(monkeypatch, capsys):
    real = suites.regularity_classify

    def skewed(x, **kw):
        f = real(x, **kw)
        return RegularityFlags(f.u1, not f.u1, f.u3, True)

    monkeypatch.setattr(suites, "regularity_classify", skewed)
    assert main(["run", "--suite", "prop-pro-1", "--trials", "2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert any(c["status"] == "anomaly" for c in out["checks"])


def test_cli_exit_codes(monkeypatch, tmp_path, capsys):
    out = tmp_path / "rep.json"
    assert main(["run", "--suite", "dimensions", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["suite"] == "dimensions"
    assert main(["run", "--suite", "dimensions", "--p", "4"]) == 2
    assert main(["run", "--suite", "no-such-suite"]) == 2
    assert main(["run", "--suite", "omega-fiber", "--n", "2"]) == 2
    with pytest.raises(SystemExit) as e:
        main(["run"])
    assert e.value.code == 2
    monkeypatch.setattr(suites, "restricted_cayley_hamilton", lambda x: Derivation.partial(x.amb, 1))
    assert main(["run", "--suite", "charpoly-shape", "--trials", "1"]) == 1


def test_cli_multiple_suites_to_directory(tmp_path):
    assert main(["run", "--suite", "dimensions", "--suite", "phig-delta", "--trials", "3", "--out", str(tmp_path)]) == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == ["dimensions.json", "phig-delta.json"]


def _inspect(tmp_path, capsys, doc):
    f = tmp_path / "el.json"
    f.write_text(json.dumps(doc))
    code = main(["inspect", str(f)])
    return code, capsys.readouterr()


def test_inspect_d1(tmp_path, capsys):
    code, out = _inspect(tmp_path, capsys, derivation_to_json(Derivation.partial(B2, 1)))
    rep = json.loads(out.out)
    assert code == 0
    assert rep["nilpotent"] is True and rep["invariants"]["values"] == [0, 0]
    assert rep["regularity"] == {"U1": False, "U2": False, "U3": False}
    assert rep["constants_dim"] == 5


def test_inspect_sigma_delta(tmp_path, capsys):
    code, out = _inspect(tmp_path, capsys, derivation_to_json(sigma_embed(delta_eps((1, 2), B2), B3), "S"))
    rep = json.loads(out.out)
    assert code == 0 and rep["membership"] == "in S_n" and rep["quotient_s"]["values"] == [1, 2]


def test_inspect_zero(tmp_path, capsys):
    code, out = _inspect(tmp_path, capsys, derivation_to_json(Derivation.zero(B2)))
    rep = json.loads(out.out)
    assert code == 0 and rep["invariants"]["values"] == [0, 0]
    assert rep["constants_dim"] == 25 and rep["centralizer_dim"] == 50


def test_inspect_parse_error(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text('{"type": "derivation",\n "p": }')
    assert main(["inspect", str(f)]) == 2
    assert "line 2 column" in capsys.readouterr().err


def test_list(capsys):
    assert main(["list"]) == 0
    assert len(capsys.readouterr().out.strip().splitlines()) == 13
