import json

import pytest

from bergman_hankel.checks import REGISTRY, list_checks, run_suite
from bergman_hankel.cli import main
from bergman_hankel.report import SuiteConfig

FAST = ["--samples", "4", "--max-n", "2000"]


def test_list_sorted_unique_and_union():
    all_ids = [c.id for c in list_checks("all")]
    assert len(all_ids) == len(set(all_ids)) == len(REGISTRY)
    per_suite = sum(len(list_checks(s)) for s in ("kernel", "disc", "polydisc", "hankel", "carleson"))
    assert per_suite == len(all_ids)
    for s in ("kernel", "carleson"):
        ids = [c.id for c in list_checks(s)]
        assert ids == sorted(ids)
    assert any(c.anchor.startswith("convolution_residual") for c in list_checks("kernel"))
    assert any(c.anchor.startswith("dl2_witness") for c in list_checks("carleson"))
    with pytest.raises(ValueError):
        list_checks("nope")


def test_every_anchor_names_an_operation():
    import bergman_hankel.arithmetic as ar
    import bergman_hankel.carleson as ca
    import bergman_hankel.disc as di
    import bergman_hankel.hankel as ha
    import bergman_hankel.polydisc as po
    import bergman_hankel.special as sp

    names = set()
    for mod in (ar, ca, di, ha, po, sp):
        names |= set(vars(mod))
    for c in REGISTRY.values():
        assert c.anchor.split(" / ")[0] in names, c.id


def test_config_validation():
    with pytest.raises(ValueError):
        SuiteConfig(tolerance=0.1)
    with pytest.raises(ValueError):
        SuiteConfig(suite="bogus")
    with pytest.raises(ValueError):
        SuiteConfig(max_n=0)
    with pytest.raises(ValueError):
        SuiteConfig(seed=-1)


def test_hankel_golden_record():
    rep = run_suite(SuiteConfig(suite="hankel", samples=4, max_n=2000))
    rec = {r.id: r for r in rep.checks}["weakfac"]
    assert rec.verdict == "pass"
    assert list(rec.values["matrix"]) == [pytest.approx([0, 1]), pytest.approx([1, 0])]
    assert list(rec.values["singular_values"]) == pytest.approx([1, 1])


def test_exploratory_always_inconclusive():
    rep = run_suite(SuiteConfig(suite="disc", samples=4))
    for r in rep.checks:
        assert (r.verdict == "inconclusive") == r.exploratory
    assert not rep.failed


def test_json_deterministic_and_schema(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert main(["verify", "kernel", *FAST, "--format", "json", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    assert set(doc) == {"schema", "config", "checks", "summary"}
    assert isinstance(doc["schema"], int)
    assert doc["summary"]["fail"] == 0
    assert "wall_time" not in doc["checks"][0]


def test_csv_and_env_outdir(tmp_path, monkeypatch):
    monkeypatch.setenv("BH_VERIFY_OUTDIR", str(tmp_path))
    assert main(["verify", "carleson", *FAST, "--format", "csv", "--timing"]) == 0
    rows = (tmp_path / "carleson.csv").read_text().splitlines()
    assert rows[0].startswith("id,suite,anchor,verdict") and rows[0].endswith("wall_time")
    assert len(rows) == 1 + len(list_checks("carleson"))


def test_text_to_stdout(capsys):
    assert main(["verify", "kernel", *FAST]) == 0
    out = capsys.readouterr().out
    assert "checks:" in out.splitlines()[-1]


def test_nonzero_exit_on_failure(monkeypatch, capsys):
    from bergman_hankel import checks

    entry = REGISTRY["zeta_values"]
    broken = checks.CheckSpec(entry.id, entry.suite, entry.anchor, entry.description,
                              lambda c, r: checks.Outcome({}, 1.0, 0.0, False))
    monkeypatch.setitem(REGISTRY, "zeta_values", broken)
    assert main(["verify", "kernel", *FAST]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_error_record_on_exception(monkeypatch):
    from bergman_hankel import checks

    def boom(c, r):
        raise MemoryError("out of memory")

    entry = REGISTRY["zeta_values"]
    monkeypatch.setitem(REGISTRY, "zeta_values", checks.CheckSpec(entry.id, entry.suite, entry.anchor, entry.description, boom))
    rep = run_suite(SuiteConfig(suite="kernel", samples=4, max_n=2000))
    rec = {r.id: r for r in rep.checks}["zeta_values"]
    assert rec.verdict == "fail" and "MemoryError" in rec.error
    assert len(rep.checks) == len(list_checks("kernel"))


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "kernel", "--tol", "0.5"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        main(["verify", "nope"])


def test_list_command(capsys):
    assert main(["list", "carleson"]) == 0
    assert "dl2" in capsys.readouterr().out
