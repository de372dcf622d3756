import json
import os
import stat

import pytest

from g2census import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_census_t3(capsys, tmp_path):
    path = tmp_path / "t3.json"
    code, _, err = run(capsys, "census", "--builtin", "t3-k3", "--target", "Q8", "--report", str(path))
    assert code == cli.EXIT_OK
    body = json.loads(path.read_text())
    assert len(body["classes"]) == 2 and sum(body["totals"].values()) == 2
    assert body["runtime"]["jobs"] == 1 and not body["runtime"]["cache_hit"]
    assert stat.S_IMODE(os.stat(path).st_mode) == 0o644
    assert "2 classes" in err


def test_report_fields(capsys):
    code, out, _ = run(capsys, "census", "--builtin", "t3-k3", "--target", "Q8", "--no-timing")
    body = json.loads(out)
    assert "runtime" not in body
    c = body["classes"][0]
    for key in ("representative", "trace_signature_sha256", "image_order", "irreducible", "h0", "h1",
                "walpuski_fixed_dim", "bundle_signature", "multiplicity"):
        assert key in c
    assert body["presentation"]["digest"] and body["target"]["name"] == "Q8"
    assert any("catalog" in n for n in body["notes"])


def test_identities_deterministic(capsys):
    a = run(capsys, "identities", "--seed", "7", "--trials", "5")
    b = run(capsys, "identities", "--seed", "7", "--trials", "5")
    assert a[0] == 0 and a[1] == b[1]


def test_identities_bad_trials(capsys):
    assert run(capsys, "identities", "--trials", "0")[0] == cli.EXIT_INPUT


def test_chern(capsys):
    code, out, _ = run(capsys, "chern", "--formal")
    body = json.loads(out)
    assert code == 0 and body["coefficient c2*p1"] == "-1/2" and body["coefficient c3*c1"] == "-3"
    assert run(capsys, "chern", "--rank", "2")[0] == 0
    code, out, _ = run(capsys, "chern", "--rank", "1")
    assert code == 0 and json.loads(out)["checks"]["adjoint of a line bundle vanishes"]
    assert run(capsys, "chern", "--rank", "9")[0] == cli.EXIT_INPUT


def test_abelianize(capsys):
    code, out, _ = run(capsys, "abelianize", "--builtin", "joyce-ex3")
    body = json.loads(out)
    assert code == 0 and body["invariant_factors"] == [2] * 8 and body["hom_count_mod2"] == 256


def test_presentation_file(capsys, tmp_path):
    f = tmp_path / "z2.txt"
    f.write_text("generators: x y\nrelator: x y X Y\n")
    code, out, _ = run(capsys, "abelianize", "--presentation", str(f))
    assert code == 0 and json.loads(out)["free_rank"] == 2


def test_input_errors(capsys, tmp_path):
    assert run(capsys, "abelianize")[0] == cli.EXIT_INPUT
    bad = tmp_path / "bad.txt"
    bad.write_text("generators: x\nrelator: y\n")
    code, _, err = run(capsys, "abelianize", "--presentation", str(bad))
    assert code == cli.EXIT_INPUT and "line 2" in err
    assert run(capsys, "census", "--builtin", "t3-k3", "--target", "V4")[0] == cli.EXIT_INPUT
    assert run(capsys, "census", "--builtin", "nope")[0] == cli.EXIT_INPUT
    with pytest.raises(SystemExit):
        cli.main(["census", "--target", "SO3"])


def test_strict_degenerate(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, _, err = run(capsys, "census", "--builtin", "joyce-ex3", "--target", "V4", "--strict",
                       "--report", str(path))
    assert code == cli.EXIT_DEGENERATE and not path.exists()
    assert "H^1" in err


def test_cache_roundtrip(capsys, tmp_path):
    args = ["census", "--builtin", "t3-k3", "--target", "Q8", "--cache-dir", str(tmp_path)]
    code, first, _ = run(capsys, *args)
    code2, second, _ = run(capsys, *args)
    a, b = json.loads(first), json.loads(second)
    assert not a["runtime"]["cache_hit"] and b["runtime"]["cache_hit"]
    a.pop("runtime"), b.pop("runtime")
    assert a == b
    assert len(list(tmp_path.glob("*.json"))) == 1


def test_cache_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("G2CENSUS_CACHE", str(tmp_path))
    run(capsys, "census", "--builtin", "t3-k3", "--target", "Q8")
    assert len(list(tmp_path.glob("*.json"))) == 1


def test_jobs_do_not_change_report(capsys):
    base = ["census", "--builtin", "t3-k3", "--target", "Q8", "--no-timing"]
    one = run(capsys, *base, "--jobs", "1")[1]
    two = run(capsys, *base, "--jobs", "2")[1]
    assert one == two
