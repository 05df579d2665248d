import dataclasses
import json

import jsonschema
import pytest

from grpd import groups
from grpd.cli import (EXIT_FALSE, EXIT_INPUT, EXIT_LIMIT, EXIT_OK,
                      REPORT_SCHEMA, run)
from grpd.complexity import point_groupoid
from grpd.core import (discrete_groupoid, disjoint_union, identity_functor,
                       pair_groupoid, restrict)
from grpd.corpus import random_datum
from grpd.formats import (serialize_datum, serialize_functor,
                          serialize_groupoid)
from grpd.homotopy import inclusion_functor


@pytest.fixture
def files(tmp_path):
    out = {}

    def write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        out[name] = str(path)
        return str(path)

    p3 = pair_groupoid("pair3", ["1", "2", "3"])
    write("pair3.grpd", serialize_groupoid(p3))
    write("point.grpd", serialize_groupoid(
        point_groupoid("pt_triv", groups.cyclic(1))))
    write("bz2.grpd", serialize_groupoid(
        point_groupoid("BZ2", groups.cyclic(2))))
    write("disc.grpd", serialize_groupoid(
        discrete_groupoid("disc", ["a", "b"])))
    write("mix.grpd", serialize_groupoid(disjoint_union(
        "mix", [pair_groupoid("p2", ["1", "2"]),
                point_groupoid("B", groups.cyclic(2))])))
    broken = dataclasses.replace(p3, name="broken",
                                 inv={**p3.inv, "1>2": "1>2"})
    write("broken.grpd", serialize_groupoid(broken))
    one = restrict(p3, ["1"], name="one")
    write("cospan.grpd",
          serialize_groupoid(one) + serialize_groupoid(p3)
          + serialize_functor(inclusion_functor(one, p3, name="f"))
          + serialize_functor(inclusion_functor(one, p3, name="g")))
    write("idfun.grpd", serialize_groupoid(p3)
          + serialize_functor(identity_functor(p3)))
    import random
    _, _, datum = random_datum(random.Random(3), "dd", base_size=3,
                               max_fibre=2)
    write("datum.grpd", serialize_datum(datum))
    from grpd.bibundle import unit_bibundle
    from grpd.formats import serialize_bibundle
    write("unit_p3.grpd", serialize_groupoid(p3)
          + serialize_bibundle(unit_bibundle(p3)))
    return out


def run_json(capsys, argv):
    code = run(["--json"] + argv)
    captured = capsys.readouterr()
    report = json.loads(captured.out.strip().splitlines()[-1])
    jsonschema.validate(report, REPORT_SCHEMA)
    return code, report


def test_cgeo_prints_the_value(files, capsys):
    assert run(["cgeo", files["pair3.grpd"]]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "1"


def test_cgeo_json_schema_and_fields(files, capsys):
    code, report = run_json(capsys, ["cgeo", files["mix.grpd"]])
    assert code == EXIT_OK
    assert report["result"]["cgeo"] == 2
    assert list(report["result"]) == ["groupoid", "cgeo", "cover",
                                      "certificates"]


def test_validate_broken_exits_2_with_witness(files, capsys):
    assert run(["validate", files["broken.grpd"]]) == EXIT_INPUT
    out = capsys.readouterr().out
    assert "inv" in out and "1>2" in out


def test_validate_ok(files, capsys):
    assert run(["validate", files["pair3.grpd"]]) == EXIT_OK


def test_morita_witness_and_exit_codes(files, capsys):
    assert run(["morita", files["pair3.grpd"], files["point.grpd"]]) \
        == EXIT_OK
    assert "bibundle" in capsys.readouterr().out
    assert run(["morita", files["bz2.grpd"], files["point.grpd"]]) \
        == EXIT_FALSE


def test_decision_commands(files):
    assert run(["transitive", files["pair3.grpd"]]) == EXIT_OK
    assert run(["transitive", files["disc.grpd"]]) == EXIT_FALSE
    assert run(["morita-homotopy", files["pair3.grpd"],
                files["point.grpd"]]) == EXIT_OK
    assert run(["morita-homotopy", files["bz2.grpd"],
                files["disc.grpd"]]) == EXIT_FALSE
    assert run(["weakpoint", files["mix.grpd"], "--subset", "1,2"]) == EXIT_OK
    assert run(["weakpoint", files["disc.grpd"], "--subset", "a,b"]) \
        == EXIT_FALSE
    assert run(["deform", files["disc.grpd"], "--from", "a", "--to", "b"]) \
        == EXIT_FALSE
    assert run(["homotopic", files["idfun.grpd"], files["idfun.grpd"]]) \
        == EXIT_OK


def test_orbits_skeleton_locus(files, capsys):
    assert run(["orbits", files["mix.grpd"]]) == EXIT_OK
    assert len(capsys.readouterr().out.strip().splitlines()) == 2
    assert run(["skeleton", files["mix.grpd"]]) == EXIT_OK
    assert "orbit" in capsys.readouterr().out
    assert run(["locus", files["bz2.grpd"]]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "POINT"


def test_relcgeo(files, capsys):
    assert run(["relcgeo", files["disc.grpd"], "--subset", "a,b"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "2"


def test_pullback(files, capsys):
    assert run(["pullback", files["cospan.grpd"], "--n", "2"]) == EXIT_OK
    assert "P_2" in capsys.readouterr().out


def test_tensor(files, capsys):
    assert run(["tensor", files["unit_p3.grpd"], files["unit_p3.grpd"]]) \
        == EXIT_OK
    assert "carrier:" in capsys.readouterr().out


def test_descent_commands(files, capsys):
    assert run(["descent-check", files["datum.grpd"]]) == EXIT_OK
    assert run(["descent-glue", files["datum.grpd"]]) == EXIT_OK
    assert "bundle" in capsys.readouterr().out


def test_parse_error_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.grpd"
    bad.write_text("groupoid g\nnot a line\n", encoding="utf-8")
    assert run(["validate", str(bad)]) == EXIT_INPUT
    assert run(["validate", str(tmp_path / "missing.grpd")]) == EXIT_INPUT


def test_isotropy_cap_env_var(files, monkeypatch, capsys):
    monkeypatch.setenv("GRPD_ISOTROPY_CAP", "1")
    assert run(["skeleton", files["bz2.grpd"]]) == EXIT_LIMIT
    monkeypatch.setenv("GRPD_ISOTROPY_CAP", "24")
    assert run(["skeleton", files["bz2.grpd"]]) == EXIT_OK


def test_corpus_subcommand_writes_files(tmp_path, capsys):
    out = tmp_path / "corpus"
    assert run(["corpus", "--seed", "5", "--count", "4",
                "--out", str(out)]) == EXIT_OK
    written = sorted(out.glob("*.grpd"))
    assert len(written) == 4
    for path in written:
        assert run(["validate", str(path)]) == EXIT_OK


def test_corpus_deterministic_across_runs(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    run(["corpus", "--seed", "9", "--count", "3", "--out", str(a)])
    run(["corpus", "--seed", "9", "--count", "3", "--out", str(b)])
    for pa, pb in zip(sorted(a.glob("*")), sorted(b.glob("*"))):
        assert pa.read_text() == pb.read_text()


def test_json_reports_validate_against_schema(files, capsys):
    for argv in (["validate", files["pair3.grpd"]],
                 ["orbits", files["mix.grpd"]],
                 ["transitive", files["disc.grpd"]],
                 ["skeleton", files["mix.grpd"]],
                 ["morita", files["pair3.grpd"], files["point.grpd"]],
                 ["locus", files["mix.grpd"]],
                 ["relcgeo", files["disc.grpd"], "--subset", "a"],
                 ["weakpoint", files["mix.grpd"], "--subset", "1,2"],
                 ["deform", files["mix.grpd"], "--from", "1", "--to", "2"],
                 ["homotopic", files["idfun.grpd"], files["idfun.grpd"]],
                 ["pullback", files["cospan.grpd"], "--n", "1"],
                 ["descent-check", files["datum.grpd"]],
                 ["descent-glue", files["datum.grpd"]],
                 ["tensor", files["unit_p3.grpd"], files["unit_p3.grpd"]],
                 ["validate", files["broken.grpd"]]):
        code, report = run_json(capsys, argv)
        assert report["command"] == argv[0]
        # decision reports expose ok; errors carry a message
        if code == EXIT_INPUT:
            assert "error" in report or not report["ok"]
