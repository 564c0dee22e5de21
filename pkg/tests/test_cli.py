import json

import pytest

from satogr import cli
from satogr.field import GF, QQ
from satogr.plucker import generate_all
from satogr.points import GrassPoint, from_maya, vacuum
from satogr.serialize import dumps, point_to_json, vector_to_json, point_from_json

from conftest import S


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def write(tmp_path):
    counter = iter(range(1000))

    def _write(obj, raw=False):
        path = tmp_path / f"in{next(counter)}.json"
        path.write_text(obj if raw else dumps(obj))
        return path

    return _write


def test_gen_relations_level_two_text(capsys):
    code, out, _ = run(capsys, "gen-relations", "--level", 2, "--format", "text")
    assert code == 0
    assert out == "X[-2,-1]*X[0,1] - X[-2,0]*X[-1,1] + X[-2,1]*X[-1,0]\n"


def test_gen_relations_level_one_empty(capsys):
    assert run(capsys, "gen-relations", "--level", 1) == (0, "", "")
    code, out, _ = run(capsys, "gen-relations", "--level", 1, "--count-only")
    assert json.loads(out)["relations"] == 0


def test_gen_relations_count_only(capsys):
    code, out, _ = run(capsys, "gen-relations", "--level", 3, "--count-only")
    rep = json.loads(out)
    assert code == 0 and rep["span_dimension"] == 35 and rep["relations"] == 45


def test_gen_relations_json_round_trip(capsys):
    code, out, _ = run(capsys, "gen-relations", "--level", 3)
    from satogr.plucker import QuadraticRelation

    rels = [QuadraticRelation.from_json(3, json.loads(line)) for line in out.splitlines()]
    assert rels == list(generate_all(3))


def test_gen_relations_refuses_large_level(capsys):
    code, out, err = run(capsys, "gen-relations", "--level", 5)
    assert code == cli.EXIT_DOMAIN and out == "" and "--stream" in err


def test_stream_matches_in_memory(capsys, tmp_path):
    a = tmp_path / "a.ndjson"
    assert cli.main(["gen-relations", "--level", "3", "--stream", "--output", str(a)]) == 0
    assert cli.main(["gen-relations", "--level", "3", "--output", str(tmp_path / "b.ndjson")]) == 0
    assert a.read_text() == (tmp_path / "b.ndjson").read_text()


def test_check_point_worked(capsys, write, worked_point):
    code, out, _ = run(capsys, "check-point", write(point_to_json(worked_point)))
    rep = json.loads(out)
    assert code == 0
    assert rep["verdict"] == "PASS" and rep["nonzero"] == 4 and rep["index"] == 0


def test_check_point_delta_text(capsys, write):
    code, out, _ = run(capsys, "check-point", write(point_to_json(from_maya(S(-1, 1)))), "--format", "text")
    assert code == 0 and "verdict: PASS" in out


def test_check_point_errors(capsys, write):
    bad = write('{"level": 2, "field": "Q", "rows": [[1, 0', raw=True)
    assert run(capsys, "check-point", bad)[0] == cli.EXIT_PARSE
    deficient = write({"level": 2, "field": "Q", "rows": [[1, 0, 0, 0], [2, 0, 0, 0]]})
    assert run(capsys, "check-point", deficient)[0] == cli.EXIT_RANK
    wrong = write(point_to_json(vacuum(2)))
    assert run(capsys, "check-point", wrong, "--level", 3)[0] == cli.EXIT_DOMAIN
    assert run(capsys, "check-point", write({"level": 2, "rows": []}))[0] == cli.EXIT_PARSE


def test_check_point_random_is_deterministic(capsys):
    a = run(capsys, "check-point", "--random", 5, "--level", 3, "--seed", 7)
    b = run(capsys, "check-point", "--random", 5, "--level", 3, "--seed", 7)
    c = run(capsys, "check-point", "--random", 5, "--level", 3, "--seed", 8)
    assert a == b and a[0] == 0 and a[1] != c[1]
    for line in a[1].splitlines():
        assert json.loads(line)["seed"] == 7


def test_check_vector(capsys, write):
    ones = {"level": 2, "field": "Q", "coords": [1] * 6}
    code, out, _ = run(capsys, "check-vector", write(ones))
    rep = json.loads(out)
    assert code == cli.EXIT_FAIL and rep["verdict"] == "FAIL" and rep["violated"] == 1


def test_reconstruct(capsys, write, worked_point):
    from satogr.points import plucker_vector

    path = write(vector_to_json(plucker_vector(worked_point)))
    code, out, _ = run(capsys, "reconstruct", path, "--chart", "[-2,1]")
    assert code == 0 and point_from_json(json.loads(out)) == worked_point
    code, _, _ = run(capsys, "reconstruct", path, "--chart", "[-2,0]")
    assert code == cli.EXIT_DOMAIN


def test_perp_twice_is_byte_identical(capsys, tmp_path, write, worked_point):
    p = GrassPoint.spanned_by(2, QQ, [{-2: 1, 1: 3}, {-1: 2, 0: -1}])
    src = write(point_to_json(p))
    once, twice = tmp_path / "once.json", tmp_path / "twice.json"
    assert cli.main(["perp", str(src), "--output", str(once)]) == 0
    assert cli.main(["perp", str(once), "--output", str(twice)]) == 0
    assert twice.read_text() == dumps(point_to_json(p)) + "\n"


def test_act_mul_z_on_vacuum(capsys, write):
    code, out, _ = run(capsys, "act", write(point_to_json(vacuum(2))), "--op", "mul-z")
    rep = json.loads(out)
    assert code == 0 and rep["index"] == -1 and rep["level"] == 3
    point_from_json(rep)


def test_act_operator_file(capsys, write):
    op = write({"kind": "band", "field": "Q", "bandwidth": 1, "block": {"[-1,-1]": 1, "[0,-1]": 1, "[0,0]": 1}})
    code, out, _ = run(capsys, "act", write(point_to_json(from_maya(S(-1, 1)))), "--op", op)
    assert code == 0 and json.loads(out)["index"] == 0
    singular = write({"kind": "band", "field": "Q", "bandwidth": 0, "block": {"[0,0]": 0}})
    assert run(capsys, "act", write(point_to_json(vacuum(1))), "--op", singular)[0] == cli.EXIT_DOMAIN


def test_collinear_worked_triple(capsys, write):
    pts = [
        from_maya(S(-1, 0)),
        from_maya(S(-1, 1)),
        GrassPoint.spanned_by(2, QQ, [{-1: 1}, {0: 1, 1: 1}]),
    ]
    files = [write(point_to_json(p)) for p in pts]
    code, out, _ = run(capsys, "collinear", *files, "--format", "text")
    assert code == 0 and out == "geometric: true, plucker: true\n"
    dup = [files[0], files[0], files[1]]
    assert run(capsys, "collinear", *dup)[0] == cli.EXIT_DOMAIN


def test_restrict_point_and_vector(capsys, write, worked_point):
    from satogr.points import plucker_vector

    code, out, _ = run(capsys, "restrict", write(point_to_json(worked_point)), "--to-level", 3)
    up = point_from_json(json.loads(out))
    assert code == 0 and up == worked_point.at_level(3)
    code, out, _ = run(capsys, "restrict", write(point_to_json(up)), "--to-level", 2)
    assert code == 0 and point_from_json(json.loads(out)) == worked_point
    code, out, _ = run(capsys, "restrict", write(vector_to_json(plucker_vector(worked_point))), "--to-level", 3)
    assert code == 0 and json.loads(out)["level"] == 3
    code, out, _ = run(capsys, "restrict", write(point_to_json(from_maya(S(-3, -2, -1)))), "--to-level", 2)
    assert code == cli.EXIT_FAIL and out == "null\n"


def test_pencil_gf2(capsys, write):
    f = GF(2)
    files = [write(point_to_json(from_maya(t, f))) for t in (S(-1, 0), S(-1, 1))]
    code, out, _ = run(capsys, "pencil", *files)
    rep = json.loads(out)
    assert code == 0 and rep["k"] == 1 and len(rep["points"]) == 3
    for q in rep["points"]:
        point_from_json(q)


def test_pencil_rational_params(capsys, write):
    files = [write(point_to_json(p)) for p in (from_maya(S(-1, 0)), from_maya(S(-1, 1)))]
    code, out, _ = run(capsys, "pencil", *files, "--param", "1:1", "--param", "2:-1/3")
    assert code == 0 and len(json.loads(out)["points"]) == 2
    assert run(capsys, "pencil", *files, "--param", "1")[0] == cli.EXIT_PARSE
    far = [write(point_to_json(p)) for p in (from_maya(S(-2, -1)), from_maya(S(0, 1)))]
    assert run(capsys, "pencil", *far)[0] == cli.EXIT_DOMAIN


def test_reference_space(capsys, write):
    vs = ({-2: 1}, {0: 1}, {1: 1}, {-2: 1, 0: 1, 1: 1})
    files = [write(point_to_json(GrassPoint.spanned_by(2, QQ, [{-1: 1}, v]))) for v in vs]
    code, out, _ = run(capsys, "reference-space", *files)
    rep = json.loads(out)
    assert code == 0 and rep["k"] == 1 and len(rep["top"]["rows"]) == 4
    bad = [write(point_to_json(from_maya(t))) for t in (S(-2, -1), S(0, 1), S(-1, 0), S(-2, 1))]
    code, out, _ = run(capsys, "reference-space", *bad)
    assert code == cli.EXIT_FAIL and json.loads(out)["status"] == "rank-degenerate"


def test_outputs_round_trip(capsys, write, worked_point):
    src = write(point_to_json(worked_point))
    for argv in (["perp", src], ["act", src, "--op", "mul-zinv"], ["restrict", src, "--to-level", 4]):
        code, out, _ = run(capsys, *argv)
        assert code == 0
        p = point_from_json(json.loads(out))
        code2, out2, _ = run(capsys, argv[0], write(json.loads(out)), *argv[2:])
        assert code2 == 0 and p.level >= 1


def test_bad_field_flag(capsys):
    assert run(capsys, "check-point", "--random", 1, "--field", "GF(4)")[0] == cli.EXIT_PARSE
