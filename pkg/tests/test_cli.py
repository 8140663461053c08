import json
from fractions import Fraction

import pytest

from chowring.cli import main
from chowring.expr import NonlinearBuilder, ParseError, SchubertBuilder, parse, tokenize
from chowring.nonlinear import NonlinearRing
from chowring.schubert import GrassmannRing


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# -- expression grammar ------------------------------------------------------------------


def test_tokenize():
    assert tokenize("s1^2 + 3/2*sigma[2,1]") == [
        ("gen", "1"), ("op", "^"), ("int", "2"), ("op", "+"), ("int", "3"), ("op", "/"), ("int", "2"),
        ("op", "*"), ("sigma", "sigma"), ("op", "["), ("int", "2"), ("op", ","), ("int", "1"), ("op", "]"),
    ]


def test_parse_schubert():
    ring = GrassmannRing(1, 3)
    b = SchubertBuilder(ring)
    assert parse("s1*s1", b) == ring.sigma((2,)) + ring.sigma((1, 1))
    assert parse("sigma[2,1] - 1/2*sigma[]", b) == ring.sigma((2, 1)) - ring.one() * Fraction(1, 2)
    assert parse("-(s1 + s2)^1", b) == -(ring.special(1) + ring.special(2))
    assert parse("7", b) == ring.one() * 7


def test_parse_nonlinear():
    ring = NonlinearRing(1, 3, 2)
    b = NonlinearBuilder(ring)
    assert parse("s1^3", b) == ring.gen(1) * ring.gen(2) * 4
    with pytest.raises(ParseError):
        parse("sigma[1]", b)


@pytest.mark.parametrize("bad", ["", "s1 +", "s9", "sigma[3]", "1/0", "s1 s2", "(s1", "x"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse(bad, SchubertBuilder(GrassmannRing(1, 3)))


# -- subcommands -----------------------------------------------------------------------


def test_ring_text(capsys):
    code, out, _ = run(capsys, "ring", "--k", "1", "--r", "2", "--d", "1")
    assert code == 0
    assert "s1^3" in out and "[1, 1, 1]" in out


def test_ring_json(capsys):
    code, out, _ = run(capsys, "ring", "--k", "1", "--r", "3", "--d", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert [r["text"] for r in data["relations"]] == ["s1^3 - 4*s1*s2", "s1^2*s2 - 2*s2^2"]
    assert data["poincare_dims"] == [1, 1, 2, 1, 1]
    assert [g["name"] for g in data["generators"]] == ["s1", "s2"]


def test_ring_point(capsys):
    code, out, _ = run(capsys, "ring", "--k", "2", "--r", "2", "--d", "5", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["generators"] == [] and data["relations"] == [] and data["poincare_dims"] == [1]


@pytest.mark.parametrize("argv", [["ring", "--k", "0", "--r", "2"], ["ring", "--k", "3", "--r", "2"], ["ring", "--k", "1", "--r", "2", "--d", "0"]])
def test_ring_range_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_relations(capsys):
    code, out, _ = run(capsys, "relations", "--k", "1", "--r", "2", "--d", "3")
    assert code == 0 and out.strip() == "s1^3"


def test_multiply_d1(capsys):
    code, out, _ = run(capsys, "multiply", "--k", "1", "--r", "3", "sigma[1]", "sigma[1]", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["terms"] == [{"partition": [2], "coeff": "1"}, {"partition": [1, 1], "coeff": "1"}]


def test_multiply_d2(capsys):
    code, out, _ = run(capsys, "multiply", "--k", "1", "--r", "3", "--d", "2", "s1", "s1^2")
    assert code == 0 and out.strip() == "4*s1*s2"


def test_multiply_json_input(capsys):
    elem = json.dumps({"k": 1, "r": 3, "d": 2, "terms": [{"smonomial": [1], "coeff": "1/2"}]})
    code, out, _ = run(capsys, "multiply", "--k", "1", "--r", "3", "--d", "2", elem, "1", "--format", "json")
    assert code == 0
    assert json.loads(out)["terms"] == [{"smonomial": [1], "coeff": "1/2"}]


def test_multiply_ring_mismatch(capsys):
    elem = json.dumps({"k": 1, "r": 3, "d": 3, "terms": [{"smonomial": [1], "coeff": "1"}]})
    code, _, _ = run(capsys, "multiply", "--k", "1", "--r", "3", "--d", "2", elem, "s1")
    assert code == 2


def test_multiply_parse_error(capsys):
    code, _, err = run(capsys, "multiply", "--k", "1", "--r", "3", "s1 +", "s1")
    assert code == 2 and "error" in err


def test_lambda_and_inverse(capsys):
    code, out, _ = run(capsys, "lambda", "--k", "1", "--r", "3", "--d", "2", "s1*s2")
    assert code == 0 and out.strip() == "32*sigma[2,1]"
    code, out, _ = run(capsys, "lambda-inv", "--k", "1", "--r", "3", "--d", "2", "sigma[1,1]")
    assert code == 0
    assert out.strip() == "-1/8*s2 + 1/16*s1^2"


def test_pushforward(capsys):
    code, out, _ = run(capsys, "pushforward", "--k", "1", "--n", "3", "--power", "2")
    assert code == 0 and out.strip() == "sigma[1]"
    code, out, _ = run(capsys, "pushforward", "--k", "1", "--n", "5", "--r", "2", "--scale", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["agree"]
    code, _, _ = run(capsys, "pushforward", "--k", "1", "--n", "5")
    assert code == 2


def test_verify_suites(capsys):
    code, out, _ = run(capsys, "verify", "series", "--k", "3", "--order", "12")
    assert code == 0 and "series: 12/12 passed" in out
    code, out, _ = run(capsys, "verify", "basis", "--r", "5", "--d", "3")
    assert code == 0 and "basis r=5 d=3: 15 products" in out


def test_verify_git_echoes_seed(capsys):
    code, out, _ = run(capsys, "verify", "git", "--d", "2", "--q", "3", "--samples", "20", "--seed", "99", "--tuples", "5")
    assert code == 0 and "seed 99" in out


def test_verify_seed_from_env(capsys, monkeypatch):
    monkeypatch.setenv("CHOW_SEED", "4242")
    code, out, _ = run(capsys, "verify", "git", "--d", "1", "--q", "3", "--tuples", "3", "--format", "json")
    assert code == 0 and json.loads(out)["seed"] == 4242


def test_verify_unknown_suite(capsys):
    code, _, err = run(capsys, "verify", "bogus")
    assert code == 2 and "unknown suite" in err


def test_verify_bounds_checked(capsys):
    assert run(capsys, "verify", "lambda", "--r", "50")[0] == 2
    assert run(capsys, "verify", "git", "--q", "2")[0] == 2


def test_stability(capsys, tmp_path):
    good = tmp_path / "good.json"
    good.write_text(json.dumps({"k": 1, "r": 1, "d": 2, "forms": [[{"exponents": [2, 0], "coeff": "1"}], [{"exponents": [0, 2], "coeff": "1"}]]}))
    code, out, _ = run(capsys, "stability", "--input", str(good), "--q", "4", "--seed", "5", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "torus-probed stable" and data["seed"] == 5

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"k": 1, "r": 1, "d": 2, "forms": [[{"exponents": [2, 0], "coeff": "1"}], [{"exponents": [1, 1], "coeff": "1"}]]}))
    code, out, _ = run(capsys, "stability", "--input", str(bad), "--q", "4")
    assert code == 2 and "precondition violation" in out

    code, _, _ = run(capsys, "stability", "--input", str(tmp_path / "missing.json"), "--q", "4")
    assert code == 2


def test_output_deterministic(capsys):
    a = run(capsys, "ring", "--k", "2", "--r", "4", "--d", "3", "--format", "json")[1]
    b = run(capsys, "ring", "--k", "2", "--r", "4", "--d", "3", "--format", "json")[1]
    assert a == b
