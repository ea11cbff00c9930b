import json
from importlib import resources

import jsonschema
import pytest

from orbitdep.cli import run
from orbitdep.poly import Domain, parse_polynomial


@pytest.fixture(scope="module")
def schema():
    text = resources.files("orbitdep").joinpath("schemas/cli_output.schema.json").read_text()
    return json.loads(text)


def run_json(capsys, argv):
    code = run(argv + ["--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


JSON_SAMPLES = [
    ["orbit", "--f", "X^2+2", "--x", "0", "--N", "4"],
    ["multdep", "4", "8"],
    ["multdep", "5", "0"],
    ["rank", "2", "3", "6"],
    ["leveque", "--f", "X^2*(X-1)^3*(X-2)", "--m", "2"],
    ["classify", "X^3-6*i*X^2-9*X+4*i", "--m", "2", "--domain", "qi"],
    ["classify", "(X-1)*(X-2)*(X-3)", "--m", "5"],
    ["exceptional", "--f", "X^2*(X-1)^3*(X-2)", "--g", "(X-1)*(X-2)"],
    ["hat", "4*X*(X-1)^2", "--ell", "2"],
    ["verify-semiconj", "--f", "X*(X-1)^2", "--fhat", "X^3-X", "--ell", "2", "--N", "2"],
    ["common-iterate", "--f", "X^2+1", "--g", "X^2+1"],
    ["common-iterate", "--f", "X^2", "--g", "X^3"],
    ["standard-pair", "third", "--m", "2", "--n", "3", "--a", "1"],
    ["scan-solutions", "--f", "X^2", "--g", "2*X^2-1", "--H", "50"],
    ["rds-check", "--f", "X^2+2", "--x", "0", "--terms", "5", "--prime-bound", "1000"],
    ["ppd", "--f", "X^2+2", "--x", "0", "--upto", "4"],
    ["sqfree", "72"],
    ["sqfree", "X^2*(X-1)^3"],
    ["count", "--f", "X^2+2", "--x", "0", "--n", "2", "--N", "3"],
    ["abc-check", "--A", "X^3", "--B", "1"],
    ["abc-check", "--random", "25", "--seed", "11"],
]


@pytest.mark.parametrize("argv", JSON_SAMPLES, ids=lambda a: " ".join(a[:3]))
def test_json_outputs_validate(capsys, schema, argv):
    code, payload = run_json(capsys, argv)
    assert code == 0
    jsonschema.validate(payload, schema)


def test_multdep_documented_output(capsys):
    code, payload = run_json(capsys, ["multdep", "4", "8"])
    assert code == 0
    assert payload == {"status": "dependent", "k": [3, -2], "rank": 1}


def test_classify_example_output(capsys):
    code, payload = run_json(
        capsys, ["classify", "X^3-6*i*X^2-9*X+4*i", "--m", "2", "--domain", "qi"]
    )
    assert code == 0
    assert payload["case"] == "square-iterate-exceptional"
    square = parse_polynomial(payload["square"], Domain.QI)
    expected = parse_polynomial("X*(X^4-9*i*X^3-27*X^2+30*i*X+9)^2")
    assert square == expected


def test_count_example_csv(capsys):
    code = run(["count", "--f", "X^2+2", "--x", "0", "--n", "2", "--N", "3", "--csv"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.splitlines() == ["m_1,m_2,k_1,k_2", "1,1,1,-1", "2,2,1,-1", "3,3,1,-1"]


def test_printed_polynomials_reparse(capsys):
    samples = [
        (["hat", "4*X*(X-1)^2", "--ell", "2"], ["p", "f_hat"], Domain.Q),
        (
            ["classify", "X^3-6*i*X^2-9*X+4*i", "--m", "2", "--domain", "qi"],
            ["p", "square"],
            Domain.QI,
        ),
        (["standard-pair", "fifth", "--a", "1"], ["f1", "g1"], Domain.Q),
    ]
    for argv, keys, domain in samples:
        _, payload = run_json(capsys, argv)
        for key in keys:
            reparsed = parse_polynomial(payload[key], domain)
            assert parse_polynomial(reparsed.to_string(), domain) == reparsed


def test_exit_codes(capsys):
    assert run(["no-such-command"]) == 64
    capsys.readouterr()
    assert run([]) == 64
    capsys.readouterr()
    assert run(["orbit", "--f", "X", "--x", "5", "--N", "3"]) == 1
    capsys.readouterr()
    assert run(["orbit", "--f", "X^2+2", "--x", "3", "--N", "50", "--bit-cap", "100"]) == 2
    capsys.readouterr()
    assert run(["count", "--f", "X^2+2", "--x", "0", "--n", "2", "--N", "200"]) == 2
    capsys.readouterr()
    assert run(["classify", "X+1", "--m", "2"]) == 1
    capsys.readouterr()


def test_partial_factorization_exit(capsys):
    import gmpy2

    p = int(gmpy2.next_prime(10**29 + 11))
    q = int(gmpy2.next_prime(10**29 + 1000))
    code = run(["sqfree", str(p * q), "--rho-iterations", "5", "--trial-bound", "100", "--json"])
    payload = json.loads(capsys.readouterr().out)
    assert code == 2
    assert payload["partial"] is True


def test_negative_rational_values(capsys):
    code = run(["multdep", "--json", "--", "-2", "2"])
    payload = json.loads(capsys.readouterr().out)
    assert code == 0
    assert payload["status"] == "dependent"


def test_config_file_defaults(tmp_path, capsys, monkeypatch):
    cfg = tmp_path / "orbitdep.json"
    cfg.write_text(json.dumps({"bit_cap": 100}))
    monkeypatch.setenv("ORBITDEP_CONFIG", str(cfg))
    assert run(["orbit", "--f", "X^2+2", "--x", "3", "--N", "50"]) == 2
    capsys.readouterr()
    # explicit flag overrides the config file
    assert run(["orbit", "--f", "X^2+2", "--x", "3", "--N", "5", "--bit-cap", "100000"]) == 0
    capsys.readouterr()


def test_csv_unsupported(capsys):
    assert run(["rank", "2", "3", "--csv"]) == 64
