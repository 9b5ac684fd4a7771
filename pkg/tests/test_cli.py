"""Element grammar, command dispatch, output determinism."""

import json
from fractions import Fraction

import pytest

from qsym.cli import (
    ElementParseError,
    format_element,
    format_tensor,
    main,
    parse_composition,
    parse_element,
    parse_permutation,
)
from qsym.core import M_to_eta, QSymElement, coproduct, eta_to_M


def test_parse_element_golden():
    e = parse_element("2*M[5] + 4*M[1,4]")
    assert e == QSymElement("M", {(5,): 2, (1, 4): 4})
    e = parse_element("eta[1,3,1]")
    assert e == QSymElement.term("eta", (1, 3, 1))
    with pytest.raises(ValueError, match="odd"):
        parse_element("K[2,1]")


def test_parse_element_forms():
    assert parse_element("M[]") == QSymElement.unit("M")
    assert parse_element("0*M[]").is_zero
    assert parse_element("1/2*eta[1]") == QSymElement.term("eta", (1,), Fraction(1, 2))
    assert parse_element("-eta[5] + 2*eta[1,2,2]") == QSymElement(
        "eta", {(5,): -1, (1, 2, 2): 2}
    )
    assert parse_element("2*M[5]+4*M[1,4]") == parse_element(" 2*M[5] + 4*M[1,4] ")
    assert parse_element("M[2] - M[1,1]") == QSymElement("M", {(2,): 1, (1, 1): -1})


@pytest.mark.parametrize(
    "text",
    ["", "M[1,]", "2M[1]", "M[1", "M(1)", "M[1] & M[2]", "M[1] + L[1]", "x[1]", "3/M[1]"],
)
def test_parse_element_errors(text):
    with pytest.raises((ElementParseError, ValueError)):
        parse_element(text)


def test_parse_error_position():
    with pytest.raises(ElementParseError) as info:
        parse_element("M[1] % M[2]")
    assert info.value.position == 5


def test_format_parse_round_trip():
    candidates = [
        QSymElement.zero("eta"),
        QSymElement.unit("L"),
        eta_to_M((1, 3, 1)),
        M_to_eta((2, 1)),  # fractional coefficients
        QSymElement("eta", {(5,): -1, (1, 2, 2): 2, (2, 1, 2): 1}),
        QSymElement("M", {(1,): Fraction(-3, 2)}),
        QSymElement.term("K", (3, 1)),
    ]
    for elem in candidates:
        assert parse_element(format_element(elem)) == elem


def test_format_element_canonical_order():
    e = QSymElement("eta", {(2, 1, 2): 1, (5,): -1, (1, 2, 2): 2})
    assert format_element(e) == "-eta[5] + 2*eta[1,2,2] + eta[2,1,2]"


def test_format_tensor():
    t = coproduct(QSymElement.term("eta", (1, 2)))
    assert (
        format_tensor(t)
        == "eta[] (x) eta[1,2] + eta[1] (x) eta[2] + eta[1,2] (x) eta[]"
    )


def test_parse_permutation_and_composition():
    assert parse_permutation("1 4 2 5 3") == (1, 4, 2, 5, 3)
    assert parse_permutation("132") == (1, 3, 2)
    assert parse_permutation("") == ()
    assert parse_composition("1,3,1") == (1, 3, 1)
    assert parse_composition("") == ()


def test_cli_multiply(capsys):
    rc = main(["multiply", "eta[1,2]", "eta[2]", "--basis", "eta"])
    assert rc == 0
    assert capsys.readouterr().out.strip() == "-eta[5] + 2*eta[1,2,2] + eta[2,1,2]"


def test_cli_convert(capsys):
    rc = main(["convert", "eta[1,3,1]", "--to", "M"])
    assert rc == 0
    assert (
        capsys.readouterr().out.strip()
        == "2*M[5] + 4*M[1,4] + 4*M[4,1] + 8*M[1,3,1]"
    )


def test_cli_convert_json(capsys):
    rc = main(["convert", "M[2]", "--to", "L", "--format", "json"])
    assert rc == 0
    data = json.loads(capsys.readouterr().out)
    assert data == {
        "basis": "L",
        "terms": [
            {"comp": [2], "coeff": "1"},
            {"comp": [1, 1], "coeff": "-1"},
        ],
    }


def test_cli_coproduct_and_antipode(capsys):
    assert main(["coproduct", "eta[1,2]"]) == 0
    out = capsys.readouterr().out.strip()
    assert out == "eta[] (x) eta[1,2] + eta[1] (x) eta[2] + eta[1,2] (x) eta[]"
    assert main(["antipode", "eta[2,5]"]) == 0
    assert capsys.readouterr().out.strip() == "eta[5,2]"


def test_cli_expand(capsys):
    assert main(["expand", "M[2,1]", "--nvars", "3"]) == 0
    assert capsys.readouterr().out.strip() == "x1^2*x2 + x1^2*x3 + x2^2*x3"
    assert main(["expand", "M[2,1]", "--degree", "1"]) == 1
    assert "error" in capsys.readouterr().err


def test_cli_u_function(capsys):
    assert main(["u-function", "1 3 2", "1,1,1"]) == 0
    assert capsys.readouterr().out.strip() == "-eta[3] + eta[1,1,1]"
    assert main(["u-function", "1 2", "2,1", "--zset", "P", "--nvars", "2"]) == 0
    # assignments f(1) <= f(2) over {1,2} weighted (2,1): (1,1), (1,2), (2,2)
    assert capsys.readouterr().out.strip() == "x1^3 + x1^2*x2 + x2^3"
    assert main(["u-function", "1", "3", "--zset=-1,+1,-2"]) == 0
    assert capsys.readouterr().out.strip() == "2*x1^3 + x2^3"


def test_cli_gamma(tmp_path, capsys):
    path = tmp_path / "poset.json"
    path.write_text(
        json.dumps({"n": 2, "covers": [], "weights": [1, 1]}), encoding="utf-8"
    )
    assert main(["gamma", "--poset", str(path), "--zset", "P", "--nvars", "2"]) == 0
    # two incomparable unit-weight vertices: (x1 + x2)^2
    assert capsys.readouterr().out.strip() == "x1^2 + 2*x1*x2 + x2^2"


def test_cli_error_exit(capsys):
    assert main(["convert", "K[2,1]", "--to", "M"]) == 1
    err = capsys.readouterr().err
    assert "odd" in err
    assert main(["convert", "nonsense", "--to", "M"]) == 1
    assert "error" in capsys.readouterr().err


def test_cli_determinism(capsys):
    main(["convert", "eta[2,1,2]", "--to", "M", "--format", "json"])
    first = capsys.readouterr().out
    main(["convert", "eta[2,1,2]", "--to", "M", "--format", "json"])
    assert capsys.readouterr().out == first


def test_cli_verify(capsys):
    rc = main(["verify", "--max-degree", "5"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "10/10 checks passed" in out
    assert out.count("PASS") == 10
