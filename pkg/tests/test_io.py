import json
from fractions import Fraction
from pathlib import Path

import pytest

from scatlab import io
from scatlab.completion import cluster_scatter_rank2
from scatlab.diagram import ScatteringDiagram, equivalent
from scatlab.errors import ParseError
from scatlab.fans import mutation_fan, scat_fan
from scatlab.lattice import A2, B2, G2, KRONECKER2, InitialData
from scatlab.series import LaurentPolynomial, TruncatedSeries
from scatlab.theta import theta_pop
from scatlab.transport import chamber_fan

FIXTURES = Path(__file__).parent / "fixtures"


def test_rationals():
    assert io.rat(3) == "3/1"
    assert io.rat(Fraction(-2, 4)) == "-1/2"
    assert io.parse_rat("5/7") == Fraction(5, 7)
    for bad in ("x", "1/0", 1.5, True):
        with pytest.raises(ParseError):
            io.parse_rat(bad)


@pytest.mark.parametrize("name", ["a2", "b2", "g2", "kronecker2", "a3", "markov", "markov2",
                                  "a2_principal"])
def test_fixture_matrices_parse_and_roundtrip(name):
    path = FIXTURES / f"{name}.json"
    B = io.read_matrix(path)
    assert io.matrix_from_doc(io.matrix_to_doc(B)) == B
    assert io.roundtrip(path)


@pytest.mark.parametrize("B", [A2, B2, G2, KRONECKER2], ids=["A2", "B2", "G2", "K2"])
def test_diagram_roundtrip(B):
    D = cluster_scatter_rank2(B, 6)
    text = io.serialize("diagram", D)
    kind, back = io.parse(text)
    assert kind == "diagram"
    assert back.data.b == D.data.b and back.order == D.order
    assert equivalent(back, D)
    assert io.roundtrip_text(text) and io.normalize(text) == text


def test_fan_and_chamber_roundtrip():
    for fan in (scat_fan(cluster_scatter_rank2(G2, 6)), mutation_fan(KRONECKER2, depth=3)):
        text = io.serialize("fan", fan)
        kind, back = io.parse(text)
        assert kind == "fan" and back == fan
        assert io.roundtrip_text(text)
    text = io.dumps(io.chamber_fan_to_doc(chamber_fan(B2, 12)))
    assert io.kind_of(json.loads(text)) == "chambers"
    assert io.roundtrip_text(text)


def test_laurent_and_series_roundtrip():
    p = theta_pop(B2.principal(), (-1, 0)).to_laurent()
    text = io.serialize("laurent", p)
    assert io.parse(text) == ("laurent", p)
    s = TruncatedSeries(2, 4, {(0, 0): 1, (1, 2): Fraction(-3, 2)})
    assert io.parse(io.serialize("series", s)) == ("series", s)
    assert io.parse("[]") == ("laurent", LaurentPolynomial({}))


def test_reordered_keys_are_normalized_once():
    D = cluster_scatter_rank2(A2, 4)
    doc = io.diagram_to_doc(D)
    messy = json.dumps(doc, sort_keys=False, indent=None)
    messy = json.dumps(dict(reversed(list(json.loads(messy).items()))))
    first = io.normalize(messy)
    assert first != messy
    assert first == io.serialize("diagram", D)
    assert io.normalize(first) == first


def test_empty_diagram_roundtrip():
    D = ScatteringDiagram(InitialData.of(A2), 3, [])
    assert io.parse(io.serialize("diagram", D))[1].walls == ()


@pytest.mark.parametrize("text", [
    "not json",
    "{}",
    '{"rows": [[0, 1], [1, 0]], "n_uf": 2, "n_total": 2}',
    '{"rows": [[0, "a"], [-1, 0]], "n_uf": 2, "n_total": 2}',
    '{"walls": [], "order": 3}',
    '[{"exp": [1, 0], "coeff": "x"}]',
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        io.parse(text)
