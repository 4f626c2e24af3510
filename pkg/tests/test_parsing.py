import pytest

from corpus import MODULES, ROUND_TRIP, round_trip
from ramond.algebra import G, L
from ramond.parsing import ParseError, parse_element, parse_generator, parse_induced, parse_svector, parse_word
from ramond.pbw import SVector

V = MODULES["whittaker"]


@pytest.mark.parametrize("kind, module, text", ROUND_TRIP)
def test_round_trip(kind, module, text):
    assert round_trip(kind, module, text) == text


def test_corpus_size():
    assert len(ROUND_TRIP) == 30


def test_non_canonical_inputs_normalise():
    assert round_trip("induced", "whittaker", "[0,1] v0 + [1] v0") == "1*[1] v0 + 1*[0,1] v0"
    assert round_trip("induced", "whittaker", "1*[0] v0 + -1*[0] v0 + 2*[1] v0") == "2*[1] v0"
    assert round_trip("svector", None, "[ 1 , 0 , 0 ]") == "[1]"
    assert round_trip("word", None, "  L(1)   G(2) ") == "L(1) G(2)"


def test_parse_element_dispatch():
    assert parse_element("[0,1]") == SVector([0, 1])
    assert parse_element("L(1) G(0)") == (L(1), G(0))
    assert parse_element("1*[1] v0", V) == parse_induced("1*[1] v0", V)
    with pytest.raises(ParseError):
        parse_element("1*[1] v0")


@pytest.mark.parametrize(
    "text",
    ["", "L", "L()", "X(1)", "L(1", "G(a)"],
)
def test_bad_generators(text):
    with pytest.raises(ParseError):
        parse_generator(text)


@pytest.mark.parametrize("text", ["[1,2]", "[-1]", "[a]", "1,0", "[1,"])
def test_bad_svectors(text):
    with pytest.raises(ParseError):
        parse_svector(text)


@pytest.mark.parametrize("text", ["", "1*[1]", "1*[1] v7", "1*[1] v0 1*[0] v0", "1*[1,2] v0", "*[0] v0"])
def test_bad_induced(text):
    with pytest.raises(ParseError):
        parse_induced(text, V)


def test_error_position_reported():
    with pytest.raises(ParseError) as info:
        parse_induced("1*[0] v0 + 1*[1,2] v0", V)
    assert info.value.position is not None and info.value.position > 10


def test_bad_word():
    with pytest.raises(ParseError):
        parse_word("L(1) Q(2)")
