import pytest

from biqbracket.biquandle.biquandle import load_biquandle, trivial_biquandle
from biqbracket.biquandle.colorings import (
    Coloring,
    brute_force_colorings,
    crossing_labels,
    enumerate_colorings,
    is_consistent,
)
from biqbracket.code_utils.config_consts import BRUTE_FORCE_MAX_SEMIARCS, FIXTURES_DIR
from biqbracket.diagram.braids import braid_closure
from biqbracket.diagram.gauss import crossing_arcs, parse_gauss, semiarc_count
from biqbracket.errors import InvalidColoringError

X1 = load_biquandle(FIXTURES_DIR / "X1.json")
X2 = load_biquandle(FIXTURES_DIR / "X2.json")

SMALL_DIAGRAMS = [
    "()",
    "(), ()",
    "O1+U1+",
    "U1-O1-",
    "O1+O2-, U1+U2-",
    "O1+U2+O3+U1+O2+U3+",
    "O1-U2-O3-U1-O2-U3-",
    "O1+U2-O3+U1+O2-U3+",
]


def test_unknot_has_one_coloring_per_element():
    assert [c.colors for c in enumerate_colorings(parse_gauss("()"), X1)] == [(1,), (2,), (3,)]
    assert len(enumerate_colorings(parse_gauss("(), ()"), X1)) == 9


def test_kink_colorings():
    found = enumerate_colorings(parse_gauss("O1+U1+"), X1)
    assert len(found) == 3
    for coloring in found:
        (label,) = crossing_labels(parse_gauss("O1+U1+"), coloring, X1)
        assert label[0] == label[1]


@pytest.mark.parametrize("code", SMALL_DIAGRAMS)
@pytest.mark.parametrize("b", [X1, X2, trivial_biquandle(2)], ids=["X1", "X2", "trivial2"])
def test_backtracking_matches_brute_force(code, b):
    d = parse_gauss(code)
    assert semiarc_count(d) <= BRUTE_FORCE_MAX_SEMIARCS
    assert enumerate_colorings(d, b) == brute_force_colorings(d, b)


def test_braid_closures_match_brute_force():
    for word in ([1, 2, 1], [1, -2, 1], [1, 1, 1, 1]):
        d = braid_closure(word, 3)
        assert enumerate_colorings(d, X1) == brute_force_colorings(d, X1)


def test_every_enumerated_coloring_is_consistent():
    d = parse_gauss((FIXTURES_DIR / "8_18.gauss").read_text(encoding="utf8"))
    found = enumerate_colorings(d, X1)
    assert found
    assert found == sorted(found, key=lambda c: c.colors)
    for coloring in found:
        assert all(is_consistent(X1, c, coloring.colors) for c in crossing_arcs(d))


def test_trivial_biquandle_colors_components():
    borromean = parse_gauss((FIXTURES_DIR / "borromean.gauss").read_text(encoding="utf8"))
    assert len(enumerate_colorings(borromean, trivial_biquandle(2))) == 2**3


def test_invalid_colorings_are_rejected():
    trefoil = parse_gauss("O1+U2+O3+U1+O2+U3+")
    with pytest.raises(InvalidColoringError, match="6 semiarcs"):
        crossing_labels(trefoil, Coloring(colors=(1, 1)), X1)
    with pytest.raises(InvalidColoringError, match="1..3"):
        crossing_labels(trefoil, Coloring(colors=(4, 1, 1, 1, 1, 1)), X1)
    valid = {c.colors for c in enumerate_colorings(trefoil, X1)}
    bad = next(
        colors
        for colors in ((a, b, 1, 1, 1, 1) for a in range(1, 4) for b in range(1, 4))
        if colors not in valid
    )
    with pytest.raises(InvalidColoringError, match="crossing relation"):
        crossing_labels(trefoil, Coloring(colors=bad), X1)


def test_coloring_text():
    assert str(Coloring(colors=(1, 2, 3))) == "1 2 3"
