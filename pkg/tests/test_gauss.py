import pytest

from biqbracket.code_utils.config_consts import FIXTURES_DIR
from biqbracket.diagram.gauss import (
    canonicalize,
    crossing_arcs,
    parse_gauss,
    parse_pd,
    same_up_to_rotation,
    semiarc_count,
    semiarcs,
    to_gauss,
)
from biqbracket.errors import GaussCodeSyntaxError, PDCodeSyntaxError, SignMismatchError, UnpairedCrossingError

TREFOIL = "O1+U2+O3+U1+O2+U3+"


def test_parse_trefoil():
    d = parse_gauss(TREFOIL)
    assert d.crossing_count == 3
    assert d.component_count == 1
    assert d.crossing_ids == (1, 2, 3)
    assert all(d.sign_of(c) == 1 for c in d.crossing_ids)
    assert to_gauss(d) == TREFOIL
    assert str(d) == TREFOIL


def test_unknot_and_unlink():
    unknot = parse_gauss("()")
    assert unknot.crossing_count == 0
    assert unknot.component_count == 1
    assert semiarc_count(unknot) == 1
    assert semiarcs(unknot)[0].closed
    unlink = parse_gauss("(), ()")
    assert unlink.component_count == 2
    assert to_gauss(unlink) == "(), ()"


def test_empty_text_is_the_empty_diagram():
    d = parse_gauss("")
    assert d.component_count == 0
    assert semiarc_count(d) == 0


def test_comments_and_lowercase():
    d = parse_gauss("# the trefoil\no1+u2+o3+u1+o2+u3+  # positive\n")
    assert to_gauss(d) == TREFOIL


def test_malformed_codes():
    with pytest.raises(GaussCodeSyntaxError, match="Cannot parse"):
        parse_gauss("X1+")
    with pytest.raises(GaussCodeSyntaxError, match="start at 1"):
        parse_gauss("O0+U0+")
    with pytest.raises(UnpairedCrossingError, match="Crossing 2"):
        parse_gauss("O1+U1+O2+")
    with pytest.raises(UnpairedCrossingError):
        parse_gauss("O1+O1+")
    with pytest.raises(SignMismatchError, match="both signs"):
        parse_gauss("O1+U1-")


def test_canonicalize_relabels_by_first_occurrence():
    d = parse_gauss("O5+U7+O9+U5+O7+U9+")
    assert to_gauss(canonicalize(d)) == TREFOIL


def test_crossing_arcs_of_the_trefoil():
    arcs = crossing_arcs(parse_gauss(TREFOIL))
    assert [c.crossing for c in arcs] == [1, 2, 3]
    first = arcs[0]
    # O1 is passage 0 and U1 is passage 3 of the only component.
    assert (first.over_in, first.over_out) == (5, 0)
    assert (first.under_in, first.under_out) == (2, 3)
    for c in arcs:
        assert len({c.over_in, c.under_in, c.over_out, c.under_out}) == 4


def test_kink_has_one_semiarc_looping_back():
    arcs = crossing_arcs(parse_gauss("O1+U1+"))
    (kink,) = arcs
    assert kink.over_out == kink.under_in == 0
    assert kink.under_out == kink.over_in == 1


def test_pd_trefoil():
    d = parse_pd("PD[X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]]")
    assert d.crossing_count == 3
    assert d.component_count == 1
    assert len({d.sign_of(c) for c in d.crossing_ids}) == 1
    passages = d.components[0]
    assert len(passages) == 6
    assert all(a.over != b.over for a, b in zip(passages, passages[1:]))


def test_pd_errors():
    with pytest.raises(PDCodeSyntaxError, match="exactly twice"):
        parse_pd("X[1,2,3,4]")
    with pytest.raises(PDCodeSyntaxError, match="Unexpected text"):
        parse_pd("X[1,2,2,1] junk")


def test_pd_empty():
    assert parse_pd("PD[]").component_count == 0


def test_same_up_to_rotation():
    d = parse_gauss(TREFOIL)
    assert same_up_to_rotation(d, parse_gauss("U1+O2+U3+O1+U2+O3+"))
    assert not same_up_to_rotation(d, parse_gauss("O1-U2-O3-U1-O2-U3-"))
    assert not same_up_to_rotation(d, parse_gauss("(), ()"))


def test_fixtures_parse():
    for name, crossings, components in (("8_18.gauss", 8, 1), ("borromean.gauss", 6, 3), ("trefoil.gauss", 3, 1)):
        d = parse_gauss((FIXTURES_DIR / name).read_text(encoding="utf8"))
        assert d.crossing_count == crossings
        assert d.component_count == components
