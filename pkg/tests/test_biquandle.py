import json
import random

import pytest

from biqbracket.biquandle.biquandle import (
    affine_biquandle,
    biquandle_hash,
    biquandle_to_json,
    crossing_colors,
    crossing_label,
    crossing_relation,
    is_homomorphism,
    load_biquandle,
    make_biquandle,
    parse_biquandle,
    permutation_biquandle,
    random_biquandle,
    trivial_biquandle,
    verify_axioms,
)
from biqbracket.code_utils.config_consts import FIXTURES_DIR
from biqbracket.errors import MalformedTableError


@pytest.fixture
def x1():
    return load_biquandle(FIXTURES_DIR / "X1.json")


@pytest.fixture
def x2():
    return load_biquandle(FIXTURES_DIR / "X2.json")


def test_fixture_tables(x1, x2):
    assert x1.m == x2.m == 3
    assert x1.o(2, 1) == 3
    assert x1.s(2, 3) == 1
    assert x2.o(1, 2) == x2.s(1, 2) == 3
    assert x1.switch(1, 2) == (x1.s(2, 1), x1.o(1, 2))


def test_fixtures_are_biquandles(x1, x2):
    for b in (x1, x2, trivial_biquandle(3), permutation_biquandle([2, 3, 1])):
        report = verify_axioms(b)
        assert report.passed, report.failures
        assert [check.axiom for check in report.checks] == ["R1", "R2", "R3", "R4"]


def test_axiom_failures_carry_witnesses():
    # x∘y = 1 everywhere: column maps are not permutations and x∘x differs from x∗x = x.
    b = make_biquandle([[1, 1], [1, 1]], [[1, 1], [2, 2]])
    report = verify_axioms(b)
    assert not report.passed
    failed = {check.axiom: check for check in report.failures}
    assert failed["R1"].witness == (2,)
    assert failed["R2"].witness == (1,)


def test_malformed_tables():
    with pytest.raises(MalformedTableError, match="non-empty"):
        make_biquandle([], [])
    with pytest.raises(MalformedTableError, match="2x2"):
        make_biquandle([[1, 2], [2, 1]], [[1, 2]])
    with pytest.raises(MalformedTableError, match="outside 1..2"):
        make_biquandle([[1, 3], [2, 1]], [[1, 2], [2, 1]])
    with pytest.raises(MalformedTableError, match="Invalid biquandle JSON"):
        parse_biquandle("{not json")
    with pytest.raises(MalformedTableError, match="'circ' and 'star'"):
        parse_biquandle('{"circ": [[1]]}')
    with pytest.raises(MalformedTableError, match="disagrees"):
        parse_biquandle('{"m": 2, "circ": [[1]], "star": [[1]]}')


@pytest.mark.parametrize(
    "text",
    [
        '{"circ": 5, "star": 5}',
        '{"circ": [5], "star": [5]}',
        '{"circ": [[1]], "star": "1"}',
        '{"circ": null, "star": [[1]]}',
        '{"circ": [[1]], "star": [{"1": 1}]}',
    ],
)
def test_tables_that_are_not_lists_of_rows(text):
    with pytest.raises(MalformedTableError, match="list of rows"):
        parse_biquandle(text)


def test_plain_text_tables(x1):
    text = """
    # X1
    circ:
    1 1 1
    3 3 3
    2 2 2
    star:
    1 2 3
    2 3 1
    3 1 2
    """
    assert parse_biquandle(text) == x1
    with pytest.raises(MalformedTableError, match="before a 'circ' or 'star' header"):
        parse_biquandle("1 2\n2 1")
    with pytest.raises(MalformedTableError, match="both"):
        parse_biquandle("circ:\n1")


def test_json_round_trip_and_hash(x1, x2):
    assert parse_biquandle(biquandle_to_json(x1)) == x1
    assert json.loads(biquandle_to_json(x1))["m"] == 3
    assert len(biquandle_hash(x1)) == 16
    assert biquandle_hash(x1) == biquandle_hash(parse_biquandle(biquandle_to_json(x1)))
    assert biquandle_hash(x1) != biquandle_hash(x2)


def test_inverses(x1):
    for x in x1.elements:
        for y in x1.elements:
            assert x1.alpha_inverse(y, x1.s(x, y)) == x
            assert x1.beta_inverse(y, x1.o(x, y)) == x
            assert x1.switch_inverse(*x1.switch(x, y)) == (x, y)


@pytest.mark.parametrize("sign", [1, -1])
def test_crossing_relation_agrees_with_crossing_colors(x1, sign):
    for x in x1.elements:
        for y in x1.elements:
            over_in, under_in, over_out, under_out = crossing_colors(x1, sign, (x, y))
            assert crossing_label(sign, over_in, under_in, over_out, under_out) == (x, y)
            assert crossing_relation(x1, sign, under_in, over_in) == (under_out, over_out)


def test_random_biquandles_are_valid():
    rng = random.Random(3)
    for _ in range(20):
        b = random_biquandle(rng)
        assert verify_axioms(b).passed


def test_affine_family_is_checked_not_assumed():
    # x∗y = x + y and x∘y = x on Z/2: 2∗2 = 1 while 2∘2 = 2.
    assert not verify_axioms(affine_biquandle(2, 1, 1, 1, 0)).passed


def test_homomorphisms(x1):
    assert is_homomorphism([1, 2, 3], x1, x1)
    assert is_homomorphism([1], trivial_biquandle(1), x1)
    assert not is_homomorphism([1, 2], x1, x1)
    assert not is_homomorphism([4, 1, 1], x1, x1)


def test_permutation_biquandle_rejects_non_permutations():
    with pytest.raises(MalformedTableError, match="not a permutation"):
        permutation_biquandle([1, 1, 2])
