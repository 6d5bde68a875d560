import random

import pytest

from biqbracket.biquandle.biquandle import load_biquandle, random_biquandle
from biqbracket.biquandle.colorings import enumerate_colorings
from biqbracket.code_utils.config_consts import FIXTURES_DIR
from biqbracket.diagram.braids import braid_closure, random_braid_diagram
from biqbracket.diagram.gauss import parse_gauss, to_gauss
from biqbracket.diagram.moves import MoveKind, MoveSpec, apply_move, find_move_sites, inverse_move, random_move
from biqbracket.errors import GaussCodeSyntaxError, PatternMismatchError, SiteNotFoundError

TREFOIL = parse_gauss("O1+U2+O3+U1+O2+U3+")


def test_r1_insert_and_delete():
    unknot = parse_gauss("()")
    move = MoveSpec(kind=MoveKind.R1_INSERT, site=(0,), variant=(1, 1))
    kinked = apply_move(unknot, move)
    assert to_gauss(kinked) == "O1+U1+"
    undo = inverse_move(unknot, move)
    assert undo == MoveSpec(kind=MoveKind.R1_DELETE, site=(1,))
    assert undo in find_move_sites(kinked)
    assert to_gauss(apply_move(kinked, undo)) == "()"


def test_r1_insert_under_first_negative():
    kinked = apply_move(parse_gauss("()"), MoveSpec(kind=MoveKind.R1_INSERT, site=(0,), variant=(0, -1)))
    assert to_gauss(kinked) == "U1-O1-"


def test_r2_insert_on_two_components():
    unlink = parse_gauss("(), ()")
    move = MoveSpec(kind=MoveKind.R2_INSERT, site=(0, 1), variant=(1, 0, 0))
    clasped = apply_move(unlink, move)
    assert to_gauss(clasped) == "O1+O2-, U1+U2-"
    undo = inverse_move(unlink, move)
    assert undo.site == (1, 2)
    assert undo in find_move_sites(clasped)
    assert to_gauss(apply_move(clasped, undo)) == "(), ()"


def test_r2_insert_on_one_semiarc():
    moved = apply_move(parse_gauss("()"), MoveSpec(kind=MoveKind.R2_INSERT, site=(0, 0), variant=(1, 0, 0)))
    assert to_gauss(moved) == "O1+O2-U1+U2-"
    assert moved.crossing_count == 2


def test_invalid_moves():
    with pytest.raises(PatternMismatchError, match="not a kink"):
        apply_move(TREFOIL, MoveSpec(kind=MoveKind.R1_DELETE, site=(1,)))
    with pytest.raises(SiteNotFoundError, match="does not exist"):
        apply_move(TREFOIL, MoveSpec(kind=MoveKind.R1_DELETE, site=(9,)))
    with pytest.raises(PatternMismatchError, match="same sign"):
        apply_move(TREFOIL, MoveSpec(kind=MoveKind.R2_DELETE, site=(1, 2)))
    with pytest.raises(SiteNotFoundError, match="Semiarc 6"):
        apply_move(TREFOIL, MoveSpec(kind=MoveKind.R1_INSERT, site=(6,), variant=(1, 1)))
    with pytest.raises(PatternMismatchError, match="R3"):
        apply_move(TREFOIL, MoveSpec(kind=MoveKind.R3, site=(1, 2, 3)))
    with pytest.raises(SiteNotFoundError):
        random_move(parse_gauss(""), random.Random(0))


def test_r3_on_a_braid_triangle():
    before = braid_closure([1, 2, 1], 3)
    assert to_gauss(before) == "O1+O2+U2+U3+, U1+O3+"
    move = MoveSpec(kind=MoveKind.R3, site=(1, 2, 3))
    assert move in find_move_sites(before)
    after = apply_move(before, move)
    assert to_gauss(after) == "O2+O1+U3+U2+, O3+U1+"
    assert inverse_move(before, move) == move
    assert to_gauss(apply_move(after, move)) == to_gauss(before)


def test_trefoil_has_no_decreasing_sites():
    assert find_move_sites(TREFOIL) == []


def test_braid_closures_match_fixtures():
    eight_eighteen = (FIXTURES_DIR / "8_18.gauss").read_text(encoding="utf8").strip()
    borromean = (FIXTURES_DIR / "borromean.gauss").read_text(encoding="utf8").strip()
    assert to_gauss(braid_closure([1, -2] * 4, 3)) == eight_eighteen
    assert to_gauss(braid_closure([1, -2] * 3, 3)) == borromean


def test_braid_closure_errors():
    with pytest.raises(GaussCodeSyntaxError):
        braid_closure([3], 3)
    with pytest.raises(GaussCodeSyntaxError):
        braid_closure([], 0)
    assert to_gauss(braid_closure([], 2)) == "(), ()"


def test_coloring_counts_survive_random_moves():
    rng = random.Random(7)
    x1 = load_biquandle(FIXTURES_DIR / "X1.json")
    for _ in range(100):
        diagram = random_braid_diagram(rng, 5)
        b = x1 if rng.random() < 0.5 else random_biquandle(rng, max_m=3)
        move = random_move(diagram, rng)
        moved = apply_move(diagram, move)
        assert len(enumerate_colorings(diagram, b)) == len(enumerate_colorings(moved, b)), (to_gauss(diagram), move)
