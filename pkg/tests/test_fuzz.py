import pytest

from biqbracket.biquandle.biquandle import trivial_biquandle
from biqbracket.bracket.fuzz import default_fuzz_biquandles, invariance_fuzz


@pytest.fixture(scope="module")
def basis_cache(pytestconfig):
    # Gröbner bases persist between runs in the pytest cache directory
    return pytestconfig.cache.mkdir("groebner-bases")


def test_default_pool():
    assert [b.m for b in default_fuzz_biquandles()] == [3, 3, 3]


def test_ideal_mode_with_the_one_element_biquandle(tmp_path):
    report = invariance_fuzz(10, 1, biquandles=[trivial_biquandle(1)], delta=2, max_crossings=4, cache_dir=tmp_path)
    assert report.ok, report.failures
    assert report.cases == report.passed == 10
    assert report.mode == "ideal"
    assert list(tmp_path.glob("*.json"))


def test_evaluation_mode():
    report = invariance_fuzz(8, 2, mode="evaluation", max_crossings=4)
    assert report.ok, report.failures
    assert report.passed == 8


def test_same_seed_same_report():
    first = invariance_fuzz(4, 9, mode="evaluation", variants=(2,), max_crossings=3)
    second = invariance_fuzz(4, 9, mode="evaluation", variants=(2,), max_crossings=3)
    assert first.model_dump(exclude={"seconds"}) == second.model_dump(exclude={"seconds"})


def test_progress_is_reported():
    seen = []
    invariance_fuzz(3, 0, mode="evaluation", max_crossings=3, progress=lambda done, total: seen.append((done, total)))
    assert seen == [(1, 3), (2, 3), (3, 3)]


@pytest.mark.slow
def test_ideal_mode_over_the_default_pool(basis_cache):
    """X1, X2 and the trivial biquandle on three elements, both variants, δ = 1.

    The first run computes six bases and stores them; later runs only load them.
    """
    report = invariance_fuzz(100, 2024, variants=(1, 2), delta=1, cache_dir=basis_cache)
    assert report.ok, report.failures
    assert report.cases == report.passed == 100
    assert report.mode == "ideal"
