import pytest

from biqbracket.either import Failure, Success, both, is_successful


def test_success():
    result = Success(3)
    assert is_successful(result)
    assert not result.is_failure()
    assert result.unwrap() == 3
    assert repr(result) == "Success(3)"
    with pytest.raises(ValueError, match="accepted"):
        result.failure()


def test_failure():
    result = Failure("no biquandle")
    assert not is_successful(result)
    assert result.failure() == "no biquandle"
    with pytest.raises(ValueError, match="no biquandle"):
        result.unwrap()


def test_both_keeps_the_first_failure():
    assert both(Success("O1+U1+"), Success(3)).unwrap() == ("O1+U1+", 3)
    assert both(Failure("bad diagram"), Failure("bad table")).failure() == "bad diagram"
    assert both(Success("O1+U1+"), Failure("bad table")).failure() == "bad table"
