from biqbracket.code_utils.time_utils import humanize_duration


def test_humanize_duration():
    assert humanize_duration(0.0123) == "12.3 milliseconds"
    assert humanize_duration(0) == "0 milliseconds"
    assert humanize_duration(1) == "1 second"
    assert humanize_duration(1.5) == "1.5 seconds"
    assert humanize_duration(59) == "59 seconds"
    assert humanize_duration(90) == "1.5 minutes"
    assert humanize_duration(3600) == "1 hour"
    assert humanize_duration(12345) == "3.43 hours"
    assert humanize_duration(2 * 86400) == "2 days"
    assert humanize_duration(400 * 86400) == "400 days"
