import pytest

from format_duration import format_duration


@pytest.mark.parametrize("seconds, expected", [
    (0.42, "0.42s"),
    (59.999, "60.00s"),
    (60, "1m"),
    (125, "2m 5s"),
    (3600, "1h"),
    (3780, "1h 3m"),
    (3789, "1h 3m"),
])
def test_format_duration(seconds, expected):
    assert format_duration(seconds) == expected
