from __future__ import annotations

import datetime as dt
import re

import humanize

_UNIT_SECONDS = {"second": 1, "minute": 60, "hour": 3600, "day": 86400}


def humanize_duration(seconds: float) -> str:
    """Three significant digits in the largest unit humanize picks, e.g. ``1.5 minutes``."""
    if seconds < 1:
        return f"{seconds * 1000:.3g} milliseconds"
    largest = re.split(r",|\s", humanize.precisedelta(dt.timedelta(seconds=seconds), minimum_unit="seconds"))[1]
    unit = largest.rstrip("s")
    if unit not in _UNIT_SECONDS:
        # months and years
        unit = "day"
    value = f"{seconds / _UNIT_SECONDS[unit]:.3g}"
    return f"{value} {unit}" if value == "1" else f"{value} {unit}s"
