"""Game-time helpers.

All simulation timestamps are integer minutes since the scenario epoch
(midnight of day 0). One engine tick advances the clock by one game minute.
"""

from __future__ import annotations

import datetime as _dt
import re

MINUTES_PER_HOUR = 60
MINUTES_PER_DAY = 24 * 60

GameTime = int


def day_of(now: GameTime) -> int:
    return now // MINUTES_PER_DAY


def minute_of_day(now: GameTime) -> int:
    return now % MINUTES_PER_DAY


def hours_between(earlier: GameTime, later: GameTime) -> float:
    """Elapsed game hours, as a real number (may be fractional)."""
    return (later - earlier) / MINUTES_PER_HOUR


def clock_label(now: GameTime) -> str:
    """Render the time of day as e.g. '4:56 pm' (12-hour clock)."""
    m = minute_of_day(now)
    hour24, minute = divmod(m, 60)
    suffix = "am" if hour24 < 12 else "pm"
    hour12 = hour24 % 12
    if hour12 == 0:
        hour12 = 12
    return f"{hour12}:{minute:02d} {suffix}"


def date_of(now: GameTime, epoch_date: _dt.date) -> _dt.date:
    return epoch_date + _dt.timedelta(days=day_of(now))


def date_label(now: GameTime, epoch_date: _dt.date) -> str:
    """Render the date as e.g. 'Monday February 13'."""
    d = date_of(now, epoch_date)
    return f"{d.strftime('%A')} {d.strftime('%B')} {d.day}"


def datetime_label(now: GameTime, epoch_date: _dt.date) -> str:
    """Render as e.g. 'February 13, 2023, 4:56 pm'."""
    d = date_of(now, epoch_date)
    return f"{d.strftime('%B')} {d.day}, {d.year}, {clock_label(now)}"


_TIME_RE = re.compile(
    r"\b(\d{1,2})(?::(\d{2}))?\s*(am|pm|a\.m\.|p\.m\.)\b", re.IGNORECASE
)


def parse_clock(text: str) -> int | None:
    """Extract the first 'h:mm am/pm' time in *text* as minutes past midnight.

    Returns None when no clock time is present. 12 am maps to 0, 12 pm to 720.
    """
    m = _TIME_RE.search(text)
    if not m:
        return None
    hour = int(m.group(1))
    minute = int(m.group(2) or 0)
    suffix = m.group(3).lower().replace(".", "")
    if hour == 12:
        hour = 0
    if suffix == "pm":
        hour += 12
    if hour >= 24 or minute >= 60:
        return None
    return hour * 60 + minute


def parse_all_clocks(text: str) -> list[int]:
    """All clock times found in *text*, in order of appearance."""
    out = []
    for m in _TIME_RE.finditer(text):
        t = parse_clock(m.group(0))
        if t is not None:
            out.append(t)
    return out
