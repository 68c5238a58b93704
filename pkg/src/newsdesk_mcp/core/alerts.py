"""Country-category article statistics and alert decisions."""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, MutableMapping, Sequence
from datetime import date, datetime, timedelta

from newsdesk_mcp.models.alert import AlertDecision, AlertState, DailyCount
from newsdesk_mcp.models.article import ensure_utc
from newsdesk_mcp.models.config import AlertSettings

logger = logging.getLogger(__name__)

AlertKey = tuple[str, str]


def estimate_weekday_factors(history: Sequence[DailyCount], floor: float = 0.25) -> list[float]:
    """Weekday mean over overall mean, floored, renormalized to average exactly 1."""
    if not history:
        return [1.0] * 7
    overall = math.fsum(d.count for d in history) / len(history)
    if overall <= 0:
        return [1.0] * 7
    factors = []
    for weekday in range(7):
        counts = [d.count for d in history if d.day.weekday() == weekday]
        factors.append(math.fsum(counts) / len(counts) / overall if counts else 1.0)

    fixed: set[int] = set()
    for _ in range(8):
        free = [i for i in range(7) if i not in fixed]
        budget = 7.0 - floor * len(fixed)
        free_sum = math.fsum(factors[i] for i in free)
        if free_sum <= 0:
            for i in free:
                factors[i] = budget / len(free)
        else:
            for i in free:
                factors[i] *= budget / free_sum
        low = [i for i in free if factors[i] < floor]
        if not low:
            break
        for i in low:
            factors[i] = floor
            fixed.add(i)
    return factors


def weekday_normalize(count: float, weekday: int, factors: Sequence[float]) -> float:
    return count / factors[weekday]


def roll_to(state: AlertState, day: date, settings: AlertSettings | None = None) -> None:
    """Close every day before ``day`` into the ring and the weekday history."""
    settings = settings or AlertSettings()
    if state.today is None:
        state.today = DailyCount(day=day)
        return
    if day <= state.today.day:
        return
    closed = [state.today]
    cursor = state.today.day + timedelta(days=1)
    while cursor < day:
        closed.append(DailyCount(day=cursor))
        cursor += timedelta(days=1)
    state.daily_counts = (state.daily_counts + closed)[-settings.baseline_days:]
    state.history = (state.history + [d.model_copy() for d in closed])[-settings.weekday_history_days:]
    state.weekday_factors = estimate_weekday_factors(state.history, settings.weekday_floor)
    state.today = DailyCount(day=day)


def update_counts(
    states: MutableMapping[AlertKey, AlertState],
    matches: Iterable[tuple[Iterable[str], Iterable[str], datetime]],
    settings: AlertSettings | None = None,
) -> MutableMapping[AlertKey, AlertState]:
    """Count each (country, category) pair of each match, whatever its language.

    ``matches`` yields (categories, countries, timestamp) per article.
    """
    settings = settings or AlertSettings()
    for categories, countries, timestamp in matches:
        timestamp = ensure_utc(timestamp)
        for country in sorted(set(countries)):
            for category in sorted(set(categories)):
                key = (country, category)
                state = states.get(key)
                if state is None:
                    state = states[key] = _new_state(country, category, states, timestamp.date())
                _count(state, timestamp, settings)
    return states


def _first_day(states: MutableMapping[AlertKey, AlertState]) -> date | None:
    days = [
        s.history[0].day if s.history else s.daily_counts[0].day if s.daily_counts else s.today.day
        for s in states.values()
        if s.today is not None
    ]
    return min(days, default=None)


def _new_state(country: str, category: str, states: MutableMapping[AlertKey, AlertState], day: date) -> AlertState:
    """A pair seen for the first time starts from the tracked day range with zero counts."""
    state = AlertState(country=country, category=category)
    first = _first_day(states)
    if first is not None and first < day:
        state.today = DailyCount(day=first)
    return state


def _count(state: AlertState, timestamp: datetime, settings: AlertSettings) -> None:
    day = timestamp.date()
    roll_to(state, day, settings)
    if day == state.today.day:
        state.today.count += 1
    else:
        for entry in state.daily_counts:
            if entry.day == day:
                entry.count += 1
        for entry in state.history:
            if entry.day == day:
                entry.count += 1
    state.recent.append(timestamp)
    state.recent.sort()


def level_for(ratio: float, buckets: Sequence[float]) -> float:
    """Largest bucket not above ``ratio``; 1 below the first bucket."""
    level = 1.0
    for bucket in buckets:
        if ratio >= bucket:
            level = float(bucket)
    return level


def check_alert(state: AlertState, now: datetime, settings: AlertSettings | None = None) -> AlertDecision:
    """Compare the weekday-adjusted last 24 hours with the mean of past days."""
    settings = settings or AlertSettings()
    now = ensure_utc(now)
    roll_to(state, now.date(), settings)
    start = now - timedelta(hours=24)
    state.recent = [t for t in state.recent if t > start]
    raw = sum(1 for t in state.recent if t <= now)

    decision = AlertDecision(timestamp=now, country=state.country, category=state.category, raw_count=raw)
    days = state.daily_counts
    if len(days) < settings.min_history_days:
        decision.warming_up = True
        return decision

    mean = math.fsum(d.count for d in days) / len(days)
    if settings.weekday_normalization:
        adjusted = weekday_normalize(raw, now.weekday(), state.weekday_factors)
    else:
        adjusted = float(raw)
    decision.mean = mean
    decision.adjusted = adjusted
    if adjusted >= max(settings.min_count, settings.ratio * mean):
        decision.alert = True
        decision.level = float(settings.level_buckets[-1]) if mean == 0 else level_for(adjusted / mean, settings.level_buckets)
        logger.info(
            f"Alert {state.country}/{state.category}: adjusted {adjusted:.2f} vs mean {mean:.2f} (level {decision.level})"
        )
    return decision


def check_all(
    states: MutableMapping[AlertKey, AlertState],
    now: datetime,
    settings: AlertSettings | None = None,
) -> list[AlertDecision]:
    """Decisions for every tracked pair, alerts only, in key order."""
    decisions = [check_alert(states[key], now, settings) for key in sorted(states)]
    return [d for d in decisions if d.alert]
