"""Small deterministic scenarios for tests, demos and quick runs."""

from __future__ import annotations

import numpy as np

from .series import HourlySeries

# Relative clear-sky fraction per day; makes some days cloudy so storage can
# carry energy between days as well as into the night.
WEEK_SKY = (1.0, 0.7, 0.9, 0.5, 1.0, 0.85, 0.95)


def synthetic_week(days: int = 7) -> tuple[HourlySeries, HourlySeries, HourlySeries]:
    """Demand (MW), capacity factor and price (EUR/MWh) for ``days`` days.

    Capacity factor is a half-sine between 06:00 and 18:00 peaking at 0.6,
    scaled by :data:`WEEK_SKY`. Demand has a midday and an evening peak over
    a 20 MW base, lower at weekends (days 5 and 6 of each week). Price swings
    around 53 EUR/MWh, peaking at 18:00.
    """
    hours = np.arange(24 * days)
    hod = hours % 24
    day = hours // 24
    sky = np.array(WEEK_SKY)[day % len(WEEK_SKY)]
    cf = 0.6 * sky * np.clip(np.sin(np.pi * (hod - 6) / 12), 0.0, None)
    cf[(hod <= 6) | (hod >= 18)] = 0.0
    weekend = np.where(day % 7 >= 5, 0.8, 1.0)
    demand = weekend * (20.0 + 15.0 * np.exp(-(((hod - 13) / 4.0) ** 2))
                        + 8.0 * np.exp(-(((hod - 18) / 2.0) ** 2)))
    price = 53.0 + 15.0 * np.cos(2 * np.pi * (hod - 18) / 24)
    return (HourlySeries(demand, "MW"), HourlySeries(cf, "dimensionless"),
            HourlySeries(price, "EUR/MWh"))


def toy_day() -> tuple[HourlySeries, HourlySeries]:
    """Four-hour demand and capacity factor used in hand-worked examples."""
    return (HourlySeries([1.0, 1.0, 1.0, 1.0], "MW"),
            HourlySeries([0.0, 0.5, 1.0, 0.0], "dimensionless"))
