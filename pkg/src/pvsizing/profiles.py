"""District demand synthesis from settlement-class load templates.

A class template gives 48 half-hourly kW-per-meter values for each of the
15 (season, day-type) cells. Templates are expanded over a calendar into an
hourly MW-per-meter series, weighted by meter counts and correction factors,
and summed across classes into the district demand.
"""

from __future__ import annotations

import csv
import datetime as dt
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .errors import InputError
from .series import HourlySeries, check_same_horizon

SEASONS = ("winter", "spring", "summer", "high-summer", "autumn")
DAY_TYPES = ("weekday", "saturday", "sunday")
CELLS = tuple((s, d) for s in SEASONS for d in DAY_TYPES)
CLASS_IDS = tuple(range(1, 9))
NONDOMESTIC_CLASSES = tuple(range(3, 9))

# Published regression factors; the non-domestic classes share one factor.
PAPER_FACTORS = {1: 0.84, 2: 0.72, **{i: 2.65 for i in NONDOMESTIC_CLASSES}}

# Approximate season start dates (month, day). Not authoritative; override
# through the calendar file when real boundaries are known.
DEFAULT_SEASON_STARTS = {
    "spring": (3, 29),
    "summer": (6, 1),
    "high-summer": (7, 20),
    "autumn": (9, 1),
    "winter": (10, 25),
}


@dataclass(frozen=True)
class ClassTemplate:
    class_id: int
    shape: Mapping[tuple[str, str], np.ndarray]

    def __post_init__(self):
        if self.class_id not in CLASS_IDS:
            raise InputError(f"class_id must be 1-8, got {self.class_id}")
        cells = {}
        for key, values in self.shape.items():
            arr = np.asarray(values, dtype=float)
            if arr.shape != (48,):
                raise InputError(f"class {self.class_id} cell {key} needs 48 values, got {arr.size}")
            if np.any(arr < 0) or not np.all(np.isfinite(arr)):
                raise InputError(f"class {self.class_id} cell {key} has negative or non-finite values")
            cells[tuple(key)] = arr
        missing = [c for c in CELLS if c not in cells]
        if missing:
            season, day = missing[0]
            raise InputError(f"class {self.class_id} template missing cell ({season}, {day})")
        object.__setattr__(self, "shape", cells)

    @classmethod
    def constant(cls, class_id: int, kw: float) -> ClassTemplate:
        return cls(class_id, {c: np.full(48, kw) for c in CELLS})


@dataclass(frozen=True)
class SeasonCalendar:
    """(season, day-type) for each modeled day."""

    days: tuple[tuple[str, str], ...]

    def __post_init__(self):
        days = tuple((str(s), str(d)) for s, d in self.days)
        for i, (s, d) in enumerate(days):
            if s not in SEASONS or d not in DAY_TYPES:
                raise InputError(f"day {i}: unknown season/day-type ({s}, {d})")
        object.__setattr__(self, "days", days)

    @property
    def horizon(self) -> int:
        return 24 * len(self.days)


def _season_of(day: dt.date, starts: Mapping[str, tuple[int, int]]) -> str:
    ordered = sorted(starts.items(), key=lambda kv: kv[1])
    season = ordered[-1][0]  # wraps from the previous calendar year
    for name, (month, dom) in ordered:
        if (day.month, day.day) >= (month, dom):
            season = name
    return season


def make_calendar(year: int, season_starts: Mapping[str, tuple[int, int]] | None = None) -> SeasonCalendar:
    """Build a 365-day calendar for ``year`` from season start dates.

    February 29 is dropped so the horizon is always 8760 h. Day types follow
    the real weekdays of ``year``.
    """
    starts = dict(season_starts or DEFAULT_SEASON_STARTS)
    if set(starts) != set(SEASONS):
        raise InputError(f"season_starts must name exactly {SEASONS}")
    days = []
    day = dt.date(year, 1, 1)
    while day.year == year:
        if not (day.month == 2 and day.day == 29):
            wd = day.weekday()
            day_type = "saturday" if wd == 5 else "sunday" if wd == 6 else "weekday"
            days.append((_season_of(day, starts), day_type))
        day += dt.timedelta(days=1)
    return SeasonCalendar(tuple(days))


@dataclass(frozen=True)
class MeterCensus:
    domestic_meters: tuple[float, float]
    nondomestic_total: float
    company_counts: Mapping[int, float] = field(default_factory=dict)

    def __post_init__(self):
        counts = {i: float(self.company_counts.get(i, 0.0)) for i in NONDOMESTIC_CLASSES}
        extra = set(self.company_counts) - set(NONDOMESTIC_CLASSES)
        if extra:
            raise InputError(f"company counts given for non-domestic classes only (3-8), got {sorted(extra)}")
        values = [*self.domestic_meters, self.nondomestic_total, *counts.values()]
        if len(self.domestic_meters) != 2 or any(v < 0 for v in values):
            raise InputError("meter and company counts must be non-negative")
        object.__setattr__(self, "company_counts", counts)


@dataclass(frozen=True)
class CorrectionFactors:
    f: Mapping[int, float]

    def __post_init__(self):
        for cid, v in self.f.items():
            if not v > 0:
                raise InputError(f"correction factor for class {cid} must be > 0, got {v}")

    @classmethod
    def paper(cls) -> CorrectionFactors:
        return cls(dict(PAPER_FACTORS))


def expand_class_profile(template: ClassTemplate, calendar: SeasonCalendar,
                         horizon: int | None = None) -> HourlySeries:
    """Hourly MW-per-meter series for one class over ``calendar``.

    Each consecutive pair of half-hour kW values is averaged into one hour
    (equivalently, the two half-hour energies are summed).
    """
    if horizon is not None and horizon != calendar.horizon:
        raise InputError(f"calendar covers {calendar.horizon} h but horizon is {horizon} h")
    hourly = {cell: v.reshape(24, 2).mean(axis=1) / 1000.0 for cell, v in template.shape.items()}
    out = np.concatenate([hourly[cell] for cell in calendar.days]) if calendar.days else np.empty(0)
    return HourlySeries(out, "MW")


def allocate_nondomestic_meters(census: MeterCensus) -> dict[int, float]:
    """Split the lumped non-domestic meter count across classes 3-8 in
    proportion to company counts. Fractional meters are kept."""
    M = census.nondomestic_total
    n = census.company_counts
    N = sum(n.values())
    if M == 0:
        return {i: 0.0 for i in NONDOMESTIC_CLASSES}
    if N <= 0:
        raise InputError("cannot apportion non-domestic meters: total company count is zero")
    return {i: M * n[i] / N for i in NONDOMESTIC_CLASSES}


def meters_from_census(census: MeterCensus) -> dict[int, float]:
    meters = {1: float(census.domestic_meters[0]), 2: float(census.domestic_meters[1])}
    meters.update(allocate_nondomestic_meters(census))
    return meters


def compose_demand(class_series: Mapping[int, HourlySeries], meters: Mapping[int, float],
                   factors: CorrectionFactors) -> HourlySeries:
    """District demand: sum over classes of per-meter demand x meters x factor."""
    populated = [cid for cid, m in meters.items() if m > 0]
    for cid in populated:
        if cid not in class_series:
            raise InputError(f"class {cid} has meters but no demand series")
        if cid not in factors.f:
            raise InputError(f"class {cid} has meters but no correction factor")
    if not class_series:
        raise InputError("no class series given")
    horizon = check_same_horizon(*class_series.values())
    total = np.zeros(horizon)
    for cid in sorted(populated):
        total += class_series[cid].values * meters[cid] * factors.f[cid]
    return HourlySeries(total, "MW")


def fit_correction_factor(calculated_annuals: Sequence[float],
                          actual_annuals: Sequence[float]) -> tuple[float, float]:
    """Zero-intercept least-squares factor mapping calculated to actual annual
    demand, and the (uncentered) R-square of that fit.

    To fit one factor for the non-domestic classes, sum their calculated
    annual demands per district before calling.
    """
    x = np.asarray(calculated_annuals, dtype=float)
    y = np.asarray(actual_annuals, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise InputError("calculated and actual annuals must be equal-length 1-D sequences")
    if x.size < 2:
        raise InputError("need at least two observations to fit a factor")
    sxx = float(x @ x)
    if sxx == 0:
        raise InputError("calculated annual demands are all zero")
    f = float(x @ y) / sxx
    syy = float(y @ y)
    resid = y - f * x
    r_square = 1.0 - float(resid @ resid) / syy if syy > 0 else 1.0
    return f, r_square


def annual_energy(series: HourlySeries, dt_hours: float = 1.0) -> float:
    """Energy in MWh of a MW series."""
    if series.unit != "MW":
        raise InputError(f"annual_energy needs a MW series, got {series.unit}")
    return float(series.values.sum() * dt_hours)


# -- file ingestion ---------------------------------------------------------

def _rows(path):
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise InputError("file is empty (header row required)", path=path)
        for lineno, row in enumerate(reader, start=2):
            if row and any(cell.strip() for cell in row):
                yield lineno, [cell.strip() for cell in row]


def read_templates(path) -> dict[int, ClassTemplate]:
    """Template file: ``class_id,season,day_type,v1..v48`` per row (kW)."""
    cells: dict[int, dict] = {}
    for lineno, row in _rows(path):
        if len(row) != 51:
            raise InputError(f"expected 51 columns, got {len(row)}", path=path, row=lineno)
        try:
            cid = int(row[0])
            values = [float(v) for v in row[3:]]
        except ValueError:
            raise InputError("unparseable number", path=path, row=lineno) from None
        cells.setdefault(cid, {})[(row[1].lower(), row[2].lower())] = values
    try:
        return {cid: ClassTemplate(cid, shape) for cid, shape in sorted(cells.items())}
    except InputError as exc:
        raise InputError(str(exc), path=path) from None


def read_calendar(path) -> SeasonCalendar:
    """Calendar file: ``day_index,season,day_type`` per row."""
    days = []
    for lineno, row in _rows(path):
        if len(row) != 3:
            raise InputError(f"expected 3 columns, got {len(row)}", path=path, row=lineno)
        try:
            idx = int(row[0])
        except ValueError:
            raise InputError("unparseable day index", path=path, row=lineno) from None
        if idx != len(days):
            raise InputError(f"day index {idx} out of sequence", path=path, row=lineno)
        season, day_type = row[1].lower(), row[2].lower()
        if season not in SEASONS or day_type not in DAY_TYPES:
            raise InputError(f"unknown season/day-type ({season}, {day_type})", path=path, row=lineno)
        days.append((season, day_type))
    return SeasonCalendar(tuple(days))


def write_calendar(path, calendar: SeasonCalendar) -> None:
    with Path(path).open("w", newline="") as fh:
        fh.write("day_index,season,day_type\n")
        for i, (s, d) in enumerate(calendar.days):
            fh.write(f"{i},{s},{d}\n")


def _key_values(path) -> dict[str, str]:
    out = {}
    path = Path(path)
    with path.open() as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise InputError("expected key = value", path=path, row=lineno)
            k, v = (s.strip() for s in line.split("=", 1))
            out[k] = v
    return out


def read_census(path) -> MeterCensus:
    """Census file, ``key = value`` lines: ``domestic_1``, ``domestic_2``,
    ``nondomestic_total`` and ``companies_3`` .. ``companies_8``."""
    kv = _key_values(path)
    try:
        return MeterCensus(
            domestic_meters=(float(kv.get("domestic_1", 0)), float(kv.get("domestic_2", 0))),
            nondomestic_total=float(kv.get("nondomestic_total", 0)),
            company_counts={i: float(kv.get(f"companies_{i}", 0)) for i in NONDOMESTIC_CLASSES},
        )
    except ValueError as exc:
        raise InputError(str(exc), path=path) from None


def read_factors(path) -> CorrectionFactors:
    """Factor file: ``class_id,factor`` per row."""
    f = {}
    for lineno, row in _rows(path):
        if len(row) != 2:
            raise InputError(f"expected 2 columns, got {len(row)}", path=path, row=lineno)
        try:
            f[int(row[0])] = float(row[1])
        except ValueError:
            raise InputError("unparseable row", path=path, row=lineno) from None
    try:
        return CorrectionFactors(f)
    except InputError as exc:
        raise InputError(str(exc), path=path) from None


def synthesize_demand(templates: Mapping[int, ClassTemplate], calendar: SeasonCalendar,
                      census: MeterCensus, factors: CorrectionFactors) -> HourlySeries:
    """Full template -> district demand pipeline."""
    meters = meters_from_census(census)
    series = {cid: expand_class_profile(t, calendar) for cid, t in templates.items()}
    return compose_demand(series, meters, factors)
