"""Hourly series carrier and the two-column series file format."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InputError

HOURS_PER_YEAR = 8760
UNITS = ("MW", "MWh", "EUR/MWh", "dimensionless")


@dataclass(frozen=True)
class HourlySeries:
    """Fixed-length hourly sequence tagged with a unit.

    Values must be finite and non-negative; ``dimensionless`` series
    (capacity factors) must also lie in [0, 1].
    """

    values: np.ndarray
    unit: str = "MW"

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim != 1 or values.size == 0:
            raise InputError("series must be a non-empty 1-D sequence")
        if self.unit not in UNITS:
            raise InputError(f"unknown unit {self.unit!r}; expected one of {UNITS}")
        if not np.all(np.isfinite(values)):
            raise InputError("series contains non-finite values")
        if np.any(values < 0):
            raise InputError(f"{self.unit} series contains negative values")
        if self.unit == "dimensionless" and np.any(values > 1):
            raise InputError("capacity factors must lie in [0, 1]")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def horizon(self) -> int:
        return self.values.size

    def __len__(self) -> int:
        return self.values.size

    def scaled(self, k: float, unit: str | None = None) -> HourlySeries:
        return HourlySeries(self.values * k, unit or self.unit)


def check_same_horizon(*series: HourlySeries) -> int:
    horizons = {s.horizon for s in series}
    if len(horizons) != 1:
        raise InputError(f"series horizons differ: {sorted(horizons)}")
    return horizons.pop()


def read_series(path, unit: str, horizon: int = HOURS_PER_YEAR) -> HourlySeries:
    """Read a ``hour_index,value`` file with a header row.

    Exactly ``horizon`` rows are required, indexed 0..horizon-1 in order.
    """
    path = Path(path)
    values = []
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise InputError("empty series file", path=path)
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != 2:
                raise InputError(f"expected 2 columns, got {len(row)}", path=path, row=lineno)
            try:
                idx = int(row[0])
                val = float(row[1])
            except ValueError:
                raise InputError(f"unparseable row {row!r}", path=path, row=lineno) from None
            if idx != len(values):
                raise InputError(f"hour index {idx} out of sequence", path=path, row=lineno)
            values.append(val)
    if len(values) != horizon:
        raise InputError(f"expected {horizon} rows, got {len(values)}", path=path)
    try:
        return HourlySeries(np.array(values), unit)
    except InputError as exc:
        raise InputError(str(exc), path=path) from None


def write_series(path, series: HourlySeries, fmt: str = "%.6g") -> None:
    path = Path(path)
    with path.open("w", newline="") as fh:
        fh.write("hour_index,value\n")
        for i, v in enumerate(series.values):
            fh.write(f"{i},{fmt % v}\n")
