"""Annualized costs, LCOE and year-by-year cost projection."""

from __future__ import annotations

import csv
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Mapping

import numpy as np

from .errors import InputError, ProjectionRangeError
from .series import HourlySeries, check_same_horizon


@dataclass(frozen=True)
class CostAssumptions:
    """Costs in EUR per MW (PV) or per MWh (storage); O&M per year."""

    pv_installed: float = 892_000.0
    pv_om: float = 8_760.0
    storage_installed: float = 388_000.0
    storage_om: float = 9_700.0
    pv_life: float = 30
    storage_life: float = 15
    discount_rate: float = 0.03

    def __post_init__(self):
        for name in ("pv_installed", "pv_om", "storage_installed", "storage_om"):
            if not getattr(self, name) >= 0:
                raise InputError(f"{name} must be >= 0")
        if self.pv_life < 1 or self.storage_life < 1:
            raise InputError("lifetimes must be >= 1 year")
        if not 0 < self.discount_rate < 1:
            raise InputError(f"discount_rate must lie in (0, 1), got {self.discount_rate}")


@dataclass(frozen=True)
class CostProjection:
    """Cost multipliers relative to 2019 at anchor years.

    ``anchors`` maps year -> (pv_installed, pv_om, storage) multipliers; the
    storage multiplier applies to both storage installed and O&M cost.
    ``interpolation`` is ``"linear"`` or ``"geometric"`` (constant annual rate).
    """

    anchors: Mapping[int, tuple[float, float, float]]
    interpolation: str = "linear"

    def __post_init__(self):
        anchors = {int(y): tuple(float(v) for v in m) for y, m in sorted(self.anchors.items())}
        if anchors.get(2019) != (1.0, 1.0, 1.0):
            raise InputError("projection must anchor 2019 at multipliers (1, 1, 1)")
        for year, mult in anchors.items():
            if len(mult) != 3 or not all(0 < v <= 1 for v in mult):
                raise InputError(f"multipliers for {year} must be three values in (0, 1]")
        if min(anchors) != 2019:
            raise InputError("projection anchors cannot precede 2019")
        if self.interpolation not in ("linear", "geometric"):
            raise InputError(f"unknown interpolation {self.interpolation!r}")
        object.__setattr__(self, "anchors", anchors)

    @classmethod
    def paper(cls, interpolation: str = "linear") -> CostProjection:
        return cls(PAPER_ANCHORS, interpolation)

    @classmethod
    def flat(cls, last_year: int = 2100) -> CostProjection:
        return cls({2019: (1.0, 1.0, 1.0), last_year: (1.0, 1.0, 1.0)} if last_year > 2019
                   else {2019: (1.0, 1.0, 1.0)})

    @property
    def last_year(self) -> int:
        return max(self.anchors)

    def multipliers(self, year: int) -> tuple[float, float, float]:
        if not 2019 <= year <= self.last_year:
            raise ProjectionRangeError(f"year {year} outside projection range 2019-{self.last_year}")
        years = np.array(list(self.anchors))
        mults = np.array(list(self.anchors.values()))
        if year in self.anchors:
            return self.anchors[year]
        hi = int(np.searchsorted(years, year))
        y0, y1 = years[hi - 1], years[hi]
        w = (year - y0) / (y1 - y0)
        m0, m1 = mults[hi - 1], mults[hi]
        if self.interpolation == "linear":
            m = m0 + w * (m1 - m0)
        else:
            m = m0 * (m1 / m0) ** w
        return tuple(float(v) for v in m)


PAPER_ANCHORS = {
    2019: (1.0, 1.0, 1.0),
    2030: (0.56, 0.73, 0.42),
    2050: (0.46, 0.65, 0.32),
    2100: (0.21, 0.48, 0.05),
}


@dataclass(frozen=True)
class AnnualCostBreakdown:
    pv_annualized: float
    storage_annualized: float
    import_cost: float
    lcoe: float

    @property
    def total(self) -> float:
        return self.pv_annualized + self.storage_annualized + self.import_cost


def capital_recovery_factor(r: float, n: float, paper_literal: bool = False) -> float:
    """Annuity factor ``r(1+r)^n / ((1+r)^n - 1)``.

    ``paper_literal=True`` uses ``+ 1`` in the denominator instead, for
    reproducing published numbers that were computed that way.
    """
    if not r > 0:
        raise InputError(f"discount rate must be > 0, got {r}")
    if n < 1:
        raise InputError(f"lifetime must be >= 1 year, got {n}")
    g = (1 + r) ** n
    return r * g / (g + 1 if paper_literal else g - 1)


def annualized_component_cost(capacity: float, installed: float, om: float, r: float, n: float,
                              paper_literal: bool = False) -> float:
    if capacity < 0:
        raise InputError(f"capacity must be >= 0, got {capacity}")
    return capacity * (installed * capital_recovery_factor(r, n, paper_literal) + om)


def import_cost(grid_import: HourlySeries, price: HourlySeries) -> float:
    check_same_horizon(grid_import, price)
    return float(grid_import.values @ price.values)


def lcoe(pv_annualized: float, storage_annualized: float, import_cost: float, annual_demand: float) -> float:
    if not annual_demand > 0:
        raise InputError(f"annual demand must be > 0, got {annual_demand}")
    return (pv_annualized + storage_annualized + import_cost) / annual_demand


def project_costs(base: CostAssumptions, projection: CostProjection, year: int) -> CostAssumptions:
    pv_i, pv_o, st = projection.multipliers(year)
    return replace(
        base,
        pv_installed=base.pv_installed * pv_i,
        pv_om=base.pv_om * pv_o,
        storage_installed=base.storage_installed * st,
        storage_om=base.storage_om * st,
    )


# -- file formats -----------------------------------------------------------

def read_costs(path) -> CostAssumptions:
    """Key-value cost file with the seven :class:`CostAssumptions` fields."""
    path = Path(path)
    names = {f.name for f in fields(CostAssumptions)}
    values = {}
    with path.open() as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise InputError("expected key = value", path=path, row=lineno)
            k, v = (s.strip() for s in line.split("=", 1))
            if k not in names:
                raise InputError(f"unknown cost key {k!r}", path=path, row=lineno)
            try:
                values[k] = float(v)
            except ValueError:
                raise InputError(f"unparseable value for {k}", path=path, row=lineno) from None
    missing = names - set(values)
    if missing:
        raise InputError(f"missing cost keys {sorted(missing)}", path=path)
    try:
        return CostAssumptions(**values)
    except InputError as exc:
        raise InputError(str(exc), path=path) from None


def write_costs(path, costs: CostAssumptions) -> None:
    with Path(path).open("w") as fh:
        for f in fields(CostAssumptions):
            fh.write(f"{f.name} = {getattr(costs, f.name)!r}\n")


def read_projection(path, interpolation: str = "linear") -> CostProjection:
    """Rows ``year,pv_installed_mult,pv_om_mult,storage_mult`` with a header."""
    path = Path(path)
    anchors = {}
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        if next(reader, None) is None:
            raise InputError("empty projection file", path=path)
        last = None
        for lineno, row in enumerate(reader, start=2):
            if not row or not any(c.strip() for c in row):
                continue
            if len(row) != 4:
                raise InputError(f"expected 4 columns, got {len(row)}", path=path, row=lineno)
            try:
                year = int(row[0])
                mult = tuple(float(v) for v in row[1:])
            except ValueError:
                raise InputError("unparseable row", path=path, row=lineno) from None
            if last is not None and year <= last:
                raise InputError("anchor years must be strictly increasing", path=path, row=lineno)
            last = year
            anchors[year] = mult
    try:
        return CostProjection(anchors, interpolation)
    except InputError as exc:
        raise InputError(str(exc), path=path) from None


def write_projection(path, projection: CostProjection) -> None:
    with Path(path).open("w") as fh:
        fh.write("year,pv_installed_mult,pv_om_mult,storage_mult\n")
        for year, m in projection.anchors.items():
            fh.write(f"{year},{m[0]!r},{m[1]!r},{m[2]!r}\n")
